#include "metric_depth/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "metric_depth/error.hpp"

namespace metric_depth {

StepCdf::StepCdf(std::vector<double> breakpoints, std::vector<double> cdf_values, Interpolation interpolation)
    : breakpoints_(std::move(breakpoints)), cdf_values_(std::move(cdf_values)), interpolation_(interpolation) {
  if (breakpoints_.empty() || breakpoints_.size() != cdf_values_.size()) {
    throw Error(ErrorKind::Validation, "cdf needs matching non-empty breakpoint and value lists");
  }
  for (std::size_t k = 0; k < breakpoints_.size(); ++k) {
    const double b = breakpoints_[k];
    const double c = cdf_values_[k];
    if (!std::isfinite(b) || b < 0.0) {
      throw Error(ErrorKind::Validation, "cdf breakpoint " + std::to_string(k) + " must be finite and >= 0");
    }
    if (k > 0 && !(b > breakpoints_[k - 1])) {
      throw Error(ErrorKind::Validation, "cdf breakpoints not increasing at index " + std::to_string(k));
    }
    if (!(c >= 0.0 && c <= 1.0 + kTotalMassTolerance)) {
      throw Error(ErrorKind::Validation, "cdf value " + std::to_string(k) + " outside [0, 1]");
    }
    if (k > 0 && c < cdf_values_[k - 1]) {
      throw Error(ErrorKind::Validation, "cdf values decrease at index " + std::to_string(k));
    }
  }
  if (std::abs(cdf_values_.back() - 1.0) > kTotalMassTolerance) {
    throw Error(ErrorKind::Validation, "cdf does not reach 1");
  }
  for (double& c : cdf_values_) {
    c = std::min(c, 1.0);
  }
  cdf_values_.back() = 1.0;
}

StepCdf StepCdf::point_mass(double x) {
  return StepCdf({x}, {1.0}, Interpolation::Step);
}

StepCdf StepCdf::uniform(double lo, double hi) {
  return StepCdf({lo, hi}, {0.0, 1.0}, Interpolation::Linear);
}

double StepCdf::cdf(double x) const {
  if (x < breakpoints_.front()) {
    return 0.0;
  }
  const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
  const auto k = static_cast<std::size_t>(it - breakpoints_.begin()) - 1;  // b_k <= x
  if (interpolation_ == Interpolation::Step || k + 1 == breakpoints_.size()) {
    return cdf_values_[k];
  }
  const double t = (x - breakpoints_[k]) / (breakpoints_[k + 1] - breakpoints_[k]);
  return cdf_values_[k] + t * (cdf_values_[k + 1] - cdf_values_[k]);
}

StepCdf::AffinePiece StepCdf::quantile_piece(double u) const {
  u = std::clamp(u, 0.0, 1.0);
  const auto it = std::lower_bound(cdf_values_.begin(), cdf_values_.end(), u);
  const auto k = static_cast<std::size_t>(it - cdf_values_.begin());  // first c_k >= u
  if (interpolation_ == Interpolation::Step || k == 0) {
    return {breakpoints_[k], 0.0};
  }
  const double slope = (breakpoints_[k] - breakpoints_[k - 1]) / (cdf_values_[k] - cdf_values_[k - 1]);
  return {breakpoints_[k - 1] - slope * cdf_values_[k - 1], slope};
}

double StepCdf::quantile(double u) const {
  u = std::clamp(u, 0.0, 1.0);
  const auto it = std::lower_bound(cdf_values_.begin(), cdf_values_.end(), u);
  const auto k = static_cast<std::size_t>(it - cdf_values_.begin());
  if (interpolation_ == Interpolation::Step || k == 0) {
    return breakpoints_[k];
  }
  const double t = (u - cdf_values_[k - 1]) / (cdf_values_[k] - cdf_values_[k - 1]);
  return breakpoints_[k - 1] + t * (breakpoints_[k] - breakpoints_[k - 1]);
}

namespace {

// Integral over [a, b] of |g|^r for affine g with endpoint values ga, gb.
double affine_power_integral(double ga, double gb, double width, double r) {
  if (r == 2.0) {
    return width * (ga * ga + ga * gb + gb * gb) / 3.0;
  }
  // r == 1
  if (ga * gb >= 0.0) {
    return width * 0.5 * (std::abs(ga) + std::abs(gb));
  }
  return width * 0.5 * (ga * ga + gb * gb) / (std::abs(ga) + std::abs(gb));
}

}  // namespace

double wasserstein_distance(const StepCdf& f, const StepCdf& g, double r) {
  if (!(r >= 1.0) || !std::isfinite(r)) {
    throw Error(ErrorKind::InvalidArgument, "Wasserstein exponent must be finite and >= 1");
  }

  if (r != 1.0 && r != 2.0) {
    const auto cells = static_cast<double>(kWassersteinFallbackPoints);
    double sum = 0.0;
    for (std::size_t c = 0; c < kWassersteinFallbackPoints; ++c) {
      const double u = (static_cast<double>(c) + 0.5) / cells;
      sum += std::pow(std::abs(f.quantile(u) - g.quantile(u)), r);
    }
    return std::pow(sum / cells, 1.0 / r);
  }

  std::vector<double> cuts{0.0, 1.0};
  cuts.insert(cuts.end(), f.cdf_values().begin(), f.cdf_values().end());
  cuts.insert(cuts.end(), g.cdf_values().begin(), g.cdf_values().end());
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  double total = 0.0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double a = cuts[k];
    const double b = cuts[k + 1];
    const double mid = 0.5 * (a + b);
    const auto pf = f.quantile_piece(mid);
    const auto pg = g.quantile_piece(mid);
    const double ga = (pf.intercept - pg.intercept) + (pf.slope - pg.slope) * a;
    const double gb = (pf.intercept - pg.intercept) + (pf.slope - pg.slope) * b;
    total += affine_power_integral(ga, gb, b - a, r);
  }
  return r == 2.0 ? std::sqrt(total) : total;
}

StepCdf histogram_to_cdf(std::span<const HistogramBin> bins) {
  if (bins.empty()) {
    throw Error(ErrorKind::Validation, "histogram has no bins");
  }
  double total = 0.0;
  for (std::size_t k = 0; k < bins.size(); ++k) {
    const auto& bin = bins[k];
    const std::string where = "bin " + std::to_string(k);
    if (!std::isfinite(bin.left) || !std::isfinite(bin.right) || bin.left < 0.0 || !(bin.right > bin.left)) {
      throw Error(ErrorKind::Validation, where + " needs finite bounds with 0 <= left < right");
    }
    if (!std::isfinite(bin.count) || bin.count < 0.0) {
      throw Error(ErrorKind::Validation, where + " has a negative or non-finite count");
    }
    if (k > 0 && bin.left < bins[k - 1].right) {
      throw Error(ErrorKind::Validation, where + " overlaps the previous bin");
    }
    total += bin.count;
  }
  if (!(total > 0.0)) {
    throw Error(ErrorKind::Validation, "histogram has zero total mass");
  }

  std::vector<double> breakpoints{bins.front().left};
  std::vector<double> cumulative{0.0};
  double running = 0.0;
  for (const auto& bin : bins) {
    if (bin.left > breakpoints.back()) {
      breakpoints.push_back(bin.left);
      cumulative.push_back(running);
    }
    running += bin.count;
    breakpoints.push_back(bin.right);
    cumulative.push_back(running);
  }
  for (double& c : cumulative) {
    c /= total;
  }
  cumulative.back() = 1.0;
  return StepCdf(std::move(breakpoints), std::move(cumulative), StepCdf::Interpolation::Linear);
}

}  // namespace metric_depth
