#pragma once

// Riemann-sum reference for Wasserstein distances. Quantiles are inverted
// here from the raw breakpoint lists, independently of StepCdf::quantile.

#include <cmath>
#include <cstddef>
#include <random>
#include <vector>

#include "metric_depth/distribution.hpp"

namespace metric_depth::testing {

// Midpoint rule on `points` cells; the quantile walk is incremental so the
// sum costs O(points + breakpoints).
inline double riemann_wasserstein(const StepCdf& f, const StepCdf& g, double r, std::size_t points) {
  const bool lf = f.interpolation() == StepCdf::Interpolation::Linear;
  const bool lg = g.interpolation() == StepCdf::Interpolation::Linear;
  const auto& bf = f.breakpoints();
  const auto& cf = f.cdf_values();
  const auto& bg = g.breakpoints();
  const auto& cg = g.cdf_values();
  std::size_t kf = 0;
  std::size_t kg = 0;
  double sum = 0.0;
  for (std::size_t i = 0; i < points; ++i) {
    const double u = (static_cast<double>(i) + 0.5) / static_cast<double>(points);
    while (kf + 1 < cf.size() && cf[kf] < u) ++kf;
    while (kg + 1 < cg.size() && cg[kg] < u) ++kg;
    auto q = [u](const std::vector<double>& b, const std::vector<double>& c, bool linear, std::size_t k) {
      if (!linear || k == 0) return b[k];
      const double t = (u - c[k - 1]) / (c[k] - c[k - 1]);
      return b[k - 1] + t * (b[k] - b[k - 1]);
    };
    sum += std::pow(std::abs(q(bf, cf, lf, kf) - q(bg, cg, lg, kg)), r);
  }
  return std::pow(sum / static_cast<double>(points), 1.0 / r);
}

inline StepCdf random_linear_cdf(std::mt19937_64& gen) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::size_t knots = 2 + gen() % 8;
  std::vector<double> b{unit(gen) * 2.0};
  std::vector<double> c{0.0};
  for (std::size_t k = 1; k < knots; ++k) {
    b.push_back(b.back() + 0.05 + unit(gen) * 3.0);
    c.push_back(c.back() + 0.05 + unit(gen));
  }
  for (double& v : c) {
    v /= c.back();
  }
  return StepCdf(b, c, StepCdf::Interpolation::Linear);
}

}  // namespace metric_depth::testing
