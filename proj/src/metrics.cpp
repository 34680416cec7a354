#include "metric_depth/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "metric_depth/error.hpp"

namespace metric_depth {
namespace {

constexpr double kGridTolerance = 1e-12;
constexpr double kUniformTolerance = 1e-9;

}  // namespace

double minkowski_distance(std::span<const double> x, std::span<const double> y, double p) {
  if (x.size() != y.size()) {
    throw Error(ErrorKind::InvalidArgument, "dimension mismatch: " + std::to_string(x.size()) + " vs " +
                                                std::to_string(y.size()));
  }
  if (!(p >= 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "Minkowski exponent must be >= 1");
  }
  if (std::isinf(p)) {
    double out = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      out = std::max(out, std::abs(x[i] - y[i]));
    }
    return out;
  }
  double sum = 0.0;
  if (p == 2.0) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double d = x[i] - y[i];
      sum += d * d;
    }
    return std::sqrt(sum);
  }
  if (p == 1.0) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      sum += std::abs(x[i] - y[i]);
    }
    return sum;
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    sum += std::pow(std::abs(x[i] - y[i]), p);
  }
  return std::pow(sum, 1.0 / p);
}

double euclidean_distance(std::span<const double> x, std::span<const double> y) {
  return minkowski_distance(x, y, 2.0);
}

Curve::Curve(std::vector<double> grid, std::vector<std::vector<double>> channels)
    : grid_(std::move(grid)), channels_(std::move(channels)) {
  if (grid_.size() < 3) {
    throw Error(ErrorKind::Validation, "curve grid needs at least 3 points");
  }
  for (std::size_t k = 0; k < grid_.size(); ++k) {
    if (!std::isfinite(grid_[k])) {
      throw Error(ErrorKind::Validation, "non-finite grid point at index " + std::to_string(k));
    }
    if (k > 0 && !(grid_[k] > grid_[k - 1])) {
      throw Error(ErrorKind::Validation, "curve grid not strictly increasing at index " + std::to_string(k));
    }
  }
  if (channels_.empty()) {
    throw Error(ErrorKind::Validation, "curve needs at least one channel");
  }
  for (std::size_t c = 0; c < channels_.size(); ++c) {
    if (channels_[c].size() != grid_.size()) {
      throw Error(ErrorKind::Validation, "channel " + std::to_string(c) + " has " +
                                             std::to_string(channels_[c].size()) + " values for " +
                                             std::to_string(grid_.size()) + " grid points");
    }
    for (std::size_t k = 0; k < grid_.size(); ++k) {
      if (!std::isfinite(channels_[c][k])) {
        throw Error(ErrorKind::Validation,
                    "non-finite value in channel " + std::to_string(c) + " at index " + std::to_string(k));
      }
    }
  }
}

Curve::Curve(std::vector<double> grid, std::vector<double> values)
    : Curve(std::move(grid), std::vector<std::vector<double>>{std::move(values)}) {}

std::vector<double> trapezoid_weights(std::span<const double> grid) {
  const std::size_t m = grid.size();
  std::vector<double> w(m, 0.0);
  if (m < 2) {
    return w;
  }
  w[0] = 0.5 * (grid[1] - grid[0]);
  w[m - 1] = 0.5 * (grid[m - 1] - grid[m - 2]);
  for (std::size_t k = 1; k + 1 < m; ++k) {
    w[k] = 0.5 * (grid[k + 1] - grid[k - 1]);
  }
  return w;
}

void require_compatible(const Curve& a, const Curve& b) {
  if (a.size() != b.size() || a.channel_count() != b.channel_count()) {
    throw Error(ErrorKind::IncompatibleCurves, "curves differ in grid length or channel count");
  }
  const double scale = std::max(std::abs(a.grid().front()), std::abs(a.grid().back()));
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (std::abs(a.grid()[k] - b.grid()[k]) > kGridTolerance * std::max(1.0, scale)) {
      throw Error(ErrorKind::IncompatibleCurves, "curve grids differ at index " + std::to_string(k));
    }
  }
}

double l2_curve_distance(const Curve& a, const Curve& b) {
  require_compatible(a, b);
  const std::vector<double> w = trapezoid_weights(a.grid());
  double sum = 0.0;
  for (std::size_t c = 0; c < a.channel_count(); ++c) {
    const auto& x = a.channel(c);
    const auto& y = b.channel(c);
    for (std::size_t k = 0; k < a.size(); ++k) {
      const double d = x[k] - y[k];
      sum += w[k] * d * d;
    }
  }
  return std::sqrt(sum);
}

double sup_curve_distance(const Curve& a, const Curve& b) {
  require_compatible(a, b);
  double out = 0.0;
  for (std::size_t c = 0; c < a.channel_count(); ++c) {
    const auto& x = a.channel(c);
    const auto& y = b.channel(c);
    for (std::size_t k = 0; k < a.size(); ++k) {
      out = std::max(out, std::abs(x[k] - y[k]));
    }
  }
  return out;
}

double second_derivative_pseudo_distance(const Curve& a, const Curve& b) {
  require_compatible(a, b);
  if (a.channel_count() != 1) {
    throw Error(ErrorKind::IncompatibleCurves, "second-derivative distance needs single-channel curves");
  }
  const auto& grid = a.grid();
  const std::size_t m = grid.size();
  if (m < 5) {
    throw Error(ErrorKind::UnsupportedGrid, "second-derivative distance needs at least 5 grid points");
  }
  const double h = (grid[m - 1] - grid[0]) / static_cast<double>(m - 1);
  for (std::size_t k = 1; k < m; ++k) {
    if (std::abs((grid[k] - grid[k - 1]) - h) > kUniformTolerance * h) {
      throw Error(ErrorKind::UnsupportedGrid, "second-derivative distance needs a uniform grid (index " +
                                                  std::to_string(k) + ")");
    }
  }

  const auto& x = a.channel(0);
  const auto& y = b.channel(0);
  std::vector<double> diff(m);
  for (std::size_t k = 0; k < m; ++k) {
    diff[k] = x[k] - y[k];
  }
  const double inv_h2 = 1.0 / (h * h);
  std::vector<double> curvature(m - 2);
  for (std::size_t k = 1; k + 1 < m; ++k) {
    curvature[k - 1] = (diff[k - 1] - 2.0 * diff[k] + diff[k + 1]) * inv_h2;
  }
  const std::vector<double> w = trapezoid_weights(std::span<const double>(grid).subspan(1, m - 2));
  double sum = 0.0;
  for (std::size_t k = 0; k < curvature.size(); ++k) {
    sum += w[k] * curvature[k] * curvature[k];
  }
  return std::sqrt(sum);
}

Curve block_average(const Curve& curve, std::size_t width) {
  if (width == 0) {
    throw Error(ErrorKind::InvalidArgument, "block width must be at least 1");
  }
  const std::size_t m = curve.size();
  const std::size_t blocks = (m + width - 1) / width;
  if (blocks < 3) {
    throw Error(ErrorKind::InvalidArgument, "block width " + std::to_string(width) +
                                                " leaves fewer than 3 grid points");
  }
  auto average = [&](const std::vector<double>& values, std::size_t block) {
    const std::size_t begin = block * width;
    const std::size_t end = std::min(m, begin + width);
    double sum = 0.0;
    for (std::size_t k = begin; k < end; ++k) {
      sum += values[k];
    }
    return sum / static_cast<double>(end - begin);
  };
  std::vector<double> grid(blocks);
  std::vector<std::vector<double>> channels(curve.channel_count(), std::vector<double>(blocks));
  for (std::size_t b = 0; b < blocks; ++b) {
    grid[b] = average(curve.grid(), b);
    for (std::size_t c = 0; c < curve.channel_count(); ++c) {
      channels[c][b] = average(curve.channel(c), b);
    }
  }
  return Curve(std::move(grid), std::move(channels));
}

}  // namespace metric_depth
