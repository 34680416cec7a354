#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace metric_depth {

// Lp distance between equal-length vectors; p = infinity gives max-abs.
double minkowski_distance(std::span<const double> x, std::span<const double> y, double p);
double euclidean_distance(std::span<const double> x, std::span<const double> y);

// A discretised (possibly multi-channel) function on a shared time grid.
class Curve {
 public:
  // Requires at least 3 strictly increasing finite grid points and at least
  // one channel; every channel must have one finite value per grid point.
  Curve(std::vector<double> grid, std::vector<std::vector<double>> channels);
  Curve(std::vector<double> grid, std::vector<double> values);

  const std::vector<double>& grid() const { return grid_; }
  const std::vector<std::vector<double>>& channels() const { return channels_; }
  const std::vector<double>& channel(std::size_t c) const { return channels_[c]; }
  std::size_t channel_count() const { return channels_.size(); }
  std::size_t size() const { return grid_.size(); }

 private:
  std::vector<double> grid_;
  std::vector<std::vector<double>> channels_;
};

// Trapezoid-rule weights for integrating over `grid`.
std::vector<double> trapezoid_weights(std::span<const double> grid);

// Throws Error(IncompatibleCurves) unless grids and channel counts agree.
void require_compatible(const Curve& a, const Curve& b);

// sqrt of the trapezoid integral of the summed squared channel differences.
double l2_curve_distance(const Curve& a, const Curve& b);

// Max absolute difference over grid points and channels.
double sup_curve_distance(const Curve& a, const Curve& b);

// L2 distance between central second differences, integrated by trapezoid
// over the interior grid. Single channel, uniform grid with >= 5 points.
double second_derivative_pseudo_distance(const Curve& a, const Curve& b);

// Averages consecutive blocks of `width` grid points (the last block may be
// shorter). The new grid holds the block means of the old grid.
Curve block_average(const Curve& curve, std::size_t width);

}  // namespace metric_depth
