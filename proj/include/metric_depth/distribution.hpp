#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace metric_depth {

// Distribution function of a nonnegative variable, given at breakpoints.
//
// Step:   F(x) = cdf_values[k] on [b_k, b_{k+1}), 0 below b_0.
// Linear: F interpolates (b_k, cdf_values[k]) linearly, 0 below b_0; a
//         positive cdf_values[0] is an atom at b_0.
// Quantiles use the left-continuous inverse Q(u) = inf{x : F(x) >= u}.
class StepCdf {
 public:
  enum class Interpolation { Step, Linear };

  static constexpr double kTotalMassTolerance = 1e-12;

  // Validates: equal non-empty lengths, finite nonnegative strictly
  // increasing breakpoints, nondecreasing values in [0, 1], last value within
  // 1e-12 of 1 (stored as exactly 1). Throws Error(Validation).
  StepCdf(std::vector<double> breakpoints, std::vector<double> cdf_values, Interpolation interpolation);

  static StepCdf point_mass(double x);
  static StepCdf uniform(double lo, double hi);

  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<double>& cdf_values() const { return cdf_values_; }
  Interpolation interpolation() const { return interpolation_; }

  double cdf(double x) const;
  // u is clamped to [0, 1]; Q(0) is the lowest breakpoint.
  double quantile(double u) const;

  // On an open u-interval containing u that avoids every cdf value, the
  // quantile is affine: Q(v) = intercept + slope * v.
  struct AffinePiece {
    double intercept;
    double slope;
  };
  AffinePiece quantile_piece(double u) const;

 private:
  std::vector<double> breakpoints_;
  std::vector<double> cdf_values_;
  Interpolation interpolation_;
};

// Points used by the numeric fallback for exponents other than 1 and 2.
inline constexpr std::size_t kWassersteinFallbackPoints = 100000;

// Lr distance between quantile functions. r = 1 and r = 2 integrate exactly
// over the merged partition of both cdf value sets; other r >= 1 use a
// midpoint rule on kWassersteinFallbackPoints cells.
double wasserstein_distance(const StepCdf& f, const StepCdf& g, double r);

struct HistogramBin {
  double left;
  double right;
  double count;
};

// Piecewise-linear cdf with mass spread uniformly within each bin. Bins must
// be in increasing order, non-overlapping (gaps allowed), nonnegative, with
// positive width, finite nonnegative counts and a positive total.
StepCdf histogram_to_cdf(std::span<const HistogramBin> bins);

}  // namespace metric_depth
