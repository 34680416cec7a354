#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "metric_depth/metrics.hpp"

namespace metric_depth {

// Empirical functional principal components of a set of curves.
//
// Inner products are quadrature-weighted with the trapezoid weights of the
// shared grid (channels are stacked, each with the same weights). The
// covariance uses 1/(n-1). Components are orthonormal under the weighted
// inner product, ordered by decreasing eigenvalue, and each is signed so
// that its largest-magnitude coordinate is positive.
class PcaBasis {
 public:
  PcaBasis(Curve mean, std::vector<Curve> components, std::vector<double> eigenvalues,
           std::vector<double> weights);

  const Curve& mean() const { return mean_; }
  const std::vector<Curve>& components() const { return components_; }
  const std::vector<double>& eigenvalues() const { return eigenvalues_; }
  const std::vector<double>& weights() const { return weights_; }
  std::size_t k() const { return components_.size(); }

  // Weighted inner products of (curve - mean) with each component.
  std::vector<double> scores(const Curve& curve) const;

  // Copy with component `c` negated.
  PcaBasis with_flipped_component(std::size_t c) const;

 private:
  Curve mean_;
  std::vector<Curve> components_;
  std::vector<double> eigenvalues_;
  std::vector<double> weights_;
};

// Eigenvalues at or below this fraction of the largest one count as zero
// when determining the numerical rank.
inline constexpr double kPcaRankTolerance = 1e-10;

// Fits k components. Throws Error(InvalidArgument) for k = 0 or
// k > min(n - 1, grid size), Error(RankDeficient) if k exceeds the numerical
// rank of the centred data.
PcaBasis fit_pca_basis(std::span<const Curve> curves, std::size_t k);

// Numerical rank of the centred data (number of eigenvalues above tolerance).
std::size_t pca_numerical_rank(std::span<const Curve> curves);

// Euclidean distance between the k-score vectors of a and b.
double pca_pseudo_distance(const Curve& a, const Curve& b, const PcaBasis& basis);

}  // namespace metric_depth
