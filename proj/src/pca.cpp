#include "metric_depth/pca.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "metric_depth/error.hpp"

namespace metric_depth {
namespace {

struct Spectrum {
  Eigen::VectorXd eigenvalues;   // descending
  Eigen::MatrixXd eigenvectors;  // columns, in weighted (W^{1/2}) coordinates
  Eigen::VectorXd mean;
  Eigen::VectorXd weights;
};

// Stacks channels into one coordinate vector per curve.
Eigen::VectorXd stacked(const Curve& curve) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(curve.size() * curve.channel_count()));
  Eigen::Index pos = 0;
  for (const auto& ch : curve.channels()) {
    for (const double x : ch) {
      v[pos++] = x;
    }
  }
  return v;
}

Curve unstacked(const Curve& like, const Eigen::VectorXd& v) {
  std::vector<std::vector<double>> channels(like.channel_count(), std::vector<double>(like.size()));
  Eigen::Index pos = 0;
  for (auto& ch : channels) {
    for (double& x : ch) {
      x = v[pos++];
    }
  }
  return Curve(like.grid(), std::move(channels));
}

Spectrum decompose(std::span<const Curve> curves) {
  if (curves.size() < 2) {
    throw Error(ErrorKind::InsufficientSample, "PCA needs at least 2 curves");
  }
  for (std::size_t i = 1; i < curves.size(); ++i) {
    require_compatible(curves[0], curves[i]);
  }
  const auto n = static_cast<Eigen::Index>(curves.size());
  const std::vector<double> w = trapezoid_weights(curves[0].grid());
  const auto dim = static_cast<Eigen::Index>(w.size() * curves[0].channel_count());

  Spectrum s;
  s.weights.resize(dim);
  for (Eigen::Index p = 0; p < dim; ++p) {
    s.weights[p] = w[static_cast<std::size_t>(p) % w.size()];
  }

  Eigen::MatrixXd data(n, dim);
  for (Eigen::Index i = 0; i < n; ++i) {
    data.row(i) = stacked(curves[static_cast<std::size_t>(i)]).transpose();
  }
  s.mean = data.colwise().mean().transpose();
  data.rowwise() -= s.mean.transpose();

  const Eigen::VectorXd root_w = s.weights.cwiseSqrt();
  const Eigen::MatrixXd scaled = data * root_w.asDiagonal();
  const Eigen::MatrixXd cov = scaled.transpose() * scaled / static_cast<double>(n - 1);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::RankDeficient, "covariance eigendecomposition failed");
  }
  s.eigenvalues = solver.eigenvalues().reverse();
  s.eigenvectors = solver.eigenvectors().rowwise().reverse();
  return s;
}

std::size_t rank_of(const Eigen::VectorXd& eigenvalues) {
  const double top = eigenvalues.size() > 0 ? eigenvalues[0] : 0.0;
  if (!(top > 0.0)) {
    return 0;
  }
  std::size_t rank = 0;
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
    if (eigenvalues[i] > kPcaRankTolerance * top) {
      ++rank;
    }
  }
  return rank;
}

}  // namespace

PcaBasis::PcaBasis(Curve mean, std::vector<Curve> components, std::vector<double> eigenvalues,
                   std::vector<double> weights)
    : mean_(std::move(mean)),
      components_(std::move(components)),
      eigenvalues_(std::move(eigenvalues)),
      weights_(std::move(weights)) {
  if (components_.empty()) {
    throw Error(ErrorKind::InvalidArgument, "PCA basis needs at least one component");
  }
}

std::vector<double> PcaBasis::scores(const Curve& curve) const {
  require_compatible(curve, mean_);
  std::vector<double> out(components_.size(), 0.0);
  for (std::size_t c = 0; c < components_.size(); ++c) {
    double sum = 0.0;
    for (std::size_t ch = 0; ch < curve.channel_count(); ++ch) {
      const auto& x = curve.channel(ch);
      const auto& mu = mean_.channel(ch);
      const auto& phi = components_[c].channel(ch);
      for (std::size_t k = 0; k < x.size(); ++k) {
        sum += weights_[k] * (x[k] - mu[k]) * phi[k];
      }
    }
    out[c] = sum;
  }
  return out;
}

PcaBasis PcaBasis::with_flipped_component(std::size_t c) const {
  if (c >= components_.size()) {
    throw Error(ErrorKind::InvalidArgument, "component index out of range");
  }
  std::vector<Curve> flipped = components_;
  std::vector<std::vector<double>> channels = flipped[c].channels();
  for (auto& ch : channels) {
    for (double& x : ch) {
      x = -x;
    }
  }
  flipped[c] = Curve(flipped[c].grid(), std::move(channels));
  return PcaBasis(mean_, std::move(flipped), eigenvalues_, weights_);
}

std::size_t pca_numerical_rank(std::span<const Curve> curves) {
  return rank_of(decompose(curves).eigenvalues);
}

PcaBasis fit_pca_basis(std::span<const Curve> curves, std::size_t k) {
  if (curves.size() < 2) {
    throw Error(ErrorKind::InsufficientSample, "PCA needs at least 2 curves");
  }
  const std::size_t limit = std::min(curves.size() - 1, curves[0].size());
  if (k == 0 || k > limit) {
    throw Error(ErrorKind::InvalidArgument,
                "PCA k = " + std::to_string(k) + " outside [1, " + std::to_string(limit) + "]");
  }
  const Spectrum s = decompose(curves);
  const std::size_t rank = rank_of(s.eigenvalues);
  if (k > rank) {
    throw Error(ErrorKind::RankDeficient, "PCA k = " + std::to_string(k) + " exceeds numerical rank " +
                                              std::to_string(rank));
  }

  const Eigen::VectorXd inv_root_w = s.weights.cwiseSqrt().cwiseInverse();
  std::vector<Curve> components;
  std::vector<double> eigenvalues;
  for (std::size_t c = 0; c < k; ++c) {
    Eigen::VectorXd phi = inv_root_w.cwiseProduct(s.eigenvectors.col(static_cast<Eigen::Index>(c)));
    Eigen::Index pivot = 0;
    phi.cwiseAbs().maxCoeff(&pivot);
    if (phi[pivot] < 0.0) {
      phi = -phi;
    }
    components.push_back(unstacked(curves[0], phi));
    eigenvalues.push_back(s.eigenvalues[static_cast<Eigen::Index>(c)]);
  }
  const std::vector<double> w = trapezoid_weights(curves[0].grid());
  return PcaBasis(unstacked(curves[0], s.mean), std::move(components), std::move(eigenvalues), w);
}

double pca_pseudo_distance(const Curve& a, const Curve& b, const PcaBasis& basis) {
  const std::vector<double> sa = basis.scores(a);
  const std::vector<double> sb = basis.scores(b);
  return euclidean_distance(sa, sb);
}

}  // namespace metric_depth
