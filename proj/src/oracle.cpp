#include "metric_depth/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace metric_depth {
namespace {

std::string cell(std::size_t i, std::size_t j) {
  return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

}  // namespace

DistanceMatrix::DistanceMatrix(std::vector<std::string> labels, std::vector<double> row_major)
    : labels_(std::move(labels)), entries_(std::move(row_major)) {
  const std::size_t n = labels_.size();
  if (entries_.size() != n * n) {
    throw Error(ErrorKind::Validation, "distance matrix has " + std::to_string(entries_.size()) +
                                           " entries, expected " + std::to_string(n * n));
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double v = (*this)(i, j);
      if (!std::isfinite(v)) {
        throw Error(ErrorKind::Validation, "non-finite distance at " + cell(i, j));
      }
      if (v < 0.0) {
        throw Error(ErrorKind::Validation, "negative distance at " + cell(i, j));
      }
      if (i == j && v != 0.0) {
        throw Error(ErrorKind::Validation, "nonzero diagonal at " + cell(i, j));
      }
      if (j > i && std::abs(v - (*this)(j, i)) > kSymmetryTolerance) {
        throw Error(ErrorKind::Validation, "asymmetric entries at " + cell(i, j) + " and " + cell(j, i));
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (labels_[i] == labels_[j]) {
        throw Error(ErrorKind::Validation, "duplicate label '" + labels_[i] + "'");
      }
    }
  }
}

std::size_t DistanceMatrix::index_of(const std::string& label) const {
  const auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) {
    throw Error(ErrorKind::InvalidArgument, "unknown matrix label '" + label + "'");
  }
  return static_cast<std::size_t>(it - labels_.begin());
}

MatrixOracle::MatrixOracle(std::shared_ptr<const DistanceMatrix> matrix)
    : matrix_(std::move(matrix)), members_(matrix_->size()) {
  std::iota(members_.begin(), members_.end(), std::size_t{0});
}

MatrixOracle::MatrixOracle(std::shared_ptr<const DistanceMatrix> matrix, std::vector<std::size_t> members)
    : matrix_(std::move(matrix)), members_(std::move(members)) {
  for (const std::size_t m : members_) {
    if (m >= matrix_->size()) {
      throw Error(ErrorKind::InvalidArgument, "matrix member index " + std::to_string(m) + " out of range");
    }
  }
}

double MatrixOracle::distance(std::size_t i, std::size_t j) const {
  const std::size_t a = members_[i];
  const std::size_t b = members_[j];
  // Read the upper triangle only; the matrix is symmetric up to 1e-12.
  return a <= b ? (*matrix_)(a, b) : (*matrix_)(b, a);
}

std::vector<double> MatrixOracle::distances_from(std::size_t item) const {
  if (item >= matrix_->size()) {
    throw Error(ErrorKind::InvalidArgument, "matrix item index " + std::to_string(item) + " out of range");
  }
  std::vector<double> out(members_.size());
  for (std::size_t i = 0; i < members_.size(); ++i) {
    const std::size_t m = members_[i];
    out[i] = m <= item ? (*matrix_)(m, item) : (*matrix_)(item, m);
  }
  return out;
}

std::vector<std::string> MatrixOracle::member_labels() const {
  std::vector<std::string> out;
  out.reserve(members_.size());
  for (const std::size_t m : members_) {
    out.push_back(matrix_->labels()[m]);
  }
  return out;
}

MatrixOracle matrix_oracle(DistanceMatrix m) {
  return MatrixOracle(std::make_shared<const DistanceMatrix>(std::move(m)));
}

}  // namespace metric_depth
