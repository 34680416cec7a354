#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "metric_depth/error.hpp"

namespace metric_depth {

// Pairwise (pseudo-)distance source over reference points 0..size()-1.
// Implementations must be pure: distance(i, j) == distance(j, i) bit for bit,
// distance(i, i) == 0, and concurrent calls are allowed. The triangle
// inequality is not assumed anywhere.
class DistanceOracle {
 public:
  virtual ~DistanceOracle() = default;
  virtual std::size_t size() const = 0;
  virtual double distance(std::size_t i, std::size_t j) const = 0;
};

// Labelled symmetric matrix with zero diagonal and nonnegative entries.
class DistanceMatrix {
 public:
  static constexpr double kSymmetryTolerance = 1e-12;

  // Validates on construction; throws Error(Validation) naming the offending
  // indices for asymmetry, nonzero diagonal, negative or non-finite entries.
  DistanceMatrix(std::vector<std::string> labels, std::vector<double> row_major);

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  double operator()(std::size_t i, std::size_t j) const { return entries_[i * size() + j]; }

  // Index of `label`, or throws Error(InvalidArgument).
  std::size_t index_of(const std::string& label) const;

 private:
  std::vector<std::string> labels_;
  std::vector<double> entries_;
};

// Oracle over a matrix (or a subset of its rows). Queries are items of the
// matrix: the distances from item `k` to the members are read from row k.
class MatrixOracle final : public DistanceOracle {
 public:
  explicit MatrixOracle(std::shared_ptr<const DistanceMatrix> matrix);
  MatrixOracle(std::shared_ptr<const DistanceMatrix> matrix, std::vector<std::size_t> members);

  std::size_t size() const override { return members_.size(); }
  double distance(std::size_t i, std::size_t j) const override;

  // Distances from matrix item `item` (an index into the full matrix) to
  // every member of this oracle.
  std::vector<double> distances_from(std::size_t item) const;

  const DistanceMatrix& matrix() const { return *matrix_; }
  const std::vector<std::size_t>& members() const { return members_; }
  std::vector<std::string> member_labels() const;

 private:
  std::shared_ptr<const DistanceMatrix> matrix_;
  std::vector<std::size_t> members_;
};

MatrixOracle matrix_oracle(DistanceMatrix m);

// Oracle backed by a distance callback over stored points.
template <class Point>
class PointCloud final : public DistanceOracle {
 public:
  using Metric = std::function<double(const Point&, const Point&)>;

  PointCloud(std::vector<Point> points, Metric metric)
      : points_(std::move(points)), metric_(std::move(metric)) {}

  std::size_t size() const override { return points_.size(); }

  double distance(std::size_t i, std::size_t j) const override {
    if (i == j) {
      return 0.0;
    }
    // Always evaluate in index order so both argument orders agree bitwise.
    return i < j ? metric_(points_[i], points_[j]) : metric_(points_[j], points_[i]);
  }

  std::vector<double> distances_from(const Point& query) const {
    std::vector<double> out(points_.size());
    for (std::size_t i = 0; i < points_.size(); ++i) {
      out[i] = metric_(points_[i], query);
    }
    return out;
  }

  const std::vector<Point>& points() const { return points_; }
  const Metric& metric() const { return metric_; }

  DistanceMatrix materialize(std::vector<std::string> labels) const {
    const std::size_t n = size();
    std::vector<double> entries(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        entries[i * n + j] = entries[j * n + i] = distance(i, j);
      }
    }
    return DistanceMatrix(std::move(labels), std::move(entries));
  }

 private:
  std::vector<Point> points_;
  Metric metric_;
};

}  // namespace metric_depth
