#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "metric_depth/depth.hpp"

namespace metric_depth {

struct ReportItem {
  std::string label;
  DepthValue depth;
};

// Per-item depths with a stable descending ordering.
class DepthReport {
 public:
  DepthReport(std::vector<std::string> labels, std::vector<DepthValue> depths);

  const std::vector<ReportItem>& items() const { return items_; }
  std::size_t size() const { return items_.size(); }

  // Item indices by decreasing depth; equal depths keep input order.
  const std::vector<std::size_t>& ordering() const { return ordering_; }

  // Groups of item indices with equal depth, in ordering order. Singleton
  // groups are included.
  const std::vector<std::vector<std::size_t>>& tie_groups() const { return tie_groups_; }

  // Competition rank of item i (1 = deepest; tied items share the lowest
  // rank of their group).
  std::size_t rank(std::size_t i) const { return ranks_[i]; }

 private:
  std::vector<ReportItem> items_;
  std::vector<std::size_t> ordering_;
  std::vector<std::vector<std::size_t>> tie_groups_;
  std::vector<std::size_t> ranks_;
};

// Depth of every sample point within the full sample.
DepthReport rank_by_depth(const DistanceOracle& sample, std::vector<std::string> labels,
                          const Engine& engine = Engine::exact());

struct OutlierSelection {
  std::vector<std::string> labels;
  // Unselected labels tied with the deepest selected one.
  std::vector<std::string> tie_spill;
};

// The k least deep items; ties resolved by input order.
OutlierSelection flag_outliers(const DepthReport& report, std::size_t k);

struct DdPoint {
  std::string label;
  double depth_a = 0.0;
  double depth_b = 0.0;
};

template <class SampleA, class SampleB, class Query>
  requires QueryableSample<SampleA, Query> && QueryableSample<SampleB, Query>
std::vector<DdPoint> dd_plot(std::span<const std::string> labels, std::span<const Query> queries,
                             const SampleA& sample_a, const SampleB& sample_b) {
  if (labels.size() != queries.size()) {
    throw Error(ErrorKind::InvalidArgument, "dd_plot needs one label per query");
  }
  const std::vector<DepthValue> a = depth_profile(sample_a, queries);
  const std::vector<DepthValue> b = depth_profile(sample_b, queries);
  std::vector<DdPoint> out;
  out.reserve(queries.size());
  for (std::size_t k = 0; k < queries.size(); ++k) {
    out.push_back({labels[k], a[k].value, b[k].value});
  }
  return out;
}

struct Classification {
  enum class Outcome { Assigned, Tie, OutlyingInAll };
  Outcome outcome = Outcome::OutlyingInAll;
  // Assigned: the single winner. Tie: every class attaining the maximum.
  // OutlyingInAll: empty.
  std::vector<std::string> labels;
  // Depth in each class, in the order the classes were given.
  std::vector<double> depths;
};

const char* to_string(Classification::Outcome outcome);

// Maximum-depth rule over precomputed class depths.
Classification classify_by_depth(std::span<const std::string> class_labels, std::span<const double> depths);

template <class Sample, class Query>
  requires QueryableSample<Sample, Query>
Classification dd_classify(const Query& query, std::span<const std::pair<std::string, Sample>> classes) {
  if (classes.size() < 2) {
    throw Error(ErrorKind::InvalidArgument, "classification needs at least 2 classes");
  }
  std::vector<std::string> names;
  std::vector<double> depths;
  for (const auto& [name, sample] : classes) {
    names.push_back(name);
    depths.push_back(depth_of(sample, query).value);
  }
  return classify_by_depth(names, depths);
}

// Spearman rank correlation with average ranks for ties.
double spearman_correlation(std::span<const double> x, std::span<const double> y);

}  // namespace metric_depth
