#include "metric_depth/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "metric_depth/parallel.hpp"

namespace metric_depth {

DepthReport::DepthReport(std::vector<std::string> labels, std::vector<DepthValue> depths) {
  if (labels.size() != depths.size()) {
    throw Error(ErrorKind::InvalidArgument, "report needs one depth per label");
  }
  items_.reserve(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (!(depths[i].value >= 0.0 && depths[i].value <= 1.0)) {
      throw Error(ErrorKind::Validation, "depth of '" + labels[i] + "' outside [0, 1]");
    }
    items_.push_back({std::move(labels[i]), depths[i]});
  }

  ordering_.resize(items_.size());
  std::iota(ordering_.begin(), ordering_.end(), std::size_t{0});
  std::stable_sort(ordering_.begin(), ordering_.end(), [&](std::size_t a, std::size_t b) {
    return items_[a].depth.value > items_[b].depth.value;
  });

  ranks_.resize(items_.size());
  for (std::size_t pos = 0; pos < ordering_.size(); ++pos) {
    const std::size_t i = ordering_[pos];
    if (pos == 0 || items_[i].depth.value != items_[ordering_[pos - 1]].depth.value) {
      tie_groups_.emplace_back();
      ranks_[i] = pos + 1;
    } else {
      ranks_[i] = ranks_[ordering_[pos - 1]];
    }
    tie_groups_.back().push_back(i);
  }
}

DepthReport rank_by_depth(const DistanceOracle& sample, std::vector<std::string> labels, const Engine& engine) {
  if (labels.size() != sample.size()) {
    throw Error(ErrorKind::InvalidArgument, "rank_by_depth needs one label per sample point");
  }
  if (sample.size() < 2) {
    throw Error(ErrorKind::InsufficientSample, "ranking needs at least 2 sample points");
  }
  std::vector<DepthValue> depths(sample.size());
  parallel_for(sample.size(), [&](std::size_t k) {
    if (engine.mode == Engine::Mode::Exact) {
      depths[k] = member_depth(sample, k);
      return;
    }
    std::vector<double> row(sample.size());
    for (std::size_t i = 0; i < sample.size(); ++i) {
      row[i] = sample.distance(i, k);
    }
    depths[k] = evaluate_depth(sample, row, engine);
  });
  return DepthReport(std::move(labels), std::move(depths));
}

OutlierSelection flag_outliers(const DepthReport& report, std::size_t k) {
  const std::size_t n = report.size();
  if (k < 1 || k > n) {
    throw Error(ErrorKind::InvalidArgument,
                "outlier count " + std::to_string(k) + " outside [1, " + std::to_string(n) + "]");
  }
  const auto& items = report.items();
  std::vector<std::size_t> ascending(n);
  std::iota(ascending.begin(), ascending.end(), std::size_t{0});
  std::stable_sort(ascending.begin(), ascending.end(), [&](std::size_t a, std::size_t b) {
    return items[a].depth.value < items[b].depth.value;
  });

  OutlierSelection out;
  for (std::size_t pos = 0; pos < k; ++pos) {
    out.labels.push_back(items[ascending[pos]].label);
  }
  const double boundary = items[ascending[k - 1]].depth.value;
  for (std::size_t pos = k; pos < n && items[ascending[pos]].depth.value == boundary; ++pos) {
    out.tie_spill.push_back(items[ascending[pos]].label);
  }
  return out;
}

const char* to_string(Classification::Outcome outcome) {
  switch (outcome) {
    case Classification::Outcome::Assigned: return "assigned";
    case Classification::Outcome::Tie: return "tie";
    case Classification::Outcome::OutlyingInAll: return "outlying";
  }
  return "unknown";
}

Classification classify_by_depth(std::span<const std::string> class_labels, std::span<const double> depths) {
  if (class_labels.size() != depths.size()) {
    throw Error(ErrorKind::InvalidArgument, "classification needs one depth per class");
  }
  if (class_labels.size() < 2) {
    throw Error(ErrorKind::InvalidArgument, "classification needs at least 2 classes");
  }
  Classification out;
  out.depths.assign(depths.begin(), depths.end());
  const double best = *std::max_element(depths.begin(), depths.end());
  if (best == 0.0) {
    out.outcome = Classification::Outcome::OutlyingInAll;
    return out;
  }
  for (std::size_t c = 0; c < depths.size(); ++c) {
    if (depths[c] == best) {
      out.labels.push_back(class_labels[c]);
    }
  }
  out.outcome = out.labels.size() == 1 ? Classification::Outcome::Assigned : Classification::Outcome::Tie;
  return out;
}

namespace {

std::vector<double> average_ranks(std::span<const double> x) {
  const std::size_t n = x.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<double> ranks(n);
  for (std::size_t start = 0; start < n;) {
    std::size_t end = start + 1;
    while (end < n && x[order[end]] == x[order[start]]) {
      ++end;
    }
    const double avg = 0.5 * static_cast<double>(start + end + 1);
    for (std::size_t p = start; p < end; ++p) {
      ranks[order[p]] = avg;
    }
    start = end;
  }
  return ranks;
}

}  // namespace

double spearman_correlation(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw Error(ErrorKind::InvalidArgument, "rank correlation needs two equal-length series of size >= 2");
  }
  const std::vector<double> rx = average_ranks(x);
  const std::vector<double> ry = average_ranks(y);
  const double mean = 0.5 * static_cast<double>(x.size() + 1);
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (rx[i] - mean) * (ry[i] - mean);
    sxx += (rx[i] - mean) * (rx[i] - mean);
    syy += (ry[i] - mean) * (ry[i] - mean);
  }
  if (sxx == 0.0 || syy == 0.0) {
    return 0.0;
  }
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace metric_depth
