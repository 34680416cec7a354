#include "metric_depth/depth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <unordered_set>

#include "metric_depth/parallel.hpp"
#include "metric_depth/random.hpp"

namespace metric_depth {
namespace {

constexpr std::size_t kRowsPerTask = 32;

void require_sample(const DistanceOracle& sample) {
  if (sample.size() < 2) {
    throw Error(ErrorKind::InsufficientSample,
                "depth needs at least 2 sample points, got " + std::to_string(sample.size()));
  }
}

bool valid_distance(double d) {
  return d >= 0.0 && d < std::numeric_limits<double>::infinity();
}

void require_query(const DistanceOracle& sample, std::span<const double> query_distances) {
  require_sample(sample);
  if (query_distances.size() != sample.size()) {
    throw Error(ErrorKind::InvalidArgument, "query has " + std::to_string(query_distances.size()) +
                                                " distances for a sample of " + std::to_string(sample.size()));
  }
  for (std::size_t i = 0; i < query_distances.size(); ++i) {
    if (!valid_distance(query_distances[i])) {
      throw Error(ErrorKind::InvalidDistance, "invalid query distance at sample index " + std::to_string(i));
    }
  }
}

double oracle_distance(const DistanceOracle& sample, std::size_t i, std::size_t j) {
  const double d = sample.distance(i, j);
  if (!valid_distance(d)) {
    throw Error(ErrorKind::InvalidDistance,
                "oracle returned an invalid distance for pair (" + std::to_string(i) + "," + std::to_string(j) + ")");
  }
  return d;
}

DepthValue make_value(double hits, std::uint64_t pairs) {
  return {hits / static_cast<double>(pairs), pairs, hits};
}

}  // namespace

std::uint64_t pair_count(std::size_t n) {
  const auto m = static_cast<std::uint64_t>(n);
  return m < 2 ? 0 : (m % 2 == 0 ? (m / 2) * (m - 1) : m * ((m - 1) / 2));
}

bool lens_contains(double d12, double d1c, double d2c) {
  if (!valid_distance(d12) || !valid_distance(d1c) || !valid_distance(d2c)) {
    throw Error(ErrorKind::InvalidDistance, "lens membership needs finite nonnegative distances");
  }
  return d12 > std::max(d1c, d2c);
}

AdjustmentFunction::AdjustmentFunction(std::function<double(double)> w) : w_(std::move(w)) {
  if (!w_ || w_(0.0) != 1.0) {
    throw Error(ErrorKind::InvalidAdjustment, "adjustment function must satisfy w(0) = 1");
  }
}

AdjustmentFunction AdjustmentFunction::indicator() {
  return AdjustmentFunction([](double z) { return z == 0.0 ? 1.0 : 0.0; });
}

AdjustmentFunction AdjustmentFunction::linear(double scale) {
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw Error(ErrorKind::InvalidAdjustment, "linear adjustment scale must be positive");
  }
  return AdjustmentFunction([scale](double z) { return std::max(0.0, 1.0 - z / scale); });
}

AdjustmentFunction AdjustmentFunction::exponential(double scale) {
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw Error(ErrorKind::InvalidAdjustment, "exponential adjustment scale must be positive");
  }
  return AdjustmentFunction([scale](double z) { return std::exp(-z / scale); });
}

double AdjustmentFunction::operator()(double excess) const {
  const double v = w_(excess);
  if (!(v >= 0.0 && v <= 1.0)) {
    throw Error(ErrorKind::InvalidAdjustment, "adjustment function returned a value outside [0, 1]");
  }
  return v;
}

DepthValue empirical_depth(const DistanceOracle& sample, std::span<const double> query_distances) {
  require_query(sample, query_distances);
  const std::size_t n = sample.size();

  // Visit points by increasing query distance. For a pair (order[s], order[r])
  // with s < r the larger query distance is the one of order[r], so each
  // pair needs a single comparison.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return query_distances[a] < query_distances[b]; });

  const std::size_t tasks = (n + kRowsPerTask - 1) / kRowsPerTask;
  std::vector<std::uint64_t> task_hits(tasks, 0);
  parallel_for(tasks, [&](std::size_t task) {
    const std::size_t begin = task * kRowsPerTask;
    const std::size_t end = std::min(n, begin + kRowsPerTask);
    std::uint64_t hits = 0;
    for (std::size_t r = begin; r < end; ++r) {
      const std::size_t i = order[r];
      const double radius = query_distances[i];
      for (std::size_t s = 0; s < r; ++s) {
        hits += oracle_distance(sample, i, order[s]) > radius ? 1 : 0;
      }
    }
    task_hits[task] = hits;
  });

  const std::uint64_t hits = std::accumulate(task_hits.begin(), task_hits.end(), std::uint64_t{0});
  return make_value(static_cast<double>(hits), pair_count(n));
}

DepthValue member_depth(const DistanceOracle& sample, std::size_t k) {
  require_sample(sample);
  if (k >= sample.size()) {
    throw Error(ErrorKind::InvalidArgument, "member index " + std::to_string(k) + " out of range");
  }
  std::vector<double> distances(sample.size());
  for (std::size_t i = 0; i < sample.size(); ++i) {
    distances[i] = sample.distance(i, k);
  }
  return empirical_depth(sample, distances);
}

DepthValue adjusted_depth(const DistanceOracle& sample, std::span<const double> query_distances,
                          const AdjustmentFunction& w) {
  require_query(sample, query_distances);
  const std::size_t n = sample.size();
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d12 = oracle_distance(sample, i, j);
      const double excess = std::max(0.0, std::max(query_distances[i], query_distances[j]) - d12);
      total += w(excess);
    }
  }
  return make_value(total, pair_count(n));
}

std::pair<std::size_t, std::size_t> unrank_pair(std::uint64_t rank, std::size_t n) {
  // Row i starts at rank i*(2n - i - 1)/2.
  const auto m = static_cast<std::uint64_t>(n);
  auto row_start = [m](std::uint64_t i) { return i * (2 * m - i - 1) / 2; };
  const double b = 2.0 * static_cast<double>(m) - 1.0;
  const double disc = b * b - 8.0 * static_cast<double>(rank);
  auto i = static_cast<std::uint64_t>(std::max(0.0, std::floor((b - std::sqrt(std::max(0.0, disc))) / 2.0)));
  i = std::min<std::uint64_t>(i, m - 2);
  while (i > 0 && row_start(i) > rank) {
    --i;
  }
  while (i + 1 < m - 1 && row_start(i + 1) <= rank) {
    ++i;
  }
  const std::uint64_t j = i + 1 + (rank - row_start(i));
  return {static_cast<std::size_t>(i), static_cast<std::size_t>(j)};
}

DepthValue subsampled_depth(const DistanceOracle& sample, std::span<const double> query_distances,
                            std::uint64_t budget, std::uint64_t seed) {
  if (budget == 0) {
    throw Error(ErrorKind::InvalidBudget, "subsampling budget must be at least 1");
  }
  require_query(sample, query_distances);
  const std::size_t n = sample.size();
  const std::uint64_t total = pair_count(n);
  if (budget >= total) {
    return empirical_depth(sample, query_distances);
  }

  Rng rng(seed);
  std::unordered_set<std::uint64_t> chosen;
  chosen.reserve(static_cast<std::size_t>(budget));
  for (std::uint64_t top = total - budget; top < total; ++top) {
    const std::uint64_t t = rng.below(top + 1);
    if (!chosen.insert(t).second) {
      chosen.insert(top);
    }
  }

  std::uint64_t hits = 0;
  for (const std::uint64_t rank : chosen) {
    const auto [i, j] = unrank_pair(rank, n);
    hits += oracle_distance(sample, i, j) > std::max(query_distances[i], query_distances[j]) ? 1 : 0;
  }
  return make_value(static_cast<double>(hits), budget);
}

DepthValue evaluate_depth(const DistanceOracle& sample, std::span<const double> query_distances,
                          const Engine& engine) {
  if (engine.mode == Engine::Mode::Subsampled) {
    return subsampled_depth(sample, query_distances, engine.budget, engine.seed);
  }
  return empirical_depth(sample, query_distances);
}

std::vector<DepthValue> depth_profile(const DistanceOracle& sample,
                                      const std::vector<std::vector<double>>& query_distances,
                                      const Engine& engine) {
  require_sample(sample);
  if (query_distances.empty()) {
    throw Error(ErrorKind::InvalidArgument, "depth profile needs at least one query");
  }
  std::vector<DepthValue> out(query_distances.size());
  parallel_for(query_distances.size(), [&](std::size_t k) {
    try {
      out[k] = evaluate_depth(sample, query_distances[k], engine);
    } catch (const Error& e) {
      throw Error(e.kind(), "query " + std::to_string(k) + ": " + e.what());
    }
  });
  return out;
}

}  // namespace metric_depth
