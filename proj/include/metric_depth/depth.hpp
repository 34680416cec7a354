#pragma once

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "metric_depth/oracle.hpp"

namespace metric_depth {

// Depth of one query: value = hit_count / pair_count.
struct DepthValue {
  double value = 0.0;
  std::uint64_t pair_count = 0;
  // Lens memberships; integral for the exact and subsampled engines,
  // a weighted sum for the adjusted engine.
  double hit_count = 0.0;
};

// Number of unordered pairs n(n-1)/2.
std::uint64_t pair_count(std::size_t n);

// True iff the query lies strictly inside the lens of a pair: the pair
// distance d12 exceeds both query distances. Boundary ties are outside.
bool lens_contains(double d12, double d1c, double d2c);

// Non-increasing weight on [0, inf) with w(0) = 1 and w(z) -> 0.
class AdjustmentFunction {
 public:
  // Wraps an arbitrary callback; throws Error(InvalidAdjustment) if w(0) != 1.
  explicit AdjustmentFunction(std::function<double(double)> w);

  // 1{z = 0}; reproduces the closed-lens count.
  static AdjustmentFunction indicator();
  // max(0, 1 - z / scale); 1/scale-Lipschitz.
  static AdjustmentFunction linear(double scale);
  // exp(-z / scale).
  static AdjustmentFunction exponential(double scale);

  // Evaluates w and checks the result lies in [0, 1].
  double operator()(double excess) const;

 private:
  std::function<double(double)> w_;
};

// Exact empirical depth: fraction of the C(n,2) sample pairs whose lens
// strictly contains the query. `query_distances[i]` is the distance from the
// query to sample point i. Counting is integer-valued, so the result does not
// depend on scheduling; pair rows are split across worker threads.
DepthValue empirical_depth(const DistanceOracle& sample, std::span<const double> query_distances);

// Depth of sample point k within its own sample. Pairs containing k never
// count but stay in the denominator.
DepthValue member_depth(const DistanceOracle& sample, std::size_t k);

// Smoothed depth: mean over pairs of w(max(0, max(d1c, d2c) - d12)).
// Pairs are accumulated in lexicographic (i < j) order on one thread.
DepthValue adjusted_depth(const DistanceOracle& sample, std::span<const double> query_distances,
                          const AdjustmentFunction& w);

// Unbiased estimate of empirical_depth from `budget` distinct pairs drawn
// uniformly without replacement (Floyd's algorithm over lexicographic pair
// ranks, driven by Rng(seed)). A budget covering all pairs evaluates exactly.
DepthValue subsampled_depth(const DistanceOracle& sample, std::span<const double> query_distances,
                            std::uint64_t budget, std::uint64_t seed);

// Maps a lexicographic pair rank in [0, C(n,2)) to (i, j) with i < j.
std::pair<std::size_t, std::size_t> unrank_pair(std::uint64_t rank, std::size_t n);

struct Engine {
  enum class Mode { Exact, Subsampled };
  Mode mode = Mode::Exact;
  std::uint64_t budget = 0;
  std::uint64_t seed = 0;

  static Engine exact() { return {}; }
  static Engine subsampled(std::uint64_t budget, std::uint64_t seed) {
    return {Mode::Subsampled, budget, seed};
  }
};

DepthValue evaluate_depth(const DistanceOracle& sample, std::span<const double> query_distances,
                          const Engine& engine);

// Batch driver; element k equals evaluate_depth on query k. Queries run in
// parallel, each on one thread. Errors are rethrown with the offending query
// index prefixed to the message.
std::vector<DepthValue> depth_profile(const DistanceOracle& sample,
                                      const std::vector<std::vector<double>>& query_distances,
                                      const Engine& engine = Engine::exact());

// A sample that can measure distances to queries of type Query.
template <class Sample, class Query>
concept QueryableSample = std::derived_from<Sample, DistanceOracle> && requires(const Sample& s, const Query& q) {
  { s.distances_from(q) } -> std::convertible_to<std::vector<double>>;
};

template <class Sample, class Query>
  requires QueryableSample<Sample, Query>
DepthValue depth_of(const Sample& sample, const Query& query, const Engine& engine = Engine::exact()) {
  const std::vector<double> distances = sample.distances_from(query);
  return evaluate_depth(sample, distances, engine);
}

template <class Sample, class Query>
  requires QueryableSample<Sample, Query>
std::vector<DepthValue> depth_profile(const Sample& sample, std::span<const Query> queries,
                                      const Engine& engine = Engine::exact()) {
  std::vector<std::vector<double>> distances;
  distances.reserve(queries.size());
  for (const Query& q : queries) {
    distances.push_back(sample.distances_from(q));
  }
  return depth_profile(static_cast<const DistanceOracle&>(sample), distances, engine);
}

}  // namespace metric_depth
