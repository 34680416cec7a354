#include "metric_depth/counterexamples.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "metric_depth/parallel.hpp"
#include "metric_depth/random.hpp"

namespace metric_depth {
namespace {

double axis_tolerance(const std::vector<double>& axis) {
  double scale = 1.0;
  for (const double v : axis) {
    scale = std::max(scale, std::abs(v));
  }
  return 1e-12 * scale;
}

std::size_t zero_index(const std::vector<double>& axis, const char* name) {
  const double tol = axis_tolerance(axis);
  for (std::size_t i = 0; i < axis.size(); ++i) {
    if (std::abs(axis[i]) <= tol) {
      return i;
    }
  }
  throw Error(ErrorKind::InvalidArgument, std::string("grid has no node with ") + name + " = 0");
}

void require_increasing(const std::vector<double>& axis, const char* name) {
  if (axis.empty()) {
    throw Error(ErrorKind::InvalidArgument, std::string(name) + " axis is empty");
  }
  for (std::size_t i = 0; i < axis.size(); ++i) {
    if (!std::isfinite(axis[i]) || (i > 0 && !(axis[i] > axis[i - 1]))) {
      throw Error(ErrorKind::InvalidArgument, std::string(name) + " axis must be finite and strictly increasing");
    }
  }
}

// Squared Euclidean distances, for the subsampled engine.
class SquaredEuclidean final : public DistanceOracle {
 public:
  explicit SquaredEuclidean(std::span<const Point2> points) : points_(points) {}
  std::size_t size() const override { return points_.size(); }
  double distance(std::size_t i, std::size_t j) const override {
    if (i > j) {
      std::swap(i, j);
    }
    const double dx = points_[i][0] - points_[j][0];
    const double dy = points_[i][1] - points_[j][1];
    return dx * dx + dy * dy;
  }

 private:
  std::span<const Point2> points_;
};

}  // namespace

PlanarRegion::PlanarRegion(std::vector<Box> boxes) : boxes_(std::move(boxes)) {
  if (boxes_.empty()) {
    throw Error(ErrorKind::InvalidArgument, "region needs at least one box");
  }
  for (const Box& b : boxes_) {
    if (!(b.x1_hi > b.x1_lo) || !(b.x2_hi > b.x2_lo)) {
      throw Error(ErrorKind::InvalidArgument, "region boxes need positive area");
    }
  }
}

bool PlanarRegion::contains(const Point2& p) const {
  return std::any_of(boxes_.begin(), boxes_.end(), [&](const Box& b) {
    return p[0] >= b.x1_lo && p[0] <= b.x1_hi && p[1] >= b.x2_lo && p[1] <= b.x2_hi;
  });
}

PlanarRegion four_squares_region() {
  return PlanarRegion({{-2, -1, -2, -1}, {-3, -2, 2, 3}, {1, 2, 1, 2}, {2, 3, -3, -2}});
}

PlanarRegion frame_region() {
  return PlanarRegion({{-4, -3, -1, 1}, {-4, 4, 1, 2}, {3, 4, -1, 1}, {-4, 4, -2, -1}});
}

std::vector<Point2> sample_mixture_normal(std::size_t n, std::uint64_t seed) {
  if (n == 0) {
    throw Error(ErrorKind::InvalidArgument, "sample size must be at least 1");
  }
  Rng rng(seed);
  std::vector<Point2> out(n);
  for (auto& p : out) {
    const double shift = rng.uniform() < 0.5 ? -3.0 : 3.0;
    p[0] = shift + rng.normal();
    p[1] = rng.normal();
  }
  return out;
}

std::vector<Point2> sample_truncated_normal(const PlanarRegion& region, std::size_t n, std::uint64_t seed) {
  if (n == 0) {
    throw Error(ErrorKind::InvalidArgument, "sample size must be at least 1");
  }
  Rng rng(seed);
  std::vector<Point2> out;
  out.reserve(n);
  std::uint64_t proposals = 0;
  std::uint64_t window_accepted = 0;
  while (out.size() < n) {
    Point2 p{rng.normal(), rng.normal()};
    ++proposals;
    if (region.contains(p)) {
      out.push_back(p);
      ++window_accepted;
    }
    if (proposals % kRejectionProbeBudget == 0) {
      if (static_cast<double>(window_accepted) < kMinimumAcceptanceRate * static_cast<double>(kRejectionProbeBudget)) {
        throw Error(ErrorKind::InfeasibleRegion, "rejection sampler acceptance rate below 1e-6");
      }
      window_accepted = 0;
    }
  }
  return out;
}

std::vector<Point2> sample_counterexample(int example, std::size_t n, std::uint64_t seed) {
  switch (example) {
    case 1: return sample_mixture_normal(n, seed);
    case 2: return sample_truncated_normal(four_squares_region(), n, seed);
    case 3: return sample_truncated_normal(frame_region(), n, seed);
    default: throw Error(ErrorKind::InvalidArgument, "counterexample must be 1, 2 or 3");
  }
}

std::string counterexample_name(int example) {
  switch (example) {
    case 1: return "mixture-normal";
    case 2: return "normal-four-squares";
    case 3: return "normal-frame";
    default: throw Error(ErrorKind::InvalidArgument, "counterexample must be 1, 2 or 3");
  }
}

double default_half_width(int example) {
  return example == 1 ? 6.0 : 5.0;
}

std::vector<double> symmetric_axis(double half_width, std::size_t count) {
  if (count == 0 || !(half_width > 0.0) || !std::isfinite(half_width)) {
    throw Error(ErrorKind::InvalidArgument, "axis needs a positive half-width and at least one node");
  }
  if (count == 1) {
    return {0.0};
  }
  const auto last = static_cast<double>(count - 1);
  std::vector<double> axis(count);
  for (std::size_t k = 0; k < count; ++k) {
    const double signed_steps = 2.0 * static_cast<double>(k) - last;  // exact integer
    axis[k] = signed_steps / last * half_width;
  }
  return axis;
}

DepthValue planar_lens_depth(std::span<const Point2> points, const Point2& query) {
  const std::size_t n = points.size();
  if (n < 2) {
    throw Error(ErrorKind::InsufficientSample, "depth needs at least 2 sample points");
  }
  std::vector<double> radius2(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = points[i][0] - query[0];
    const double dy = points[i][1] - query[1];
    radius2[i] = dx * dx + dy * dy;
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return radius2[a] < radius2[b]; });

  std::vector<double> xs(n);
  std::vector<double> ys(n);
  std::vector<double> rs(n);
  for (std::size_t r = 0; r < n; ++r) {
    xs[r] = points[order[r]][0];
    ys[r] = points[order[r]][1];
    rs[r] = radius2[order[r]];
  }

  // Same single-comparison scheme as empirical_depth; kept as a tight loop
  // over contiguous coordinates so it vectorises.
  std::uint64_t hits = 0;
  const double* x = xs.data();
  const double* y = ys.data();
  for (std::size_t r = 1; r < n; ++r) {
    const double xr = x[r];
    const double yr = y[r];
    const double rr = rs[r];
    std::int64_t row = 0;
    for (std::size_t s = 0; s < r; ++s) {
      const double dx = x[s] - xr;
      const double dy = y[s] - yr;
      row += (dx * dx + dy * dy > rr) ? 1 : 0;
    }
    hits += static_cast<std::uint64_t>(row);
  }
  const std::uint64_t pairs = pair_count(n);
  return {static_cast<double>(hits) / static_cast<double>(pairs), pairs, static_cast<double>(hits)};
}

DepthMap grid_depth_map(std::span<const Point2> points, std::vector<double> x1_axis, std::vector<double> x2_axis,
                        const Engine& engine) {
  require_increasing(x1_axis, "x1");
  require_increasing(x2_axis, "x2");
  if (points.size() < 2) {
    throw Error(ErrorKind::InsufficientSample, "depth map needs at least 2 sample points");
  }
  DepthMap map;
  map.x1_axis = std::move(x1_axis);
  map.x2_axis = std::move(x2_axis);
  map.n = points.size();
  map.seed = engine.seed;
  const std::size_t cols = map.x2_axis.size();
  map.values.assign(map.x1_axis.size() * cols, 0.0);

  const SquaredEuclidean oracle(points);
  parallel_for(map.values.size(), [&](std::size_t node) {
    const Point2 q{map.x1_axis[node / cols], map.x2_axis[node % cols]};
    if (engine.mode == Engine::Mode::Exact) {
      map.values[node] = planar_lens_depth(points, q).value;
      return;
    }
    std::vector<double> radius2(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
      const double dx = points[i][0] - q[0];
      const double dy = points[i][1] - q[1];
      radius2[i] = dx * dx + dy * dy;
    }
    map.values[node] = subsampled_depth(oracle, radius2, engine.budget, engine.seed).value;
  });
  return map;
}

const char* to_string(SectionLine line) {
  switch (line) {
    case SectionLine::X2Zero: return "x2=0";
    case SectionLine::X1Zero: return "x1=0";
    case SectionLine::Diagonal: return "x1=x2";
  }
  return "unknown";
}

std::vector<SectionPoint> section(const DepthMap& map, SectionLine line) {
  std::vector<SectionPoint> out;
  switch (line) {
    case SectionLine::X2Zero: {
      const std::size_t j = zero_index(map.x2_axis, "x2");
      for (std::size_t i = 0; i < map.x1_axis.size(); ++i) {
        out.push_back({map.x1_axis[i], map.at(i, j)});
      }
      break;
    }
    case SectionLine::X1Zero: {
      const std::size_t i = zero_index(map.x1_axis, "x1");
      for (std::size_t j = 0; j < map.x2_axis.size(); ++j) {
        out.push_back({map.x2_axis[j], map.at(i, j)});
      }
      break;
    }
    case SectionLine::Diagonal: {
      const double tol = std::max(axis_tolerance(map.x1_axis), axis_tolerance(map.x2_axis));
      std::size_t j = 0;
      for (std::size_t i = 0; i < map.x1_axis.size(); ++i) {
        while (j < map.x2_axis.size() && map.x2_axis[j] < map.x1_axis[i] - tol) {
          ++j;
        }
        if (j < map.x2_axis.size() && std::abs(map.x2_axis[j] - map.x1_axis[i]) <= tol) {
          out.push_back({map.x1_axis[i], map.at(i, j)});
        }
      }
      if (out.empty()) {
        throw Error(ErrorKind::InvalidArgument, "line x1=x2 misses every grid node");
      }
      break;
    }
  }
  return out;
}

CenterReport center_maximality_check(const DepthMap& map) {
  const std::size_t i0 = zero_index(map.x1_axis, "x1");
  const std::size_t j0 = zero_index(map.x2_axis, "x2");
  CenterReport report;
  report.center_depth = map.at(i0, j0);
  report.global_max_depth = *std::max_element(map.values.begin(), map.values.end());
  for (std::size_t i = 0; i < map.x1_axis.size(); ++i) {
    for (std::size_t j = 0; j < map.x2_axis.size(); ++j) {
      if (map.at(i, j) >= report.global_max_depth - kCenterTolerance) {
        report.argmax.push_back({map.x1_axis[i], map.x2_axis[j]});
      }
    }
  }
  report.is_center_max = report.center_depth >= report.global_max_depth - kCenterTolerance;
  return report;
}

}  // namespace metric_depth
