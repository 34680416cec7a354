#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "metric_depth/depth.hpp"

namespace metric_depth {

using Point2 = std::array<double, 2>;

struct Box {
  double x1_lo, x1_hi, x2_lo, x2_hi;
};

// Union of closed axis-aligned boxes.
class PlanarRegion {
 public:
  explicit PlanarRegion(std::vector<Box> boxes);
  const std::vector<Box>& boxes() const { return boxes_; }
  bool contains(const Point2& p) const;

 private:
  std::vector<Box> boxes_;
};

// Four unit squares on the diagonals, symmetric about the origin.
PlanarRegion four_squares_region();
// Rectangular frame around the hole (-3, 3) x (-1, 1).
PlanarRegion frame_region();

// Equal-weight mixture of N((-3, 0), I) and N((3, 0), I). Each draw flips a
// fair coin (uniform < 0.5 selects the -3 component) and then takes two
// standard normals from the Box-Muller stream of Rng(seed).
std::vector<Point2> sample_mixture_normal(std::size_t n, std::uint64_t seed);

// Probe budget for detecting regions the rejection sampler cannot reach.
inline constexpr std::uint64_t kRejectionProbeBudget = 10'000'000;
inline constexpr double kMinimumAcceptanceRate = 1e-6;

// Standard bivariate normal restricted to `region`, by rejection.
std::vector<Point2> sample_truncated_normal(const PlanarRegion& region, std::size_t n, std::uint64_t seed);

// Counterexample id 1 (mixture), 2 (four squares) or 3 (frame).
std::vector<Point2> sample_counterexample(int example, std::size_t n, std::uint64_t seed);
std::string counterexample_name(int example);
// Default half-width of the square evaluation window for each example.
double default_half_width(int example);

// `count` equally spaced points on [-half_width, half_width], built so that
// axis[count - 1 - k] == -axis[k] exactly (and 0 is present for odd count).
std::vector<double> symmetric_axis(double half_width, std::size_t count);

struct DepthMap {
  std::vector<double> x1_axis;
  std::vector<double> x2_axis;
  // values[i1 * x2_axis.size() + i2] is the depth at (x1_axis[i1], x2_axis[i2]).
  std::vector<double> values;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::string distribution;

  double at(std::size_t i1, std::size_t i2) const { return values[i1 * x2_axis.size() + i2]; }
};

// Exact Euclidean lens depth of q. Pairs are compared on squared distances,
// which leaves the depth unchanged since only comparisons enter it.
DepthValue planar_lens_depth(std::span<const Point2> points, const Point2& query);

// Euclidean depth at every grid node, parallel across nodes.
DepthMap grid_depth_map(std::span<const Point2> points, std::vector<double> x1_axis,
                        std::vector<double> x2_axis, const Engine& engine = Engine::exact());

enum class SectionLine { X2Zero, X1Zero, Diagonal };

const char* to_string(SectionLine line);

struct SectionPoint {
  double coordinate;
  double depth;
};

// Depths along a line through the origin, ordered by coordinate (x1 for
// X2Zero and Diagonal, x2 for X1Zero).
std::vector<SectionPoint> section(const DepthMap& map, SectionLine line);

struct CenterReport {
  double center_depth = 0.0;
  double global_max_depth = 0.0;
  std::vector<Point2> argmax;
  bool is_center_max = false;
};

inline constexpr double kCenterTolerance = 1e-12;

CenterReport center_maximality_check(const DepthMap& map);

}  // namespace metric_depth
