#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "metric_depth/counterexamples.hpp"
#include "test_support.hpp"

using namespace metric_depth;

namespace {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double box_mass(const Box& b) {
  return (normal_cdf(b.x1_hi) - normal_cdf(b.x1_lo)) * (normal_cdf(b.x2_hi) - normal_cdf(b.x2_lo));
}

bool inside(const Box& b, const Point2& p) {
  return p[0] >= b.x1_lo && p[0] <= b.x1_hi && p[1] >= b.x2_lo && p[1] <= b.x2_hi;
}

double brute_planar_depth(const std::vector<Point2>& pts, const Point2& q) {
  std::vector<std::vector<double>> pairwise(pts.size(), std::vector<double>(pts.size()));
  std::vector<double> to_q(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    to_q[i] = metric_depth::testing::euclid2(pts[i], q);
    for (std::size_t j = 0; j < pts.size(); ++j) {
      pairwise[i][j] = metric_depth::testing::euclid2(pts[i], pts[j]);
    }
  }
  return metric_depth::testing::brute_force_depth(pairwise, to_q);
}

DepthMap constant_map(std::size_t count, double value) {
  DepthMap map;
  map.x1_axis = symmetric_axis(2.0, count);
  map.x2_axis = symmetric_axis(2.0, count);
  map.values.assign(count * count, value);
  return map;
}

}  // namespace

TEST_CASE("samplers are deterministic in the seed") {
  for (int example = 1; example <= 3; ++example) {
    const auto a = sample_counterexample(example, 200, 42);
    const auto b = sample_counterexample(example, 200, 42);
    const auto c = sample_counterexample(example, 200, 43);
    CHECK(a == b);
    CHECK(a != c);
  }
  CHECK_THROWS_AS(sample_counterexample(4, 10, 1), Error);
  CHECK_THROWS_AS(sample_counterexample(1, 0, 1), Error);
}

TEST_CASE("mixture sampler moments") {
  const auto pts = sample_mixture_normal(100000, 7);
  std::size_t right = 0;
  double sum_x2 = 0.0;
  double sum_abs_x1 = 0.0;
  for (const auto& p : pts) {
    right += p[0] > 0.0 ? 1 : 0;
    sum_x2 += p[1];
    sum_abs_x1 += std::abs(p[0]);
  }
  const double fraction = static_cast<double>(right) / 100000.0;
  CHECK(fraction > 0.494);
  CHECK(fraction < 0.506);
  CHECK(std::abs(sum_x2 / 100000.0) < 0.01);
  // E|X1| for the mixture is close to 3.
  CHECK(std::abs(sum_abs_x1 / 100000.0 - 3.0) < 0.02);
}

TEST_CASE("four squares sampler matches the normal mass of each square") {
  const PlanarRegion region = four_squares_region();
  const std::size_t n = 200000;
  const auto pts = sample_truncated_normal(region, n, 11);
  const auto& boxes = region.boxes();
  std::vector<double> mass;
  double total = 0.0;
  for (const auto& b : boxes) {
    mass.push_back(box_mass(b));
    total += mass.back();
  }
  std::vector<std::size_t> counts(boxes.size(), 0);
  for (const auto& p : pts) {
    REQUIRE(region.contains(p));
    for (std::size_t k = 0; k < boxes.size(); ++k) {
      if (inside(boxes[k], p)) {
        ++counts[k];
        break;
      }
    }
  }
  double chi2 = 0.0;
  for (std::size_t k = 0; k < boxes.size(); ++k) {
    const double p = mass[k] / total;
    const double expected = p * static_cast<double>(n);
    const double sd = std::sqrt(static_cast<double>(n) * p * (1.0 - p));
    CHECK(std::abs(static_cast<double>(counts[k]) - expected) < 3.0 * sd);
    chi2 += (static_cast<double>(counts[k]) - expected) * (static_cast<double>(counts[k]) - expected) / expected;
  }
  // 0.999 quantile of chi-square with 3 degrees of freedom.
  CHECK(chi2 < 16.266);
}

TEST_CASE("frame sampler leaves the hole empty and fits the normal") {
  const PlanarRegion region = frame_region();
  const std::size_t n = 100000;
  const auto pts = sample_truncated_normal(region, n, 5);
  // Cells of the frame split by the sign of x2 and of x1.
  const std::vector<Box> cells{{-4, 0, 1, 2}, {0, 4, 1, 2}, {-4, 0, -2, -1}, {0, 4, -2, -1}, {-4, -3, -1, 1}, {3, 4, -1, 1}};
  std::vector<double> mass;
  double total = 0.0;
  for (const auto& c : cells) {
    mass.push_back(box_mass(c));
    total += mass.back();
  }
  std::vector<double> counts(cells.size(), 0.0);
  for (const auto& p : pts) {
    CHECK_FALSE((p[0] > -3.0 && p[0] < 3.0 && p[1] > -1.0 && p[1] < 1.0));
    for (std::size_t k = 0; k < cells.size(); ++k) {
      if (inside(cells[k], p)) {
        counts[k] += 1.0;
        break;
      }
    }
  }
  double chi2 = 0.0;
  for (std::size_t k = 0; k < cells.size(); ++k) {
    const double expected = mass[k] / total * static_cast<double>(n);
    chi2 += (counts[k] - expected) * (counts[k] - expected) / expected;
  }
  // 0.999 quantile of chi-square with 5 degrees of freedom.
  CHECK(chi2 < 20.515);
}

TEST_CASE("unreachable region is reported as infeasible") {
  const PlanarRegion far({{40.0, 41.0, 40.0, 41.0}});
  try {
    sample_truncated_normal(far, 10, 1);
    FAIL("expected an exception");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InfeasibleRegion);
    CHECK_FALSE(e.is_validation());
  }
}

TEST_CASE("symmetric axis") {
  const auto axis = symmetric_axis(6.0, 21);
  REQUIRE(axis.size() == 21);
  CHECK(axis.front() == -6.0);
  CHECK(axis.back() == 6.0);
  CHECK(axis[10] == 0.0);
  CHECK(axis[15] == 3.0);
  for (std::size_t k = 0; k < axis.size(); ++k) {
    CHECK(axis[20 - k] == -axis[k]);
  }
  const auto even = symmetric_axis(1.0, 4);
  CHECK(even[0] == -even[3]);
  CHECK(even[1] == -even[2]);
  CHECK(symmetric_axis(1.0, 1) == std::vector<double>{0.0});
  CHECK_THROWS_AS(symmetric_axis(1.0, 0), Error);
  CHECK_THROWS_AS(symmetric_axis(0.0, 5), Error);
}

TEST_CASE("planar engine agrees with a brute-force count") {
  std::mt19937_64 gen(17);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 3 + gen() % 40;
    const auto cloud = metric_depth::testing::random_cloud(gen, n);
    std::vector<Point2> pts(cloud.begin(), cloud.end());
    const auto q = metric_depth::testing::random_cloud(gen, 1)[0];
    const DepthValue fast = planar_lens_depth(pts, q);
    CHECK(fast.value == brute_planar_depth(pts, q));
    CHECK(fast.pair_count == n * (n - 1) / 2);
  }
}

TEST_CASE("grid map agrees with pointwise evaluation") {
  const auto pts = sample_counterexample(1, 300, 3);
  const DepthMap map = grid_depth_map(pts, symmetric_axis(6.0, 7), symmetric_axis(6.0, 5));
  REQUIRE(map.values.size() == 35);
  CHECK(map.n == 300);
  for (std::size_t i1 = 0; i1 < 7; ++i1) {
    for (std::size_t i2 = 0; i2 < 5; ++i2) {
      const double v = map.at(i1, i2);
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
      CHECK(v == planar_lens_depth(pts, {map.x1_axis[i1], map.x2_axis[i2]}).value);
    }
  }
  const DepthMap again = grid_depth_map(pts, symmetric_axis(6.0, 7), symmetric_axis(6.0, 5));
  CHECK(again.values == map.values);

  const DepthMap sub = grid_depth_map(pts, symmetric_axis(6.0, 3), symmetric_axis(6.0, 3), Engine::subsampled(2000, 9));
  const DepthMap sub_again = grid_depth_map(pts, symmetric_axis(6.0, 3), symmetric_axis(6.0, 3), Engine::subsampled(2000, 9));
  CHECK(sub.values == sub_again.values);
  for (double v : sub.values) {
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }
}

TEST_CASE("sections") {
  const DepthMap flat = constant_map(5, 0.25);
  for (SectionLine line : {SectionLine::X2Zero, SectionLine::X1Zero, SectionLine::Diagonal}) {
    const auto s = section(flat, line);
    REQUIRE(s.size() == 5);
    for (std::size_t k = 0; k < s.size(); ++k) {
      CHECK(s[k].depth == 0.25);
      CHECK(s[k].coordinate == flat.x1_axis[k]);
    }
  }

  DepthMap ramp = constant_map(5, 0.0);
  for (std::size_t i1 = 0; i1 < 5; ++i1) {
    for (std::size_t i2 = 0; i2 < 5; ++i2) {
      ramp.values[i1 * 5 + i2] = 0.1 * static_cast<double>(i1) + 0.01 * static_cast<double>(i2);
    }
  }
  const auto horizontal = section(ramp, SectionLine::X2Zero);
  CHECK(horizontal[4].depth == doctest::Approx(0.42));
  const auto vertical = section(ramp, SectionLine::X1Zero);
  CHECK(vertical[4].depth == doctest::Approx(0.24));
  const auto diagonal = section(ramp, SectionLine::Diagonal);
  CHECK(diagonal[3].depth == doctest::Approx(0.33));

  DepthMap even = constant_map(4, 0.1);
  CHECK_THROWS_AS(section(even, SectionLine::X2Zero), Error);
}

TEST_CASE("center maximality check") {
  const CenterReport flat = center_maximality_check(constant_map(5, 0.3));
  CHECK(flat.is_center_max);
  CHECK(flat.argmax.size() == 25);

  DepthMap single = constant_map(1 + 2, 0.0);
  single.values[4] = 0.5;
  const CenterReport peak = center_maximality_check(single);
  CHECK(peak.is_center_max);
  REQUIRE(peak.argmax.size() == 1);
  CHECK(peak.argmax[0] == Point2{0.0, 0.0});

  single.values[0] = 0.7;
  const CenterReport off = center_maximality_check(single);
  CHECK_FALSE(off.is_center_max);
  CHECK(off.center_depth == 0.5);
  CHECK(off.global_max_depth == 0.7);
}

TEST_CASE("mixture depth dips at the center") {
  const auto pts = sample_counterexample(1, 1500, 42);
  const DepthMap map = grid_depth_map(pts, symmetric_axis(6.0, 13), symmetric_axis(6.0, 3));
  const CenterReport report = center_maximality_check(map);
  CHECK_FALSE(report.is_center_max);
  const auto s = section(map, SectionLine::X2Zero);
  REQUIRE(s.size() == 13);
  CHECK(s[6].depth < s[5].depth);
  CHECK(s[6].depth < s[7].depth);
}
