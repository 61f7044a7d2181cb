#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "gcpvcr/predictor.hpp"

using namespace gcpvcr;

namespace {

PointSet line(std::vector<double> xs) { return PointSet(1, std::move(xs)); }

bool has(const PredictionSet& s, double y) { return s.contains(std::vector<double>{y}); }

}  // namespace

TEST_CASE("vcr set membership") {
  const auto ranked = rank_by_density(line({0.0, 10.0}), 1);
  const auto set = build_vcr_set(ranked, {Radius::finite(1), Radius::finite(0.5)});
  CHECK(has(set, 10.4));
  CHECK(has(set, 10.5));  // boundary is inclusive
  CHECK_FALSE(has(set, 10.5 + 1e-12));
  CHECK(has(set, -1.0));
  CHECK_FALSE(has(set, 5.0));

  const auto empty = build_vcr_set(ranked, {Radius::excluded(), Radius::excluded()});
  CHECK(empty.is_empty());
  CHECK_FALSE(has(empty, 0.0));
  const auto all = build_vcr_set(ranked, {Radius::excluded(), Radius::infinite()});
  CHECK(all.is_universal());
  CHECK(has(all, 1e300));
  CHECK_THROWS_AS(build_vcr_set(ranked, {Radius::finite(1)}), Error);
  CHECK_THROWS_AS(set.contains(std::vector<double>{0.0, 0.0}), Error);
}

TEST_CASE("pcp set membership") {
  const auto zero = build_pcp_set(line({0.0, 1.0}), Radius::finite(0.0));
  CHECK(has(zero, 1.0));
  CHECK_FALSE(has(zero, 0.5));
  const auto merged = build_pcp_set(line({0.0, 1.0}), Radius::finite(0.625));
  CHECK(has(merged, -0.625));
  CHECK(has(merged, 0.5));
  CHECK(has(merged, 1.625));
  CHECK_FALSE(has(merged, 1.63));
  CHECK(build_pcp_set(line({0.0}), Radius::infinite()).is_universal());
}

TEST_CASE("union length examples") {
  const std::vector<std::pair<double, double>> overlap{{0, 2}, {1, 3}};
  const std::vector<std::pair<double, double>> apart{{5, 6}, {0, 1}};
  CHECK(union_length(overlap) == 3.0);
  CHECK(union_length(apart) == 2.0);
  CHECK(union_length({}) == 0.0);

  Rng rng(1);
  const auto set = build_pcp_set(line({1.0, 2.0}), Radius::finite(1.0));
  const auto m = measure(set, 0, rng);
  CHECK(m.value == 3.0);
  CHECK(m.estimator == SetMeasure::Estimator::exact);
}

TEST_CASE("union length matches a fine grid count") {
  std::mt19937_64 g(6);
  for (int trial = 0; trial < 100; ++trial) {
    // endpoints on a 1/4 grid, counted cell by cell
    std::vector<std::pair<double, double>> iv;
    std::vector<bool> cell(400, false);
    const int count = 1 + trial % 8;
    for (int i = 0; i < count; ++i) {
      const int a = std::uniform_int_distribution<int>(0, 380)(g);
      const int b = a + std::uniform_int_distribution<int>(0, 19)(g);
      iv.emplace_back(a / 4.0, b / 4.0);
      for (int c = a; c < b; ++c) cell[static_cast<std::size_t>(c)] = true;
    }
    CHECK(union_length(iv) == std::count(cell.begin(), cell.end(), true) / 4.0);
  }
}

TEST_CASE("measure of degenerate sets and argument checks") {
  Rng rng(2);
  const auto all = build_pcp_set(PointSet(2, {0, 0}), Radius::infinite());
  CHECK(std::isinf(measure(all, 10, rng).value));
  const auto none = build_pcp_set(PointSet(2, {0, 0}), Radius::excluded());
  CHECK(measure(none, 10, rng).value == 0.0);
  CHECK_THROWS_AS(measure(none, 0, rng), Error);
  CHECK_THROWS_AS(measure(build_pcp_set(PointSet(2, {0, 0}), Radius::finite(1)), 0, rng), Error);
}

TEST_CASE("Monte Carlo area of two separated disks") {
  Rng rng(3);
  const auto set = build_pcp_set(PointSet(2, {0, 0, 10, 0}), Radius::finite(1.0));
  const auto m = measure(set, 200000, rng);
  CHECK(m.estimator == SetMeasure::Estimator::monte_carlo);
  CHECK(m.samples == 200000);
  CHECK(m.standard_error > 0.0);
  CHECK(std::abs(m.value - 2 * std::numbers::pi) <= 3 * m.standard_error);
}

TEST_CASE("Monte Carlo in 1-D agrees with the sweep") {
  Rng rng(4);
  std::mt19937_64 g(4);
  int inside = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t k = 1 + trial % 6;
    std::vector<double> c(k);
    for (auto& v : c) v = std::uniform_real_distribution<double>(-5, 5)(g);
    const auto set = build_pcp_set(line(c), Radius::finite(std::uniform_real_distribution<double>(0.1, 2)(g)));
    const double exact = measure(set, 0, rng).value;
    const auto mc = measure_monte_carlo(set, 20000, rng);
    if (std::abs(mc.value - exact) <= 3 * mc.standard_error + 1e-12) ++inside;
  }
  CHECK(inside >= 38);  // 3 SE bands miss about 0.3% of the time each
}

TEST_CASE("Monte Carlo estimate is reproducible for a fixed seed") {
  const auto set = build_pcp_set(PointSet(3, {0, 0, 0, 1, 1, 1}), Radius::finite(1.0));
  Rng a(9), b(9);
  CHECK(measure(set, 5000, a).value == measure(set, 5000, b).value);
}

TEST_CASE("surrogate volume bounds the union from above") {
  const auto set = build_pcp_set(line({0.0, 1.0}), Radius::finite(1.0));
  CHECK(surrogate_volume(set) == 2.0);  // sum of radius^d
  Rng rng(1);
  CHECK(measure(set, 0, rng).value <= 2 * surrogate_volume(set));
}
