#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "gcpvcr/quantile.hpp"

using namespace gcpvcr;

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

// Materialises the augmented multiset {values} ∪ {∞}, sorts it and indexes it at
// k = ceil((1 - beta)(n + 1)); k = 0 means the empty (excluded) ball.
Radius naive_quantile(std::vector<double> values, std::size_t t) {
  const std::size_t n = values.size();
  values.push_back(inf);
  std::sort(values.begin(), values.end());
  const double beta = static_cast<double>(t) / static_cast<double>(n + 1);
  const auto k = static_cast<std::size_t>(std::ceil((1.0 - beta) * static_cast<double>(n + 1) - 1e-9));
  if (k == 0) return Radius::excluded();
  const double v = values[k - 1];
  return std::isinf(v) ? Radius::infinite() : Radius::finite(v);
}

ScoreMatrix tiny() { return ScoreMatrix(2, 2, {1, 5, 5, 1}); }

}  // namespace

TEST_CASE("empirical quantile examples") {
  const SortedScoreColumn col({9, 3, 1, 7, 5, 2, 4, 6, 8});
  CHECK(empirical_quantile(col, 1) == Radius::finite(9));
  CHECK(empirical_quantile(col, 0).is_infinite());
  CHECK(empirical_quantile(col, 10).is_excluded());
  CHECK(empirical_quantile(col, 5) == Radius::finite(5));
  CHECK_THROWS_AS(empirical_quantile(col, 11), Error);
}

TEST_CASE("empirical quantile with ties uses sorted position") {
  const SortedScoreColumn col({2, 2, 2, 1});
  CHECK(empirical_quantile(col, 1) == Radius::finite(2));
  CHECK(empirical_quantile(col, 4) == Radius::finite(1));
  CHECK(col.covered_prefix(Radius::finite(2)) == 4);
  CHECK(col.covered_prefix(Radius::finite(1.5)) == 1);
}

TEST_CASE("empirical quantile matches the augmented-multiset oracle") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 40)(rng);
    std::vector<double> v(n);
    for (auto& x : v) x = std::uniform_int_distribution<int>(0, 10)(rng) * 0.5;  // ties on purpose
    const std::size_t t = std::uniform_int_distribution<std::size_t>(0, n + 1)(rng);
    CHECK(empirical_quantile(SortedScoreColumn(v), t) == naive_quantile(v, t));
  }
}

TEST_CASE("quantile is monotone non-increasing in the grid index") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 30)(rng);
    std::vector<double> v(n);
    for (auto& x : v) x = std::exponential_distribution<double>(1.0)(rng);
    const SortedScoreColumn col(v);
    for (std::size_t t = 0; t + 1 <= n + 1; ++t) CHECK(empirical_quantile(col, t + 1) <= empirical_quantile(col, t));
  }
}

TEST_CASE("radius order and coverage predicate") {
  CHECK(Radius::excluded() < Radius::finite(0.0));
  CHECK(Radius::finite(1e300) < Radius::infinite());
  CHECK_FALSE(Radius::excluded().covers(0.0));
  CHECK(Radius::finite(0.0).covers(0.0));
  CHECK(Radius::infinite().covers(inf));
  CHECK_THROWS_AS(Radius::finite(-1.0), Error);
}

TEST_CASE("covered examples") {
  CHECK(covered(std::vector<double>{0.5, 2.0}, {Radius::finite(1.0), Radius::finite(1.5)}));
  CHECK_FALSE(covered(std::vector<double>{inf, inf}, {Radius::finite(1.0), Radius::finite(1e9)}));
  CHECK(covered(std::vector<double>{inf, inf}, {Radius::finite(1.0), Radius::infinite()}));
  CHECK_FALSE(covered(std::vector<double>{0.0, 0.0}, {Radius::excluded(), Radius::excluded()}));
  CHECK(covered(std::vector<double>{2.0}, {Radius::finite(2.0)}));  // inclusive
}

TEST_CASE("calibration coverage examples") {
  const ScoreMatrix s = tiny();
  CHECK(calibration_coverage(s, BetaVector(2, 2, 0)) == Coverage{3, 3});
  CHECK(calibration_coverage(s, BetaVector(2, 2, 3)) == Coverage{0, 3});
  const Coverage c = calibration_coverage(s, BetaVector(2, {2, 2}));
  CHECK(c == Coverage{2, 3});
  CHECK(c.value() == doctest::Approx(2.0 / 3.0));
  CHECK(radii_for(s, BetaVector(2, {2, 2})) == RadiusVector{Radius::finite(1), Radius::finite(1)});
}

TEST_CASE("any rank at beta zero gives full coverage") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 15, k = 4;
    std::vector<double> data(n * k);
    for (auto& x : data) x = std::exponential_distribution<double>(1.0)(rng);
    const ScoreMatrix s(n, k, data);
    std::vector<std::uint32_t> beta(k);
    for (auto& b : beta) b = std::uniform_int_distribution<std::uint32_t>(1, n + 1)(rng);
    beta[trial % k] = 0;
    CHECK(calibration_coverage(s, BetaVector(n, beta)) == Coverage{n + 1, n + 1});
  }
}

TEST_CASE("coverage is monotone under elementwise decreasing beta") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 12, k = 3;
    std::vector<double> data(n * k);
    for (auto& x : data) x = std::uniform_int_distribution<int>(0, 6)(rng);
    const ScoreMatrix s(n, k, data);
    std::vector<std::uint32_t> hi(k), lo(k);
    for (std::size_t r = 0; r < k; ++r) {
      hi[r] = std::uniform_int_distribution<std::uint32_t>(0, n + 1)(rng);
      lo[r] = std::uniform_int_distribution<std::uint32_t>(0, hi[r])(rng);
    }
    CHECK(calibration_coverage(s, BetaVector(n, lo)).covered >= calibration_coverage(s, BetaVector(n, hi)).covered);
  }
}

TEST_CASE("objective examples and monotonicity") {
  CHECK(objective({Radius::finite(1), Radius::finite(1)}, 1) == 2.0);
  CHECK(objective({Radius::excluded(), Radius::finite(5)}, 1) == 5.0);
  CHECK(std::isinf(objective({Radius::finite(1), Radius::infinite()}, 2)));
  CHECK(objective({Radius::finite(2), Radius::finite(3)}, 2) == 13.0);
  CHECK(objective({Radius::finite(2), Radius::finite(3)}, 2) <= objective({Radius::finite(2.5), Radius::finite(3)}, 2));
}

TEST_CASE("required cover count absorbs representation error") {
  CHECK(required_cover_count(0.1, 9) == 9);
  CHECK(required_cover_count(0.1, 1000) == 901);
  CHECK(required_cover_count(0.5, 2) == 2);
  CHECK(alpha_grid_index(0.1, 9) == 1);
  CHECK(meets_target(Coverage{9, 10}, 0.1));
  CHECK_FALSE(meets_target(Coverage{8, 10}, 0.1));
  CHECK_THROWS_AS(required_cover_count(0.0, 5), Error);
}

TEST_CASE("coverage tracker agrees with direct evaluation on random walks") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 25, k = 4;
    std::vector<double> data(n * k);
    for (auto& x : data) x = std::uniform_int_distribution<int>(0, 8)(rng);
    const ScoreMatrix s(n, k, data);
    CoverageTracker tracker(s, BetaVector(n, k, static_cast<std::uint32_t>(n + 1)));
    for (int step = 0; step < 200; ++step) {
      const std::size_t r = std::uniform_int_distribution<std::size_t>(0, k - 1)(rng);
      tracker.set(r, std::uniform_int_distribution<std::uint32_t>(0, n + 1)(rng));
      REQUIRE(tracker.coverage() == calibration_coverage(s, tracker.beta()));
    }
  }
}

TEST_CASE("score matrix keeps row and column views consistent") {
  const ScoreMatrix s(3, 2, {3, 0.5, 1, 2, 2, 1});
  CHECK(s.row(1)[0] == 1);
  const auto col0 = s.column(0).values();
  CHECK(std::vector<double>(col0.begin(), col0.end()) == std::vector<double>{1, 2, 3});
  const auto ord = s.column_order(1);
  CHECK(std::vector<std::uint32_t>(ord.begin(), ord.end()) == std::vector<std::uint32_t>{0, 2, 1});
  CHECK_THROWS_AS(ScoreMatrix(2, 2, {1, 2, 3}), Error);
  CHECK_THROWS_AS(ScoreMatrix(1, 2, {1, -2}), Error);
}
