#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "gcpvcr/optimizer.hpp"

using namespace gcpvcr;

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

ScoreMatrix tiny() { return ScoreMatrix(2, 2, {1, 5, 5, 1}); }

ScoreMatrix random_scores(std::mt19937_64& rng, std::size_t n, std::size_t k, bool ties) {
  std::vector<double> v(n * k);
  for (auto& x : v)
    x = ties ? std::uniform_int_distribution<int>(0, 5)(rng) : std::exponential_distribution<double>(1.0)(rng);
  return ScoreMatrix(n, k, v);
}

// Radius as a plain double: -1 for excluded, +inf for infinite.
double naive_radius(std::vector<double> col, std::size_t t) {
  const std::size_t n = col.size();
  col.push_back(inf);
  std::sort(col.begin(), col.end());
  const std::size_t k = n + 1 - t;
  return k == 0 ? -1.0 : col[k - 1];
}

struct Naive {
  double objective;
  bool found;
};

// Full grid enumeration with its own coverage count.
Naive naive_exact(const ScoreMatrix& s, double alpha, std::size_t d) {
  const std::size_t n = s.n(), k = s.k();
  const auto need = static_cast<std::size_t>(std::ceil((1.0 - alpha) * static_cast<double>(n + 1) - 1e-9));
  std::vector<std::vector<double>> cols(k);
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t i = 0; i < n; ++i) cols[r].push_back(s.row(i)[r]);
  Naive best{inf, false};
  std::vector<std::size_t> t(k, 0);
  while (true) {
    std::vector<double> rad(k);
    for (std::size_t r = 0; r < k; ++r) rad[r] = naive_radius(cols[r], t[r]);
    std::size_t cov = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t r = 0; r < k; ++r)
        if (rad[r] >= 0 && s.row(i)[r] <= rad[r]) {
          ++cov;
          break;
        }
    if (std::any_of(rad.begin(), rad.end(), [](double x) { return std::isinf(x); })) ++cov;
    if (cov >= need) {
      double obj = 0;
      for (double x : rad)
        if (x > 0) obj += std::pow(x, static_cast<double>(d));
      best.found = true;
      best.objective = std::min(best.objective, obj);
    }
    std::size_t r = 0;
    while (r < k && ++t[r] == n + 2) t[r++] = 0;
    if (r == k) break;
  }
  return best;
}

void check_solution_consistent(const ScoreMatrix& s, const OptimizerConfig& c, const Solution& sol) {
  CHECK(sol.radii == radii_for(s, sol.beta));
  CHECK(sol.coverage == calibration_coverage(s, sol.beta));
  CHECK(sol.feasible == meets_target(sol.coverage, c.alpha));
  CHECK(sol.objective == objective(sol.radii, c.dim));
}

}  // namespace

TEST_CASE("tiny instance: exact optimum") {
  OptimizerConfig c;
  c.alpha = 0.5;
  const auto e = solve_exact(tiny(), c);
  CHECK(e.objective == 2.0);
  CHECK(e.radii == RadiusVector{Radius::finite(1), Radius::finite(1)});
  CHECK(e.coverage == Coverage{2, 3});
  CHECK(e.feasible);
}

TEST_CASE("tiny instance: heuristic phases") {
  OptimizerConfig c;
  c.alpha = 0.5;
  c.budget = 0;
  const auto p1 = solve_heuristic(tiny(), c, 0);
  CHECK(p1.beta.indices() == std::vector<std::uint32_t>{1, 3});
  CHECK(p1.radii == RadiusVector{Radius::finite(5), Radius::excluded()});
  CHECK(p1.objective == 5.0);

  c.budget = 1;
  const auto one = solve_heuristic(tiny(), c, 0);
  CHECK(one.beta.indices() == std::vector<std::uint32_t>{2, 2});
  CHECK(one.objective == 2.0);
  CHECK(one.coverage == Coverage{2, 3});

  c.budget = 20;
  c.starts = {0};
  CHECK(solve_multistart(tiny(), c).objective == 2.0);
  c.starts = {1};
  CHECK(solve_multistart(tiny(), c).objective == 2.0);
  c.starts = {};
  CHECK(solve_multistart(tiny(), c).objective == 2.0);
}

TEST_CASE("K=1 reduces to split conformal") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 5 + trial;
    const auto s = random_scores(rng, n, 1, trial % 2 == 0);
    OptimizerConfig c;
    c.alpha = 0.1 + 0.01 * (trial % 20);
    c.budget = 0;
    std::vector<double> col(s.data().begin(), s.data().end());
    std::sort(col.begin(), col.end());
    const std::size_t need = required_cover_count(c.alpha, n);
    const Radius expect = need > n ? Radius::infinite() : Radius::finite(col[need - 1]);
    CHECK(solve_heuristic(s, c, 0).radii[0] == expect);
    CHECK(solve_exact(s, c).radii[0] == expect);
  }
}

TEST_CASE("solve_exact matches brute force enumeration") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 120; ++trial) {
    const std::size_t k = 1 + trial % 3;
    const std::size_t n = 2 + trial % (k == 3 ? 6 : 12);
    const auto s = random_scores(rng, n, k, trial % 3 == 0);
    OptimizerConfig c;
    c.alpha = std::uniform_real_distribution<double>(0.05, 0.6)(rng);
    c.dim = 1 + trial % 2;
    const auto e = solve_exact(s, c);
    const auto oracle = naive_exact(s, c.alpha, c.dim);
    REQUIRE(oracle.found);
    CHECK(e.feasible);
    if (std::isinf(oracle.objective))
      CHECK(std::isinf(e.objective));
    else
      CHECK(e.objective == doctest::Approx(oracle.objective));
    check_solution_consistent(s, c, e);
  }
}

TEST_CASE("dominance, feasibility and determinism on random instances") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const auto s = random_scores(rng, 20, 2, trial % 4 == 0);
    OptimizerConfig c;
    c.alpha = 0.1 + 0.1 * (trial % 4);
    c.budget = 200;
    c.seed = static_cast<std::uint64_t>(trial);
    const auto e = solve_exact(s, c);
    const auto m = solve_multistart(s, c);
    OptimizerConfig scalar = c;
    scalar.budget = 0;
    const auto p1 = solve_multistart(s, scalar);
    CHECK(m.feasible);
    CHECK(e.objective <= m.objective);
    CHECK(m.objective <= p1.objective);
    check_solution_consistent(s, c, m);
    const auto again = solve_multistart(s, c);
    CHECK(again.beta == m.beta);
    CHECK(again.objective == m.objective);
  }
}

TEST_CASE("heuristic stays feasible on tied data across dims and epsilons") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    const auto s = random_scores(rng, 30 + trial, 5, true);
    OptimizerConfig c;
    c.alpha = 0.05 + 0.05 * (trial % 6);
    c.budget = 100;
    c.epsilon_steps = 1 + trial % 4;
    c.patience = trial % 3 == 0 ? 0 : 5;
    c.dim = 1 + trial % 3;
    for (std::size_t k = 0; k < 5; ++k) {
      const auto h = solve_heuristic(s, c, k);
      CHECK(h.feasible);
      check_solution_consistent(s, c, h);
    }
  }
}

TEST_CASE("trace is monotone and starts from the scalar initialisation") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    const auto s = random_scores(rng, 40, 6, trial % 2 == 0);
    OptimizerConfig c;
    c.budget = 150;
    c.record_trace = true;
    const auto h = solve_heuristic(s, c, trial % 6);
    REQUIRE(h.trace.size() == 151);
    CHECK(h.trace.front().iteration == 0);
    double last = inf;
    for (const auto& rec : h.trace) {
      CHECK(rec.objective <= last);
      CHECK(meets_target(rec.coverage, c.alpha));
      last = rec.objective;
    }
    CHECK(h.trace.back().objective == h.objective);
  }
}

TEST_CASE("identical rank columns never accept a trade") {
  std::vector<double> v;
  for (int i = 0; i < 10; ++i) v.insert(v.end(), 3, static_cast<double>(i));
  const ScoreMatrix s(10, 3, v);
  OptimizerConfig c;
  c.budget = 0;
  const auto p1 = solve_heuristic(s, c, 1);
  c.budget = 50;
  c.patience = 0;
  const auto h = solve_heuristic(s, c, 1);
  CHECK(h.beta == p1.beta);
}

TEST_CASE("config validation and guards") {
  OptimizerConfig c;
  c.alpha = 1.0;
  CHECK_THROWS_AS(c.validate(), Error);
  c.alpha = 0.1;
  c.epsilon_steps = 0;
  CHECK_THROWS_AS(c.validate(), Error);
  c.epsilon_steps = 1;
  std::mt19937_64 rng(1);
  try {
    solve_exact(random_scores(rng, 5, 4, false), c);
    FAIL("expected size error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::size);
  }
  CHECK_THROWS_AS(solve_exact(random_scores(rng, 201, 1, false), c), Error);
  CHECK_THROWS_AS(solve_heuristic(tiny(), c, 2), Error);
}
