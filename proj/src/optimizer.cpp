#include "gcpvcr/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "gcpvcr/rng.hpp"

namespace gcpvcr {

namespace {

Solution finish(const ScoreMatrix& scores, const OptimizerConfig& config, BetaVector beta) {
  Solution s;
  s.radii = radii_for(scores, beta);
  s.objective = objective(s.radii, config.dim);
  s.coverage = calibration_coverage(scores, beta);
  s.feasible = meets_target(s.coverage, config.alpha);
  s.beta = std::move(beta);
  return s;
}

double volume(const ScoreMatrix& scores, std::size_t rank, std::uint32_t t, std::size_t d) {
  return empirical_quantile(scores.column(rank), t).volume_term(d);
}

TraceRecord snapshot(const ScoreMatrix& scores, const CoverageTracker& tracker, std::size_t d, std::size_t it,
                     bool accepted) {
  return {it, tracker.beta().indices(), objective(radii_for(scores, tracker.beta()), d), tracker.coverage(), accepted};
}

// -1 if a is preferred, +1 if b is, 0 if indistinguishable.
int compare_candidates(double obj_a, const RadiusVector& ra, const BetaVector& ba, double obj_b,
                       const RadiusVector& rb, const BetaVector& bb) {
  if (obj_a < obj_b) return -1;
  if (obj_b < obj_a) return 1;
  for (std::size_t r = 0; r < ra.size(); ++r) {
    if (ra[r] < rb[r]) return -1;
    if (rb[r] < ra[r]) return 1;
  }
  for (std::size_t r = 0; r < ba.size(); ++r) {
    if (ba[r] > bb[r]) return -1;
    if (bb[r] > ba[r]) return 1;
  }
  return 0;
}

}  // namespace

void OptimizerConfig::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) fail(ErrorKind::invalid_argument, "alpha must lie in (0, 1)");
  if (epsilon_steps < 1) fail(ErrorKind::invalid_argument, "epsilon must be at least one grid step");
  if (dim < 1) fail(ErrorKind::invalid_argument, "dimension must be >= 1");
}

Solution solve_exact(const ScoreMatrix& scores, const OptimizerConfig& config) {
  config.validate();
  const std::size_t n = scores.n();
  const std::size_t k = scores.k();
  if (k > exact_max_k || n > exact_max_n)
    fail(ErrorKind::size, "exact solver limited to K <= " + std::to_string(exact_max_k) + " and n <= " +
                              std::to_string(exact_max_n) + " (got K=" + std::to_string(k) +
                              ", n=" + std::to_string(n) + ")");
  const std::size_t required = required_cover_count(config.alpha, n);
  const auto top = static_cast<std::uint32_t>(n + 1);

  CoverageTracker tracker(scores, BetaVector(n, k, top));
  bool have_best = false;
  double best_obj = std::numeric_limits<double>::infinity();
  RadiusVector best_radii;
  BetaVector best_beta;

  // Odometer over the first K-1 ranks; the last rank takes the largest feasible index.
  std::vector<std::uint32_t> idx(k - 1, 0);
  for (std::size_t r = 0; r + 1 < k; ++r) tracker.set(r, 0);
  const std::size_t last = k - 1;
  while (true) {
    std::uint32_t t = top;
    tracker.set(last, t);
    while (tracker.coverage().covered < required && t > 0) tracker.set(last, --t);
    if (tracker.coverage().covered >= required) {
      double obj = 0.0;
      for (std::size_t r = 0; r < k; ++r) obj += volume(scores, r, tracker.beta()[r], config.dim);
      if (!have_best || obj <= best_obj) {
        RadiusVector radii = radii_for(scores, tracker.beta());
        if (!have_best || compare_candidates(obj, radii, tracker.beta(), best_obj, best_radii, best_beta) < 0) {
          have_best = true;
          best_obj = obj;
          best_radii = std::move(radii);
          best_beta = tracker.beta();
        }
      }
    }
    tracker.set(last, top);

    std::size_t r = 0;
    while (r < idx.size() && idx[r] == top) {
      idx[r] = 0;
      tracker.set(r, 0);
      ++r;
    }
    if (r == idx.size()) break;
    tracker.set(r, ++idx[r]);
  }

  require(have_best, "no feasible quantile vector");  // unreachable: all-Infinite covers everything
  Solution s = finish(scores, config, std::move(best_beta));
  return s;
}

Solution solve_heuristic(const ScoreMatrix& scores, const OptimizerConfig& config, std::size_t start_rank) {
  config.validate();
  const std::size_t n = scores.n();
  const std::size_t k = scores.k();
  require(start_rank < k, "start rank out of range");
  const std::size_t required = required_cover_count(config.alpha, n);
  const auto top = static_cast<std::uint32_t>(n + 1);
  const std::size_t d = config.dim;

  BetaVector init(n, k, top);
  init.set(start_rank, 0);
  CoverageTracker tracker(scores, std::move(init));

  // Scalar phase: shrink the single active ball while one grid step of slack remains.
  std::uint32_t bk = 0;
  while (bk < top && tracker.coverage().covered >= required + 1) tracker.set(start_rank, ++bk);
  // Tied scores can drop several rows in one step; step back until feasible.
  while (bk > 0 && tracker.coverage().covered < required) tracker.set(start_rank, --bk);

  std::vector<TraceRecord> trace;
  if (config.record_trace) trace.push_back(snapshot(scores, tracker, d, 0, true));

  Rng rng(derive_seed(config.seed, {tag(Stream::optimizer), start_rank}));
  std::uint32_t eps = config.epsilon_steps;
  std::size_t rejected = 0;
  for (std::size_t it = 1; it <= config.budget && k > 1; ++it) {
    std::uniform_int_distribution<std::size_t> pick(0, k - 2);
    std::size_t j = pick(rng);
    if (j >= start_rank) ++j;

    const std::uint32_t old_k = tracker.beta()[start_rank];
    const std::uint32_t old_j = tracker.beta()[j];
    const std::uint32_t new_k = std::min<std::uint32_t>(top, old_k + eps);
    bool accepted = false;
    if (new_k != old_k) {
      tracker.set(start_rank, new_k);
      std::uint32_t new_j = old_j;
      while (tracker.coverage().covered < required && new_j > 0) tracker.set(j, --new_j);
      const double before = volume(scores, start_rank, old_k, d) + volume(scores, j, old_j, d);
      const double after = volume(scores, start_rank, new_k, d) + volume(scores, j, new_j, d);
      accepted = tracker.coverage().covered >= required && after < before;
      if (!accepted) {
        tracker.set(j, old_j);
        tracker.set(start_rank, old_k);
      }
    }
    rejected = accepted ? 0 : rejected + 1;
    if (config.patience > 0 && rejected >= config.patience) {
      rejected = 0;
      eps = eps > top / 2 ? config.epsilon_steps : eps * 2;
    }
    if (config.record_trace) trace.push_back(snapshot(scores, tracker, d, it, accepted));
  }

  Solution s = finish(scores, config, tracker.beta());
  s.start_rank = start_rank;
  s.trace = std::move(trace);
  return s;
}

Solution solve_multistart(const ScoreMatrix& scores, const OptimizerConfig& config) {
  std::vector<std::size_t> starts = config.starts;
  if (starts.empty())
    for (std::size_t r = 0; r < scores.k(); ++r) starts.push_back(r);
  Solution best;
  bool have = false;
  for (auto start : starts) {
    Solution s = solve_heuristic(scores, config, start);
    if (!have || (s.feasible && !best.feasible) || (s.feasible == best.feasible && s.objective < best.objective)) {
      best = std::move(s);
      have = true;
    }
  }
  return best;
}

}  // namespace gcpvcr
