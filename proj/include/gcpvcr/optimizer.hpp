#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "gcpvcr/quantile.hpp"

namespace gcpvcr {

struct OptimizerConfig {
  double alpha = 0.1;
  std::size_t budget = 2000;          // trade-off iterations per start rank
  std::uint32_t epsilon_steps = 1;    // trade-off increment in grid steps of 1/(n+1)
  // After this many consecutive rejected trade-offs the increment doubles (wrapping back to
  // epsilon_steps once doubling would pass n+1). 0 keeps the increment fixed.
  std::size_t patience = 20;
  std::vector<std::size_t> starts;    // zero-based start ranks; empty means every rank
  std::size_t dim = 1;                // exponent of the volume objective
  std::uint64_t seed = 0;
  bool record_trace = false;

  void validate() const;
};

struct TraceRecord {
  std::size_t iteration = 0;  // 0 is the scalar initialisation
  std::vector<std::uint32_t> beta;
  double objective = 0.0;
  Coverage coverage;
  bool accepted = false;
};

struct Solution {
  BetaVector beta;
  RadiusVector radii;
  double objective = 0.0;
  Coverage coverage;
  bool feasible = false;
  std::size_t start_rank = 0;
  std::vector<TraceRecord> trace;
};

inline constexpr std::size_t exact_max_k = 3;
inline constexpr std::size_t exact_max_n = 200;

/// Exhaustive search over the (n+2)^K grid. Ties go to the smaller radius vector, then to larger beta indices.
Solution solve_exact(const ScoreMatrix& scores, const OptimizerConfig& config);

/// Scalar initialisation at start_rank followed by `budget` pairwise trade-offs.
Solution solve_heuristic(const ScoreMatrix& scores, const OptimizerConfig& config, std::size_t start_rank);

/// Best solve_heuristic result over config.starts; the earliest start wins ties.
Solution solve_multistart(const ScoreMatrix& scores, const OptimizerConfig& config);

}  // namespace gcpvcr
