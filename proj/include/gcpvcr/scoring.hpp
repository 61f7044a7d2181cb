#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "gcpvcr/datagen.hpp"
#include "gcpvcr/points.hpp"
#include "gcpvcr/quantile.hpp"

namespace gcpvcr {

/// Generated samples sorted by average m-nearest-neighbour distance, densest first.
struct RankedSamples {
  PointSet ordered;
  std::vector<std::size_t> permutation;  // permutation[r] = input index of the rank-r sample
  std::vector<double> mean_nn_distances;  // non-decreasing
};

inline std::size_t default_neighbor_count(std::size_t k) { return (k + 2) / 3; }

/// Ranks samples by their mean distance to the m nearest reference points.
/// Without a reference set the batch ranks itself and each sample skips its own entry,
/// which needs m <= K - 1. Ties order by coordinates, then by input index.
RankedSamples rank_by_density(const PointSet& batch, std::size_t m, const PointSet* reference = nullptr,
                              const Metric& metric = euclidean_metric());

/// Distances from the truth to each ranked sample, in rank order.
std::vector<double> vcr_score_row(std::span<const double> truth, const RankedSamples& ranked,
                                  const Metric& metric = euclidean_metric());

/// Minimum distance from the truth to any sample.
double pcp_score(std::span<const double> truth, const PointSet& batch, const Metric& metric = euclidean_metric());

struct ScoringConfig {
  std::size_t k = 10;
  std::size_t m = 0;          // 0 selects ceil(K/3)
  std::size_t reference = 0;  // extra reference draws per point; 0 ranks the batch against itself
  std::uint64_t seed = 0;     // per-point streams are derived from (seed, point index)
};

/// Scores for a calibration set, with the draws and rankings kept for the PCP baseline and diagnostics.
struct CalibrationScores {
  ScoreMatrix vcr;
  std::vector<double> pcp;
  std::vector<PointSet> batches;
  std::vector<RankedSamples> ranked;
};

/// Draws and ranks K samples per calibration point (reference draws first when enabled).
PointSet draw_batch(const ConditionalSampler& sampler, std::span<const double> x, const ScoringConfig& config,
                    Rng& rng, PointSet* reference_out);

CalibrationScores build_score_matrix(const Dataset& calibration, const ConditionalSampler& sampler,
                                     const ScoringConfig& config);

}  // namespace gcpvcr
