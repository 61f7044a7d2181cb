#include "gcpvcr/scoring.hpp"

#include <algorithm>
#include <numeric>

namespace gcpvcr {

RankedSamples rank_by_density(const PointSet& batch, std::size_t m, const PointSet* reference, const Metric& metric) {
  const std::size_t k = batch.size();
  require(k >= 1, "cannot rank an empty batch");
  const bool self = reference == nullptr;
  const std::size_t pool = self ? k - 1 : reference->size();
  require(m >= 1 && m <= pool, "neighbour count m=" + std::to_string(m) + " outside [1, " + std::to_string(pool) + "]");
  if (!self) require(reference->dim() == batch.dim(), "reference dimension differs from batch dimension");

  std::vector<double> mean_nn(k);
  std::vector<double> dist;
  dist.reserve(self ? k : reference->size());
  for (std::size_t i = 0; i < k; ++i) {
    dist.clear();
    if (self) {
      for (std::size_t j = 0; j < k; ++j)
        if (j != i) dist.push_back(metric(batch[i], batch[j]));
    } else {
      for (std::size_t j = 0; j < reference->size(); ++j) dist.push_back(metric(batch[i], (*reference)[j]));
    }
    // Sum the m smallest in ascending order so the result does not depend on input order.
    std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(m), dist.end());
    double s = 0.0;
    for (std::size_t l = 0; l < m; ++l) s += dist[l];
    mean_nn[i] = s / static_cast<double>(m);
  }

  std::vector<std::size_t> perm(k);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
    if (mean_nn[a] != mean_nn[b]) return mean_nn[a] < mean_nn[b];
    const auto pa = batch[a];
    const auto pb = batch[b];
    if (std::lexicographical_compare(pa.begin(), pa.end(), pb.begin(), pb.end())) return true;
    if (std::lexicographical_compare(pb.begin(), pb.end(), pa.begin(), pa.end())) return false;
    return a < b;
  });

  RankedSamples out{PointSet(batch.dim()), perm, {}};
  out.ordered.reserve(k);
  out.mean_nn_distances.reserve(k);
  for (auto idx : perm) {
    out.ordered.push_back(batch[idx]);
    out.mean_nn_distances.push_back(mean_nn[idx]);
  }
  return out;
}

std::vector<double> vcr_score_row(std::span<const double> truth, const RankedSamples& ranked, const Metric& metric) {
  require(truth.size() == ranked.ordered.dim(), "truth dimension differs from sample dimension");
  std::vector<double> row(ranked.ordered.size());
  for (std::size_t r = 0; r < row.size(); ++r) row[r] = metric(truth, ranked.ordered[r]);
  return row;
}

double pcp_score(std::span<const double> truth, const PointSet& batch, const Metric& metric) {
  require(!batch.empty(), "empty batch");
  require(truth.size() == batch.dim(), "truth dimension differs from sample dimension");
  double best = metric(truth, batch[0]);
  for (std::size_t k = 1; k < batch.size(); ++k) best = std::min(best, metric(truth, batch[k]));
  return best;
}

PointSet draw_batch(const ConditionalSampler& sampler, std::span<const double> x, const ScoringConfig& config,
                    Rng& rng, PointSet* reference_out) {
  if (config.reference > 0) {
    PointSet ref = sampler.sample(x, config.reference, rng);
    if (reference_out) *reference_out = std::move(ref);
  }
  PointSet batch = sampler.sample(x, config.k, rng);
  require(batch.size() == config.k && batch.dim() == sampler.dim(), "sampler returned a malformed batch");
  return batch;
}

CalibrationScores build_score_matrix(const Dataset& calibration, const ConditionalSampler& sampler,
                                     const ScoringConfig& config) {
  require(!calibration.empty(), "calibration set is empty");
  require(config.k >= 1, "K must be >= 1");
  const std::size_t m = config.m == 0 ? default_neighbor_count(config.k) : config.m;
  const std::size_t n = calibration.size();

  CalibrationScores out;
  out.pcp.resize(n);
  out.batches.reserve(n);
  out.ranked.reserve(n);
  std::vector<double> data;
  data.reserve(n * config.k);
  for (std::size_t i = 0; i < n; ++i) {
    try {
      Rng rng(derive_seed(config.seed, {i}));
      PointSet reference;
      PointSet batch = draw_batch(sampler, calibration[i].x, config, rng, &reference);
      RankedSamples ranked = rank_by_density(batch, m, config.reference > 0 ? &reference : nullptr);
      const auto row = vcr_score_row(calibration[i].y, ranked);
      data.insert(data.end(), row.begin(), row.end());
      out.pcp[i] = *std::min_element(row.begin(), row.end());
      out.batches.push_back(std::move(batch));
      out.ranked.push_back(std::move(ranked));
    } catch (const Error& e) {
      throw Error(e.kind(), "calibration point " + std::to_string(i) + ": " + e.what());
    }
  }
  out.vcr = ScoreMatrix(n, config.k, std::move(data));
  return out;
}

}  // namespace gcpvcr
