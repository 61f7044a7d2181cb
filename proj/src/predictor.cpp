#include "gcpvcr/predictor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace gcpvcr {

std::string_view method_name(Method m) { return m == Method::vcr ? "vcr" : "pcp"; }

PredictionSet::PredictionSet(PointSet centers, RadiusVector radii, Method method)
    : centers_(std::move(centers)), radii_(std::move(radii)), method_(method) {
  require(centers_.size() == radii_.size(), "centre count differs from radius count");
}

bool PredictionSet::contains(std::span<const double> y) const {
  require(y.size() == dim(), "query dimension differs from set dimension");
  for (std::size_t r = 0; r < radii_.size(); ++r) {
    const Radius& rad = radii_[r];
    if (rad.is_excluded()) continue;
    if (rad.is_infinite() || euclidean(y, centers_[r]) <= rad.value()) return true;
  }
  return false;
}

bool PredictionSet::is_universal() const {
  return std::any_of(radii_.begin(), radii_.end(), [](const Radius& r) { return r.is_infinite(); });
}

bool PredictionSet::is_empty() const {
  return std::all_of(radii_.begin(), radii_.end(), [](const Radius& r) { return r.is_excluded(); });
}

PredictionSet build_vcr_set(const RankedSamples& ranked, const RadiusVector& radii) {
  return PredictionSet(ranked.ordered, radii, Method::vcr);
}

PredictionSet build_pcp_set(const PointSet& batch, const Radius& radius) {
  return PredictionSet(batch, RadiusVector(batch.size(), radius), Method::pcp);
}

double union_length(std::span<const std::pair<double, double>> intervals) {
  std::vector<std::pair<double, double>> iv(intervals.begin(), intervals.end());
  std::sort(iv.begin(), iv.end());
  double total = 0.0;
  bool open = false;
  double lo = 0.0, hi = 0.0;
  for (const auto& [a, b] : iv) {
    if (open && a <= hi) {
      hi = std::max(hi, b);
      continue;
    }
    if (open) total += hi - lo;
    lo = a;
    hi = b;
    open = true;
  }
  if (open) total += hi - lo;
  return total;
}

double surrogate_volume(const PredictionSet& set) { return objective(set.radii(), set.dim()); }

namespace {

SetMeasure degenerate(const PredictionSet& set) {
  if (set.is_universal()) return {std::numeric_limits<double>::infinity(), SetMeasure::Estimator::exact, 0, 0.0};
  return {0.0, SetMeasure::Estimator::exact, 0, 0.0};
}

}  // namespace

SetMeasure measure_monte_carlo(const PredictionSet& set, std::size_t mc_samples, Rng& rng) {
  if (mc_samples == 0) fail(ErrorKind::invalid_argument, "Monte Carlo measure needs mc_samples >= 1");
  if (set.is_universal() || set.is_empty()) return degenerate(set);
  const std::size_t d = set.dim();
  std::vector<double> lo(d, std::numeric_limits<double>::infinity());
  std::vector<double> hi(d, -std::numeric_limits<double>::infinity());
  for (std::size_t r = 0; r < set.size(); ++r) {
    const Radius& rad = set.radii()[r];
    if (rad.is_excluded()) continue;
    const auto c = set.centers()[r];
    for (std::size_t j = 0; j < d; ++j) {
      lo[j] = std::min(lo[j], c[j] - rad.value());
      hi[j] = std::max(hi[j], c[j] + rad.value());
    }
  }
  double box = 1.0;
  for (std::size_t j = 0; j < d; ++j) box *= hi[j] - lo[j];
  if (!(box > 0.0)) return {0.0, SetMeasure::Estimator::monte_carlo, mc_samples, 0.0};

  std::vector<std::uniform_real_distribution<double>> axes;
  axes.reserve(d);
  for (std::size_t j = 0; j < d; ++j) axes.emplace_back(lo[j], hi[j]);
  std::vector<double> y(d);
  std::size_t hits = 0;
  for (std::size_t s = 0; s < mc_samples; ++s) {
    for (std::size_t j = 0; j < d; ++j) y[j] = axes[j](rng);
    if (set.contains(y)) ++hits;
  }
  const double n = static_cast<double>(mc_samples);
  const double p = static_cast<double>(hits) / n;
  return {p * box, SetMeasure::Estimator::monte_carlo, mc_samples, box * std::sqrt(p * (1.0 - p) / n)};
}

SetMeasure measure(const PredictionSet& set, std::size_t mc_samples, Rng& rng) {
  if (set.dim() >= 2 && mc_samples == 0) fail(ErrorKind::invalid_argument, "Monte Carlo measure needs mc_samples >= 1");
  if (set.is_universal() || set.is_empty()) return degenerate(set);
  if (set.dim() == 1) {
    std::vector<std::pair<double, double>> iv;
    for (std::size_t r = 0; r < set.size(); ++r) {
      const Radius& rad = set.radii()[r];
      if (rad.is_excluded()) continue;
      const double c = set.centers()[r][0];
      iv.emplace_back(c - rad.value(), c + rad.value());
    }
    return {union_length(iv), SetMeasure::Estimator::exact, 0, 0.0};
  }
  return measure_monte_carlo(set, mc_samples, rng);
}

}  // namespace gcpvcr
