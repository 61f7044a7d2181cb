#pragma once

#include <cstddef>
#include <span>
#include <string_view>

#include "gcpvcr/points.hpp"
#include "gcpvcr/quantile.hpp"
#include "gcpvcr/rng.hpp"
#include "gcpvcr/scoring.hpp"

namespace gcpvcr {

enum class Method { vcr, pcp };

std::string_view method_name(Method m);

/// Union of closed Euclidean balls, one per centre.
class PredictionSet {
 public:
  PredictionSet(PointSet centers, RadiusVector radii, Method method);

  const PointSet& centers() const noexcept { return centers_; }
  const RadiusVector& radii() const noexcept { return radii_; }
  Method method() const noexcept { return method_; }
  std::size_t dim() const noexcept { return centers_.dim(); }
  std::size_t size() const noexcept { return radii_.size(); }

  bool contains(std::span<const double> y) const;
  bool is_universal() const;
  bool is_empty() const;

 private:
  PointSet centers_;
  RadiusVector radii_;
  Method method_;
};

PredictionSet build_vcr_set(const RankedSamples& ranked, const RadiusVector& radii);
PredictionSet build_pcp_set(const PointSet& batch, const Radius& radius);

inline bool contains(const PredictionSet& set, std::span<const double> y) { return set.contains(y); }

struct SetMeasure {
  enum class Estimator { exact, monte_carlo };

  double value = 0.0;
  Estimator estimator = Estimator::exact;
  std::size_t samples = 0;
  double standard_error = 0.0;
};

/// Exact union length for d = 1, bounding-box Monte Carlo for d >= 2. Universal sets measure +inf.
SetMeasure measure(const PredictionSet& set, std::size_t mc_samples, Rng& rng);

/// Monte Carlo estimate regardless of dimension (used to cross-check the exact 1-D sweep).
SetMeasure measure_monte_carlo(const PredictionSet& set, std::size_t mc_samples, Rng& rng);

/// Total length of a union of closed intervals.
double union_length(std::span<const std::pair<double, double>> intervals);

/// Sum of radius^d over the set's balls (the optimisation surrogate).
double surrogate_volume(const PredictionSet& set);

}  // namespace gcpvcr
