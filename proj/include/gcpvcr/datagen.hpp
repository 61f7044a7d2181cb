#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gcpvcr/points.hpp"
#include "gcpvcr/rng.hpp"

namespace gcpvcr {

struct LabeledPair {
  std::vector<double> x;
  std::vector<double> y;

  friend bool operator==(const LabeledPair&, const LabeledPair&) = default;
};

using Dataset = std::vector<LabeledPair>;

/// Source of conditional draws Y ~ p(.|x). Draws must depend only on (x, rng state).
class ConditionalSampler {
 public:
  virtual ~ConditionalSampler() = default;
  virtual std::size_t dim() const = 0;
  virtual PointSet sample(std::span<const double> x, std::size_t count, Rng& rng) const = 0;
};

enum class SyntheticKind { mix_gaussian, circles, s_shape, spirals, unbalanced };

std::optional<SyntheticKind> parse_synthetic(std::string_view name);
std::string_view synthetic_name(SyntheticKind kind);
std::size_t response_dim(SyntheticKind kind);

// X ~ U(0,1); Y|X ~ 0.7 N((X,0), I) + 0.3 N((5+X,0), I).
Dataset gen_mix_gaussian(std::size_t n, Rng& rng);
// X ~ U(-0.9,0.9); Y = s sqrt(1-X^2) + N(0, 0.1^2), s = +-1 equally likely.
Dataset gen_circles(std::size_t n, Rng& rng);
// t ~ U(-2,2); Y = t; X = 0.9 sin(1.5 t) + N(0, 0.05^2).
Dataset gen_s_shape(std::size_t n, Rng& rng);
// b in {0,1}; t ~ U(0.25,1); theta = 3 pi t + b pi; rho = 2t; X = rho cos(theta), Y = rho sin(theta), both + N(0, 0.05^2).
Dataset gen_spirals(std::size_t n, Rng& rng);
// X ~ U(0,1); Y ~ N(0, 0.5^2) w.p. 0.8, else N(6+X, 0.5^2).
Dataset gen_unbalanced(std::size_t n, Rng& rng);

Dataset generate(SyntheticKind kind, std::size_t n, Rng& rng);

class MixGaussianSampler final : public ConditionalSampler {
 public:
  std::size_t dim() const override { return 2; }
  PointSet sample(std::span<const double> x, std::size_t count, Rng& rng) const override;
};

class CirclesSampler final : public ConditionalSampler {
 public:
  std::size_t dim() const override { return 1; }
  PointSet sample(std::span<const double> x, std::size_t count, Rng& rng) const override;
};

class UnbalancedSampler final : public ConditionalSampler {
 public:
  std::size_t dim() const override { return 1; }
  PointSet sample(std::span<const double> x, std::size_t count, Rng& rng) const override;
};

/// Conditional resampler: responses of the kappa pool pairs nearest to x, plus Gaussian jitter.
class KnnResampler final : public ConditionalSampler {
 public:
  static constexpr std::size_t default_neighbors = 50;

  // jitter defaults to 0.05 x per-dimension response standard deviation of the pool.
  KnnResampler(Dataset pool, std::size_t neighbors = default_neighbors,
               std::optional<std::vector<double>> jitter = std::nullopt);

  std::size_t dim() const override { return y_dim_; }
  PointSet sample(std::span<const double> x, std::size_t count, Rng& rng) const override;

  std::size_t neighbors() const noexcept { return neighbors_; }
  const std::vector<double>& jitter() const noexcept { return jitter_; }
  // The pool sorted by its first feature; neighbor_indices() indexes into this.
  const Dataset& pool() const noexcept { return pool_; }
  // Pool indices (into the pool as sorted internally) of the neighbours of x.
  std::vector<std::size_t> neighbor_indices(std::span<const double> x) const;

 private:
  Dataset pool_;
  std::size_t neighbors_;
  std::vector<double> jitter_;
  std::size_t x_dim_ = 0;
  std::size_t y_dim_ = 0;
};

inline constexpr std::size_t oracle_pool_size = 50000;

/// Sampler with the generator's conditional law: analytic where a closed form exists,
/// otherwise a KnnResampler over a fresh pool of oracle_pool_size pairs drawn with pool_rng.
std::unique_ptr<ConditionalSampler> make_oracle_sampler(SyntheticKind kind, Rng& pool_rng);

/// Column selector: a header name or a zero-based index.
struct ColumnRef {
  std::string name;
  std::optional<std::size_t> index;

  static ColumnRef parse(std::string_view token);
};

std::vector<ColumnRef> parse_column_list(std::string_view list);

Dataset load_csv(const std::string& path, const std::vector<ColumnRef>& x_columns,
                 const std::vector<ColumnRef>& y_columns);

/// Header x (or x1..xq), y (or y1..yd).
void write_csv(const std::string& path, const Dataset& data);

struct Split {
  Dataset train;
  Dataset calibration;
  Dataset test;
};

/// Random partition with sizes floor(f * n) for calibration and test, remainder to train.
Split split(const Dataset& data, std::array<double, 3> fractions, Rng& rng);

/// Random partition with exact sizes; sizes must sum to at most data.size(), extras go to train.
Split split_counts(const Dataset& data, std::size_t n_train, std::size_t n_cal, std::size_t n_test, Rng& rng);

}  // namespace gcpvcr
