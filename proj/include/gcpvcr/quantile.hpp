#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "gcpvcr/error.hpp"

namespace gcpvcr {

/// Radius of one ball in a prediction set. Ordered Excluded < Finite(v) < Infinite.
class Radius {
 public:
  enum class Kind : std::uint8_t { excluded = 0, finite = 1, infinite = 2 };

  static Radius excluded() { return Radius(Kind::excluded, 0.0); }
  static Radius infinite() { return Radius(Kind::infinite, std::numeric_limits<double>::infinity()); }
  static Radius finite(double v) {
    require(v >= 0.0, "finite radius must be non-negative");
    return Radius(Kind::finite, v);
  }

  Kind kind() const noexcept { return kind_; }
  bool is_excluded() const noexcept { return kind_ == Kind::excluded; }
  bool is_finite() const noexcept { return kind_ == Kind::finite; }
  bool is_infinite() const noexcept { return kind_ == Kind::infinite; }
  // Finite radius value; +inf for Infinite, 0 for Excluded.
  double value() const noexcept { return value_; }

  // Inclusive: score <= radius. Excluded covers nothing, Infinite covers everything.
  bool covers(double score) const noexcept {
    switch (kind_) {
      case Kind::excluded: return false;
      case Kind::infinite: return true;
      case Kind::finite: return score <= value_;
    }
    return false;
  }

  // radius^d, Excluded contributing 0.
  double volume_term(std::size_t d) const;

  std::string to_string() const;

  friend std::partial_ordering operator<=>(const Radius& a, const Radius& b) {
    if (a.kind_ != b.kind_) return a.kind_ <=> b.kind_;
    if (a.kind_ != Kind::finite) return std::partial_ordering::equivalent;
    return a.value_ <=> b.value_;
  }
  friend bool operator==(const Radius& a, const Radius& b) {
    return a.kind_ == b.kind_ && (a.kind_ != Kind::finite || a.value_ == b.value_);
  }

 private:
  Radius(Kind k, double v) : kind_(k), value_(v) {}
  Kind kind_;
  double value_;
};

using RadiusVector = std::vector<Radius>;

/// One rank's calibration scores sorted ascending. The implicit (n+1)-th value is +inf.
class SortedScoreColumn {
 public:
  SortedScoreColumn() = default;
  // Sorts the given scores; all must be >= 0.
  explicit SortedScoreColumn(std::vector<double> scores);

  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }

  // Number of sorted positions whose value is <= r (all n for Infinite, 0 for Excluded).
  std::size_t covered_prefix(const Radius& r) const;

 private:
  std::vector<double> values_;
};

/// Per-rank quantile levels as indices t on the grid {t/(n+1)}, t in [0, n+1].
class BetaVector {
 public:
  BetaVector() = default;
  BetaVector(std::size_t n, std::size_t k, std::uint32_t fill);
  BetaVector(std::size_t n, std::vector<std::uint32_t> indices);

  std::size_t n() const noexcept { return n_; }
  std::size_t size() const noexcept { return idx_.size(); }
  std::uint32_t operator[](std::size_t r) const { return idx_[r]; }
  void set(std::size_t r, std::uint32_t t);
  double level(std::size_t r) const { return static_cast<double>(idx_[r]) / static_cast<double>(n_ + 1); }
  const std::vector<std::uint32_t>& indices() const noexcept { return idx_; }

  friend bool operator==(const BetaVector&, const BetaVector&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint32_t> idx_;
};

/// Q(column ∪ {∞}; t/(n+1)): the k-th smallest with k = n+1-t; Excluded at t = n+1, Infinite at t = 0.
Radius empirical_quantile(const SortedScoreColumn& column, std::size_t t);

/// n x K non-conformity scores, kept both row-major and as sorted per-rank columns.
class ScoreMatrix {
 public:
  ScoreMatrix() = default;
  ScoreMatrix(std::size_t n, std::size_t k, std::vector<double> row_major);

  std::size_t n() const noexcept { return n_; }
  std::size_t k() const noexcept { return k_; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * k_, k_}; }
  const SortedScoreColumn& column(std::size_t r) const { return columns_[r]; }
  // Row indices of column r in ascending score order (stable).
  std::span<const std::uint32_t> column_order(std::size_t r) const { return {order_.data() + r * n_, n_}; }
  const std::vector<double>& data() const noexcept { return data_; }

  friend bool operator==(const ScoreMatrix& a, const ScoreMatrix& b) {
    return a.n_ == b.n_ && a.k_ == b.k_ && a.data_ == b.data_;
  }

 private:
  std::size_t n_ = 0;
  std::size_t k_ = 0;
  std::vector<double> data_;
  std::vector<SortedScoreColumn> columns_;
  std::vector<std::uint32_t> order_;
};

/// Exact coverage count over the n calibration rows plus the all-∞ row.
struct Coverage {
  std::size_t covered = 0;
  std::size_t total = 0;  // n + 1

  double value() const { return total == 0 ? 0.0 : static_cast<double>(covered) / static_cast<double>(total); }
  friend bool operator==(const Coverage&, const Coverage&) = default;
};

/// Smallest integer c with c/(n+1) >= 1 - alpha.
std::size_t required_cover_count(double alpha, std::size_t n);

/// Grid index of the scalar split-conformal quantile at miscoverage alpha.
std::size_t alpha_grid_index(double alpha, std::size_t n);

bool meets_target(const Coverage& c, double alpha);

bool covered(std::span<const double> score_row, const RadiusVector& radii);

RadiusVector radii_for(const ScoreMatrix& scores, const BetaVector& beta);

Coverage calibration_coverage(const ScoreMatrix& scores, const BetaVector& beta);

/// Sum of radius^d; Excluded adds 0, any Infinite gives +inf.
double objective(const RadiusVector& radii, std::size_t d);

/// Incrementally maintained calibration coverage for a moving BetaVector.
/// Changing one rank's index costs O(rows whose covered status flips for that rank).
class CoverageTracker {
 public:
  CoverageTracker(const ScoreMatrix& scores, BetaVector beta);

  void set(std::size_t rank, std::uint32_t t);
  const BetaVector& beta() const noexcept { return beta_; }
  Coverage coverage() const { return {covered_ + (infinite_ranks_ > 0 ? 1 : 0), scores_->n() + 1}; }

 private:
  std::size_t prefix(std::size_t rank, std::uint32_t t) const;

  const ScoreMatrix* scores_;
  BetaVector beta_;
  std::vector<std::size_t> prefix_;
  std::vector<std::uint32_t> cover_count_;
  std::size_t covered_ = 0;
  std::size_t infinite_ranks_ = 0;
};

}  // namespace gcpvcr
