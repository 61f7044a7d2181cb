#include "gcpvcr/quantile.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace gcpvcr {

double Radius::volume_term(std::size_t d) const {
  switch (kind_) {
    case Kind::excluded: return 0.0;
    case Kind::infinite: return std::numeric_limits<double>::infinity();
    case Kind::finite: return std::pow(value_, static_cast<double>(d));
  }
  return 0.0;
}

std::string Radius::to_string() const {
  switch (kind_) {
    case Kind::excluded: return "excluded";
    case Kind::infinite: return "inf";
    case Kind::finite: {
      std::ostringstream os;
      os.precision(17);
      os << value_;
      return os.str();
    }
  }
  return {};
}

SortedScoreColumn::SortedScoreColumn(std::vector<double> scores) : values_(std::move(scores)) {
  for (double v : values_) require(v >= 0.0, "scores must be non-negative");
  std::sort(values_.begin(), values_.end());
}

std::size_t SortedScoreColumn::covered_prefix(const Radius& r) const {
  if (r.is_excluded()) return 0;
  if (r.is_infinite()) return values_.size();
  return static_cast<std::size_t>(std::upper_bound(values_.begin(), values_.end(), r.value()) - values_.begin());
}

BetaVector::BetaVector(std::size_t n, std::size_t k, std::uint32_t fill) : n_(n), idx_(k, fill) {
  require(k >= 1, "beta vector needs at least one rank");
  require(fill <= n + 1, "beta grid index out of range");
}

BetaVector::BetaVector(std::size_t n, std::vector<std::uint32_t> indices) : n_(n), idx_(std::move(indices)) {
  require(!idx_.empty(), "beta vector needs at least one rank");
  for (auto t : idx_) require(t <= n + 1, "beta grid index out of range");
}

void BetaVector::set(std::size_t r, std::uint32_t t) {
  require(r < idx_.size(), "rank out of range");
  require(t <= n_ + 1, "beta grid index out of range");
  idx_[r] = t;
}

Radius empirical_quantile(const SortedScoreColumn& column, std::size_t t) {
  const std::size_t n = column.size();
  require(t <= n + 1, "beta grid index " + std::to_string(t) + " outside [0, " + std::to_string(n + 1) + "]");
  // beta = t/(n+1) makes (1 - beta)(n + 1) = n + 1 - t exactly.
  const std::size_t k = n + 1 - t;
  if (k == 0) return Radius::excluded();
  if (k == n + 1) return Radius::infinite();
  return Radius::finite(column.values()[k - 1]);
}

ScoreMatrix::ScoreMatrix(std::size_t n, std::size_t k, std::vector<double> row_major)
    : n_(n), k_(k), data_(std::move(row_major)) {
  require(k >= 1, "score matrix needs K >= 1");
  require(data_.size() == n * k, "score matrix data is not n x K");
  columns_.reserve(k);
  order_.resize(n * k);
  std::vector<double> col(n);
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t i = 0; i < n; ++i) col[i] = data_[i * k + r];
    columns_.emplace_back(col);
    auto ord = std::span<std::uint32_t>(order_.data() + r * n, n);
    std::iota(ord.begin(), ord.end(), 0u);
    std::stable_sort(ord.begin(), ord.end(), [&](std::uint32_t a, std::uint32_t b) { return col[a] < col[b]; });
  }
}

std::size_t required_cover_count(double alpha, std::size_t n) {
  require(alpha > 0.0 && alpha < 1.0, "alpha must lie in (0, 1)");
  const double x = (1.0 - alpha) * static_cast<double>(n + 1);
  // Absorb representation error so that e.g. (1 - 0.1) * 10 counts as exactly 9.
  const double c = std::ceil(x - 1e-9 * std::max(1.0, x));
  return std::min<std::size_t>(static_cast<std::size_t>(std::max(0.0, c)), n + 1);
}

std::size_t alpha_grid_index(double alpha, std::size_t n) { return n + 1 - required_cover_count(alpha, n); }

bool meets_target(const Coverage& c, double alpha) {
  return c.covered >= required_cover_count(alpha, c.total - 1);
}

bool covered(std::span<const double> score_row, const RadiusVector& radii) {
  require(score_row.size() == radii.size(), "score row and radius vector lengths differ");
  for (std::size_t r = 0; r < radii.size(); ++r)
    if (radii[r].covers(score_row[r])) return true;
  return false;
}

RadiusVector radii_for(const ScoreMatrix& scores, const BetaVector& beta) {
  require(beta.size() == scores.k(), "beta length differs from K");
  require(beta.n() == scores.n(), "beta grid built for a different n");
  RadiusVector radii;
  radii.reserve(beta.size());
  for (std::size_t r = 0; r < beta.size(); ++r) radii.push_back(empirical_quantile(scores.column(r), beta[r]));
  return radii;
}

Coverage calibration_coverage(const ScoreMatrix& scores, const BetaVector& beta) {
  const RadiusVector radii = radii_for(scores, beta);
  Coverage c{0, scores.n() + 1};
  for (std::size_t i = 0; i < scores.n(); ++i)
    if (covered(scores.row(i), radii)) ++c.covered;
  const std::vector<double> inf_row(scores.k(), std::numeric_limits<double>::infinity());
  if (covered(inf_row, radii)) ++c.covered;
  return c;
}

double objective(const RadiusVector& radii, std::size_t d) {
  require(d >= 1, "dimension must be >= 1");
  double total = 0.0;
  for (const auto& r : radii) {
    if (r.is_infinite()) return std::numeric_limits<double>::infinity();
    total += r.volume_term(d);
  }
  return total;
}

CoverageTracker::CoverageTracker(const ScoreMatrix& scores, BetaVector beta)
    : scores_(&scores), beta_(scores.n(), std::vector<std::uint32_t>(scores.k(), static_cast<std::uint32_t>(scores.n() + 1))),
      prefix_(scores.k(), 0), cover_count_(scores.n(), 0) {
  require(beta.size() == scores.k() && beta.n() == scores.n(), "beta does not match the score matrix");
  for (std::size_t r = 0; r < beta.size(); ++r) set(r, beta[r]);
}

std::size_t CoverageTracker::prefix(std::size_t rank, std::uint32_t t) const {
  return scores_->column(rank).covered_prefix(empirical_quantile(scores_->column(rank), t));
}

void CoverageTracker::set(std::size_t rank, std::uint32_t t) {
  const std::uint32_t old_t = beta_[rank];
  beta_.set(rank, t);
  const std::size_t old_p = prefix_[rank];
  const std::size_t new_p = prefix(rank, t);
  const auto order = scores_->column_order(rank);
  if (new_p > old_p) {
    for (std::size_t pos = old_p; pos < new_p; ++pos)
      if (cover_count_[order[pos]]++ == 0) ++covered_;
  } else {
    for (std::size_t pos = new_p; pos < old_p; ++pos)
      if (--cover_count_[order[pos]] == 0) --covered_;
  }
  prefix_[rank] = new_p;
  infinite_ranks_ += (t == 0 ? 1 : 0);
  infinite_ranks_ -= (old_t == 0 ? 1 : 0);
}

}  // namespace gcpvcr
