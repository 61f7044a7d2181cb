#include "gcpvcr/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <numeric>
#include <sstream>

namespace gcpvcr {

namespace {

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
double normal(Rng& rng, double mean, double sd) { return std::normal_distribution<double>(mean, sd)(rng); }
bool bernoulli(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

void draw_mix_gaussian(double x, Rng& rng, double* out) {
  const double shift = bernoulli(rng, 0.3) ? 5.0 : 0.0;
  out[0] = normal(rng, x + shift, 1.0);
  out[1] = normal(rng, 0.0, 1.0);
}

double draw_circles(double x, Rng& rng) {
  const double s = bernoulli(rng, 0.5) ? 1.0 : -1.0;
  return s * std::sqrt(std::max(0.0, 1.0 - x * x)) + normal(rng, 0.0, 0.1);
}

double draw_unbalanced(double x, Rng& rng) {
  if (bernoulli(rng, 0.8)) return normal(rng, 0.0, 0.5);
  return normal(rng, 6.0 + x, 0.5);
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_fields(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    out.push_back(trim(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::size_t resolve_column(const ColumnRef& ref, const std::vector<std::string>& header, const std::string& path) {
  if (ref.index) {
    if (*ref.index >= header.size())
      fail(ErrorKind::invalid_argument, path + ": column index " + std::to_string(*ref.index) + " out of range (" +
                                            std::to_string(header.size()) + " columns)");
    return *ref.index;
  }
  const auto it = std::find(header.begin(), header.end(), ref.name);
  if (it == header.end()) fail(ErrorKind::invalid_argument, path + ": no column named '" + ref.name + "'");
  return static_cast<std::size_t>(it - header.begin());
}

}  // namespace

std::optional<SyntheticKind> parse_synthetic(std::string_view name) {
  if (name == "mix-gaussian") return SyntheticKind::mix_gaussian;
  if (name == "circles") return SyntheticKind::circles;
  if (name == "s-shape") return SyntheticKind::s_shape;
  if (name == "spirals") return SyntheticKind::spirals;
  if (name == "unbalanced") return SyntheticKind::unbalanced;
  return std::nullopt;
}

std::string_view synthetic_name(SyntheticKind kind) {
  switch (kind) {
    case SyntheticKind::mix_gaussian: return "mix-gaussian";
    case SyntheticKind::circles: return "circles";
    case SyntheticKind::s_shape: return "s-shape";
    case SyntheticKind::spirals: return "spirals";
    case SyntheticKind::unbalanced: return "unbalanced";
  }
  return "";
}

std::size_t response_dim(SyntheticKind kind) { return kind == SyntheticKind::mix_gaussian ? 2 : 1; }

Dataset gen_mix_gaussian(std::size_t n, Rng& rng) {
  require(n >= 1, "n must be >= 1");
  Dataset out(n);
  for (auto& p : out) {
    const double x = uniform(rng, 0.0, 1.0);
    p.x = {x};
    p.y.resize(2);
    draw_mix_gaussian(x, rng, p.y.data());
  }
  return out;
}

Dataset gen_circles(std::size_t n, Rng& rng) {
  require(n >= 1, "n must be >= 1");
  Dataset out(n);
  for (auto& p : out) {
    const double x = uniform(rng, -0.9, 0.9);
    p.x = {x};
    p.y = {draw_circles(x, rng)};
  }
  return out;
}

Dataset gen_s_shape(std::size_t n, Rng& rng) {
  require(n >= 1, "n must be >= 1");
  Dataset out(n);
  for (auto& p : out) {
    const double t = uniform(rng, -2.0, 2.0);
    p.y = {t};
    p.x = {0.9 * std::sin(1.5 * t) + normal(rng, 0.0, 0.05)};
  }
  return out;
}

Dataset gen_spirals(std::size_t n, Rng& rng) {
  require(n >= 1, "n must be >= 1");
  Dataset out(n);
  for (auto& p : out) {
    const double b = bernoulli(rng, 0.5) ? 1.0 : 0.0;
    const double t = uniform(rng, 0.25, 1.0);
    const double theta = 3.0 * std::numbers::pi * t + b * std::numbers::pi;
    const double rho = 2.0 * t;
    p.x = {rho * std::cos(theta) + normal(rng, 0.0, 0.05)};
    p.y = {rho * std::sin(theta) + normal(rng, 0.0, 0.05)};
  }
  return out;
}

Dataset gen_unbalanced(std::size_t n, Rng& rng) {
  require(n >= 1, "n must be >= 1");
  Dataset out(n);
  for (auto& p : out) {
    const double x = uniform(rng, 0.0, 1.0);
    p.x = {x};
    p.y = {draw_unbalanced(x, rng)};
  }
  return out;
}

Dataset generate(SyntheticKind kind, std::size_t n, Rng& rng) {
  switch (kind) {
    case SyntheticKind::mix_gaussian: return gen_mix_gaussian(n, rng);
    case SyntheticKind::circles: return gen_circles(n, rng);
    case SyntheticKind::s_shape: return gen_s_shape(n, rng);
    case SyntheticKind::spirals: return gen_spirals(n, rng);
    case SyntheticKind::unbalanced: return gen_unbalanced(n, rng);
  }
  fail(ErrorKind::invalid_argument, "unknown dataset");
}

PointSet MixGaussianSampler::sample(std::span<const double> x, std::size_t count, Rng& rng) const {
  require(x.size() == 1, "mix-gaussian expects a scalar feature");
  PointSet out(2, std::vector<double>(2 * count));
  for (std::size_t i = 0; i < count; ++i) draw_mix_gaussian(x[0], rng, out[i].data());
  return out;
}

PointSet CirclesSampler::sample(std::span<const double> x, std::size_t count, Rng& rng) const {
  require(x.size() == 1, "circles expects a scalar feature");
  PointSet out(1, std::vector<double>(count));
  for (std::size_t i = 0; i < count; ++i) out[i][0] = draw_circles(x[0], rng);
  return out;
}

PointSet UnbalancedSampler::sample(std::span<const double> x, std::size_t count, Rng& rng) const {
  require(x.size() == 1, "unbalanced expects a scalar feature");
  PointSet out(1, std::vector<double>(count));
  for (std::size_t i = 0; i < count; ++i) out[i][0] = draw_unbalanced(x[0], rng);
  return out;
}

KnnResampler::KnnResampler(Dataset pool, std::size_t neighbors, std::optional<std::vector<double>> jitter)
    : pool_(std::move(pool)), neighbors_(neighbors) {
  if (pool_.empty()) fail(ErrorKind::invalid_argument, "k-NN resampler needs a non-empty pool");
  require(neighbors_ >= 1 && neighbors_ <= pool_.size(), "neighbour count must lie in [1, pool size]");
  x_dim_ = pool_.front().x.size();
  y_dim_ = pool_.front().y.size();
  require(x_dim_ >= 1 && y_dim_ >= 1, "pool pairs need non-empty x and y");
  for (const auto& p : pool_) require(p.x.size() == x_dim_ && p.y.size() == y_dim_, "ragged pool");

  // Sorted by the first feature so that scalar features can use a window search.
  std::stable_sort(pool_.begin(), pool_.end(), [](const LabeledPair& a, const LabeledPair& b) { return a.x[0] < b.x[0]; });

  if (jitter) {
    require(jitter->size() == y_dim_, "jitter needs one bandwidth per response dimension");
    for (double s : *jitter) require(s >= 0.0, "jitter must be non-negative");
    jitter_ = std::move(*jitter);
  } else {
    jitter_.assign(y_dim_, 0.0);
    const double n = static_cast<double>(pool_.size());
    for (std::size_t j = 0; j < y_dim_; ++j) {
      double mean = 0.0;
      for (const auto& p : pool_) mean += p.y[j];
      mean /= n;
      double ss = 0.0;
      for (const auto& p : pool_) ss += (p.y[j] - mean) * (p.y[j] - mean);
      jitter_[j] = 0.05 * std::sqrt(ss / n);
    }
  }
}

std::vector<std::size_t> KnnResampler::neighbor_indices(std::span<const double> x) const {
  require(x.size() == x_dim_, "feature dimension mismatch");
  auto dist = [&](std::size_t i) { return euclidean(pool_[i].x, x); };
  std::vector<std::size_t> cand;
  if (x_dim_ == 1) {
    const auto it = std::lower_bound(pool_.begin(), pool_.end(), x[0],
                                     [](const LabeledPair& p, double v) { return p.x[0] < v; });
    const std::size_t pos = static_cast<std::size_t>(it - pool_.begin());
    const std::size_t lo = pos >= neighbors_ ? pos - neighbors_ : 0;
    const std::size_t hi = std::min(pool_.size(), pos + neighbors_);
    cand.resize(hi - lo);
    std::iota(cand.begin(), cand.end(), lo);
  } else {
    cand.resize(pool_.size());
    std::iota(cand.begin(), cand.end(), std::size_t{0});
  }
  std::vector<std::pair<double, std::size_t>> keyed;
  keyed.reserve(cand.size());
  for (auto i : cand) keyed.emplace_back(dist(i), i);
  std::partial_sort(keyed.begin(), keyed.begin() + static_cast<std::ptrdiff_t>(neighbors_), keyed.end());
  std::vector<std::size_t> out(neighbors_);
  for (std::size_t i = 0; i < neighbors_; ++i) out[i] = keyed[i].second;
  return out;
}

PointSet KnnResampler::sample(std::span<const double> x, std::size_t count, Rng& rng) const {
  const auto nbrs = neighbor_indices(x);
  std::uniform_int_distribution<std::size_t> pick(0, nbrs.size() - 1);
  PointSet out(y_dim_, std::vector<double>(count * y_dim_));
  for (std::size_t c = 0; c < count; ++c) {
    const auto& y = pool_[nbrs[pick(rng)]].y;
    auto dst = out[c];
    for (std::size_t j = 0; j < y_dim_; ++j) dst[j] = jitter_[j] > 0.0 ? y[j] + normal(rng, 0.0, jitter_[j]) : y[j];
  }
  return out;
}

std::unique_ptr<ConditionalSampler> make_oracle_sampler(SyntheticKind kind, Rng& pool_rng) {
  switch (kind) {
    case SyntheticKind::mix_gaussian: return std::make_unique<MixGaussianSampler>();
    case SyntheticKind::circles: return std::make_unique<CirclesSampler>();
    case SyntheticKind::unbalanced: return std::make_unique<UnbalancedSampler>();
    case SyntheticKind::s_shape:
    case SyntheticKind::spirals:
      return std::make_unique<KnnResampler>(generate(kind, oracle_pool_size, pool_rng));
  }
  fail(ErrorKind::invalid_argument, "unknown dataset");
}

ColumnRef ColumnRef::parse(std::string_view token) {
  const std::string t = trim(token);
  if (!t.empty() && std::all_of(t.begin(), t.end(), [](char c) { return c >= '0' && c <= '9'; }))
    return {t, static_cast<std::size_t>(std::stoull(t))};
  return {t, std::nullopt};
}

std::vector<ColumnRef> parse_column_list(std::string_view list) {
  std::vector<ColumnRef> out;
  for (const auto& f : split_fields(list))
    if (!f.empty()) out.push_back(ColumnRef::parse(f));
  return out;
}

Dataset load_csv(const std::string& path, const std::vector<ColumnRef>& x_columns,
                 const std::vector<ColumnRef>& y_columns) {
  if (x_columns.empty() || y_columns.empty())
    fail(ErrorKind::invalid_argument, "at least one x column and one y column are required");
  std::ifstream in(path);
  if (!in) fail(ErrorKind::io, "cannot open '" + path + "'");

  std::string line;
  if (!std::getline(in, line)) fail(ErrorKind::parse, path + ": missing header row");
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
  const auto header = split_fields(line);

  std::vector<std::size_t> xi, yi;
  for (const auto& c : x_columns) xi.push_back(resolve_column(c, header, path));
  for (const auto& c : y_columns) yi.push_back(resolve_column(c, header, path));

  auto parse_cell = [&](const std::vector<std::string>& fields, std::size_t col, std::size_t line_no) {
    if (col >= fields.size())
      fail(ErrorKind::parse, path + ":" + std::to_string(line_no) + ": missing column " + std::to_string(col));
    const std::string& cell = fields[col];
    double v = 0.0;
    std::size_t used = 0;
    try {
      v = std::stod(cell, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (cell.empty() || used != cell.size() || !std::isfinite(v))
      fail(ErrorKind::parse, path + ":" + std::to_string(line_no) + ": non-numeric cell '" + cell + "' in column '" +
                                 header[col] + "'");
    return v;
  };

  Dataset out;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_fields(line);
    LabeledPair p;
    for (auto c : xi) p.x.push_back(parse_cell(fields, c, line_no));
    for (auto c : yi) p.y.push_back(parse_cell(fields, c, line_no));
    out.push_back(std::move(p));
  }
  return out;
}

void write_csv(const std::string& path, const Dataset& data) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::io, "cannot write '" + path + "'");
  const std::size_t q = data.empty() ? 1 : data.front().x.size();
  const std::size_t d = data.empty() ? 1 : data.front().y.size();
  auto names = [](const char* stem, std::size_t count) {
    std::vector<std::string> v;
    if (count == 1) return std::vector<std::string>{stem};
    for (std::size_t i = 1; i <= count; ++i) v.push_back(stem + std::to_string(i));
    return v;
  };
  std::vector<std::string> cols = names("x", q);
  for (auto& s : names("y", d)) cols.push_back(s);
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << '\n';
  out.precision(17);
  for (const auto& p : data) {
    bool first = true;
    for (double v : p.x) { out << (first ? "" : ",") << v; first = false; }
    for (double v : p.y) out << ',' << v;
    out << '\n';
  }
  if (!out) fail(ErrorKind::io, "failed writing '" + path + "'");
}

Split split_counts(const Dataset& data, std::size_t n_train, std::size_t n_cal, std::size_t n_test, Rng& rng) {
  if (n_cal == 0 || n_test == 0) fail(ErrorKind::size, "calibration and test splits must be non-empty");
  if (n_train + n_cal + n_test > data.size())
    fail(ErrorKind::size, "requested split sizes exceed the " + std::to_string(data.size()) + " available rows");
  std::vector<std::size_t> perm(data.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::shuffle(perm.begin(), perm.end(), rng);
  Split s;
  s.calibration.reserve(n_cal);
  s.test.reserve(n_test);
  for (std::size_t i = 0; i < perm.size(); ++i) {
    const auto& p = data[perm[i]];
    if (i < n_cal) s.calibration.push_back(p);
    else if (i < n_cal + n_test) s.test.push_back(p);
    else s.train.push_back(p);
  }
  return s;
}

Split split(const Dataset& data, std::array<double, 3> fractions, Rng& rng) {
  for (double f : fractions)
    if (!(f > 0.0)) fail(ErrorKind::invalid_argument, "split fractions must be positive");
  if (fractions[0] + fractions[1] + fractions[2] > 1.0 + 1e-12)
    fail(ErrorKind::invalid_argument, "split fractions must sum to at most 1");
  const double n = static_cast<double>(data.size());
  const auto n_cal = static_cast<std::size_t>(std::floor(fractions[1] * n + 1e-9));
  const auto n_test = static_cast<std::size_t>(std::floor(fractions[2] * n + 1e-9));
  if (n_cal + n_test >= data.size()) fail(ErrorKind::size, "dataset too small to split");
  return split_counts(data, 0, n_cal, n_test, rng);
}

}  // namespace gcpvcr
