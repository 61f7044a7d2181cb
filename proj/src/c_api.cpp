#include "gcpvcr/gcpvcr.h"

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>
#include <new>
#include <sstream>
#include <string>

#include "gcpvcr/harness.hpp"

struct gcp_scores {
  gcpvcr::ScoreMatrix matrix;
};

struct gcp_solution {
  gcpvcr::Solution solution;
};

struct gcp_experiment {
  gcpvcr::ExperimentConfig config;
  std::string report;
};

namespace {

thread_local std::string last_error;

gcp_status to_status(gcpvcr::ErrorKind kind) {
  switch (kind) {
    case gcpvcr::ErrorKind::invalid_argument: return GCP_ERR_INVALID_ARGUMENT;
    case gcpvcr::ErrorKind::contract: return GCP_ERR_CONTRACT;
    case gcpvcr::ErrorKind::size: return GCP_ERR_SIZE;
    case gcpvcr::ErrorKind::io: return GCP_ERR_IO;
    case gcpvcr::ErrorKind::parse: return GCP_ERR_PARSE;
    case gcpvcr::ErrorKind::constraint: return GCP_ERR_CONSTRAINT;
  }
  return GCP_ERR_INTERNAL;
}

template <typename Fn>
gcp_status guarded(Fn&& fn) {
  last_error.clear();
  try {
    fn();
    return GCP_OK;
  } catch (const gcpvcr::Error& e) {
    last_error = e.what();
    return to_status(e.kind());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return GCP_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return GCP_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return GCP_ERR_INTERNAL;
  }
}

gcp_status invalid_handle(const char* what) {
  last_error = std::string("null ") + what;
  return GCP_ERR_INVALID_HANDLE;
}

void require_arg(bool ok, const char* msg) {
  if (!ok) gcpvcr::fail(gcpvcr::ErrorKind::invalid_argument, msg);
}

gcp_radius to_c(const gcpvcr::Radius& r) {
  switch (r.kind()) {
    case gcpvcr::Radius::Kind::excluded: return {GCP_RADIUS_EXCLUDED, 0.0};
    case gcpvcr::Radius::Kind::infinite: return {GCP_RADIUS_INFINITE, std::numeric_limits<double>::infinity()};
    case gcpvcr::Radius::Kind::finite: return {GCP_RADIUS_FINITE, r.value()};
  }
  return {GCP_RADIUS_EXCLUDED, 0.0};
}

gcpvcr::Radius from_c(const gcp_radius& r) {
  switch (r.kind) {
    case GCP_RADIUS_EXCLUDED: return gcpvcr::Radius::excluded();
    case GCP_RADIUS_INFINITE: return gcpvcr::Radius::infinite();
    case GCP_RADIUS_FINITE: return gcpvcr::Radius::finite(r.value);
  }
  gcpvcr::fail(gcpvcr::ErrorKind::invalid_argument, "unknown radius kind");
}

gcpvcr::OptimizerConfig to_config(const gcp_solver_options* o) {
  gcpvcr::OptimizerConfig c;
  if (!o) return c;
  c.alpha = o->alpha;
  c.budget = o->budget;
  c.epsilon_steps = o->epsilon_steps;
  c.patience = o->patience;
  c.dim = o->dim;
  c.seed = o->seed;
  c.record_trace = o->record_trace != 0;
  if (o->starts) c.starts.assign(o->starts, o->starts + o->n_starts);
  return c;
}

gcp_status copy_text(const std::string& text, char* buffer, size_t capacity, size_t* needed) {
  if (needed) *needed = text.size() + 1;
  if (!buffer) return GCP_OK;
  if (capacity == 0) return GCP_ERR_BUFFER_TOO_SMALL;
  const size_t n = std::min(capacity - 1, text.size());
  std::memcpy(buffer, text.data(), n);
  buffer[n] = '\0';
  if (n < text.size()) {
    last_error = "buffer too small";
    return GCP_ERR_BUFFER_TOO_SMALL;
  }
  return GCP_OK;
}

gcpvcr::PredictionSet make_set(const double* centers, const gcp_radius* radii, size_t k, size_t d) {
  require_arg(centers != nullptr && radii != nullptr, "null centre or radius array");
  gcpvcr::PointSet c(d, std::vector<double>(centers, centers + k * d));
  gcpvcr::RadiusVector r;
  for (size_t i = 0; i < k; ++i) r.push_back(from_c(radii[i]));
  return gcpvcr::PredictionSet(std::move(c), std::move(r), gcpvcr::Method::vcr);
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  f << text;
  if (!f) gcpvcr::fail(gcpvcr::ErrorKind::io, "failed writing '" + path + "'");
}

}  // namespace

extern "C" {

GCP_API const char* gcp_last_error(void) { return last_error.c_str(); }

GCP_API const char* gcp_status_string(gcp_status status) {
  switch (status) {
    case GCP_OK: return "ok";
    case GCP_ERR_INVALID_ARGUMENT: return "invalid argument";
    case GCP_ERR_CONTRACT: return "contract violation";
    case GCP_ERR_SIZE: return "size limit";
    case GCP_ERR_IO: return "i/o error";
    case GCP_ERR_PARSE: return "parse error";
    case GCP_ERR_CONSTRAINT: return "coverage constraint violated";
    case GCP_ERR_INVALID_HANDLE: return "invalid handle";
    case GCP_ERR_BUFFER_TOO_SMALL: return "buffer too small";
    case GCP_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

GCP_API const char* gcp_version(void) { return "1.0.0"; }

GCP_API gcp_status gcp_scores_create(size_t n, size_t k, const double* row_major, gcp_scores** out) {
  if (!out) return invalid_handle("output pointer");
  return guarded([&] {
    require_arg(row_major != nullptr || n * k == 0, "null score data");
    auto s = std::make_unique<gcp_scores>();
    s->matrix = gcpvcr::ScoreMatrix(n, k, std::vector<double>(row_major, row_major + n * k));
    *out = s.release();
  });
}

GCP_API void gcp_scores_destroy(gcp_scores* scores) { delete scores; }

GCP_API gcp_status gcp_scores_shape(const gcp_scores* scores, size_t* n, size_t* k) {
  if (!scores) return invalid_handle("scores");
  if (n) *n = scores->matrix.n();
  if (k) *k = scores->matrix.k();
  return GCP_OK;
}

GCP_API gcp_status gcp_empirical_quantile(const gcp_scores* scores, size_t rank, uint32_t grid_index,
                                          gcp_radius* out) {
  if (!scores) return invalid_handle("scores");
  if (!out) return invalid_handle("output pointer");
  return guarded([&] {
    gcpvcr::require(rank < scores->matrix.k(), "rank out of range");
    *out = to_c(gcpvcr::empirical_quantile(scores->matrix.column(rank), grid_index));
  });
}

GCP_API gcp_status gcp_calibration_coverage(const gcp_scores* scores, const uint32_t* beta, size_t k,
                                            size_t* covered, size_t* total) {
  if (!scores) return invalid_handle("scores");
  return guarded([&] {
    require_arg(beta != nullptr, "null beta");
    const gcpvcr::BetaVector b(scores->matrix.n(), std::vector<uint32_t>(beta, beta + k));
    const auto c = gcpvcr::calibration_coverage(scores->matrix, b);
    if (covered) *covered = c.covered;
    if (total) *total = c.total;
  });
}

GCP_API gcp_status gcp_objective(const gcp_radius* radii, size_t k, size_t d, double* out) {
  if (!out) return invalid_handle("output pointer");
  return guarded([&] {
    require_arg(radii != nullptr || k == 0, "null radii");
    gcpvcr::RadiusVector r;
    for (size_t i = 0; i < k; ++i) r.push_back(from_c(radii[i]));
    *out = gcpvcr::objective(r, d);
  });
}

GCP_API void gcp_solver_options_init(gcp_solver_options* options) {
  if (!options) return;
  const gcpvcr::OptimizerConfig c;
  *options = {c.alpha, c.budget, c.epsilon_steps, c.patience, c.dim, c.seed, 0, nullptr, 0};
}

GCP_API gcp_status gcp_solve(const gcp_scores* scores, gcp_solver_kind kind, const gcp_solver_options* options,
                             gcp_solution** out) {
  if (!scores) return invalid_handle("scores");
  if (!out) return invalid_handle("output pointer");
  return guarded([&] {
    const auto config = to_config(options);
    auto s = std::make_unique<gcp_solution>();
    s->solution = kind == GCP_SOLVER_EXACT ? gcpvcr::solve_exact(scores->matrix, config)
                                           : gcpvcr::solve_multistart(scores->matrix, config);
    *out = s.release();
  });
}

GCP_API gcp_status gcp_solve_from(const gcp_scores* scores, const gcp_solver_options* options, size_t start_rank,
                                  gcp_solution** out) {
  if (!scores) return invalid_handle("scores");
  if (!out) return invalid_handle("output pointer");
  return guarded([&] {
    auto s = std::make_unique<gcp_solution>();
    s->solution = gcpvcr::solve_heuristic(scores->matrix, to_config(options), start_rank);
    *out = s.release();
  });
}

GCP_API void gcp_solution_destroy(gcp_solution* solution) { delete solution; }

GCP_API size_t gcp_solution_k(const gcp_solution* s) { return s ? s->solution.beta.size() : 0; }

GCP_API gcp_status gcp_solution_beta(const gcp_solution* s, uint32_t* beta, size_t k) {
  if (!s) return invalid_handle("solution");
  if (!beta || k < s->solution.beta.size()) return GCP_ERR_BUFFER_TOO_SMALL;
  for (size_t r = 0; r < s->solution.beta.size(); ++r) beta[r] = s->solution.beta[r];
  return GCP_OK;
}

GCP_API gcp_status gcp_solution_radii(const gcp_solution* s, gcp_radius* radii, size_t k) {
  if (!s) return invalid_handle("solution");
  if (!radii || k < s->solution.radii.size()) return GCP_ERR_BUFFER_TOO_SMALL;
  for (size_t r = 0; r < s->solution.radii.size(); ++r) radii[r] = to_c(s->solution.radii[r]);
  return GCP_OK;
}

GCP_API double gcp_solution_objective(const gcp_solution* s) {
  return s ? s->solution.objective : std::numeric_limits<double>::quiet_NaN();
}

GCP_API gcp_status gcp_solution_coverage(const gcp_solution* s, size_t* covered, size_t* total) {
  if (!s) return invalid_handle("solution");
  if (covered) *covered = s->solution.coverage.covered;
  if (total) *total = s->solution.coverage.total;
  return GCP_OK;
}

GCP_API int gcp_solution_feasible(const gcp_solution* s) { return s && s->solution.feasible ? 1 : 0; }

GCP_API size_t gcp_solution_start_rank(const gcp_solution* s) { return s ? s->solution.start_rank : 0; }

GCP_API size_t gcp_solution_trace_length(const gcp_solution* s) { return s ? s->solution.trace.size() : 0; }

GCP_API gcp_status gcp_solution_trace_entry(const gcp_solution* s, size_t i, size_t* iteration, double* objective,
                                            size_t* covered, uint32_t* beta, size_t k) {
  if (!s) return invalid_handle("solution");
  if (i >= s->solution.trace.size()) {
    last_error = "trace index out of range";
    return GCP_ERR_INVALID_ARGUMENT;
  }
  const auto& rec = s->solution.trace[i];
  if (iteration) *iteration = rec.iteration;
  if (objective) *objective = rec.objective;
  if (covered) *covered = rec.coverage.covered;
  if (beta) {
    if (k < rec.beta.size()) return GCP_ERR_BUFFER_TOO_SMALL;
    for (size_t r = 0; r < rec.beta.size(); ++r) beta[r] = rec.beta[r];
  }
  return GCP_OK;
}

GCP_API gcp_status gcp_rank_by_density(const double* samples, size_t k, size_t d, size_t m, const double* reference,
                                       size_t n_reference, size_t* permutation, double* mean_nn) {
  if (!permutation) return invalid_handle("permutation");
  return guarded([&] {
    require_arg(samples != nullptr, "null samples");
    const gcpvcr::PointSet batch(d, std::vector<double>(samples, samples + k * d));
    gcpvcr::PointSet ref;
    if (reference) ref = gcpvcr::PointSet(d, std::vector<double>(reference, reference + n_reference * d));
    const auto ranked = gcpvcr::rank_by_density(batch, m, reference ? &ref : nullptr);
    for (size_t r = 0; r < k; ++r) {
      permutation[r] = ranked.permutation[r];
      if (mean_nn) mean_nn[r] = ranked.mean_nn_distances[r];
    }
  });
}

GCP_API gcp_status gcp_set_contains(const double* centers, const gcp_radius* radii, size_t k, size_t d,
                                    const double* y, int* inside) {
  if (!inside) return invalid_handle("output pointer");
  return guarded([&] {
    require_arg(y != nullptr, "null query point");
    *inside = make_set(centers, radii, k, d).contains(std::span<const double>(y, d)) ? 1 : 0;
  });
}

GCP_API gcp_status gcp_set_measure(const double* centers, const gcp_radius* radii, size_t k, size_t d,
                                   size_t mc_samples, uint64_t seed, double* value, double* standard_error) {
  if (!value) return invalid_handle("output pointer");
  return guarded([&] {
    gcpvcr::Rng rng(seed);
    const auto m = gcpvcr::measure(make_set(centers, radii, k, d), mc_samples, rng);
    *value = m.value;
    if (standard_error) *standard_error = m.standard_error;
  });
}

GCP_API gcp_status gcp_experiment_create(gcp_experiment** out) {
  if (!out) return invalid_handle("output pointer");
  return guarded([&] { *out = new gcp_experiment(); });
}

GCP_API void gcp_experiment_destroy(gcp_experiment* e) { delete e; }

GCP_API gcp_status gcp_experiment_set(gcp_experiment* e, const char* key, const char* value) {
  if (!e) return invalid_handle("experiment");
  return guarded([&] {
    require_arg(key != nullptr && value != nullptr, "null key or value");
    gcpvcr::apply_setting(e->config, key, value);
  });
}

GCP_API gcp_status gcp_experiment_load_json(gcp_experiment* e, const char* path) {
  if (!e) return invalid_handle("experiment");
  return guarded([&] {
    require_arg(path != nullptr, "null path");
    gcpvcr::load_config_json(e->config, path);
  });
}

GCP_API gcp_status gcp_experiment_validate(const gcp_experiment* e) {
  if (!e) return invalid_handle("experiment");
  return guarded([&] { gcpvcr::validate(e->config); });
}

GCP_API gcp_status gcp_experiment_run(gcp_experiment* e, const char* out_dir) {
  if (!e) return invalid_handle("experiment");
  return guarded([&] {
    const auto output = gcpvcr::run_experiment(e->config);
    gcpvcr::write_experiment(e->config, output, out_dir ? out_dir : e->config.out);
    e->report = gcpvcr::summary_csv(output.summary);
  });
}

GCP_API gcp_status gcp_experiment_sweep_k(gcp_experiment* e, const size_t* k_values, size_t n_values,
                                          const char* out_dir) {
  if (!e) return invalid_handle("experiment");
  return guarded([&] {
    require_arg(k_values != nullptr && n_values > 0, "empty K list");
    const auto rows = gcpvcr::sweep_k(e->config, std::vector<size_t>(k_values, k_values + n_values));
    const std::string dir = out_dir ? out_dir : e->config.out;
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) gcpvcr::fail(gcpvcr::ErrorKind::io, "cannot create '" + dir + "': " + ec.message());
    e->report = gcpvcr::sweep_csv(rows);
    write_text((std::filesystem::path(dir) / "sweep_k.csv").string(), e->report);
  });
}

GCP_API gcp_status gcp_experiment_trace(gcp_experiment* e, const char* path) {
  if (!e) return invalid_handle("experiment");
  return guarded([&] {
    const std::filesystem::path target =
        path ? std::filesystem::path(path) : std::filesystem::path(e->config.out) / "trace.csv";
    e->report = gcpvcr::trace_csv(gcpvcr::run_trace(e->config));
    if (target.has_parent_path()) std::filesystem::create_directories(target.parent_path());
    write_text(target.string(), e->report);
  });
}

GCP_API gcp_status gcp_experiment_report(const gcp_experiment* e, char* buffer, size_t capacity, size_t* needed) {
  if (!e) return invalid_handle("experiment");
  return copy_text(e->report, buffer, capacity, needed);
}

GCP_API gcp_status gcp_generate_dataset(const char* dataset, size_t n, uint64_t seed, const char* path) {
  return guarded([&] {
    require_arg(dataset != nullptr && path != nullptr, "null dataset or path");
    gcpvcr::generate_dataset_csv(dataset, n, seed, path);
  });
}

GCP_API gcp_status gcp_measure_check(size_t mc_samples, uint64_t seed, char* report, size_t capacity,
                                     size_t* needed, int* passed) {
  std::string text;
  bool all = true;
  const gcp_status st = guarded([&] {
    std::ostringstream os;
    os.precision(8);
    for (const auto& c : gcpvcr::measure_check(mc_samples, seed)) {
      all = all && c.passed;
      os << (c.passed ? "PASS " : "FAIL ") << c.name << " estimate=" << c.estimate << " reference=" << c.reference
         << " stderr=" << c.standard_error << '\n';
    }
    text = os.str();
  });
  if (st != GCP_OK) return st;
  if (passed) *passed = all ? 1 : 0;
  return copy_text(text, report, capacity, needed);
}

}  // extern "C"
