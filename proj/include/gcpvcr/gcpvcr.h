/* C interface to the gcpvcr library.
 *
 * All functions return a gcp_status; on failure gcp_last_error() holds a
 * thread-local diagnostic until the next call on the same thread. Handles are
 * opaque and must be released with the matching *_destroy function. Ranks and
 * trial indices are zero-based.
 */
#ifndef GCPVCR_GCPVCR_H
#define GCPVCR_GCPVCR_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(GCPVCR_BUILDING)
#    define GCP_API __declspec(dllexport)
#  else
#    define GCP_API __declspec(dllimport)
#  endif
#else
#  define GCP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gcp_status {
  GCP_OK = 0,
  GCP_ERR_INVALID_ARGUMENT = 1,
  GCP_ERR_CONTRACT = 2,
  GCP_ERR_SIZE = 3,
  GCP_ERR_IO = 4,
  GCP_ERR_PARSE = 5,
  GCP_ERR_CONSTRAINT = 6,
  GCP_ERR_INVALID_HANDLE = 7,
  GCP_ERR_BUFFER_TOO_SMALL = 8,
  GCP_ERR_INTERNAL = 9
} gcp_status;

GCP_API const char* gcp_last_error(void);
GCP_API const char* gcp_status_string(gcp_status status);
GCP_API const char* gcp_version(void);

/* ---- quantile core ---------------------------------------------------- */

typedef enum gcp_radius_kind {
  GCP_RADIUS_EXCLUDED = 0,
  GCP_RADIUS_FINITE = 1,
  GCP_RADIUS_INFINITE = 2
} gcp_radius_kind;

typedef struct gcp_radius {
  gcp_radius_kind kind;
  double value; /* meaningful for GCP_RADIUS_FINITE only */
} gcp_radius;

typedef struct gcp_scores gcp_scores;

/* n x k row-major non-negative scores. */
GCP_API gcp_status gcp_scores_create(size_t n, size_t k, const double* row_major, gcp_scores** out);
GCP_API void gcp_scores_destroy(gcp_scores* scores);
GCP_API gcp_status gcp_scores_shape(const gcp_scores* scores, size_t* n, size_t* k);

/* Quantile of column `rank` at level grid_index/(n+1). */
GCP_API gcp_status gcp_empirical_quantile(const gcp_scores* scores, size_t rank, uint32_t grid_index,
                                          gcp_radius* out);

/* Covered rows (including the all-infinity row) out of n+1 for the given beta grid indices. */
GCP_API gcp_status gcp_calibration_coverage(const gcp_scores* scores, const uint32_t* beta, size_t k,
                                            size_t* covered, size_t* total);

/* Sum of radius^d; Excluded adds 0, Infinite yields +inf. */
GCP_API gcp_status gcp_objective(const gcp_radius* radii, size_t k, size_t d, double* out);

/* ---- optimiser -------------------------------------------------------- */

typedef enum gcp_solver_kind { GCP_SOLVER_HEURISTIC = 0, GCP_SOLVER_EXACT = 1 } gcp_solver_kind;

typedef struct gcp_solver_options {
  double alpha;
  size_t budget;
  uint32_t epsilon_steps;
  size_t patience; /* rejected trade-offs before the increment doubles; 0 keeps it fixed */
  size_t dim;
  uint64_t seed;
  int record_trace;
  const size_t* starts; /* NULL means every rank */
  size_t n_starts;
} gcp_solver_options;

GCP_API void gcp_solver_options_init(gcp_solver_options* options);

typedef struct gcp_solution gcp_solution;

/* Heuristic runs multistart over options->starts. */
GCP_API gcp_status gcp_solve(const gcp_scores* scores, gcp_solver_kind kind, const gcp_solver_options* options,
                             gcp_solution** out);
/* Single-start heuristic. */
GCP_API gcp_status gcp_solve_from(const gcp_scores* scores, const gcp_solver_options* options, size_t start_rank,
                                  gcp_solution** out);
GCP_API void gcp_solution_destroy(gcp_solution* solution);

GCP_API size_t gcp_solution_k(const gcp_solution* solution);
GCP_API gcp_status gcp_solution_beta(const gcp_solution* solution, uint32_t* beta, size_t k);
GCP_API gcp_status gcp_solution_radii(const gcp_solution* solution, gcp_radius* radii, size_t k);
GCP_API double gcp_solution_objective(const gcp_solution* solution);
GCP_API gcp_status gcp_solution_coverage(const gcp_solution* solution, size_t* covered, size_t* total);
GCP_API int gcp_solution_feasible(const gcp_solution* solution);
GCP_API size_t gcp_solution_start_rank(const gcp_solution* solution);
GCP_API size_t gcp_solution_trace_length(const gcp_solution* solution);
/* beta may be NULL; otherwise it receives k indices. */
GCP_API gcp_status gcp_solution_trace_entry(const gcp_solution* solution, size_t i, size_t* iteration,
                                            double* objective, size_t* covered, uint32_t* beta, size_t k);

/* ---- scoring and prediction sets ---------------------------------------- */

/* Ranks k samples of dimension d (row-major) by mean m-NN distance, densest first.
 * reference may be NULL (self-ranking, m <= k-1) or hold n_reference points.
 * permutation receives k input indices; mean_nn may be NULL. */
GCP_API gcp_status gcp_rank_by_density(const double* samples, size_t k, size_t d, size_t m, const double* reference,
                                       size_t n_reference, size_t* permutation, double* mean_nn);

/* Membership of y in the union of k balls (centres row-major, dimension d). */
GCP_API gcp_status gcp_set_contains(const double* centers, const gcp_radius* radii, size_t k, size_t d,
                                    const double* y, int* inside);

/* Set measure: exact for d = 1, Monte Carlo otherwise. standard_error may be NULL. */
GCP_API gcp_status gcp_set_measure(const double* centers, const gcp_radius* radii, size_t k, size_t d,
                                   size_t mc_samples, uint64_t seed, double* value, double* standard_error);

/* ---- experiment harness ------------------------------------------------- */

typedef struct gcp_experiment gcp_experiment;

GCP_API gcp_status gcp_experiment_create(gcp_experiment** out);
GCP_API void gcp_experiment_destroy(gcp_experiment* experiment);

/* Key is a flag name with or without leading dashes (e.g. "alpha", "--epsilon-steps"). */
GCP_API gcp_status gcp_experiment_set(gcp_experiment* experiment, const char* key, const char* value);
GCP_API gcp_status gcp_experiment_load_json(gcp_experiment* experiment, const char* path);
GCP_API gcp_status gcp_experiment_validate(const gcp_experiment* experiment);

/* Runs all trials and writes trials.csv, summary.csv, geometry.jsonl to out_dir (NULL: the "out" setting). */
GCP_API gcp_status gcp_experiment_run(gcp_experiment* experiment, const char* out_dir);
/* Writes sweep_k.csv to out_dir. */
GCP_API gcp_status gcp_experiment_sweep_k(gcp_experiment* experiment, const size_t* k_values, size_t n_values,
                                          const char* out_dir);
/* Writes the heuristic convergence trace for every start rank to path (NULL: <out>/trace.csv). */
GCP_API gcp_status gcp_experiment_trace(gcp_experiment* experiment, const char* path);

/* Text of the most recent run/sweep/trace result table (summary.csv, sweep_k.csv or trace.csv contents).
 * Copies at most capacity bytes including the terminator; *needed receives the full size. */
GCP_API gcp_status gcp_experiment_report(const gcp_experiment* experiment, char* buffer, size_t capacity,
                                         size_t* needed);

/* Writes n rows of a synthetic dataset ("mix-gaussian", "circles", "s-shape", "spirals", "unbalanced"). */
GCP_API gcp_status gcp_generate_dataset(const char* dataset, size_t n, uint64_t seed, const char* path);

/* Monte Carlo measure self-test. report receives one line per check; *passed is 1 if all passed. */
GCP_API gcp_status gcp_measure_check(size_t mc_samples, uint64_t seed, char* report, size_t capacity,
                                     size_t* needed, int* passed);

#ifdef __cplusplus
}
#endif

#endif /* GCPVCR_GCPVCR_H */
