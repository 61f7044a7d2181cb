#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gcpvcr/datagen.hpp"
#include "gcpvcr/optimizer.hpp"
#include "gcpvcr/predictor.hpp"

namespace gcpvcr {

enum class MethodSelection { vcr, pcp, both };
enum class SolverKind { exact, heuristic };

struct ExperimentConfig {
  std::string dataset = "mix-gaussian";
  std::string csv;  // non-empty selects the CSV pathway
  std::string x_cols;
  std::string y_cols;
  MethodSelection method = MethodSelection::both;
  double alpha = 0.1;
  std::size_t k = 10;
  std::size_t m = 0;  // 0 selects ceil(K/3)
  std::size_t reference = 0;
  std::size_t n_train = 3000;
  std::size_t n_cal = 1000;
  std::size_t n_test = 1000;
  std::size_t trials = 10;
  std::uint64_t seed = 0;
  SolverKind solver = SolverKind::heuristic;
  std::size_t budget = 2000;
  std::uint32_t epsilon_steps = 1;
  std::size_t patience = 20;  // rejected trade-offs before the increment doubles; 0 = fixed
  std::size_t mc_samples = 2000;
  std::size_t neighbors = KnnResampler::default_neighbors;
  std::size_t threads = 0;  // 0 uses the hardware concurrency
  std::size_t n = 5000;     // gen-data row count
  bool timing = false;      // runtime_ms is written as 0 unless set, keeping outputs reproducible
  bool geometry = true;
  std::string out = "results";

  std::size_t neighbor_count() const { return m == 0 ? default_neighbor_count(k) : m; }
};

/// Applies one setting by flag name ("alpha", "epsilon-steps", ...; '_' is accepted for '-').
void apply_setting(ExperimentConfig& config, std::string_view key, std::string_view value);

/// Loads a flat JSON object keyed by flag names.
void load_config_json(ExperimentConfig& config, const std::string& path);

void validate(const ExperimentConfig& config);

struct TrialResult {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  Method method = Method::vcr;
  double coverage = 0.0;
  double efficiency = 0.0;
  double surrogate_efficiency = 0.0;
  std::vector<std::uint32_t> beta;  // vcr only
  Coverage calibration_coverage;    // vcr: of the calibrated beta; pcp: of the scalar quantile
  double runtime_ms = 0.0;
};

struct GeometryRecord {
  std::size_t trial = 0;
  std::size_t test_index = 0;
  Method method = Method::vcr;
  PointSet centers;
  RadiusVector radii;
  SetMeasure measure;
  bool contains_truth = false;
};

struct TrialOutcome {
  std::vector<TrialResult> results;
  std::vector<GeometryRecord> geometry;
};

std::uint64_t trial_seed(std::uint64_t master, std::size_t trial);

/// Calibrates and evaluates one trial. Throws Error(constraint) if the calibrated beta misses 1 - alpha.
TrialOutcome run_trial(const ExperimentConfig& config, std::size_t trial, std::uint64_t seed,
                       const Dataset* csv_data = nullptr);

struct SummaryRow {
  Method method = Method::vcr;
  std::string metric;
  double mean = 0.0;
  double stderr_ = 0.0;
  std::size_t trials = 0;
};

std::vector<SummaryRow> aggregate(const std::vector<TrialResult>& results);

struct ExperimentOutput {
  std::vector<TrialResult> trials;
  std::vector<SummaryRow> summary;
  std::vector<GeometryRecord> geometry;
};

/// Runs config.trials trials (in parallel up to config.threads) and aggregates them.
ExperimentOutput run_experiment(const ExperimentConfig& config);

/// Writes trials.csv, summary.csv and (when enabled) geometry.jsonl into out_dir.
void write_experiment(const ExperimentConfig& config, const ExperimentOutput& output, const std::string& out_dir);

std::string trials_csv(const ExperimentConfig& config, const std::vector<TrialResult>& trials);
std::string summary_csv(const std::vector<SummaryRow>& summary);
std::string geometry_json_line(const GeometryRecord& record);

struct SweepRow {
  std::size_t k = 0;
  double mean_ratio = 0.0;
  double stderr_ = 0.0;
  std::size_t trials = 0;
  double vcr_efficiency = 0.0;
  double pcp_efficiency = 0.0;
};

/// PCP / VCR efficiency ratio per K over paired trials.
std::vector<SweepRow> sweep_k(const ExperimentConfig& config, const std::vector<std::size_t>& k_values);
std::string sweep_csv(const std::vector<SweepRow>& rows);

struct TraceRow {
  std::size_t start_rank = 0;
  TraceRecord record;
};

/// Heuristic convergence traces for every start rank on trial 0's calibration scores.
std::vector<TraceRow> run_trace(const ExperimentConfig& config);
std::string trace_csv(const std::vector<TraceRow>& rows);

struct MeasureCheck {
  std::string name;
  double estimate = 0.0;
  double reference = 0.0;
  double standard_error = 0.0;
  bool passed = false;
};

/// Monte Carlo measure self-test: two far-apart unit disks against 2*pi, and random 1-D unions
/// against the exact sweep. Each check passes within three standard errors.
std::vector<MeasureCheck> measure_check(std::size_t mc_samples, std::uint64_t seed, std::size_t interval_cases = 50);

/// Generates a synthetic dataset and writes it as CSV.
void generate_dataset_csv(std::string_view dataset, std::size_t n, std::uint64_t seed, const std::string& path);

}  // namespace gcpvcr
