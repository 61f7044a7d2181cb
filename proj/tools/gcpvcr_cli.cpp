// Command-line front end. Talks to the library only through the C API.

#include <cstdio>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gcpvcr/gcpvcr.h"

namespace {

constexpr int exit_runtime = 1;
constexpr int exit_usage = 2;

struct ExperimentHandle {
  gcp_experiment* ptr = nullptr;
  ExperimentHandle() {
    if (gcp_experiment_create(&ptr) != GCP_OK) ptr = nullptr;
  }
  ~ExperimentHandle() { gcp_experiment_destroy(ptr); }
  ExperimentHandle(const ExperimentHandle&) = delete;
  ExperimentHandle& operator=(const ExperimentHandle&) = delete;
};

int report_error(gcp_status st, const char* context) {
  std::fprintf(stderr, "gcpvcr %s: %s: %s\n", context, gcp_status_string(st), gcp_last_error());
  return st == GCP_ERR_INVALID_ARGUMENT ? exit_usage : exit_runtime;
}

// Flag values are kept as strings and parsed by the library so that JSON config
// files and flags share one code path.
struct FlagSet {
  std::map<std::string, std::string> values;
  std::string config_path;

  void add(CLI::App* app, const std::string& name, const std::string& help) {
    app->add_option("--" + name, values[name], help);
  }

  void add_experiment_flags(CLI::App* app) {
    app->add_option("--config", config_path, "JSON config file; flags override its values");
    add(app, "dataset", "mix-gaussian | circles | s-shape | spirals | unbalanced");
    add(app, "csv", "CSV file with a header row (replaces --dataset)");
    add(app, "x-cols", "feature columns of --csv (names or zero-based indices, comma separated)");
    add(app, "y-cols", "response columns of --csv");
    add(app, "method", "vcr | pcp | both");
    add(app, "alpha", "target miscoverage rate");
    add(app, "k", "samples drawn per point (K)");
    add(app, "m", "neighbours for density ranking (default ceil(K/3))");
    add(app, "reference", "extra reference draws for ranking (default 0)");
    add(app, "n-train", "training rows for synthetic data");
    add(app, "n-cal", "calibration rows for synthetic data");
    add(app, "n-test", "test rows for synthetic data");
    add(app, "trials", "number of independent trials");
    add(app, "seed", "master seed");
    add(app, "solver", "heuristic | exact (K <= 3)");
    add(app, "budget", "trade-off iterations per start rank");
    add(app, "epsilon-steps", "trade-off increment in grid steps");
    add(app, "patience", "rejected trade-offs before the increment doubles (0 = fixed)");
    add(app, "mc-samples", "Monte Carlo samples per set measure (d >= 2)");
    add(app, "neighbors", "k-NN resampler neighbour count for --csv data");
    add(app, "threads", "worker threads for trials (0 = all cores)");
    add(app, "timing", "record runtime_ms (true/false)");
    add(app, "geometry", "write geometry.jsonl (true/false)");
    add(app, "out", "output directory");
  }

  // Returns 0 on success or an exit code.
  int apply(gcp_experiment* e) const {
    if (!config_path.empty()) {
      const gcp_status st = gcp_experiment_load_json(e, config_path.c_str());
      if (st != GCP_OK) return report_error(st, "config");
    }
    for (const auto& [key, value] : values) {
      if (value.empty()) continue;
      const gcp_status st = gcp_experiment_set(e, key.c_str(), value.c_str());
      if (st != GCP_OK) return report_error(st, "usage");
    }
    const gcp_status st = gcp_experiment_validate(e);
    if (st != GCP_OK) return report_error(st, "usage");
    return 0;
  }
};

std::string fetch_report(const gcp_experiment* e) {
  size_t needed = 0;
  gcp_experiment_report(e, nullptr, 0, &needed);
  std::string text(needed, '\0');
  gcp_experiment_report(e, text.data(), text.size(), &needed);
  if (!text.empty()) text.pop_back();
  return text;
}

std::vector<size_t> parse_k_list(const std::string& list) {
  std::vector<size_t> out;
  std::stringstream ss(list);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    size_t used = 0;
    const unsigned long long v = std::stoull(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    out.push_back(static_cast<size_t>(v));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Conformal prediction sets built from generated samples, one radius per density rank"};
  app.require_subcommand(1);

  FlagSet run_flags;
  auto* run = app.add_subcommand("run", "run a seeded multi-trial experiment");
  run_flags.add_experiment_flags(run);

  FlagSet sweep_flags;
  std::string k_list = "3,5,10";
  auto* sweep = app.add_subcommand("sweep-k", "PCP/VCR efficiency ratio across K");
  sweep_flags.add_experiment_flags(sweep);
  sweep->add_option("--k-values", k_list, "comma separated K values")->capture_default_str();

  FlagSet trace_flags;
  auto* trace = app.add_subcommand("trace", "dump heuristic optimiser convergence to <out>/trace.csv");
  trace_flags.add_experiment_flags(trace);

  std::string gen_dataset = "circles";
  size_t gen_n = 5000;
  uint64_t gen_seed = 0;
  std::string gen_out = "data.csv";
  auto* gen = app.add_subcommand("gen-data", "write a synthetic dataset to CSV");
  gen->add_option("--dataset", gen_dataset, "mix-gaussian | circles | s-shape | spirals | unbalanced")
      ->capture_default_str();
  gen->add_option("--n", gen_n, "rows")->capture_default_str();
  gen->add_option("--seed", gen_seed, "seed")->capture_default_str();
  gen->add_option("--out", gen_out, "output CSV path")->capture_default_str();

  size_t check_samples = 1000000;
  uint64_t check_seed = 0;
  auto* check = app.add_subcommand("measure-check", "self-test of the Monte Carlo set measure");
  check->add_option("--mc-samples", check_samples, "Monte Carlo samples")->capture_default_str();
  check->add_option("--seed", check_seed, "seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_usage;
  }

  if (run->parsed() || sweep->parsed() || trace->parsed()) {
    ExperimentHandle exp;
    if (!exp.ptr) return report_error(GCP_ERR_INTERNAL, "setup");
    const FlagSet& flags = run->parsed() ? run_flags : sweep->parsed() ? sweep_flags : trace_flags;
    if (int rc = flags.apply(exp.ptr)) return rc;

    gcp_status st = GCP_OK;
    if (run->parsed()) {
      st = gcp_experiment_run(exp.ptr, nullptr);
    } else if (sweep->parsed()) {
      std::vector<size_t> ks;
      try {
        ks = parse_k_list(k_list);
      } catch (const std::exception&) {
        std::fprintf(stderr, "gcpvcr usage: invalid --k-values '%s'\n", k_list.c_str());
        return exit_usage;
      }
      if (ks.empty()) {
        std::fprintf(stderr, "gcpvcr usage: --k-values is empty\n");
        return exit_usage;
      }
      st = gcp_experiment_sweep_k(exp.ptr, ks.data(), ks.size(), nullptr);
    } else {
      st = gcp_experiment_trace(exp.ptr, nullptr);
    }
    if (st != GCP_OK) return report_error(st, "run");
    if (!trace->parsed()) std::printf("%s", fetch_report(exp.ptr).c_str());
    return 0;
  }

  if (gen->parsed()) {
    const gcp_status st = gcp_generate_dataset(gen_dataset.c_str(), gen_n, gen_seed, gen_out.c_str());
    if (st != GCP_OK) return report_error(st, "gen-data");
    return 0;
  }

  if (check->parsed()) {
    size_t needed = 0;
    int passed = 0;
    gcp_status st = gcp_measure_check(check_samples, check_seed, nullptr, 0, &needed, &passed);
    if (st != GCP_OK) return report_error(st, "measure-check");
    std::string text(needed, '\0');
    st = gcp_measure_check(check_samples, check_seed, text.data(), text.size(), &needed, &passed);
    if (st != GCP_OK) return report_error(st, "measure-check");
    std::printf("%s", text.c_str());
    return passed ? 0 : exit_runtime;
  }
  return exit_usage;
}
