#include "gcpvcr/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace gcpvcr {

namespace {

using json = nlohmann::json;

std::string normalize_key(std::string_view key) {
  while (!key.empty() && key.front() == '-') key.remove_prefix(1);
  std::string k(key);
  std::replace(k.begin(), k.end(), '_', '-');
  return k;
}

template <typename T>
T parse_number(std::string_view key, std::string_view value) {
  T out{};
  const auto* end = value.data() + value.size();
  const auto res = std::from_chars(value.data(), end, out);
  if (res.ec != std::errc() || res.ptr != end)
    fail(ErrorKind::invalid_argument, "invalid value '" + std::string(value) + "' for --" + std::string(key));
  return out;
}

bool parse_bool(std::string_view key, std::string_view value) {
  if (value == "1" || value == "true" || value == "on" || value == "yes") return true;
  if (value == "0" || value == "false" || value == "off" || value == "no") return false;
  fail(ErrorKind::invalid_argument, "invalid boolean '" + std::string(value) + "' for --" + std::string(key));
}

std::string fmt_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

std::string beta_string(const std::vector<std::uint32_t>& beta) {
  std::string s;
  for (std::size_t i = 0; i < beta.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(beta[i]);
  }
  return s;
}

double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

struct TrialSetup {
  Split data;
  std::unique_ptr<ConditionalSampler> sampler;
};

TrialSetup prepare_trial(const ExperimentConfig& config, std::uint64_t seed, const Dataset* csv_data) {
  TrialSetup s;
  Rng split_rng(derive_seed(seed, {tag(Stream::split)}));
  if (!config.csv.empty()) {
    require(csv_data != nullptr, "CSV pathway needs loaded data");
    s.data = split(*csv_data, {0.6, 0.2, 0.2}, split_rng);
    if (s.data.train.empty()) fail(ErrorKind::size, "training split is empty");
    const std::size_t kappa = std::min(config.neighbors, s.data.train.size());
    s.sampler = std::make_unique<KnnResampler>(s.data.train, kappa);
  } else {
    const auto kind = parse_synthetic(config.dataset);
    if (!kind) fail(ErrorKind::invalid_argument, "unknown dataset '" + config.dataset + "'");
    Rng data_rng(derive_seed(seed, {tag(Stream::data)}));
    const Dataset all = generate(*kind, config.n_train + config.n_cal + config.n_test, data_rng);
    s.data = split_counts(all, config.n_train, config.n_cal, config.n_test, split_rng);
    Rng pool_rng(derive_seed(seed, {tag(Stream::pool)}));
    s.sampler = make_oracle_sampler(*kind, pool_rng);
  }
  return s;
}

OptimizerConfig optimizer_config(const ExperimentConfig& config, std::size_t d, std::uint64_t seed) {
  OptimizerConfig oc;
  oc.alpha = config.alpha;
  oc.budget = config.budget;
  oc.epsilon_steps = config.epsilon_steps;
  oc.patience = config.patience;
  oc.dim = d;
  oc.seed = derive_seed(seed, {tag(Stream::optimizer)});
  return oc;
}

ScoringConfig scoring_config(const ExperimentConfig& config, std::uint64_t seed) {
  return {config.k, config.neighbor_count(), config.reference, derive_seed(seed, {tag(Stream::calibration)})};
}

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

std::pair<double, double> mean_stderr(const std::vector<double>& v) {
  const double mean = mean_of(v);
  if (v.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  const double sd = std::sqrt(ss / static_cast<double>(v.size() - 1));
  return {mean, sd / std::sqrt(static_cast<double>(v.size()))};
}

template <typename Fn>
void parallel_for(std::size_t count, std::size_t threads, Fn&& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

Dataset load_csv_for(const ExperimentConfig& config) {
  return load_csv(config.csv, parse_column_list(config.x_cols), parse_column_list(config.y_cols));
}

}  // namespace

void apply_setting(ExperimentConfig& c, std::string_view raw_key, std::string_view value) {
  const std::string key = normalize_key(raw_key);
  auto size = [&] { return parse_number<std::size_t>(key, value); };
  if (key == "dataset") c.dataset = value;
  else if (key == "csv") c.csv = value;
  else if (key == "x-cols") c.x_cols = value;
  else if (key == "y-cols") c.y_cols = value;
  else if (key == "method") {
    if (value == "vcr") c.method = MethodSelection::vcr;
    else if (value == "pcp") c.method = MethodSelection::pcp;
    else if (value == "both") c.method = MethodSelection::both;
    else fail(ErrorKind::invalid_argument, "--method must be vcr, pcp or both");
  } else if (key == "alpha") c.alpha = parse_number<double>(key, value);
  else if (key == "k") c.k = size();
  else if (key == "m") c.m = size();
  else if (key == "reference") c.reference = size();
  else if (key == "n-train") c.n_train = size();
  else if (key == "n-cal") c.n_cal = size();
  else if (key == "n-test") c.n_test = size();
  else if (key == "trials") c.trials = size();
  else if (key == "seed") c.seed = parse_number<std::uint64_t>(key, value);
  else if (key == "solver") {
    if (value == "exact") c.solver = SolverKind::exact;
    else if (value == "heuristic") c.solver = SolverKind::heuristic;
    else fail(ErrorKind::invalid_argument, "--solver must be exact or heuristic");
  } else if (key == "budget") c.budget = size();
  else if (key == "epsilon-steps") c.epsilon_steps = parse_number<std::uint32_t>(key, value);
  else if (key == "patience") c.patience = size();
  else if (key == "mc-samples") c.mc_samples = size();
  else if (key == "neighbors") c.neighbors = size();
  else if (key == "threads") c.threads = size();
  else if (key == "n") c.n = size();
  else if (key == "timing") c.timing = parse_bool(key, value);
  else if (key == "geometry") c.geometry = parse_bool(key, value);
  else if (key == "out") c.out = value;
  else fail(ErrorKind::invalid_argument, "unknown setting '" + std::string(raw_key) + "'");
}

void load_config_json(ExperimentConfig& config, const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::io, "cannot open config '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    fail(ErrorKind::parse, path + ": " + e.what());
  }
  if (!j.is_object()) fail(ErrorKind::parse, path + ": config must be a JSON object");
  for (const auto& [key, v] : j.items()) {
    std::string text;
    if (v.is_string()) text = v.get<std::string>();
    else if (v.is_boolean()) text = v.get<bool>() ? "true" : "false";
    else if (v.is_number_integer() || v.is_number_unsigned()) text = v.dump();
    else if (v.is_number_float()) {
      std::ostringstream os;
      os.precision(17);
      os << v.get<double>();
      text = os.str();
    } else if (v.is_array()) {
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) text += ',';
        text += v[i].is_string() ? v[i].get<std::string>() : v[i].dump();
      }
    } else {
      fail(ErrorKind::parse, path + ": unsupported value for '" + key + "'");
    }
    apply_setting(config, key, text);
  }
}

void validate(const ExperimentConfig& c) {
  auto bad = [](const std::string& m) { fail(ErrorKind::invalid_argument, m); };
  if (!(c.alpha > 0.0 && c.alpha < 1.0)) bad("--alpha must lie in (0, 1)");
  if (c.k < 1) bad("--k must be positive");
  if (c.trials < 1) bad("--trials must be positive");
  if (c.n_cal < 1 || c.n_test < 1) bad("--n-cal and --n-test must be positive");
  if (c.epsilon_steps < 1) bad("--epsilon-steps must be positive");
  if (c.neighbors < 1) bad("--neighbors must be positive");
  if (c.solver == SolverKind::exact && c.k > exact_max_k)
    bad("--solver exact supports K <= " + std::to_string(exact_max_k) + " only");
  if (c.solver == SolverKind::exact && c.csv.empty() && c.n_cal > exact_max_n)
    bad("--solver exact supports --n-cal <= " + std::to_string(exact_max_n) + " only");
  const std::size_t pool = c.reference > 0 ? c.reference : c.k - 1;
  if (c.neighbor_count() < 1 || c.neighbor_count() > pool)
    bad("--m must lie in [1, " + std::to_string(pool) + "] for K=" + std::to_string(c.k));
  if (c.csv.empty()) {
    if (!parse_synthetic(c.dataset)) bad("unknown dataset '" + c.dataset + "'");
  } else if (c.x_cols.empty() || c.y_cols.empty()) {
    bad("--csv needs --x-cols and --y-cols");
  }
}

std::uint64_t trial_seed(std::uint64_t master, std::size_t trial) {
  return derive_seed(master, {tag(Stream::trial), trial});
}

TrialOutcome run_trial(const ExperimentConfig& config, std::size_t trial, std::uint64_t seed,
                       const Dataset* csv_data) {
  using clock = std::chrono::steady_clock;
  try {
    const auto t_start = clock::now();
    TrialSetup setup = prepare_trial(config, seed, csv_data);
    const ConditionalSampler& sampler = *setup.sampler;
    const std::size_t d = sampler.dim();
    const bool want_vcr = config.method != MethodSelection::pcp;
    const bool want_pcp = config.method != MethodSelection::vcr;

    const ScoringConfig sc = scoring_config(config, seed);
    const CalibrationScores cal = build_score_matrix(setup.data.calibration, sampler, sc);
    const std::size_t n = cal.vcr.n();
    double shared_ms = elapsed_ms(t_start);
    double vcr_ms = 0.0, pcp_ms = 0.0;

    TrialOutcome out;
    Solution sol;
    if (want_vcr) {
      const auto t0 = clock::now();
      const OptimizerConfig oc = optimizer_config(config, d, seed);
      sol = config.solver == SolverKind::exact ? solve_exact(cal.vcr, oc) : solve_multistart(cal.vcr, oc);
      const Coverage check = calibration_coverage(cal.vcr, sol.beta);
      if (!meets_target(check, config.alpha))
        fail(ErrorKind::constraint, "calibrated beta covers " + std::to_string(check.covered) + "/" +
                                        std::to_string(check.total) + " < 1 - alpha");
      vcr_ms += elapsed_ms(t0);
    }
    const SortedScoreColumn pcp_column(cal.pcp);
    const std::size_t pcp_index = alpha_grid_index(config.alpha, n);
    const Radius pcp_radius = empirical_quantile(pcp_column, pcp_index);
    const std::size_t pcp_covered = pcp_column.covered_prefix(pcp_radius) + (pcp_radius.is_infinite() ? 1 : 0);

    const std::size_t m = config.neighbor_count();
    std::size_t vcr_hits = 0, pcp_hits = 0;
    double vcr_eff = 0.0, pcp_eff = 0.0, vcr_sur = 0.0, pcp_sur = 0.0;
    const auto& test = setup.data.test;
    for (std::size_t i = 0; i < test.size(); ++i) {
      const auto t0 = clock::now();
      Rng rng(derive_seed(seed, {tag(Stream::test), i}));
      PointSet reference;
      const PointSet batch = draw_batch(sampler, test[i].x, sc, rng, &reference);
      shared_ms += elapsed_ms(t0);

      auto evaluate = [&](const PredictionSet& set, std::size_t& hits, double& eff, double& sur) {
        Rng mrng(derive_seed(seed, {tag(Stream::measure), i, static_cast<std::uint64_t>(set.method())}));
        const bool inside = set.contains(test[i].y);
        const SetMeasure meas = measure(set, config.mc_samples, mrng);
        hits += inside ? 1 : 0;
        eff += meas.value;
        sur += surrogate_volume(set);
        if (config.geometry)
          out.geometry.push_back({trial, i, set.method(), set.centers(), set.radii(), meas, inside});
      };
      if (want_vcr) {
        const auto t1 = clock::now();
        const RankedSamples ranked = rank_by_density(batch, m, config.reference > 0 ? &reference : nullptr);
        evaluate(build_vcr_set(ranked, sol.radii), vcr_hits, vcr_eff, vcr_sur);
        vcr_ms += elapsed_ms(t1);
      }
      if (want_pcp) {
        const auto t1 = clock::now();
        evaluate(build_pcp_set(batch, pcp_radius), pcp_hits, pcp_eff, pcp_sur);
        pcp_ms += elapsed_ms(t1);
      }
    }

    const double nt = static_cast<double>(test.size());
    if (want_vcr) {
      TrialResult r{trial, seed, Method::vcr, vcr_hits / nt, vcr_eff / nt, vcr_sur / nt, sol.beta.indices(),
                    sol.coverage, config.timing ? shared_ms + vcr_ms : 0.0};
      out.results.push_back(std::move(r));
    }
    if (want_pcp) {
      TrialResult r{trial, seed, Method::pcp, pcp_hits / nt, pcp_eff / nt, pcp_sur / nt, {},
                    Coverage{pcp_covered, n + 1}, config.timing ? shared_ms + pcp_ms : 0.0};
      out.results.push_back(std::move(r));
    }
    return out;
  } catch (const Error& e) {
    throw Error(e.kind(), "trial " + std::to_string(trial) + ": " + e.what());
  }
}

std::vector<SummaryRow> aggregate(const std::vector<TrialResult>& results) {
  if (results.empty()) fail(ErrorKind::invalid_argument, "nothing to aggregate");
  std::vector<SummaryRow> rows;
  for (Method method : {Method::vcr, Method::pcp}) {
    std::vector<double> cov, eff, sur;
    for (const auto& r : results) {
      if (r.method != method) continue;
      cov.push_back(r.coverage);
      eff.push_back(r.efficiency);
      sur.push_back(r.surrogate_efficiency);
    }
    if (cov.empty()) continue;
    // Sort so that the floating-point sums do not depend on input order.
    for (auto* v : {&cov, &eff, &sur}) std::sort(v->begin(), v->end());
    const std::pair<const char*, std::vector<double>*> metrics[] = {
        {"coverage", &cov}, {"efficiency", &eff}, {"surrogate_efficiency", &sur}};
    for (const auto& [name, values] : metrics) {
      const auto [mean, se] = mean_stderr(*values);
      rows.push_back({method, name, mean, se, values->size()});
    }
  }
  return rows;
}

ExperimentOutput run_experiment(const ExperimentConfig& config) {
  validate(config);
  Dataset csv_data;
  if (!config.csv.empty()) csv_data = load_csv_for(config);
  std::vector<TrialOutcome> outcomes(config.trials);
  parallel_for(config.trials, config.threads, [&](std::size_t t) {
    outcomes[t] = run_trial(config, t, trial_seed(config.seed, t), config.csv.empty() ? nullptr : &csv_data);
  });
  ExperimentOutput out;
  for (auto& o : outcomes) {
    for (auto& r : o.results) out.trials.push_back(std::move(r));
    for (auto& g : o.geometry) out.geometry.push_back(std::move(g));
  }
  out.summary = aggregate(out.trials);
  return out;
}

std::string trials_csv(const ExperimentConfig& config, const std::vector<TrialResult>& trials) {
  std::ostringstream os;
  os << "trial,seed,method,dataset,alpha,k,m,coverage,efficiency,surrogate_efficiency,runtime_ms\n";
  const std::string dataset = config.csv.empty() ? config.dataset : config.csv;
  for (const auto& r : trials) {
    os << r.trial << ',' << r.seed << ',' << method_name(r.method) << ',' << dataset << ',' << fmt_double(config.alpha)
       << ',' << config.k << ',' << config.neighbor_count() << ',' << fmt_double(r.coverage) << ','
       << fmt_double(r.efficiency) << ',' << fmt_double(r.surrogate_efficiency) << ',' << fmt_double(r.runtime_ms)
       << '\n';
  }
  return os.str();
}

std::string summary_csv(const std::vector<SummaryRow>& summary) {
  std::ostringstream os;
  os << "method,metric,mean,stderr,trials\n";
  for (const auto& r : summary)
    os << method_name(r.method) << ',' << r.metric << ',' << fmt_double(r.mean) << ',' << fmt_double(r.stderr_) << ','
       << r.trials << '\n';
  return os.str();
}

std::string geometry_json_line(const GeometryRecord& g) {
  json j;
  j["trial"] = g.trial;
  j["test_index"] = g.test_index;
  j["method"] = std::string(method_name(g.method));
  json centers = json::array();
  for (std::size_t r = 0; r < g.centers.size(); ++r) {
    const auto c = g.centers[r];
    centers.push_back(std::vector<double>(c.begin(), c.end()));
  }
  j["centers"] = std::move(centers);
  json radii = json::array();
  for (const auto& r : g.radii) {
    if (r.is_excluded()) radii.push_back("excluded");
    else if (r.is_infinite()) radii.push_back("inf");
    else radii.push_back(r.value());
  }
  j["radii"] = std::move(radii);
  if (std::isinf(g.measure.value)) j["measure"] = "inf";
  else j["measure"] = g.measure.value;
  j["measure_stderr"] = g.measure.standard_error;
  j["contains_truth"] = g.contains_truth;
  return j.dump();
}

void write_experiment(const ExperimentConfig& config, const ExperimentOutput& output, const std::string& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) fail(ErrorKind::io, "cannot create '" + out_dir + "': " + ec.message());
  auto write = [&](const std::string& name, const std::string& text) {
    const auto path = (std::filesystem::path(out_dir) / name).string();
    std::ofstream f(path, std::ios::binary);
    f << text;
    if (!f) fail(ErrorKind::io, "failed writing '" + path + "'");
  };
  write("trials.csv", trials_csv(config, output.trials));
  write("summary.csv", summary_csv(output.summary));
  if (config.geometry) {
    const auto path = (std::filesystem::path(out_dir) / "geometry.jsonl").string();
    std::ofstream f(path, std::ios::binary);
    for (const auto& g : output.geometry) f << geometry_json_line(g) << '\n';
    if (!f) fail(ErrorKind::io, "failed writing '" + path + "'");
  }
}

std::vector<SweepRow> sweep_k(const ExperimentConfig& base, const std::vector<std::size_t>& k_values) {
  std::vector<SweepRow> rows;
  Dataset csv_data;
  if (!base.csv.empty()) csv_data = load_csv_for(base);
  for (std::size_t k : k_values) {
    if (k < 2) fail(ErrorKind::invalid_argument, "sweep-k needs K >= 2");
    ExperimentConfig c = base;
    c.k = k;
    c.method = MethodSelection::both;
    c.geometry = false;
    validate(c);
    std::vector<TrialOutcome> outcomes(c.trials);
    parallel_for(c.trials, c.threads, [&](std::size_t t) {
      outcomes[t] = run_trial(c, t, trial_seed(c.seed, t), c.csv.empty() ? nullptr : &csv_data);
    });
    std::vector<double> ratios, vcr, pcp;
    for (const auto& o : outcomes) {
      double v = 0.0, p = 0.0;
      for (const auto& r : o.results) (r.method == Method::vcr ? v : p) = r.efficiency;
      ratios.push_back(p / v);
      vcr.push_back(v);
      pcp.push_back(p);
    }
    const auto [mean, se] = mean_stderr(ratios);
    rows.push_back({k, mean, se, c.trials, mean_of(vcr), mean_of(pcp)});
  }
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << "k,mean_ratio,stderr,trials,vcr_efficiency,pcp_efficiency\n";
  for (const auto& r : rows)
    os << r.k << ',' << fmt_double(r.mean_ratio) << ',' << fmt_double(r.stderr_) << ',' << r.trials << ','
       << fmt_double(r.vcr_efficiency) << ',' << fmt_double(r.pcp_efficiency) << '\n';
  return os.str();
}

std::vector<TraceRow> run_trace(const ExperimentConfig& config) {
  validate(config);
  Dataset csv_data;
  if (!config.csv.empty()) csv_data = load_csv_for(config);
  const std::uint64_t seed = trial_seed(config.seed, 0);
  TrialSetup setup = prepare_trial(config, seed, config.csv.empty() ? nullptr : &csv_data);
  const CalibrationScores cal = build_score_matrix(setup.data.calibration, *setup.sampler, scoring_config(config, seed));
  OptimizerConfig oc = optimizer_config(config, setup.sampler->dim(), seed);
  oc.record_trace = true;
  std::vector<TraceRow> rows;
  for (std::size_t start = 0; start < cal.vcr.k(); ++start) {
    const Solution s = solve_heuristic(cal.vcr, oc, start);
    for (const auto& rec : s.trace) rows.push_back({start, rec});
  }
  return rows;
}

std::string trace_csv(const std::vector<TraceRow>& rows) {
  std::ostringstream os;
  os << "start_rank,iteration,objective,coverage,beta_indices\n";
  for (const auto& r : rows)
    os << r.start_rank << ',' << r.record.iteration << ',' << fmt_double(r.record.objective) << ','
       << fmt_double(r.record.coverage.value()) << ',' << beta_string(r.record.beta) << '\n';
  return os.str();
}

std::vector<MeasureCheck> measure_check(std::size_t mc_samples, std::uint64_t seed, std::size_t interval_cases) {
  std::vector<MeasureCheck> out;
  auto within = [](double est, double ref, double se) { return std::abs(est - ref) <= 3.0 * se; };
  {
    PointSet centers(2);
    centers.push_back({0.0, 0.0});
    centers.push_back({10.0, 0.0});
    const PredictionSet disks(centers, RadiusVector(2, Radius::finite(1.0)), Method::pcp);
    Rng rng(derive_seed(seed, {tag(Stream::measure), 0}));
    const SetMeasure m = measure(disks, mc_samples, rng);
    const double ref = 2.0 * std::numbers::pi;
    out.push_back({"two_unit_disks", m.value, ref, m.standard_error, within(m.value, ref, m.standard_error)});
  }
  Rng gen(derive_seed(seed, {tag(Stream::measure), 1}));
  std::uniform_real_distribution<double> centre(-5.0, 5.0);
  std::uniform_real_distribution<double> width(0.05, 2.0);
  std::uniform_int_distribution<std::size_t> count(1, 8);
  for (std::size_t c = 0; c < interval_cases; ++c) {
    const std::size_t k = count(gen);
    PointSet centers(1);
    RadiusVector radii;
    for (std::size_t i = 0; i < k; ++i) {
      centers.push_back({centre(gen)});
      radii.push_back(Radius::finite(width(gen)));
    }
    const PredictionSet set(centers, radii, Method::vcr);
    Rng mrng(derive_seed(seed, {tag(Stream::measure), 2, c}));
    const SetMeasure exact = measure(set, mc_samples, mrng);
    const SetMeasure mc = measure_monte_carlo(set, mc_samples, mrng);
    // A zero standard error means the box is fully covered or missed; then the estimate is exact.
    const bool ok = mc.standard_error > 0.0 ? within(mc.value, exact.value, mc.standard_error)
                                            : std::abs(mc.value - exact.value) <= 1e-9 * std::max(1.0, exact.value);
    out.push_back({"interval_union_" + std::to_string(c), mc.value, exact.value, mc.standard_error, ok});
  }
  return out;
}

void generate_dataset_csv(std::string_view dataset, std::size_t n, std::uint64_t seed, const std::string& path) {
  const auto kind = parse_synthetic(dataset);
  if (!kind) fail(ErrorKind::invalid_argument, "unknown dataset '" + std::string(dataset) + "'");
  if (n < 1) fail(ErrorKind::invalid_argument, "--n must be positive");
  Rng rng(derive_seed(seed, {tag(Stream::data)}));
  write_csv(path, generate(*kind, n, rng));
}

}  // namespace gcpvcr
