#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "gcpvcr/harness.hpp"

using namespace gcpvcr;
namespace fs = std::filesystem;

namespace {

ExperimentConfig small(std::string dataset = "mix-gaussian") {
  ExperimentConfig c;
  c.dataset = std::move(dataset);
  c.k = 6;
  c.n_train = 60;
  c.n_cal = 60;
  c.n_test = 30;
  c.trials = 3;
  c.seed = 11;
  c.budget = 100;
  c.mc_samples = 300;
  c.threads = 1;
  return c;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TrialResult with_coverage(std::size_t trial, double cov) {
  TrialResult r;
  r.trial = trial;
  r.coverage = cov;
  return r;
}

const SummaryRow& find(const std::vector<SummaryRow>& rows, Method m, const std::string& metric) {
  return *std::find_if(rows.begin(), rows.end(), [&](const SummaryRow& r) { return r.method == m && r.metric == metric; });
}

}  // namespace

TEST_CASE("aggregate examples") {
  const auto two = aggregate({with_coverage(0, 0.8), with_coverage(1, 1.0)});
  const auto& cov = find(two, Method::vcr, "coverage");
  CHECK(cov.mean == doctest::Approx(0.9));
  CHECK(cov.stderr_ == doctest::Approx(0.1));
  CHECK(cov.trials == 2);
  CHECK(find(aggregate({with_coverage(0, 0.7)}), Method::vcr, "coverage").stderr_ == 0.0);

  const auto fwd = aggregate({with_coverage(0, 0.1), with_coverage(1, 0.7), with_coverage(2, 0.4)});
  const auto rev = aggregate({with_coverage(2, 0.4), with_coverage(1, 0.7), with_coverage(0, 0.1)});
  CHECK(summary_csv(fwd) == summary_csv(rev));
  CHECK_THROWS_AS(aggregate({}), Error);
}

TEST_CASE("settings, json config and validation") {
  ExperimentConfig c;
  apply_setting(c, "--epsilon-steps", "3");
  apply_setting(c, "n_cal", "150");
  apply_setting(c, "solver", "exact");
  CHECK(c.epsilon_steps == 3);
  CHECK(c.n_cal == 150);
  CHECK(c.solver == SolverKind::exact);
  CHECK_THROWS_AS(apply_setting(c, "bogus", "1"), Error);
  CHECK_THROWS_AS(apply_setting(c, "alpha", "lots"), Error);
  try {
    validate(c);  // K = 10 with the exact solver
    FAIL("expected invalid argument");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::invalid_argument);
  }
  c.k = 3;
  validate(c);
  c.alpha = 1.5;
  CHECK_THROWS_AS(validate(c), Error);

  const auto path = fs::temp_directory_path() / "gcpvcr_cfg.json";
  std::ofstream(path) << R"({"dataset": "circles", "k": 5, "alpha": 0.2, "x_cols": ["a", "b"], "timing": true})";
  ExperimentConfig j;
  load_config_json(j, path.string());
  CHECK(j.dataset == "circles");
  CHECK(j.k == 5);
  CHECK(j.alpha == 0.2);
  CHECK(j.x_cols == "a,b");
  CHECK(j.timing);
}

TEST_CASE("run_trial: constraint honoured, paired draws, test coverage in range") {
  auto c = small();
  const auto out = run_trial(c, 0, trial_seed(c.seed, 0));
  REQUIRE(out.results.size() == 2);
  const auto& vcr = out.results[0];
  const auto& pcp = out.results[1];
  CHECK(vcr.method == Method::vcr);
  CHECK(pcp.method == Method::pcp);
  CHECK(meets_target(vcr.calibration_coverage, c.alpha));
  CHECK(meets_target(pcp.calibration_coverage, c.alpha));
  CHECK(vcr.beta.size() == c.k);
  CHECK((vcr.coverage >= 0 && vcr.coverage <= 1));
  CHECK(vcr.surrogate_efficiency >= 0);
  REQUIRE(out.geometry.size() == 2 * c.n_test);
  for (std::size_t i = 0; i < c.n_test; ++i) {
    // records alternate vcr, pcp per test point
    const auto& gv = out.geometry[2 * i];
    const auto& gp = out.geometry[2 * i + 1];
    CHECK(gv.method == Method::vcr);
    CHECK(gp.method == Method::pcp);
    CHECK(gp.test_index == i);
    auto a = gv.centers.coords();
    auto b = gp.centers.coords();
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    CHECK(a == b);
  }
}

TEST_CASE("constant responses give full coverage and zero size") {
  const auto path = fs::temp_directory_path() / "gcpvcr_const.csv";
  {
    std::ofstream f(path);
    f << "x,y\n";
    for (int i = 0; i < 200; ++i) f << i * 0.01 << ",2.5\n";
  }
  ExperimentConfig c;
  c.csv = path.string();
  c.x_cols = "x";
  c.y_cols = "y";
  c.k = 5;
  c.trials = 2;
  c.neighbors = 10;
  c.threads = 1;
  const auto out = run_experiment(c);
  for (const auto& r : out.trials) {
    CHECK(r.coverage == 1.0);
    CHECK(r.efficiency == 0.0);
  }
}

TEST_CASE("experiments are deterministic regardless of threads") {
  auto c = small("circles");
  c.geometry = false;
  const auto a = run_experiment(c);
  c.threads = 3;
  const auto b = run_experiment(c);
  CHECK(trials_csv(c, a.trials) == trials_csv(c, b.trials));
  CHECK(summary_csv(a.summary) == summary_csv(b.summary));
  CHECK(trial_seed(c.seed, 0) != trial_seed(c.seed, 1));
}

TEST_CASE("written files and their formats") {
  auto c = small();
  c.trials = 2;
  c.n_test = 4;
  const auto dir = fs::temp_directory_path() / "gcpvcr_run";
  fs::remove_all(dir);
  write_experiment(c, run_experiment(c), dir.string());
  const auto trials = slurp(dir / "trials.csv");
  CHECK(trials.rfind("trial,seed,method,dataset,alpha,k,m,coverage,efficiency,surrogate_efficiency,runtime_ms\n", 0) == 0);
  CHECK(std::count(trials.begin(), trials.end(), '\n') == 5);
  CHECK(slurp(dir / "summary.csv").rfind("method,metric,mean,stderr,trials\n", 0) == 0);
  std::ifstream geo(dir / "geometry.jsonl");
  std::string line;
  std::size_t lines = 0;
  while (std::getline(geo, line)) {
    const auto j = nlohmann::json::parse(line);
    for (const char* key : {"trial", "test_index", "method", "centers", "radii", "measure", "measure_stderr", "contains_truth"})
      CHECK(j.contains(key));
    CHECK(j["centers"].size() == c.k);
    ++lines;
  }
  CHECK(lines == 2 * 2 * 4);
}

TEST_CASE("geometry record encodes radius sentinels") {
  GeometryRecord g;
  g.centers = PointSet(1, {0.0, 1.0, 2.0});
  g.radii = {Radius::finite(0.5), Radius::excluded(), Radius::infinite()};
  g.measure.value = 3.0;
  const auto j = nlohmann::json::parse(geometry_json_line(g));
  CHECK(j["radii"][0] == 0.5);
  CHECK(j["radii"][1] == "excluded");
  CHECK(j["radii"][2] == "inf");
  CHECK(j["method"] == "vcr");
}

TEST_CASE("sweep_k and trace") {
  auto c = small("unbalanced");
  c.trials = 2;
  const auto rows = sweep_k(c, {4});
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].k == 4);
  CHECK(rows[0].trials == 2);
  CHECK(rows[0].mean_ratio > 0);
  CHECK(sweep_csv(rows).rfind("k,mean_ratio,stderr,trials", 0) == 0);
  CHECK_THROWS_AS(sweep_k(c, {1}), Error);

  c.budget = 30;
  const auto trace = run_trace(c);
  CHECK(trace.size() == c.k * 31);
  const auto csv = trace_csv(trace);
  CHECK(csv.rfind("start_rank,iteration,objective,coverage,beta_indices\n", 0) == 0);
}

TEST_CASE("measure check passes and gen-data writes the dataset") {
  const auto checks = measure_check(200000, 3, 10);
  REQUIRE(checks.size() == 11);
  for (const auto& m : checks) CHECK(m.passed);

  const auto path = fs::temp_directory_path() / "gcpvcr_gen.csv";
  generate_dataset_csv("circles", 50, 1, path.string());
  const auto text = slurp(path);
  CHECK(text.rfind("x,y\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 51);
  CHECK_THROWS_AS(generate_dataset_csv("nope", 5, 1, path.string()), Error);
}
