#include <doctest.h>

#include <sstream>

#include "loopsim/config.hpp"
#include "loopsim/output.hpp"
#include "loopsim/report.hpp"

using namespace loopsim;
using nlohmann::json;

namespace {

std::string FieldOf(const json& doc, bool grid) {
  try {
    if (grid) GridSpecFromJson(doc);
    else TrialConfigFromJson(doc);
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "";
}

}  // namespace

TEST_CASE("trial config parsing") {
  const json minimal = json::parse(R"({"item_count": 2, "select_count": 1,
      "horizon": 10, "policy": "ts", "model": "basic", "seed": 42})");
  const TrialConfig c = TrialConfigFromJson(minimal);
  CHECK(c.cell.item_count == 2);
  CHECK(c.cell.policy.kind == PolicyKind::kThompson);
  CHECK(c.master_seed == 42);
  CHECK(c.snapshot_every == 50);

  const json greedy = json::parse(R"({"item_count": 5, "select_count": 2,
      "horizon": 10, "policy": "greedy", "model": "restarts",
      "restart_probability": 0.01, "restart_scale": 0.5})");
  const TrialConfig g = TrialConfigFromJson(greedy);
  CHECK(g.cell.policy.epsilon == kDefaultEpsilon);
  CHECK(g.cell.model.restart_probability == 0.01);

  SUBCASE("errors name the field") {
    json bad = minimal;
    bad["select_count"] = 2;
    CHECK(FieldOf(bad, false) == "select_count");
    bad = minimal;
    bad.erase("horizon");
    CHECK(FieldOf(bad, false) == "horizon");
    bad = minimal;
    bad["item_count"] = -3;
    CHECK(FieldOf(bad, false) == "item_count");
    bad = minimal;
    bad["polcy"] = "ts";
    CHECK(FieldOf(bad, false) == "polcy");
    bad = minimal;
    bad["model"] = "additive_noise";
    bad["noise_width"] = "wide";
    CHECK(FieldOf(bad, false) == "noise_width");
    bad = greedy;
    bad["epsilon"] = 2.0;
    CHECK(FieldOf(bad, false) == "epsilon");
    bad = greedy;
    bad["restart_scale"] = 1.5;
    CHECK(FieldOf(bad, false) == "restart_scale");
    CHECK(FieldOf(json::array(), false) == "file");
  }
}

TEST_CASE("config round trips") {
  Rng rng(4);
  for (int rep = 0; rep < 40; ++rep) {
    TrialConfig c;
    c.cell.item_count = 2 + rng.Index(9);
    c.cell.select_count = 1 + rng.Index(c.cell.item_count - 1);
    c.cell.policy.kind = static_cast<PolicyKind>(rng.Index(4));
    c.cell.policy.epsilon =
        c.cell.policy.kind == PolicyKind::kGreedy ? rng.Uniform01() : 0.0;
    c.cell.model.kind = static_cast<ModelKind>(rng.Index(3));
    if (c.cell.model.kind == ModelKind::kAdditiveNoise) {
      c.cell.model.noise_width = rng.Uniform(0, 10);
    } else if (c.cell.model.kind == ModelKind::kRestarts) {
      c.cell.model.restart_probability = rng.Uniform01();
      c.cell.model.restart_scale = rng.Uniform01();
    }
    c.horizon = rng.Index(10000);
    c.master_seed = rng.Index(std::size_t(-1));
    c.trial_index = rng.Index(100);
    c.snapshot_every = 1 + rng.Index(100);
    const TrialConfig back = TrialConfigFromJson(json::parse(ToJson(c).dump()));
    CHECK(back.cell == c.cell);
    CHECK(back.horizon == c.horizon);
    CHECK(back.master_seed == c.master_seed);
    CHECK(back.trial_index == c.trial_index);
    CHECK(back.snapshot_every == c.snapshot_every);
  }

  const json grid_doc = json::parse(R"({"item_counts": [10], "select_counts": [1, 5],
      "policies": ["ts", "greedy", "optimal", "random"], "epsilons": [0.05, 0.1],
      "model": "restarts",
      "restart_probabilities": {"log10_start": -3, "log10_stop": 0, "count": 7},
      "restart_scales": [0, 0.25, 0.5, 0.75], "trials": 10, "horizon": 5000,
      "seed": 7, "checkpoints": [1000]})");
  const GridSpec grid = GridSpecFromJson(grid_doc);
  CHECK(grid.restart_probabilities.size() == 7);
  CHECK(grid.restart_probabilities.front() == doctest::Approx(0.001));
  CHECK(grid.restart_probabilities.back() == 1.0);
  CHECK(GridSpecFromJson(json::parse(ToJson(grid).dump())) == grid);
}

TEST_CASE("grid config errors") {
  const json ok = json::parse(R"({"item_counts": [5], "select_counts": [1],
      "policies": ["ts"]})");
  CHECK(FieldOf(ok, true).empty());
  json bad = ok;
  bad["item_counts"] = json::array();
  CHECK(FieldOf(bad, true) == "item_counts");
  bad = ok;
  bad["select_counts"] = {5};
  CHECK(FieldOf(bad, true) == "select_counts");
  bad = ok;
  bad["policies"] = {"ts", "thompson"};
  CHECK(FieldOf(bad, true) == "policy");
  bad = ok;
  bad["trials"] = 0;
  CHECK(FieldOf(bad, true) == "trials");
}

TEST_CASE("default restart grid") {
  const std::vector<double> q = DefaultRestartProbabilities();
  REQUIRE(q.size() == 7);
  for (std::size_t k = 0; k < q.size(); ++k) {
    CHECK(std::log10(q[k]) == doctest::Approx(-3.0 + 0.5 * double(k)));
  }
  CHECK(DefaultRestartScales() == std::vector<double>{0.0, 0.25, 0.5, 0.75, 0.9});
}

TEST_CASE("csv schemas") {
  TrialConfig c;
  c.cell = {3, 1, {PolicyKind::kThompson, 0.0}, InterestModelSpec::Basic()};
  c.horizon = 4;
  c.snapshot_every = 2;
  const TrialTrace trace = RunTrial(c);

  std::istringstream trace_csv(TraceCsv(trace));
  std::string line;
  std::getline(trace_csv, line);
  CHECK(line ==
        "t,selection,clicks,delta,loop_amplitude,max_interest,cumulative_reward");
  int rows = 0;
  while (std::getline(trace_csv, line)) ++rows;
  CHECK(rows == 4);

  std::istringstream snaps(SnapshotsCsv(trace));
  std::getline(snaps, line);
  CHECK(line == "t,item,mean_interest,alpha,beta,pulls,rewards");
  std::getline(snaps, line);
  CHECK(line.rfind("0,0,", 0) == 0);
  CHECK(line.substr(line.size() - 6) == ",1,1,,");

  GridSpec g;
  g.item_counts = {3};
  g.select_counts = {1};
  g.policies = {PolicyKind::kGreedy};
  g.model = ModelKind::kRestarts;
  g.restart_probabilities = {0.5};
  g.restart_scales = {0.5};
  g.trials = 2;
  g.horizon = 10;
  const GridResult result = RunGrid(g, 1);
  std::istringstream results(ResultsCsv(result));
  std::getline(results, line);
  CHECK(line ==
        "M,l,policy,epsilon,model,w,q,s,metric,step,mean,half_width,trials,"
        "restart_bound,growth_ceiling");
  std::getline(results, line);
  CHECK(line.rfind("3,1,greedy,0.1,restarts,,0.5,0.5,loop_amplitude,10,", 0) == 0);
  CHECK(line.substr(line.size() - 13) == ",2,0.015,1.05");

  std::istringstream trials(TrialsCsv(result));
  std::getline(trials, line);
  CHECK(line ==
        "M,l,policy,epsilon,model,w,q,s,trial,seed,step,loop_amplitude,"
        "max_interest,cumulative_reward,regret");
}

TEST_CASE("results parsing and report") {
  const std::string header =
      "M,l,policy,epsilon,model,w,q,s,metric,step,mean,half_width,trials,"
      "restart_bound,growth_ceiling\n";

  SUBCASE("one cell, one line") {
    std::istringstream in(header +
                          "10,5,ts,,additive_noise,3,,,max_interest,2000,8.2,0.25,30,,11\n"
                          "10,5,ts,,additive_noise,3,,,loop_amplitude,2000,12,0.7,30,,11\n");
    const auto rows = ParseResultsCsv(in);
    REQUIRE(rows.size() == 2);
    const auto lines = BuildReport(rows);
    REQUIRE(lines.size() == 1);
    CHECK_FALSE(lines[0].violated);
    CHECK(lines[0].text.find("bound=n/a") != std::string::npos);
  }

  SUBCASE("violating cell is flagged") {
    std::istringstream in(header +
                          "10,1,optimal,,restarts,,0.01,0,max_interest,5000,3.5,0.1,10,0.495,26\n"
                          "10,1,optimal,,restarts,,1,0,max_interest,5000,0.8,0.1,10,0,26\n");
    const auto lines = BuildReport(ParseResultsCsv(in));
    REQUIRE(lines.size() == 2);
    CHECK(lines[0].violated);
    CHECK(lines[0].text.find("VIOLATED") != std::string::npos);
    CHECK_FALSE(lines[1].violated);
  }

  SUBCASE("last step wins") {
    std::istringstream in(header +
                          "10,1,ts,,restarts,,0.01,0,max_interest,5000,0.5,0.1,10,0.495,26\n"
                          "10,1,ts,,restarts,,0.01,0,max_interest,500,9,0.1,10,0.495,3.5\n");
    const auto lines = BuildReport(ParseResultsCsv(in));
    REQUIRE(lines.size() == 1);
    CHECK(lines[0].text.find("t=5000") != std::string::npos);
  }

  SUBCASE("malformed input") {
    std::istringstream bad_header("M,l\n1,2\n");
    CHECK_THROWS_AS(ParseResultsCsv(bad_header), ConfigError);
    std::istringstream short_row(header + "10,5,ts\n");
    CHECK_THROWS_AS(ParseResultsCsv(short_row), ConfigError);
    std::istringstream bad_number(
        header + "10,5,ts,,basic,,,,max_interest,2000,abc,0.25,30,,11\n");
    CHECK_THROWS_AS(ParseResultsCsv(bad_number), ConfigError);
  }
}
