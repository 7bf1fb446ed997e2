#include "armac/harness/run.h"

#include <cstdio>
#include <unistd.h>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "armac/harness/metrics.h"
#include "armac/solvers/cfr.h"
#include "armac/harness/selfcheck.h"
#include "doctest.h"

using namespace armac;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("armac_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter++));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string file(const std::string& name) const {
    return (path / name).string();
  }
  static inline int counter = 0;
};

}  // namespace

TEST_CASE("config parsing rejects unknown keys") {
  CHECK_THROWS_AS(parse_run_config_json(R"({"gmae": "kuhn"})"), InputError);
  CHECK_THROWS_AS(
      parse_run_config_json(R"({"armac": {"k_act": 4, "kact": 2}})"),
      InputError);
  CHECK_THROWS_AS(
      parse_run_config_json(R"({"iterations": 5, "epochs": 6})"), InputError);
  CHECK_THROWS_AS(parse_run_config_json(R"({"algorithm": "dqn"})"),
                  InputError);
  CHECK_THROWS_AS(parse_run_config_json(R"({"game": "chess"})"), InputError);
  CHECK_THROWS_AS(parse_run_config_json("not json"), InputError);
  CHECK_THROWS_AS(parse_run_config_json(R"({"iterations": "many"})"),
                  InputError);
}

TEST_CASE("config round trip") {
  RunConfig config;
  config.game = "leduc";
  config.algorithm = "armac";
  config.iterations = 123;
  config.seed = 99;
  config.k_act = 17;
  config.epsilon_grid = {0.0, 0.5};
  config.regressor = "feedforward";
  config.hidden = {16};
  const RunConfig parsed = parse_run_config_json(run_config_to_json(config));
  CHECK(parsed.game == "leduc");
  CHECK(parsed.algorithm == "armac");
  CHECK(parsed.iterations == 123);
  CHECK(parsed.seed == 99);
  CHECK(parsed.k_act == 17);
  CHECK(parsed.epsilon_grid == std::vector<double>{0.0, 0.5});
  CHECK(parsed.regressor == "feedforward");
  CHECK(parsed.hidden == std::vector<int>{16});
}

TEST_CASE("csv schema") {
  CHECK(CsvWriter::header({}) ==
        "epoch,acting_steps,nash_conv_avg,nash_conv_current,"
        "primary_candidate,wall_clock_s");
  CHECK(CsvWriter::header({"uniform", "average"}) ==
        "epoch,acting_steps,nash_conv_avg,nash_conv_current,cand_uniform,"
        "cand_average,primary_candidate,wall_clock_s");

  MetricsRow row;
  row.epoch = 7;
  row.acting_steps = 123;
  row.nash_conv_avg = 0.25;
  CHECK(CsvWriter::format_row(row, 0) == "7,123,0.25,,,");

  row.nash_conv_current = 0.5;
  row.candidate_returns = {1.0, -0.125};
  row.primary_candidate = 1;
  CHECK(CsvWriter::format_row(row, 2) == "7,123,0.25,0.5,1,-0.125,1,");
}

TEST_CASE("policy file round trip and validation") {
  TempDir tmp;
  auto game = make_game("kuhn");
  const GameTree tree = GameTree::build(*game);
  CfrSolver solver(tree);
  solver.run(50);
  const PolicyTable policy = solver.average_policy();

  const std::string path = tmp.file("policy.txt");
  write_policy_file(path, "kuhn", policy);
  const PolicyTable loaded = read_policy_file(path, "kuhn");
  REQUIRE(loaded.entries().size() == policy.entries().size());
  for (const auto& [key, dist] : policy.entries()) {
    const auto* got = loaded.find(key);
    REQUIRE(got != nullptr);
    for (size_t k = 0; k < dist.size(); ++k) {
      REQUIRE((*got)[k] == doctest::Approx(dist[k]).epsilon(1e-15));
    }
  }

  CHECK_THROWS_AS(read_policy_file(path, "leduc"), InputError);
  const std::string bad = tmp.file("bad.txt");
  std::ofstream(bad) << "armac-policy v1\ngame kuhn\nentries 1\n0 zz 2 0.5 "
                        "0.5\n";
  CHECK_THROWS_AS(read_policy_file(bad, "kuhn"), InputError);
  const std::string bad2 = tmp.file("bad2.txt");
  std::ofstream(bad2) << "something else\n";
  CHECK_THROWS_AS(read_policy_file(bad2, "kuhn"), InputError);
}

TEST_CASE("cmd_solve writes decreasing nash_conv and a valid policy") {
  TempDir tmp;
  RunConfig config;
  config.game = "kuhn";
  config.algorithm = "cfr";
  config.iterations = 400;
  config.eval_interval = 100;
  config.out = tmp.file("cfr");
  std::ostringstream log;
  const SolveOutcome outcome = cmd_solve(config, log);
  REQUIRE(std::filesystem::exists(outcome.csv_path));
  REQUIRE(std::filesystem::exists(outcome.policy_path));
  REQUIRE(outcome.final_nash_conv_avg.has_value());

  // NashConv column decreases over the trace.
  std::ifstream csv(outcome.csv_path);
  std::string line;
  std::getline(csv, line);  // header
  double prev = 1e9;
  int rows = 0;
  while (std::getline(csv, line)) {
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 + 1);
    const auto c3 = line.find(',', c2 + 1);
    const double nc = std::stod(line.substr(c2 + 1, c3 - c2 - 1));
    CHECK(nc <= prev + 1e-12);
    prev = nc;
    ++rows;
  }
  CHECK(rows == 4);

  std::ostringstream eval_out;
  const EvalOutcome eval = cmd_eval(outcome.policy_path, "kuhn", eval_out);
  CHECK(eval.report.nash_conv ==
        doctest::Approx(*outcome.final_nash_conv_avg).epsilon(1e-9));
  CHECK(eval_out.str().find("nash_conv") == 0);
}

TEST_CASE("cmd_solve is byte-deterministic per config and seed") {
  TempDir tmp;
  for (const std::string& algo : {"mccfr_os", "armac"}) {
    RunConfig config;
    config.game = "kuhn";
    config.algorithm = algo;
    config.iterations = algo == "armac" ? 3 : 2000;
    config.eval_interval = algo == "armac" ? 1 : 1000;
    config.k_act = 32;
    config.k_learn = 5;
    config.batch_episodes = 8;
    config.candidate_eval_episodes = 8;
    config.seed = 5;

    config.out = tmp.file(algo + "_a");
    std::ostringstream log;
    cmd_solve(config, log);
    config.out = tmp.file(algo + "_b");
    cmd_solve(config, log);
    CHECK(slurp(tmp.file(algo + "_a.csv")) == slurp(tmp.file(algo + "_b.csv")));
    CHECK(slurp(tmp.file(algo + "_a.policy")) ==
          slurp(tmp.file(algo + "_b.policy")));
  }
}

TEST_CASE("gridworld solve leaves nash_conv columns empty") {
  TempDir tmp;
  RunConfig config;
  config.game = "gridworld";
  config.algorithm = "armac";
  config.iterations = 2;
  config.k_act = 32;
  config.k_learn = 2;
  config.batch_episodes = 4;
  config.candidate_eval_episodes = 4;
  config.eval_interval = 1;
  config.out = tmp.file("grid");
  std::ostringstream log;
  const SolveOutcome outcome = cmd_solve(config, log);
  CHECK(outcome.policy_path.empty());
  std::ifstream csv(outcome.csv_path);
  std::string line;
  std::getline(csv, line);
  std::getline(csv, line);
  // epoch,acting_steps,<empty>,<empty>,...
  const auto c1 = line.find(',');
  const auto c2 = line.find(',', c1 + 1);
  CHECK(line[c2 + 1] == ',');
}

TEST_CASE("selfcheck passes on a fresh checkout") {
  std::ostringstream out;
  CHECK(run_selfcheck(out) == 0);
  CHECK(out.str().find("FAIL") == std::string::npos);
}
