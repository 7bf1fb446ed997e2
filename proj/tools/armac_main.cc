#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"
#include "armac/harness/run.h"
#include "armac/harness/selfcheck.h"

namespace {

int env_threads() {
  const char* env = std::getenv("ARMAC_THREADS");
  if (!env) return 1;
  const int n = std::atoi(env);
  return n >= 1 ? n : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ARMAC and exact game-theory baselines on small games"};
  app.require_subcommand(1);

  // solve
  auto* solve = app.add_subcommand("solve", "run an algorithm, emit CSV");
  std::string config_path, game, algo, out;
  int iters = -1, epochs = -1, eval_interval = -1;
  int64_t seed = -1;
  bool timing = false;
  solve->add_option("--config", config_path, "JSON config file");
  solve->add_option("--game", game, "game id");
  solve->add_option("--algo", algo, "cfr|mccfr_os|mc_rcfr|armac|armac_exact");
  solve->add_option("--iters", iters, "iterations");
  solve->add_option("--epochs", epochs, "epochs (alias of --iters)");
  solve->add_option("--seed", seed, "rng seed");
  solve->add_option("--eval-interval", eval_interval, "NashConv cadence");
  solve->add_option("--out", out, "output prefix (<out>.csv, <out>.policy)");
  solve->add_flag("--timing", timing, "fill the wall_clock_s column");

  // eval
  auto* eval = app.add_subcommand("eval", "NashConv of a saved policy");
  std::string policy_path, eval_game;
  eval->add_option("policy", policy_path, "policy file")->required();
  eval->add_option("--game", eval_game, "game id")->required();

  // selfcheck
  app.add_subcommand("selfcheck", "run the verification suites");

  // list-games
  app.add_subcommand("list-games", "list available game ids");

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) {
      armac::RunConfig config;
      if (!config_path.empty()) {
        config = armac::load_run_config_file(config_path);
      }
      // CLI flags override file values.
      if (!game.empty()) config.game = game;
      if (!algo.empty()) config.algorithm = algo;
      if (iters >= 0 && epochs >= 0) {
        throw armac::InputError("pass only one of --iters/--epochs");
      }
      if (iters >= 0) config.iterations = iters;
      if (epochs >= 0) config.iterations = epochs;
      if (seed >= 0) config.seed = static_cast<uint64_t>(seed);
      if (eval_interval >= 0) config.eval_interval = eval_interval;
      if (!out.empty()) config.out = out;
      if (timing) config.timing = true;
      config.num_threads = env_threads();

      const auto outcome = armac::cmd_solve(config, std::cerr);
      std::cout << "csv " << outcome.csv_path << "\n";
      if (!outcome.policy_path.empty()) {
        std::cout << "policy " << outcome.policy_path << "\n";
      }
      if (outcome.final_nash_conv_avg) {
        std::cout << "final_nash_conv_avg " << *outcome.final_nash_conv_avg
                  << "\n";
      }
      return 0;
    }
    if (eval->parsed()) {
      armac::cmd_eval(policy_path, eval_game, std::cout);
      return 0;
    }
    if (app.got_subcommand("selfcheck")) {
      return armac::run_selfcheck(std::cout);
    }
    if (app.got_subcommand("list-games")) {
      for (const auto& id : armac::list_game_ids()) std::cout << id << "\n";
      return 0;
    }
  } catch (const armac::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
