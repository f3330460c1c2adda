// Batch entry point: secure evaluation of polynomial control laws over the
// simulated party network, closed-loop plant runs and scheme comparisons.

#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "mpcctrl/driver.hpp"

namespace {

void add_common_flags(CLI::App* cmd, mpcctrl::RunConfig& config, std::string& scheme,
                      std::string& transport, std::string& zero_mode) {
  cmd->add_option("--law", config.law_path, "law definition file")->required();
  cmd->add_option("--scheme", scheme, "three-party | n-party")
      ->check(CLI::IsMember({"three-party", "n-party"}));
  cmd->add_option("--beta", config.radix, "radix override");
  cmd->add_option("--xpost", config.fractional_digits, "fractional digits override");
  cmd->add_option("--upre", config.integer_digits, "result integer digits override");
  cmd->add_option("--seed", config.seed, "seed for all protocol randomness");
  cmd->add_option("--transport", transport, "in-memory | framed-stream")
      ->check(CLI::IsMember({"in-memory", "framed-stream"}));
  cmd->add_option("--zero-sharing-mode", zero_mode, "communication | correlated-randomness")
      ->check(CLI::IsMember({"communication", "correlated-randomness"}));
  cmd->add_flag("--share-constants", config.share_constants,
                "split constant terms over the server pool instead of sending them to the actuator");
  cmd->add_option("--out", config.out_path, "output path for CSV reports");
}

void apply_choices(mpcctrl::RunConfig& config, const std::string& scheme,
                   const std::string& transport, const std::string& zero_mode) {
  config.scheme = scheme == "three-party" ? mpcctrl::Scheme::three_party
                                          : mpcctrl::Scheme::n_party;
  config.transport = transport == "framed-stream" ? mpcctrl::TransportKind::framed_stream
                                                  : mpcctrl::TransportKind::in_memory;
  config.zero_sharing = zero_mode == "communication"
                            ? mpcctrl::ZeroSharingMode::communication
                            : mpcctrl::ZeroSharingMode::correlated_randomness;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"secret-sharing multi-party evaluation of polynomial control laws"};
  app.require_subcommand(1);

  mpcctrl::RunConfig config;
  std::string scheme = "n-party";
  std::string transport = "in-memory";
  std::string zero_mode = "correlated-randomness";

  auto* eval = app.add_subcommand("eval", "one secure evaluation, checked against the oracle");
  add_common_flags(eval, config, scheme, transport, zero_mode);
  eval->add_option("--state", config.eval_state, "state vector, e.g. --state 1.0 1.0")
      ->required()
      ->expected(-1);
  eval->add_flag("--inject-fault", config.inject_fault,
                 "corrupt one result share to demonstrate the mismatch detector");

  auto* simulate = app.add_subcommand("simulate", "closed-loop plant run");
  add_common_flags(simulate, config, scheme, transport, zero_mode);
  simulate->add_option("--steps", config.sim.horizon, "number of control steps");
  simulate->add_option("--ts", config.sim.sample_period, "sample period in seconds");
  simulate->add_option("--substeps", config.sim.substeps, "integrator substeps per sample");
  simulate->add_option("--x0", config.sim.initial_state, "initial state");

  auto* bench = app.add_subcommand("bench", "operation/message counts for both schemes");
  add_common_flags(bench, config, scheme, transport, zero_mode);
  bench->add_option("--states", config.bench_states, "number of evaluation states");

  CLI11_PARSE(app, argc, argv);
  apply_choices(config, scheme, transport, zero_mode);

  try {
    if (app.got_subcommand(eval)) {
      const mpcctrl::EvalReport report = mpcctrl::run_eval(config);
      report.print(std::cout);
      return report.match ? 0 : 2;
    }
    if (app.got_subcommand(simulate)) {
      const mpcctrl::SimulateReport report = mpcctrl::run_simulate(config);
      report.print(std::cout);
      return 0;
    }
    const mpcctrl::BenchReport report = mpcctrl::run_bench(config);
    report.print(std::cout);
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
