// micsmp: exact fixation probabilities, Monte Carlo estimates, parameter
// sweeps and theorem checks for the microscopic spatial Moran process.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "micsmp/cli.hpp"

namespace {

void add_model_options(CLI::App* cmd, std::string& model, micsmp::ModelOverrides& overrides,
                       bool required) {
  auto* opt = cmd->add_option("--model", model,
                              "Model JSON file or builtin (@galanis, @complete:n, @n2:w1,w2)");
  if (required) opt->required();
  cmd->add_option_function<double>(
      "--r", [&overrides](double r) { overrides.r = r; }, "Override mutant fitness r");
  cmd->add_option_function<std::string>(
      "--mu", [&overrides](const std::string& mu) { overrides.mu = mu; },
      "Override selection policy: stationary, uniform or comma-separated weights");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Microscopic spatial Moran process toolkit"};
  app.set_version_flag("--version", std::string(micsmp::cli::kToolVersion));
  app.require_subcommand(1);
  app.fallthrough();

  micsmp::cli::OutputOptions output;
  app.add_option("--json-indent", output.json_indent,
                 "Pretty-print JSON with this indent (compact when negative)");

  micsmp::cli::ExactArgs exact;
  auto* exact_cmd = app.add_subcommand("exact", "Exact fixation probabilities");
  add_model_options(exact_cmd, exact.model, exact.overrides, true);
  exact_cmd->add_option("--init", exact.init,
                        "mask:K | level:j:uniform | atoms:[(mask,w),...]");
  exact_cmd->add_option("--solver", exact.solver, "auto | dense | iterative")
      ->check(CLI::IsMember({"auto", "dense", "iterative"}));

  micsmp::cli::SimulateArgs sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo fixation estimate");
  add_model_options(sim_cmd, sim.model, sim.overrides, true);
  sim_cmd->add_option("--init", sim.init, "MASK | mask:K | level:j:uniform | atoms:[...]")
      ->required();
  sim_cmd->add_option("--trials", sim.trials, "Number of trajectories")->required();
  sim_cmd->add_option("--seed", sim.seed, "Base seed");
  sim_cmd->add_option("--mode", sim.mode, "event | faithful");
  sim_cmd->add_option("--max-steps", sim.max_steps, "Censoring bound per trajectory");
  sim_cmd->add_option("--workers", sim.workers,
                      "Worker threads (default: MICSMP_THREADS or all cores)");

  micsmp::cli::SweepArgs sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "Two-vertex F(m, a | c, r) grid as CSV");
  sweep_cmd->add_option("--c", sweep.c, "Weight ratio w1 / w2")->required();
  sweep_cmd->add_option("--r", sweep.r, "Mutant fitness")->required();
  sweep_cmd->add_option("--grid", sweep.grid, "Points per axis");
  sweep_cmd->add_option("--out", sweep.out_path, "Output CSV path (default stdout)");

  micsmp::cli::VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Theorem checks (builtin suite or one model)");
  std::string verify_model;
  add_model_options(verify_cmd, verify_model, verify.overrides, false);
  verify_cmd->add_option("--dump-kernel", verify.dump_kernel,
                         "Write the transition kernel as from_mask,to_mask,prob CSV");
  verify_cmd->add_option("--seed", verify.seed, "Seed of the builtin suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  std::vector<std::string> arguments(argv + 1, argv + argc);
  if (*exact_cmd) {
    return micsmp::cli::cmd_exact(
        exact, micsmp::cli::make_manifest("exact", arguments), output, std::cout);
  }
  if (*sim_cmd) {
    return micsmp::cli::cmd_simulate(
        sim, micsmp::cli::make_manifest("simulate", arguments, sim.seed), output, std::cout);
  }
  if (*sweep_cmd) return micsmp::cli::cmd_sweep(sweep, std::cout);
  if (!verify_model.empty()) verify.model = verify_model;
  return micsmp::cli::cmd_verify(
      verify,
      micsmp::cli::make_manifest("verify", arguments,
                                 verify.model ? std::nullopt : std::optional(verify.seed)),
      output, std::cout);
}
