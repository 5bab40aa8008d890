#include "micsmp/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <ostream>

#include "micsmp/error.hpp"
#include "micsmp/verification.hpp"

namespace micsmp::cli {

namespace {

std::string iso_timestamp() {
  std::time_t t = std::time(nullptr);
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) {
    t = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
  }
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void emit(const nlohmann::json& doc, const OutputOptions& opts, std::ostream& out) {
  out << doc.dump(opts.json_indent) << '\n';
}

int report_error(const Error& e, const RunManifest& manifest, const OutputOptions& opts,
                 std::ostream& out) {
  auto doc = error_json(to_string(e.code()), e.what());
  doc["manifest"] = to_json(manifest);
  emit(doc, opts, out);
  return is_input_error(e.code()) ? 2 : 1;
}

SolverKind parse_solver(const std::string& name) {
  if (name == "auto") return SolverKind::Auto;
  if (name == "dense") return SolverKind::Dense;
  if (name == "iterative") return SolverKind::Iterative;
  throw Error(ErrorCode::InvalidArgument, "unknown solver '" + name + "'");
}

}  // namespace

RunManifest make_manifest(std::string command, std::vector<std::string> arguments,
                          std::optional<std::uint64_t> seed) {
  return {std::move(command), std::move(arguments), seed, iso_timestamp()};
}

nlohmann::json to_json(const RunManifest& m) {
  nlohmann::json out = {{"command", m.command},
                        {"arguments", m.arguments},
                        {"tool_version", kToolVersion},
                        {"timestamp", m.timestamp}};
  out["seed"] = m.seed ? nlohmann::json(*m.seed) : nlohmann::json();
  return out;
}

nlohmann::json error_json(std::string_view code, std::string_view message) {
  return {{"error", {{"code", code}, {"message", message}}}};
}

int cmd_exact(const ExactArgs& args, const RunManifest& manifest,
              const OutputOptions& opts, std::ostream& out) {
  try {
    const MicSMPModel model = load_model(args.model, args.overrides);
    SolverOptions solver;
    solver.kind = parse_solver(args.solver);
    std::optional<InitialDistribution> alpha;
    if (args.init) alpha = parse_init(*args.init, model.n());
    FixationReport report = fixation_probabilities(model, solver);
    if (alpha) report.rho_alpha = fixation_for_initial(report, *alpha);
    nlohmann::json doc = micsmp::to_json(report, model.fitness());
    doc["manifest"] = to_json(manifest);
    emit(doc, opts, out);
    return 0;
  } catch (const Error& e) {
    return report_error(e, manifest, opts, out);
  }
}

int cmd_simulate(const SimulateArgs& args, const RunManifest& manifest,
                 const OutputOptions& opts, std::ostream& out) {
  try {
    if (args.trials < 1) throw Error(ErrorCode::InvalidArgument, "--trials must be >= 1");
    if (args.max_steps < 1) throw Error(ErrorCode::InvalidArgument, "--max-steps must be >= 1");
    TrajectoryConfig cfg;
    cfg.seed = args.seed;
    cfg.max_steps = args.max_steps;
    if (args.mode == "event" || args.mode == "event_driven") {
      cfg.mode = SimulationMode::EventDriven;
    } else if (args.mode == "faithful") {
      cfg.mode = SimulationMode::Faithful;
    } else {
      throw Error(ErrorCode::InvalidArgument, "--mode must be faithful or event");
    }
    const MicSMPModel model = load_model(args.model, args.overrides);
    const auto alpha = parse_init(args.init, model.n());
    const auto result = estimate_fixation(model, alpha, args.trials, cfg, args.workers);
    nlohmann::json doc = micsmp::to_json(result);
    doc["mode"] = cfg.mode == SimulationMode::EventDriven ? "event" : "faithful";
    doc["max_steps"] = cfg.max_steps;
    doc["manifest"] = to_json(manifest);
    emit(doc, opts, out);
    return 0;
  } catch (const Error& e) {
    return report_error(e, manifest, opts, out);
  }
}

void write_sweep_csv(const SweepGrid& grid, std::ostream& out) {
  out << "a,m,F\n";
  char buf[96];
  for (int i = 0; i < grid.size; ++i) {
    for (int j = 0; j < grid.size; ++j) {
      const double f = grid.at(i, j);
      if (std::isnan(f)) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,nan\n", grid.axis[i], grid.axis[j]);
      } else {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", grid.axis[i], grid.axis[j], f);
      }
      out << buf;
    }
  }
}

void write_kernel_csv(const TransitionKernel& kernel, std::ostream& out) {
  out << "from_mask,to_mask,prob\n";
  char buf[96];
  for (Mask x = 0; x < kernel.size(); ++x) {
    kernel.for_each_in_row(x, [&](Mask to, double p) {
      std::snprintf(buf, sizeof buf, "%u,%u,%.17g\n", x, to, p);
      out << buf;
    });
  }
}

int cmd_sweep(const SweepArgs& args, std::ostream& out) {
  SweepGrid grid;
  try {
    if (args.grid < 2) throw Error(ErrorCode::InvalidArgument, "--grid must be >= 2");
    grid = sweep_n2(args.c, args.r, args.grid);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s: %s\n", std::string(to_string(e.code())).c_str(), e.what());
    return is_input_error(e.code()) ? 2 : 1;
  }
  if (args.out_path.empty() || args.out_path == "-") {
    write_sweep_csv(grid, out);
    return out.good() ? 0 : 1;
  }
  std::ofstream file(args.out_path);
  if (!file) {
    std::fprintf(stderr, "error: IoError: cannot write %s\n", args.out_path.c_str());
    return 1;
  }
  write_sweep_csv(grid, file);
  file.close();
  if (!file) {
    std::fprintf(stderr, "error: IoError: write to %s failed\n", args.out_path.c_str());
    return 1;
  }
  return 0;
}

int cmd_verify(const VerifyArgs& args, const RunManifest& manifest,
               const OutputOptions& opts, std::ostream& out) {
  try {
    std::vector<verify::CheckResult> checks;
    if (args.model) {
      const MicSMPModel model = load_model(*args.model, args.overrides);
      if (args.dump_kernel) {
        std::ofstream file(*args.dump_kernel);
        if (!file) throw Error(ErrorCode::IoError, "cannot write " + *args.dump_kernel);
        write_kernel_csv(transition_kernel(model), file);
      }
      checks = verify::model_checks(model);
    } else {
      if (args.dump_kernel) {
        throw Error(ErrorCode::InvalidArgument, "--dump-kernel needs --model");
      }
      checks = verify::builtin_suite(args.seed);
    }
    nlohmann::json doc = {{"checks", verify::to_json(checks)},
                          {"manifest", to_json(manifest)}};
    const bool ok = verify::all_asserted_pass(checks);
    doc["pass"] = ok;
    emit(doc, opts, out);
    return ok ? 0 : 1;
  } catch (const Error& e) {
    return report_error(e, manifest, opts, out);
  }
}

}  // namespace micsmp::cli
