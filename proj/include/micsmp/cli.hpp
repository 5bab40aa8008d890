#pragma once

// Subcommands of the micsmp tool. Each returns its exit code and writes its
// primary output to `out`: 0 success, 1 runtime failure or failed check,
// 2 bad input.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "micsmp/model_io.hpp"

namespace micsmp::cli {

inline constexpr std::string_view kToolVersion = "0.1.0";

struct RunManifest {
  std::string command;
  std::vector<std::string> arguments;
  std::optional<std::uint64_t> seed;
  /// ISO-8601 UTC; taken from SOURCE_DATE_EPOCH when set so that outputs are
  /// byte-stable.
  std::string timestamp;
};

RunManifest make_manifest(std::string command, std::vector<std::string> arguments,
                          std::optional<std::uint64_t> seed = std::nullopt);
nlohmann::json to_json(const RunManifest& manifest);

struct OutputOptions {
  int json_indent = -1;  // compact when negative
};

struct ExactArgs {
  std::string model;
  ModelOverrides overrides;
  std::optional<std::string> init;
  std::string solver = "auto";  // auto | dense | iterative
};

struct SimulateArgs {
  std::string model;
  ModelOverrides overrides;
  std::string init;
  long trials = 0;
  std::uint64_t seed = 0;
  std::string mode = "event";  // event | faithful
  long max_steps = 10'000'000;
  int workers = 0;
};

struct SweepArgs {
  double c = 1.0;
  double r = 1.0;
  int grid = 101;
  std::string out_path;  // "-" or empty for `out`
};

struct VerifyArgs {
  std::optional<std::string> model;  // builtin suite when absent
  ModelOverrides overrides;
  std::optional<std::string> dump_kernel;
  std::uint64_t seed = 20240501;
};

int cmd_exact(const ExactArgs& args, const RunManifest& manifest,
              const OutputOptions& opts, std::ostream& out);
int cmd_simulate(const SimulateArgs& args, const RunManifest& manifest,
                 const OutputOptions& opts, std::ostream& out);
int cmd_sweep(const SweepArgs& args, std::ostream& out);
int cmd_verify(const VerifyArgs& args, const RunManifest& manifest,
               const OutputOptions& opts, std::ostream& out);

/// Writes the sweep as "a,m,F" CSV with 17 significant digits.
void write_sweep_csv(const SweepGrid& grid, std::ostream& out);
/// Writes "from_mask,to_mask,prob" rows sorted by (from, to).
void write_kernel_csv(const TransitionKernel& kernel, std::ostream& out);

/// {"error": {"code": ..., "message": ...}}
nlohmann::json error_json(std::string_view code, std::string_view message);

}  // namespace micsmp::cli
