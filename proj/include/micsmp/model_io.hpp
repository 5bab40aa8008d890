#pragma once

// Model ingestion ({"n", "W", "mu", "r"} JSON documents and builtin
// models), initial-distribution specs, and JSON encodings of results.

#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "micsmp/analysis.hpp"
#include "micsmp/montecarlo.hpp"

namespace micsmp {

/// A JSON number, or a decimal / "p/q" rational string.
double parse_number(const nlohmann::json& value);
double parse_number(std::string_view text);

struct ModelOverrides {
  std::optional<double> r;
  /// "stationary", "uniform" or a comma-separated vector.
  std::optional<std::string> mu;
};

/// Parses {"n": int, "W": [[...]], "mu": [...] | "stationary" | "uniform",
/// "r": number}. "mu" defaults to "stationary" and "r" to 1.
MicSMPModel parse_model(const nlohmann::json& doc,
                        const ModelOverrides& overrides = {});

/// "@galanis", "@complete:n", "@n2:w1,w2" (stationary selection, r = 1 unless
/// overridden), or a path to a model file.
MicSMPModel load_model(const std::string& source,
                       const ModelOverrides& overrides = {});

/// "mask:K", a bare mask "K", "level:j:uniform" or
/// "atoms:[(mask,w),...]" (weights may be rationals).
InitialDistribution parse_init(std::string_view spec, int n);

nlohmann::json to_json(const FixationReport& report, double r);
nlohmann::json to_json(const SimulationResult& result);
nlohmann::json to_json(const MartingaleReport& report);

}  // namespace micsmp
