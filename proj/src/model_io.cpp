#include "micsmp/model_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <regex>
#include <sstream>

#include "micsmp/error.hpp"

namespace micsmp {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_decimal(std::string_view text) {
  text = trim(text);
  double value = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  if (!text.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || text.empty()) {
    throw Error(ErrorCode::ParseError, "not a number: '" + std::string(text) + "'");
  }
  return value;
}

long parse_integer(std::string_view text) {
  text = trim(text);
  long value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw Error(ErrorCode::ParseError, "not an integer: '" + std::string(text) + "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

SelectionPolicy make_policy(const nlohmann::json& mu, const WeightMatrix& w) {
  if (mu.is_string()) {
    const auto kind = mu.get<std::string>();
    if (kind == "stationary") return SelectionPolicy::stationary(w);
    if (kind == "uniform") return SelectionPolicy::uniform(w.n());
    std::vector<double> values;
    for (auto part : split(kind, ',')) values.push_back(parse_number(part));
    return SelectionPolicy::from_values(values);
  }
  if (!mu.is_array()) {
    throw Error(ErrorCode::ParseError,
                "\"mu\" must be an array, \"stationary\" or \"uniform\"");
  }
  std::vector<double> values;
  for (const auto& v : mu) values.push_back(parse_number(v));
  return SelectionPolicy::from_values(values);
}

MicSMPModel assemble(const WeightMatrix& w, const nlohmann::json& mu, double r,
                     const ModelOverrides& overrides) {
  const double fitness = overrides.r.value_or(r);
  const nlohmann::json policy = overrides.mu ? nlohmann::json(*overrides.mu) : mu;
  return MicSMPModel(w, make_policy(policy, w), fitness);
}

MicSMPModel builtin_model(std::string_view name, const ModelOverrides& overrides) {
  const nlohmann::json stationary = "stationary";
  if (name == "galanis") {
    return assemble(validate_weight_matrix(galanis_weights()), stationary, 1.0, overrides);
  }
  if (name.starts_with("complete:")) {
    const long n = parse_integer(name.substr(9));
    if (n < 2 || n > kMaxVertices) {
      throw Error(ErrorCode::InvalidArgument, "complete graph needs 2 <= n <= 20");
    }
    const auto w = validate_weight_matrix(
        Eigen::MatrixXd::Constant(n, n, 1.0 / static_cast<double>(n)));
    return assemble(w, stationary, 1.0, overrides);
  }
  if (name.starts_with("n2:")) {
    const auto parts = split(name.substr(3), ',');
    if (parts.size() != 2) {
      throw Error(ErrorCode::ParseError, "expected @n2:w1,w2");
    }
    const double w1 = parse_number(parts[0]);
    const double w2 = parse_number(parts[1]);
    Eigen::MatrixXd w(2, 2);
    w << 1.0 - w1, w1, w2, 1.0 - w2;
    return assemble(validate_weight_matrix(w), stationary, 1.0, overrides);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown builtin model @" + std::string(name));
}

}  // namespace

double parse_number(std::string_view text) {
  text = trim(text);
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const double p = parse_decimal(text.substr(0, slash));
    const double q = parse_decimal(text.substr(slash + 1));
    if (q == 0.0) {
      throw Error(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
    }
    return p / q;
  }
  return parse_decimal(text);
}

double parse_number(const nlohmann::json& value) {
  if (value.is_number()) return value.get<double>();
  if (value.is_string()) return parse_number(std::string_view(value.get_ref<const std::string&>()));
  throw Error(ErrorCode::ParseError, "expected a number or rational string, got " + value.dump());
}

MicSMPModel parse_model(const nlohmann::json& doc, const ModelOverrides& overrides) {
  if (!doc.is_object() || !doc.contains("W") || !doc["W"].is_array()) {
    throw Error(ErrorCode::ParseError, "model needs an object with a \"W\" array");
  }
  const auto& rows = doc["W"];
  const auto n = static_cast<Eigen::Index>(rows.size());
  if (doc.contains("n") && doc["n"].get<long>() != n) {
    throw Error(ErrorCode::InvalidArgument, "\"n\" does not match the rows of \"W\"");
  }
  Eigen::MatrixXd raw(n, n);
  for (Eigen::Index v = 0; v < n; ++v) {
    const auto& row = rows[static_cast<std::size_t>(v)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
      throw Error(ErrorCode::InvalidArgument, "\"W\" must be square");
    }
    for (Eigen::Index u = 0; u < n; ++u) raw(v, u) = parse_number(row[static_cast<std::size_t>(u)]);
  }
  const WeightMatrix w = validate_weight_matrix(raw);
  const nlohmann::json mu = doc.value("mu", nlohmann::json("stationary"));
  const double r = doc.contains("r") ? parse_number(doc["r"]) : 1.0;
  return assemble(w, mu, r, overrides);
}

MicSMPModel load_model(const std::string& source, const ModelOverrides& overrides) {
  if (source.starts_with("@")) return builtin_model(std::string_view(source).substr(1), overrides);
  std::ifstream in(source);
  if (!in) throw Error(ErrorCode::IoError, "cannot open model file " + source);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("invalid model JSON: ") + e.what());
  }
  try {
    return parse_model(doc, overrides);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("invalid model JSON: ") + e.what());
  }
}

InitialDistribution parse_init(std::string_view spec, int n) {
  std::string lower(trim(spec));
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  auto to_mask = [n](long value) {
    if (value < 0) throw Error(ErrorCode::InvalidArgument, "negative mask");
    return make_configuration(static_cast<Mask>(value), n);
  };

  if (lower.starts_with("mask:")) {
    return InitialDistribution::point_mass(to_mask(parse_integer(std::string_view(lower).substr(5))));
  }
  if (lower.starts_with("level:")) {
    const auto parts = split(std::string_view(lower).substr(6), ':');
    if (parts.size() != 2 || trim(parts[1]) != "uniform") {
      throw Error(ErrorCode::ParseError, "expected level:j:uniform");
    }
    return InitialDistribution::uniform_level(n, static_cast<int>(parse_integer(parts[0])));
  }
  if (lower.starts_with("atoms:")) {
    static const std::regex atom(R"(\(\s*([0-9]+)\s*,\s*([^()]+?)\s*\))");
    std::vector<InitialDistribution::Atom> atoms;
    const std::string body = lower.substr(6);
    for (auto it = std::sregex_iterator(body.begin(), body.end(), atom);
         it != std::sregex_iterator(); ++it) {
      atoms.push_back({to_mask(parse_integer((*it)[1].str())), parse_number(std::string_view((*it)[2].str()))});
    }
    if (atoms.empty()) throw Error(ErrorCode::ParseError, "expected atoms:[(mask,w),...]");
    return InitialDistribution::from_atoms(std::move(atoms), 1e-9);
  }
  return InitialDistribution::point_mass(to_mask(parse_integer(lower)));
}

nlohmann::json to_json(const FixationReport& report, double r) {
  nlohmann::json out;
  auto& rho = out["rho"] = nlohmann::json::array();
  for (Mask x = 0; x < report.rho.size(); ++x) {
    rho.push_back({{"mask", x}, {"value", report.rho[x]}});
  }
  if (report.rho_alpha) out["rho_alpha"] = *report.rho_alpha;
  auto& deviation = out["deviation"] = nlohmann::json::object();
  auto& moran = out["moran"] = nlohmann::json::object();
  for (const auto& [level, dev] : report.per_level_deviation) {
    deviation[std::to_string(level)] = dev;
    moran[std::to_string(level)] = moran_rho(level, report.n, r);
  }
  out["solver"] = {
      {"kind", report.solver.kind == SolverKind::Dense ? "dense" : "iterative"},
      {"iterations", report.solver.iterations},
      {"residual", report.solver.residual}};
  return out;
}

nlohmann::json to_json(const SimulationResult& result) {
  nlohmann::json out = {{"trials", result.trials},
                        {"fixations", result.fixations},
                        {"extinctions", result.extinctions},
                        {"censored", result.censored},
                        {"seed", result.seed}};
  // NaN (no decided trials) is encoded as null.
  out["frequency"] = std::isfinite(result.frequency) ? nlohmann::json(result.frequency) : nlohmann::json();
  out["ci_halfwidth"] =
      std::isfinite(result.ci_halfwidth) ? nlohmann::json(result.ci_halfwidth) : nlohmann::json();
  return out;
}

nlohmann::json to_json(const MartingaleReport& report) {
  return {{"max_abs_drift", report.max_abs_drift},
          {"max_abs_exp_drift", report.max_abs_exp_drift},
          {"transient_states", report.entries.size()}};
}

}  // namespace micsmp
