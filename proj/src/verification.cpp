#include "micsmp/verification.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <chrono>
#include <cmath>
#include <sstream>

#include "micsmp/error.hpp"
#include "micsmp/montecarlo.hpp"

namespace micsmp::verify {

namespace {

using Clock = std::chrono::steady_clock;

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(Clock::now() - start_).count();
  }

 private:
  Clock::time_point start_ = Clock::now();
};

constexpr double kFitnessSet[] = {0.5, 1.0, 2.0};

// Tracks a running maximum and where it was attained.
struct Worst {
  double value = 0.0;
  nlohmann::json where;

  void update(double v, const nlohmann::json& at) {
    if (!(v <= value)) {  // also catches NaN
      value = v;
      where = at;
    }
  }
};

CheckResult finish(std::string name, const Worst& worst, double threshold,
                   const Timer& timer, std::string detail = {}) {
  CheckResult out;
  out.name = std::move(name);
  out.max_deviation = worst.value;
  out.threshold = threshold;
  out.passed = worst.value <= threshold;
  if (!worst.where.is_null()) out.witness = worst.where;
  out.detail = std::move(detail);
  out.seconds = timer.seconds();
  return out;
}

std::string format(double v) {
  std::ostringstream s;
  s.precision(3);
  s << v;
  return s.str();
}

}  // namespace

nlohmann::json to_json(const std::vector<CheckResult>& checks) {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& c : checks) {
    nlohmann::json entry = {{"pass", c.passed},
                            {"asserted", c.asserted},
                            {"max_deviation", std::isfinite(c.max_deviation)
                                                  ? nlohmann::json(c.max_deviation)
                                                  : nlohmann::json()},
                            {"threshold", c.threshold}};
    if (c.witness) entry["witness"] = *c.witness;
    if (!c.detail.empty()) entry["detail"] = c.detail;
    out[c.name] = std::move(entry);
  }
  return out;
}

bool all_asserted_pass(const std::vector<CheckResult>& checks) {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return !c.asserted || c.passed; });
}

CheckResult stationary_selection_theorem(int count, std::uint64_t seed) {
  Timer timer;
  std::mt19937_64 rng(seed);
  Worst worst;
  for (int k = 0; k < count; ++k) {
    const int n = 3 + k % 6;
    const WeightMatrix w = validate_weight_matrix(random_stochastic_matrix(n, rng));
    for (double r : kFitnessSet) {
      const auto report = fixation_probabilities(MicSMPModel::stationary(w, r));
      for (const auto& [level, dev] : report.per_level_deviation) {
        worst.update(dev, {{"matrix", k}, {"n", n}, {"r", r}, {"level", level}});
      }
    }
  }
  return finish("stationary_selection_theorem", worst, kMoranTolerance, timer,
                std::to_string(count) + " random W, r in {1/2, 1, 2}");
}

CheckResult isothermal_theorem(int count, std::uint64_t seed) {
  Timer timer;
  std::mt19937_64 rng(seed);
  Worst worst;
  int not_isothermal = 0;
  double uniform_gap = 0.0;
  for (int k = 0; k < count; ++k) {
    const int n = 3 + k % 6;
    const WeightMatrix w = validate_weight_matrix(random_bistochastic_matrix(n, rng));
    if (!is_isothermal(w)) ++not_isothermal;
    const auto pi = stationary_distribution(w).values();
    uniform_gap = std::max(uniform_gap, (pi.array() - 1.0 / n).abs().maxCoeff());
    for (double r : kFitnessSet) {
      const MicSMPModel model(w, SelectionPolicy::uniform(n), r);
      for (const auto& [level, dev] : fixation_probabilities(model).per_level_deviation) {
        worst.update(dev, {{"matrix", k}, {"n", n}, {"r", r}, {"level", level}});
      }
    }
  }
  auto out = finish("isothermal_theorem", worst, kMoranTolerance, timer,
                    "max |pi - uniform| = " + format(uniform_gap));
  out.passed = out.passed && not_isothermal == 0 && uniform_gap <= 1e-10;
  return out;
}

CheckResult n2_closed_form_agreement(int grid) {
  Timer timer;
  Worst worst;
  const double w2 = 0.5;
  for (double c : kFitnessSet) {
    for (double r : kFitnessSet) {
      for (int j = 0; j < grid; ++j) {
        const double m = static_cast<double>(j) / (grid - 1);
        const auto report = fixation_probabilities(n2_model(c * w2, w2, m, r));
        for (int i = 0; i < grid; ++i) {
          const double a = static_cast<double>(i) / (grid - 1);
          const double exact = fixation_for_initial(report, n2_initial(a));
          const double closed = n2_fixation_closed_form({a, m, c, r});
          worst.update(std::abs(exact - closed), {{"a", a}, {"m", m}, {"c", c}, {"r", r}});
        }
      }
    }
  }
  return finish("n2_closed_form", worst, kIdentityTolerance, timer);
}

CheckResult n2_moran_selection_check(int draws, std::uint64_t seed) {
  Timer timer;
  Worst worst;
  // Stationary selection: every a yields r / (r + 1), by closed form and solver.
  const double w2 = 0.5;
  for (double c : {0.25, 0.5, 1.0, 2.0}) {
    for (double r : {0.25, 0.5, 1.0, 2.0, 4.0}) {
      const double m = 1.0 / (c + 1.0);
      const auto report = fixation_probabilities(n2_model(c * w2, w2, m, r));
      for (int i = 0; i <= 10; ++i) {
        const double a = i / 10.0;
        const double target = r / (r + 1.0);
        const nlohmann::json at = {{"bullet", "stationary"}, {"a", a}, {"c", c}, {"r", r}};
        worst.update(std::abs(fixation_for_initial(report, n2_initial(a)) - target), at);
        worst.update(std::abs(n2_fixation_closed_form({a, m, c, r}) - target), at);
      }
    }
  }
  // Non-stationary solution for fixed a.
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> log_scale(std::log(0.25), std::log(4.0));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int accepted = 0;
  while (accepted < draws) {
    const double c = std::exp(log_scale(rng));
    const double r = std::exp(log_scale(rng));
    if (std::abs(c - 1.0) < 1e-6 && std::abs(r - 1.0) < 1e-6) continue;
    const double lo = std::min(1.0, r) / (r + 1.0);
    const double hi = std::max(1.0, r) / (r + 1.0);
    const double a = lo + (hi - lo) * unit(rng);
    const double m = n2_moran_selection(a, c, r);
    worst.update(std::abs(n2_F({a, m, c, r}) - 1.0),
                 {{"bullet", "solved"}, {"a", a}, {"c", c}, {"r", r}, {"m", m}});
    ++accepted;
  }
  return finish("n2_moran_selection", worst, kIdentityTolerance, timer,
                std::to_string(draws) + " random admissible (a, c, r)");
}

CheckResult n2_published_symmetries(int grid) {
  Timer timer;
  Worst worst;
  for (const auto& [c, r] : {std::pair{2.0, 4.0}, std::pair{0.5, 0.25}}) {
    for (int i = 0; i < grid; ++i) {
      const double a = static_cast<double>(i) / (grid - 1);
      for (int j = 0; j < grid; ++j) {
        const double m = static_cast<double>(j) / (grid - 1);
        const double f = n2_F({a, m, c, r});
        const double first = n2_F({1.0 - a, m, c, 1.0 / r});
        const double second = n2_F({a, 1.0 - m, 1.0 / c, r});
        worst.update(std::abs(f - first),
                     {{"identity", "F(m,1-a|c,1/r)"}, {"a", a}, {"m", m}, {"c", c}, {"r", r},
                      {"F", f}, {"mirrored", first}});
        worst.update(std::abs(f - second),
                     {{"identity", "F(1-m,a|1/c,r)"}, {"a", a}, {"m", m}, {"c", c}, {"r", r},
                      {"F", f}, {"mirrored", second}});
      }
    }
  }
  return finish("n2_published_symmetries", worst, kIdentityTolerance, timer);
}

CheckResult n2_relabelling_symmetries(int grid) {
  Timer timer;
  Worst worst;
  for (const auto& [c, r] : {std::pair{2.0, 4.0}, std::pair{0.5, 0.25}}) {
    for (int i = 0; i < grid; ++i) {
      const double a = static_cast<double>(i) / (grid - 1);
      for (int j = 0; j < grid; ++j) {
        const double m = static_cast<double>(j) / (grid - 1);
        worst.update(std::abs(n2_F({a, m, c, r}) - n2_F({1.0 - a, 1.0 - m, 1.0 / c, r})),
                     {{"identity", "relabel"}, {"a", a}, {"m", m}, {"c", c}, {"r", r}});
        worst.update(std::abs(1.0 - n2_fixation_closed_form({a, m, c, r}) -
                              n2_fixation_closed_form({1.0 - a, m, c, 1.0 / r})),
                     {{"identity", "type swap"}, {"a", a}, {"m", m}, {"c", c}, {"r", r}});
      }
      // Level set F = 1 is invariant under (a, r) -> (1 - a, 1 / r).
      const double lo = std::min(1.0, r) / (r + 1.0);
      const double hi = std::max(1.0, r) / (r + 1.0);
      const double on_bracket = lo + (hi - lo) * a;
      const double m = n2_moran_selection(on_bracket, c, r);
      worst.update(std::abs(n2_F({1.0 - on_bracket, m, c, 1.0 / r}) - 1.0),
                   {{"identity", "level set"}, {"a", on_bracket}, {"m", m}, {"c", c}, {"r", r}});
    }
  }
  return finish("n2_relabelling_symmetries", worst, kIdentityTolerance, timer);
}

CheckResult galanis_suite(int draws, std::uint64_t seed) {
  Timer timer;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto simplex_pair = [&] {
    const auto p = random_policy(3, rng);
    return std::pair{p(0), p(1)};
  };

  Worst stationary;
  const auto pi = stationary_distribution(validate_weight_matrix(galanis_weights())).values();
  const double expected_pi[] = {2.0 / 7, 2.0 / 7, 3.0 / 7};
  for (int v = 0; v < 3; ++v) {
    stationary.update(std::abs(pi(v) - expected_pi[v]), {{"part", "pi"}, {"vertex", v + 1}});
  }

  Worst solver;
  auto compare = [&](const GalanisParams& g, const char* part, std::optional<double> target,
                     std::optional<GalanisCase> expect_case) {
    const double formula = galanis_neutral_fixation(g);
    const double exact = fixation_for_initial(galanis_neutral_model(g), galanis_initial(g));
    const nlohmann::json at = {{"part", part}, {"a1", g.a1}, {"a2", g.a2}, {"m1", g.m1}, {"m2", g.m2}};
    solver.update(std::abs(formula - exact), at);
    if (target) {
      solver.update(std::abs(formula - *target), at);
      solver.update(std::abs(exact - *target), at);
    }
    if (expect_case && galanis_moran_condition(g).kind != *expect_case) {
      solver.update(std::numeric_limits<double>::infinity(), at);
    }
  };

  for (int k = 0; k < draws; ++k) {
    const auto [a1, a2] = simplex_pair();
    const auto [m1, m2] = simplex_pair();
    compare({a1, a2, m1, m2}, "formula", std::nullopt, std::nullopt);
  }
  for (int k = 0; k < 10; ++k) {
    const auto [m1, m2] = simplex_pair();
    compare({1.0 / 3, 1.0 / 3, m1, m2}, "case1", 1.0 / 3, GalanisCase::Case1);
  }
  for (int k = 0; k < 10;) {
    // a2 = (9 a1 - 1) / 6 must keep alpha on the simplex: a1 in [1/9, 7/15].
    const double a1 = 1.0 / 9 + (7.0 / 15 - 1.0 / 9) * unit(rng);
    if (std::abs(a1 - 1.0 / 3) < 1e-3) continue;
    const double m2 = (5.0 / 7) * unit(rng);
    compare({a1, (9 * a1 - 1) / 6, 2.0 / 7, m2}, "case2", 1.0 / 3, GalanisCase::Case2);
    ++k;
  }
  for (int k = 0; k < 10;) {
    const double a2 = unit(rng);
    const auto [m1, m2] = simplex_pair();
    if (std::abs(m1 - m2) < 1e-3) continue;
    const double a1 = galanis_case3_a1(a2, m1, m2);
    if (a1 < 0.0 || a1 + a2 > 1.0) continue;
    compare({a1, a2, m1, m2}, "case3", 1.0 / 3, std::nullopt);
    if (galanis_moran_condition({a1, a2, m1, m2}).kind == GalanisCase::None) {
      solver.update(std::numeric_limits<double>::infinity(), {{"part", "case3 classification"}});
    }
    ++k;
  }

  Worst combined = solver;
  combined.update(stationary.value, stationary.where);
  auto out = finish("galanis_suite", combined, kSolverTolerance, timer,
                    "pi deviation " + format(stationary.value) + ", solver/formula deviation " +
                        format(solver.value));
  out.passed = stationary.value <= kIdentityTolerance && solver.value <= kSolverTolerance;
  return out;
}

CheckResult martingale_identities(int count, std::uint64_t seed) {
  Timer timer;
  std::mt19937_64 rng(seed);
  Worst worst;
  for (int k = 0; k < count; ++k) {
    const int n = 3 + k % 6;
    const WeightMatrix w = validate_weight_matrix(random_stochastic_matrix(n, rng));
    const auto neutral = martingale_report(MicSMPModel::stationary(w, 1.0));
    worst.update(neutral.max_abs_drift, {{"matrix", k}, {"n", n}, {"r", 1.0}, {"quantity", "drift"}});
    for (double r : {0.25, 0.5, 1.0, 2.0, 4.0}) {
      const auto report = martingale_report(MicSMPModel::stationary(w, r));
      worst.update(report.max_abs_exp_drift,
                   {{"matrix", k}, {"n", n}, {"r", r}, {"quantity", "exp_drift"}});
    }
  }
  return finish("martingale_identities", worst, kIdentityTolerance, timer);
}

CheckResult ratio_law(int count, std::uint64_t seed) {
  Timer timer;
  std::mt19937_64 rng(seed);
  Worst stationary;
  double weakest_witness = std::numeric_limits<double>::infinity();
  double closed_form_gap = 0.0;
  nlohmann::json weakest_at;
  for (int k = 0; k < count; ++k) {
    const int n = 3 + k % 6;
    const WeightMatrix w = validate_weight_matrix(random_stochastic_matrix(n, rng));
    for (double r : kFitnessSet) {
      stationary.update(ratio_constancy(MicSMPModel::stationary(w, r)).max_deviation,
                        {{"matrix", k}, {"n", n}, {"r", r}});
    }
    // Non-stationary, strictly positive policy far from pi.
    Eigen::RowVectorXd mu;
    do {
      mu = random_policy(n, rng);
    } while ((mu * w.matrix() - mu).cwiseAbs().maxCoeff() <= 1e-3);
    const double r = kFitnessSet[k % 3];
    const MicSMPModel model(w, SelectionPolicy::from_values(mu), r);
    const auto report = ratio_constancy(model);
    const double found = report.single_mutant_witness ? report.max_single_mutant_deviation : 0.0;
    if (found < weakest_witness) {
      weakest_witness = found;
      weakest_at = {{"matrix", k}, {"n", n}, {"r", r},
                    {"mask", report.single_mutant_witness ? report.single_mutant_witness->bits : 0}};
    }
    if (report.single_mutant_witness) {
      const double term = ratio_deviation_term(*report.single_mutant_witness, model);
      closed_form_gap = std::max(closed_form_gap, std::abs(std::abs(term) - found));
    }
  }
  auto out = finish("ratio_law", stationary, kIdentityTolerance, timer,
                    "weakest non-stationary single-mutant deviation " + format(weakest_witness) +
                        ", closed-form gap " + format(closed_form_gap));
  out.passed = out.passed && weakest_witness > 1e-9 && closed_form_gap <= 1e-10;
  out.witness = nlohmann::json{{"stationary_worst", stationary.where},
                               {"non_stationary_weakest", weakest_at}};
  return out;
}

CheckResult montecarlo_consistency(long trials, std::uint64_t seed,
                                   const std::vector<int>& worker_counts) {
  Timer timer;
  const MicSMPModel model = galanis_model(1.0);
  const auto alpha = InitialDistribution::point_mass({0b001, 3});
  TrajectoryConfig cfg;
  cfg.seed = seed;
  const auto first = estimate_fixation(model, alpha, trials, cfg, worker_counts.front());
  bool identical = true;
  auto same = [&](const SimulationResult& other) {
    return other.fixations == first.fixations && other.extinctions == first.extinctions &&
           other.censored == first.censored && other.frequency == first.frequency;
  };
  identical = identical && same(estimate_fixation(model, alpha, trials, cfg, worker_counts.front()));
  for (int workers : worker_counts) {
    identical = identical && same(estimate_fixation(model, alpha, trials, cfg, workers));
  }
  const double bound = 3.0 * std::sqrt((1.0 / 3) * (2.0 / 3) / static_cast<double>(trials));
  Worst worst;
  worst.update(std::abs(first.frequency - 1.0 / 3),
               {{"frequency", first.frequency}, {"fixations", first.fixations},
                {"censored", first.censored}});
  auto out = finish("montecarlo_consistency", worst, bound, timer,
                    identical ? "bit-identical across reruns and worker counts"
                              : "results differ across reruns or worker counts");
  out.passed = out.passed && identical && first.censored == 0;
  return out;
}

CheckResult classic_reduction() {
  Timer timer;
  Worst transitions;
  Worst fixation;
  for (int n = 2; n <= 8; ++n) {
    for (double r : kFitnessSet) {
      transitions.update(classic_moran_check(n, r), {{"n", n}, {"r", r}});
      const auto report = fixation_probabilities(complete_graph_model(n, r));
      for (const auto& x : enumerate_level(n, 1)) {
        fixation.update(std::abs(report.at(x) - moran_rho(1, n, r)),
                        {{"n", n}, {"r", r}, {"mask", x.bits}});
      }
    }
  }
  auto out = finish("classic_reduction", transitions, kIdentityTolerance, timer,
                    "single-mutant fixation deviation " + format(fixation.value));
  out.passed = out.passed && fixation.value <= kMoranTolerance;
  return out;
}

CheckResult non_markov_projection() {
  Timer timer;
  CheckResult out;
  out.name = "non_markov_projection";
  const auto galanis = macro_markov_check(galanis_model(1.0));
  bool complete_ok = true;
  for (int n = 2; n <= 8; ++n) {
    for (double r : kFitnessSet) {
      complete_ok = complete_ok && macro_markov_check(complete_graph_model(n, r)).lumpable;
    }
  }
  out.passed = !galanis.lumpable && galanis.witness && galanis.witness->level == 1 && complete_ok;
  if (galanis.witness) {
    const auto& w = *galanis.witness;
    out.witness = nlohmann::json{{"level", w.level},
                                 {"first_mask", w.first.bits},
                                 {"second_mask", w.second.bits},
                                 {"quantity", w.increase ? "p_plus" : "p_minus"},
                                 {"first_value", w.first_value},
                                 {"second_value", w.second_value}};
    out.max_deviation = std::abs(w.first_value - w.second_value);
  }
  out.detail = complete_ok ? "complete graphs lumpable" : "a complete graph was not lumpable";
  out.seconds = timer.seconds();
  return out;
}

std::vector<CheckResult> builtin_suite(std::uint64_t seed) {
  std::vector<CheckResult> out;
  out.push_back(stationary_selection_theorem(50, seed + 1));
  out.push_back(isothermal_theorem(20, seed + 2));
  out.push_back(n2_closed_form_agreement(11));
  out.push_back(n2_moran_selection_check(100, seed + 4));
  auto published = n2_published_symmetries(51);
  published.asserted = false;
  published.detail = "published pointwise form; see n2_relabelling_symmetries";
  out.push_back(std::move(published));
  out.push_back(n2_relabelling_symmetries(51));
  out.push_back(galanis_suite(100, seed + 6));
  out.push_back(martingale_identities(20, seed + 7));
  out.push_back(ratio_law(20, seed + 8));
  out.push_back(montecarlo_consistency(100'000, seed + 9, {1, 4, 8}));
  out.push_back(classic_reduction());
  out.push_back(non_markov_projection());
  return out;
}

std::vector<CheckResult> model_checks(const MicSMPModel& model) {
  std::vector<CheckResult> out;
  const int n = model.n();
  const bool stationary = model.has_stationary_selection();

  {
    Timer timer;
    Worst worst;
    const auto pi = stationary_distribution(model.weights()).values();
    worst.update((pi * model.weights().matrix() - pi).cwiseAbs().maxCoeff(), {{"quantity", "pi W - pi"}});
    auto c = finish("stationary_distribution", worst, kIdentityTolerance, timer,
                    is_isothermal(model.weights()) ? "W is isothermal" : "W is not isothermal");
    out.push_back(std::move(c));
  }
  const TransitionKernel kernel = transition_kernel(model);
  {
    Timer timer;
    Worst worst;
    for (Mask x = 0; x < kernel.size(); ++x) {
      double sum = 0.0;
      bool single_flip = true;
      kernel.for_each_in_row(x, [&](Mask to, double p) {
        sum += p;
        if (to != x && std::popcount(to ^ x) != 1) single_flip = false;
      });
      worst.update(std::abs(sum - 1.0), {{"mask", x}});
      if (!single_flip) worst.update(std::numeric_limits<double>::infinity(), {{"mask", x}});
    }
    const Mask full = static_cast<Mask>(kernel.size() - 1);
    worst.update(std::abs(kernel(0, 0) - 1.0), {{"mask", 0}});
    worst.update(std::abs(kernel(full, full) - 1.0), {{"mask", full}});
    out.push_back(finish("kernel_invariants", worst, kIdentityTolerance, timer));
  }
  {
    Timer timer;
    Worst worst;
    for (Mask x = 1; x + 1 < kernel.size(); ++x) {
      const Configuration cx{x, n};
      const auto step = step_distribution(cx, model);
      const int level = canonical_level(cx);
      worst.update(std::abs(step.mass_to_level(level + 1) - p_plus(cx, model)), {{"mask", x}});
      worst.update(std::abs(step.mass_to_level(level - 1) - p_minus(cx, model)), {{"mask", x}});
    }
    out.push_back(finish("step_consistency", worst, kIdentityTolerance, timer));
  }
  const FixationReport report = fixation_probabilities(model, kernel);
  {
    Timer timer;
    Worst worst;
    worst.update(harmonic_residual(kernel, report.rho), nullptr);
    out.push_back(finish("harmonic_extension", worst, kSolverTolerance, timer));
  }
  {
    Timer timer;
    Worst worst;
    for (const auto& [level, dev] : report.per_level_deviation) worst.update(dev, {{"level", level}});
    auto c = finish("moran_deviation", worst, kMoranTolerance, timer);
    c.asserted = stationary;
    out.push_back(std::move(c));
  }
  {
    Timer timer;
    const auto m = martingale_report(model);
    Worst worst;
    worst.update(m.max_abs_exp_drift, {{"quantity", "exp_drift"}});
    if (std::abs(model.fitness() - 1.0) <= 1e-12) {
      worst.update(m.max_abs_drift, {{"quantity", "drift"}});
    }
    auto c = finish("martingale", worst, kIdentityTolerance, timer,
                    "max |drift| = " + format(m.max_abs_drift));
    c.asserted = stationary;
    out.push_back(std::move(c));
  }
  {
    Timer timer;
    const auto ratio = ratio_constancy(model);
    Worst worst;
    worst.update(ratio.max_deviation,
                 ratio.witness ? nlohmann::json{{"mask", ratio.witness->bits}} : nlohmann::json());
    auto c = finish("ratio_constancy", worst, kIdentityTolerance, timer);
    c.asserted = stationary;
    out.push_back(std::move(c));
  }
  {
    Timer timer;
    const auto lump = macro_markov_check(model);
    CheckResult c;
    c.name = "macro_markov_check";
    c.asserted = false;
    c.passed = lump.lumpable;
    c.threshold = kIdentityTolerance;
    if (lump.witness) {
      const auto& w = *lump.witness;
      c.witness = nlohmann::json{{"level", w.level},
                                 {"first_mask", w.first.bits},
                                 {"second_mask", w.second.bits},
                                 {"quantity", w.increase ? "p_plus" : "p_minus"},
                                 {"first_value", w.first_value},
                                 {"second_value", w.second_value}};
      c.max_deviation = std::abs(w.first_value - w.second_value);
    }
    c.detail = lump.lumpable ? "level projection is a birth-death chain"
                             : "level projection is not Markov";
    c.seconds = timer.seconds();
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace micsmp::verify
