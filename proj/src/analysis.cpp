#include "micsmp/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "micsmp/error.hpp"

namespace micsmp {

namespace {

void require(bool ok, ErrorCode code, const char* message) {
  if (!ok) throw Error(code, message);
}

template <typename Fn>
void for_each_transient(int n, Fn&& fn) {
  const Mask full = Configuration::full_mask(n);
  for (Mask x = 1; x < full; ++x) fn(Configuration{x, n});
}

}  // namespace

MartingaleReport martingale_report(const MicSMPModel& model) {
  MartingaleReport report;
  const double r = model.fitness();
  for_each_transient(model.n(), [&](Configuration x) {
    const double up = p_plus(x, model);
    const double down = p_minus(x, model);
    MartingaleEntry e{x, up - down, r * down + (1.0 - up - down) + up / r - 1.0};
    report.max_abs_drift = std::max(report.max_abs_drift, std::abs(e.drift));
    report.max_abs_exp_drift = std::max(report.max_abs_exp_drift, std::abs(e.exp_drift));
    report.entries.push_back(e);
  });
  return report;
}

RatioReport ratio_constancy(const MicSMPModel& model) {
  RatioReport report;
  const double inv_r = 1.0 / model.fitness();
  for_each_transient(model.n(), [&](Configuration x) {
    const double up = p_plus(x, model);
    const double down = p_minus(x, model);
    double dev = 0.0;
    if (up > 0.0) {
      dev = std::abs(down / up - inv_r);
    } else if (down > 0.0) {
      dev = std::numeric_limits<double>::infinity();
    }
    if (dev > report.max_deviation) {
      report.max_deviation = dev;
      report.witness = x;
    }
    if (canonical_level(x) == 1 && dev > report.max_single_mutant_deviation) {
      report.max_single_mutant_deviation = dev;
      report.single_mutant_witness = x;
    }
  });
  return report;
}

double ratio_deviation_term(Configuration x, const MicSMPModel& model) {
  const auto& w = model.weights();
  const auto& mu = model.policy();
  const int n = model.n();
  // Column sums of diag(mu) W are (mu W)_v; row sums are mu_v.
  const Eigen::RowVectorXd inflow = mu.values() * w.matrix();
  double numerator = 0.0;
  double outflow = 0.0;
  for (int v = 0; v < n; ++v) {
    if (!x.is_mutant(v)) continue;
    numerator += inflow(v) - mu[v];
    for (int u = 0; u < n; ++u) {
      if (!x.is_mutant(u)) outflow += mu[v] * w(v, u);
    }
  }
  return numerator / (model.fitness() * outflow);
}

MacroMarkovResult macro_markov_check(const MicSMPModel& model, double tol) {
  MacroMarkovResult result;
  const int n = model.n();
  for (int j = 1; j < n; ++j) {
    const auto level = enumerate_level(n, j);
    const Configuration& ref = level.front();
    const double up_ref = p_plus(ref, model);
    const double down_ref = p_minus(ref, model);
    for (const auto& x : level) {
      const double up = p_plus(x, model);
      if (std::abs(up - up_ref) > tol) {
        result.lumpable = false;
        result.witness = LumpabilityWitness{j, ref, x, true, up_ref, up};
        return result;
      }
      const double down = p_minus(x, model);
      if (std::abs(down - down_ref) > tol) {
        result.lumpable = false;
        result.witness = LumpabilityWitness{j, ref, x, false, down_ref, down};
        return result;
      }
    }
  }
  return result;
}

// ---------------------------------------------------------------------------

MicSMPModel n2_model(double w1, double w2, double m, double r) {
  require(m >= 0.0 && m <= 1.0, ErrorCode::InvalidArgument, "m must lie in [0, 1]");
  Eigen::MatrixXd w(2, 2);
  w << 1.0 - w1, w1, w2, 1.0 - w2;
  const double mu[] = {m, 1.0 - m};
  return MicSMPModel(validate_weight_matrix(w), SelectionPolicy::from_values(mu), r);
}

InitialDistribution n2_initial(double a) {
  require(a >= 0.0 && a <= 1.0, ErrorCode::InvalidArgument, "a must lie in [0, 1]");
  return InitialDistribution::from_atoms({{{0b10, 2}, a}, {{0b01, 2}, 1.0 - a}});
}

double n2_fixation_closed_form(const N2Params& p) {
  require(p.a >= 0.0 && p.a <= 1.0, ErrorCode::InvalidArgument, "a must lie in [0, 1]");
  require(p.m >= 0.0 && p.m <= 1.0, ErrorCode::InvalidArgument, "m must lie in [0, 1]");
  require(p.c > 0.0 && std::isfinite(p.c), ErrorCode::InvalidArgument, "c must be positive");
  require(p.r > 0.0 && std::isfinite(p.r), ErrorCode::InvalidArgument, "r must be positive");
  const double first = p.m * p.c + p.r * (1.0 - p.m);
  const double second = (1.0 - p.m) / p.c + p.r * p.m;
  if (!(first > 0.0 && second > 0.0 && std::isfinite(first) && std::isfinite(second))) {
    throw Error(ErrorCode::DegenerateDenominator,
                "two-vertex closed form has a vanishing denominator");
  }
  return p.r * p.a * (1.0 - p.m) / first + p.r * p.m * (1.0 - p.a) / second;
}

double n2_F(const N2Params& p) {
  return n2_fixation_closed_form(p) / moran_rho(1, 2, p.r);
}

double n2_moran_selection(double a, double c, double r) {
  require(c > 0.0 && std::isfinite(c), ErrorCode::InvalidArgument, "c must be positive");
  require(r > 0.0 && std::isfinite(r), ErrorCode::InvalidArgument, "r must be positive");
  if (std::abs(c - 1.0) <= 1e-12 && std::abs(r - 1.0) <= 1e-12) {
    throw Error(ErrorCode::DegenerateCase, "c and r are both one");
  }
  const double lo = std::min(1.0, r) / (r + 1.0);
  const double hi = std::max(1.0, r) / (r + 1.0);
  if (a < lo - 1e-12 || a > hi + 1e-12) {
    throw Error(ErrorCode::OutOfRange, "a = " + std::to_string(a) +
                                           " outside [" + std::to_string(lo) +
                                           ", " + std::to_string(hi) + "]");
  }
  const double numerator = a * (r + 1.0) - r;
  if (std::abs(numerator) <= 1e-12) return 0.0;
  const double denominator = a * (r + 1.0) * (1.0 - c) + c - r;
  if (std::abs(denominator) <= 1e-14) {
    throw Error(ErrorCode::ZeroDenominator,
                "selection formula denominator vanishes at a = " + std::to_string(a));
  }
  const double m = numerator / denominator;
  if (!(m >= -1e-12 && m <= 1.0 + 1e-12)) {
    throw Error(ErrorCode::OutOfRange, "selection weight " + std::to_string(m) +
                                           " outside [0, 1]");
  }
  return std::clamp(m, 0.0, 1.0);
}

SweepGrid sweep_n2(double c, double r, int grid) {
  require(grid >= 2, ErrorCode::InvalidArgument, "grid must be >= 2");
  SweepGrid out{grid, {}, {}};
  out.axis.resize(grid);
  for (int i = 0; i < grid; ++i) out.axis[i] = static_cast<double>(i) / (grid - 1);
  out.values.resize(static_cast<std::size_t>(grid) * grid);
  for (int i = 0; i < grid; ++i) {
    for (int j = 0; j < grid; ++j) {
      double f;
      try {
        f = n2_F({out.axis[i], out.axis[j], c, r});
      } catch (const Error& e) {
        if (e.code() != ErrorCode::DegenerateDenominator) throw;
        f = std::numeric_limits<double>::quiet_NaN();
      }
      out.values[static_cast<std::size_t>(i) * grid + j] = f;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

Eigen::MatrixXd galanis_weights() {
  Eigen::MatrixXd w(3, 3);
  w << 0.0, 0.25, 0.75,
       0.25, 0.0, 0.75,
       0.5, 0.5, 0.0;
  return w;
}

MicSMPModel galanis_model(double r) {
  return MicSMPModel::stationary(validate_weight_matrix(galanis_weights()), r);
}

MicSMPModel galanis_model(double r, const SelectionPolicy& mu) {
  return MicSMPModel(validate_weight_matrix(galanis_weights()), mu, r);
}

MicSMPModel galanis_neutral_model(const GalanisParams& g) {
  require(g.m1 >= 0.0 && g.m2 >= 0.0 && g.m1 + g.m2 <= 1.0 + 1e-12,
          ErrorCode::InvalidArgument, "need m1, m2 >= 0 and m1 + m2 <= 1");
  const double mu[] = {g.m1, g.m2, std::max(0.0, 1.0 - g.m1 - g.m2)};
  return galanis_model(1.0, SelectionPolicy::from_values(mu));
}

InitialDistribution galanis_initial(const GalanisParams& g) {
  require(g.a1 >= 0.0 && g.a2 >= 0.0 && g.a1 + g.a2 <= 1.0 + 1e-12,
          ErrorCode::InvalidArgument, "need a1, a2 >= 0 and a1 + a2 <= 1");
  return InitialDistribution::from_atoms({{{0b010, 3}, g.a1},
                                          {{0b100, 3}, g.a2},
                                          {{0b001, 3}, std::max(0.0, 1.0 - g.a1 - g.a2)}},
                                         1e-12);
}

double galanis_neutral_fixation(const GalanisParams& g) {
  const double a1 = g.a1, a2 = g.a2, m1 = g.m1, m2 = g.m2;
  return (2 * a2 + 3 * m1 - 3 * a1 * m1 + 3 * a1 * m2 - 5 * a2 * m1 - 2 * a2 * m2) /
         (m1 + m2 + 2);
}

GalanisClassification galanis_moran_condition(const GalanisParams& g) {
  constexpr double tol = kSolverTolerance;
  const bool distinct = std::abs(g.m1 - g.m2) > 1e-9;
  double residual = std::numeric_limits<double>::quiet_NaN();
  if (distinct) {
    const double d = g.m1 - g.m2;
    residual = -g.a1 + g.a2 * (2 - 5 * g.m1 - 2 * g.m2) / (3 * d) +
               (8 * g.m1 - g.m2 - 2) / (9 * d);
  }
  GalanisCase kind = GalanisCase::None;
  if (std::abs(g.a1 - 1.0 / 3) <= tol && std::abs(g.a2 - 1.0 / 3) <= tol) {
    kind = GalanisCase::Case1;
  } else if (std::abs(g.m1 - 2.0 / 7) <= tol && std::abs(g.a1 - 1.0 / 3) > tol &&
             std::abs(g.a2 - (9 * g.a1 - 1) / 6) <= tol) {
    kind = GalanisCase::Case2;
  } else if (distinct && std::abs(residual) <= tol) {
    kind = GalanisCase::Case3;
  }
  return {kind, residual};
}

double galanis_case3_a1(double a2, double m1, double m2) {
  require(std::abs(m1 - m2) > 1e-9, ErrorCode::InvalidArgument,
          "implicit case needs m1 != m2");
  const double d = m1 - m2;
  return a2 * (2 - 5 * m1 - 2 * m2) / (3 * d) + (8 * m1 - m2 - 2) / (9 * d);
}

// ---------------------------------------------------------------------------

MicSMPModel complete_graph_model(int n, double r) {
  require(n >= 2 && n <= kMaxVertices, ErrorCode::InvalidArgument,
          "complete graph needs 2 <= n <= 20");
  return MicSMPModel(validate_weight_matrix(Eigen::MatrixXd::Constant(n, n, 1.0 / n)),
                     SelectionPolicy::uniform(n), r);
}

double classic_moran_check(int n, double r) {
  require(n >= 2 && n <= kMaxDenseVertices, ErrorCode::InvalidArgument,
          "classic check needs 2 <= n <= 12");
  const MicSMPModel model = complete_graph_model(n, r);
  double worst = 0.0;
  for_each_transient(n, [&](Configuration x) {
    const double f = static_cast<double>(canonical_level(x)) / n;
    const double down = f * (1.0 - f) / (1.0 + (r - 1.0) * f);
    worst = std::max(worst, std::abs(p_plus(x, model) - r * down));
    worst = std::max(worst, std::abs(p_minus(x, model) - down));
  });
  return worst;
}

// ---------------------------------------------------------------------------

Eigen::MatrixXd random_stochastic_matrix(int n, std::mt19937_64& rng) {
  require(n >= 2, ErrorCode::InvalidArgument, "need n >= 2");
  std::uniform_real_distribution<double> weight(0.05, 1.0);
  std::bernoulli_distribution edge(0.4);
  std::bernoulli_distribution loop(0.3);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);

  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < n; ++k) w(order[k], order[(k + 1) % n]) = weight(rng);
  for (int v = 0; v < n; ++v) {
    for (int u = 0; u < n; ++u) {
      if (w(v, u) > 0.0) continue;
      if (u == v ? loop(rng) : edge(rng)) w(v, u) = weight(rng);
    }
  }
  for (int v = 0; v < n; ++v) w.row(v) /= w.row(v).sum();
  return w;
}

Eigen::MatrixXd random_bistochastic_matrix(int n, std::mt19937_64& rng) {
  require(n >= 2, ErrorCode::InvalidArgument, "need n >= 2");
  std::uniform_real_distribution<double> weight(0.1, 1.0);
  Eigen::MatrixXd w(n, n);
  for (int v = 0; v < n; ++v) {
    for (int u = 0; u < n; ++u) w(v, u) = weight(rng);
  }
  for (int round = 0; round < 500; ++round) {
    for (int u = 0; u < n; ++u) w.col(u) /= w.col(u).sum();
    for (int v = 0; v < n; ++v) w.row(v) /= w.row(v).sum();
    const double col_error = (w.colwise().sum().array() - 1.0).abs().maxCoeff();
    if (col_error <= 1e-12) break;
  }
  return w;
}

Eigen::RowVectorXd random_policy(int n, std::mt19937_64& rng) {
  std::exponential_distribution<double> draw(1.0);
  Eigen::RowVectorXd mu(n);
  for (int v = 0; v < n; ++v) mu(v) = draw(rng) + 1e-3;
  return mu / mu.sum();
}

}  // namespace micsmp
