#include "micsmp/exact.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include <Eigen/Dense>

#include "micsmp/error.hpp"

namespace micsmp {

double moran_rho(int i, int n, double r) {
  if (n < 1 || i < 0 || i > n) {
    throw Error(ErrorCode::InvalidArgument, "moran_rho needs 0 <= i <= n");
  }
  if (!std::isfinite(r) || r <= 0.0) {
    throw Error(ErrorCode::InvalidArgument, "fitness r must be positive");
  }
  if (i == 0) return 0.0;
  if (i == n) return 1.0;
  if (std::abs(r - 1.0) <= 1e-12) return static_cast<double>(i) / n;
  // (1 - r^-i) / (1 - r^-n), written to stay accurate as r -> 1.
  const double log_r = std::log1p(r - 1.0);
  return std::expm1(-i * log_r) / std::expm1(-n * log_r);
}

InitialDistribution InitialDistribution::from_atoms(std::vector<Atom> atoms,
                                                    double tol) {
  if (atoms.empty()) {
    throw Error(ErrorCode::InvalidArgument, "initial distribution has no atoms");
  }
  const int n = atoms.front().x.n;
  double total = 0.0;
  for (const auto& atom : atoms) {
    if (atom.x.n != n) {
      throw Error(ErrorCode::InvalidArgument,
                  "initial distribution mixes vertex counts");
    }
    if (!std::isfinite(atom.weight) || atom.weight < 0.0) {
      throw Error(ErrorCode::InvalidArgument, "atom weights must be non-negative");
    }
    if (atom.x.is_absorbing() && atom.weight > 0.0) {
      throw Error(ErrorCode::AtomOnAbsorbing,
                  "initial distribution puts mass on absorbing mask " +
                      std::to_string(atom.x.bits));
    }
    total += atom.weight;
  }
  if (std::abs(total - 1.0) > tol) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "initial weights sum to " << total;
    throw Error(ErrorCode::InvalidArgument, msg.str());
  }
  std::erase_if(atoms, [](const Atom& a) { return a.weight == 0.0; });
  return InitialDistribution(std::move(atoms));
}

InitialDistribution InitialDistribution::point_mass(Configuration x) {
  return from_atoms({{x, 1.0}});
}

InitialDistribution InitialDistribution::uniform_level(int n, int level) {
  if (level <= 0 || level >= n) {
    throw Error(ErrorCode::LevelOutOfRange,
                "uniform initial level must be transient");
  }
  std::vector<Atom> atoms;
  const auto configs = enumerate_level(n, level);
  const double w = 1.0 / static_cast<double>(configs.size());
  for (const auto& x : configs) atoms.push_back({x, w});
  return from_atoms(std::move(atoms), 1e-9);
}

namespace {

std::size_t transient_index(Mask x) { return x - 1; }

double residual_norm(const TransitionKernel& kernel, const std::vector<double>& rho) {
  // ||(I - Q) h - b||_inf on transient rows; equal to ||rho - P rho|| there.
  const Mask full = static_cast<Mask>(kernel.size() - 1);
  double worst = 0.0;
  for (Mask x = 1; x < full; ++x) {
    double acc = 0.0;
    kernel.for_each_in_row(x, [&](Mask to, double p) { acc += p * rho[to]; });
    worst = std::max(worst, std::abs(rho[x] - acc));
  }
  return worst;
}

SolverInfo solve_dense(const TransitionKernel& kernel, std::vector<double>& rho) {
  const Mask full = static_cast<Mask>(kernel.size() - 1);
  const auto t = static_cast<Eigen::Index>(kernel.size() - 2);
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(t, t);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(t);
  for (Mask x = 1; x < full; ++x) {
    const auto row = static_cast<Eigen::Index>(transient_index(x));
    kernel.for_each_in_row(x, [&](Mask to, double p) {
      if (to == full) {
        b(row) += p;
      } else if (to != 0) {
        a(row, static_cast<Eigen::Index>(transient_index(to))) -= p;
      }
    });
  }
  const Eigen::VectorXd h = a.partialPivLu().solve(b);
  for (Mask x = 1; x < full; ++x) rho[x] = h(static_cast<Eigen::Index>(transient_index(x)));
  return {SolverKind::Dense, 1, 0.0};
}

SolverInfo solve_jacobi(const TransitionKernel& kernel, std::vector<double>& rho,
                        const SolverOptions& opts) {
  const Mask full = static_cast<Mask>(kernel.size() - 1);
  const int n = kernel.n();

  // Off-diagonal transient couplings, pre-divided by 1 - P(x, x).
  std::vector<std::size_t> start{0};
  std::vector<Mask> cols;
  std::vector<double> vals;
  std::vector<double> rhs(kernel.size(), 0.0);
  start.reserve(kernel.size());
  for (Mask x = 1; x < full; ++x) {
    const double stay = kernel(x, x);
    const double leave = 1.0 - stay;
    if (!(leave > 0.0)) {
      throw Error(ErrorCode::NumericalFailure,
                  "transient mask " + std::to_string(x) + " never moves");
    }
    kernel.for_each_in_row(x, [&](Mask to, double p) {
      if (to == x || to == 0) return;
      if (to == full) {
        rhs[x] += p / leave;
      } else {
        cols.push_back(to);
        vals.push_back(p / leave);
      }
    });
    start.push_back(cols.size());
  }

  std::vector<double> next(rho.size());
  for (Mask x = 1; x < full; ++x) {
    rho[x] = static_cast<double>(std::popcount(x)) / n;
  }
  next[0] = 0.0;
  next[full] = 1.0;
  long sweep = 0;
  while (true) {
    if (sweep >= opts.max_sweeps) {
      throw Error(ErrorCode::NoConvergence,
                  "Jacobi iteration hit the cap of " + std::to_string(opts.max_sweeps) +
                      " sweeps");
    }
    ++sweep;
    double delta = 0.0;
    for (Mask x = 1; x < full; ++x) {
      double acc = rhs[x];
      for (std::size_t k = start[x - 1]; k < start[x]; ++k) acc += vals[k] * rho[cols[k]];
      delta = std::max(delta, std::abs(acc - rho[x]));
      next[x] = acc;
    }
    std::swap(rho, next);
    if (delta <= opts.step_tolerance) break;
  }
  return {SolverKind::Iterative, sweep, 0.0};
}

}  // namespace

FixationReport fixation_probabilities(const MicSMPModel& model,
                                      const SolverOptions& opts) {
  const int bound = opts.kind == SolverKind::Dense ? kMaxDenseVertices : kMaxVertices;
  if (model.n() > bound) {
    throw Error(ErrorCode::TooLarge, "n = " + std::to_string(model.n()) +
                                         " too large for the requested solver");
  }
  return fixation_probabilities(model, transition_kernel(model), opts);
}

FixationReport fixation_probabilities(const MicSMPModel& model,
                                      const TransitionKernel& kernel,
                                      const SolverOptions& opts) {
  const int n = kernel.n();
  SolverKind kind = opts.kind;
  if (kind == SolverKind::Auto) {
    kind = n <= kMaxDenseVertices ? SolverKind::Dense : SolverKind::Iterative;
  }
  if (kind == SolverKind::Dense && n > kMaxDenseVertices) {
    throw Error(ErrorCode::TooLarge, "dense solve limited to n <= 12");
  }

  FixationReport report;
  report.n = n;
  report.rho.assign(kernel.size(), 0.0);
  report.rho.back() = 1.0;
  report.solver = kind == SolverKind::Dense ? solve_dense(kernel, report.rho)
                                            : solve_jacobi(kernel, report.rho, opts);
  report.solver.residual = residual_norm(kernel, report.rho);
  if (!(report.solver.residual <= opts.residual_tolerance)) {
    std::ostringstream msg;
    msg << "absorption solve residual " << report.solver.residual
        << " exceeds tolerance";
    throw Error(ErrorCode::NumericalFailure, msg.str());
  }
  report.per_level_deviation = moran_deviation(report, model.fitness());
  return report;
}

double fixation_for_initial(const FixationReport& report,
                            const InitialDistribution& alpha) {
  if (alpha.n() != report.n) {
    throw Error(ErrorCode::InvalidArgument,
                "initial distribution and model disagree on n");
  }
  double total = 0.0;
  for (const auto& atom : alpha.atoms()) total += atom.weight * report.at(atom.x);
  return total;
}

double fixation_for_initial(const MicSMPModel& model,
                            const InitialDistribution& alpha) {
  return fixation_for_initial(fixation_probabilities(model), alpha);
}

std::map<int, double> moran_deviation(const FixationReport& report, double r) {
  std::map<int, double> out;
  const int n = report.n;
  for (int j = 1; j < n; ++j) out[j] = 0.0;
  const Mask full = Configuration::full_mask(n);
  for (Mask x = 1; x < full; ++x) {
    const int j = std::popcount(x);
    out[j] = std::max(out[j], std::abs(report.rho[x] - moran_rho(j, n, r)));
  }
  return out;
}

std::map<int, double> moran_deviation(const MicSMPModel& model) {
  return fixation_probabilities(model).per_level_deviation;
}

double harmonic_residual(const TransitionKernel& kernel,
                         const std::vector<double>& rho) {
  double worst = 0.0;
  for (Mask x = 0; x < kernel.size(); ++x) {
    double acc = 0.0;
    kernel.for_each_in_row(x, [&](Mask to, double p) { acc += p * rho[to]; });
    worst = std::max(worst, std::abs(rho[x] - acc));
  }
  return worst;
}

}  // namespace micsmp
