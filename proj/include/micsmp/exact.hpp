#pragma once

// Exact fixation probabilities of the absorbing chain on configurations.

#include <map>
#include <optional>
#include <vector>

#include "micsmp/dynamics.hpp"

namespace micsmp {

/// Classic Moran fixation probability from i of n mutants.
double moran_rho(int i, int n, double r);

/// Initial law alpha over transient configurations.
class InitialDistribution {
 public:
  struct Atom {
    Configuration x;
    double weight;
  };

  /// Throws AtomOnAbsorbing, or InvalidArgument for negative weights, weights
  /// not summing to one, or mixed vertex counts.
  static InitialDistribution from_atoms(std::vector<Atom> atoms,
                                        double tol = kDefaultTolerance);
  static InitialDistribution point_mass(Configuration x);
  static InitialDistribution uniform_level(int n, int level);

  const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  int n() const noexcept { return atoms_.front().x.n; }

 private:
  explicit InitialDistribution(std::vector<Atom> atoms)
      : atoms_(std::move(atoms)) {}
  std::vector<Atom> atoms_;
};

enum class SolverKind { Auto, Dense, Iterative };

struct SolverOptions {
  SolverKind kind = SolverKind::Auto;
  /// Jacobi stopping rule on ||delta h||_inf.
  double step_tolerance = 1e-12;
  long max_sweeps = 10'000'000;
  /// Required ||(I - Q) h - b||_inf after either solve.
  double residual_tolerance = 1e-10;
};

struct SolverInfo {
  SolverKind kind = SolverKind::Dense;
  long iterations = 0;
  double residual = 0.0;
};

struct FixationReport {
  int n = 0;
  /// rho[mask]; rho[0] = 0 and rho[2^n - 1] = 1.
  std::vector<double> rho;
  std::optional<double> rho_alpha;
  /// Level j in (0, n) -> max over x in level j of |rho_x - moran_rho(j)|.
  std::map<int, double> per_level_deviation;
  SolverInfo solver;

  double at(Configuration x) const { return rho.at(x.bits); }
  double extinction(Configuration x) const { return 1.0 - at(x); }
};

/// Solves (I - Q) h = b on the transient states. Dense LU for n <= 12,
/// Jacobi iteration otherwise (or as requested).
FixationReport fixation_probabilities(const MicSMPModel& model,
                                      const SolverOptions& opts = {});
FixationReport fixation_probabilities(const MicSMPModel& model,
                                      const TransitionKernel& kernel,
                                      const SolverOptions& opts = {});

/// sum_x alpha(x) rho_x.
double fixation_for_initial(const FixationReport& report,
                            const InitialDistribution& alpha);
double fixation_for_initial(const MicSMPModel& model,
                            const InitialDistribution& alpha);

std::map<int, double> moran_deviation(const FixationReport& report, double r);
std::map<int, double> moran_deviation(const MicSMPModel& model);

/// max_x |rho_x - (P rho)_x| over all states.
double harmonic_residual(const TransitionKernel& kernel,
                         const std::vector<double>& rho);

}  // namespace micsmp
