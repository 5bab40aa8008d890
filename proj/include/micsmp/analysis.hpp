#pragma once

// Closed forms and theorem checks: martingale drift, ratio law,
// level-lumpability, the two-vertex surface F, the Galanis three-vertex
// example and the complete-graph reduction.

#include <optional>
#include <random>
#include <vector>

#include "micsmp/exact.hpp"

namespace micsmp {

/// Structural identities.
inline constexpr double kIdentityTolerance = 1e-12;
/// Comparisons that go through a linear solve.
inline constexpr double kSolverTolerance = 1e-10;
/// "Moran fixation holds" decisions.
inline constexpr double kMoranTolerance = 1e-9;

// ---------------------------------------------------------------------------
// Martingale and ratio checks

struct MartingaleEntry {
  Configuration x;
  double drift;      // p+ - p-
  double exp_drift;  // r p- + p0 + p+/r - 1
};

struct MartingaleReport {
  std::vector<MartingaleEntry> entries;  // every transient x, ascending mask
  double max_abs_drift = 0.0;
  double max_abs_exp_drift = 0.0;
};

MartingaleReport martingale_report(const MicSMPModel& model);

struct RatioReport {
  double max_deviation = 0.0;  // max_x |p-/p+ - 1/r|
  std::optional<Configuration> witness;  // argmax, if deviation > 0
  /// Largest deviation among single-mutant configurations e_v.
  double max_single_mutant_deviation = 0.0;
  std::optional<Configuration> single_mutant_witness;
};

RatioReport ratio_constancy(const MicSMPModel& model);

/// x (W_mu - W_mu^T) 1^T / (r x W_mu (1 - x)^T), the closed form for
/// p-/p+ - 1/r.
double ratio_deviation_term(Configuration x, const MicSMPModel& model);

struct LumpabilityWitness {
  int level;
  Configuration first;
  Configuration second;
  bool increase;  // which of p+ (true) or p- differs
  double first_value;
  double second_value;
};

struct MacroMarkovResult {
  bool lumpable = true;
  std::optional<LumpabilityWitness> witness;
};

/// True iff p+ and p- are constant on every transient level.
MacroMarkovResult macro_markov_check(const MicSMPModel& model,
                                     double tol = kIdentityTolerance);

// ---------------------------------------------------------------------------
// Two vertices

struct N2Params {
  double a;  // initial weight on the mutant-at-vertex-2 configuration (0b10)
  double m;  // selection weight of vertex 1
  double c;  // w1 / w2
  double r;
};

/// W = [[1 - w1, w1], [w2, 1 - w2]], mu = (m, 1 - m).
MicSMPModel n2_model(double w1, double w2, double m, double r);
/// alpha = (a on 0b10, 1 - a on 0b01), or a point mass at either end.
InitialDistribution n2_initial(double a);

double n2_fixation_closed_form(const N2Params& p);
/// Closed form divided by moran_rho(1, 2, r).
double n2_F(const N2Params& p);
/// Selection weight m making F(m, a | c, r) = 1 for fixed a.
double n2_moran_selection(double a, double c, double r);

struct SweepGrid {
  int size;
  std::vector<double> axis;  // uniform on [0, 1]
  /// values[i * size + j] = F(m = axis[j], a = axis[i]); NaN if degenerate.
  std::vector<double> values;
  double at(int a_index, int m_index) const { return values[a_index * size + m_index]; }
};

SweepGrid sweep_n2(double c, double r, int grid);

// ---------------------------------------------------------------------------
// Galanis three-vertex example

struct GalanisParams {
  double a1;  // weight on the mutant-at-vertex-2 configuration (0b010)
  double a2;  // weight on the mutant-at-vertex-3 configuration (0b100)
  double m1;  // selection weight of vertex 1
  double m2;  // selection weight of vertex 2
};

Eigen::MatrixXd galanis_weights();
/// Stationary selection by default.
MicSMPModel galanis_model(double r);
MicSMPModel galanis_model(double r, const SelectionPolicy& mu);
/// Model with mu = (m1, m2, 1 - m1 - m2) and r = 1.
MicSMPModel galanis_neutral_model(const GalanisParams& g);
/// (a1, a2, 1 - a1 - a2) on masks (0b010, 0b100, 0b001).
InitialDistribution galanis_initial(const GalanisParams& g);

double galanis_neutral_fixation(const GalanisParams& g);

enum class GalanisCase { Case1, Case2, Case3, None };

struct GalanisClassification {
  GalanisCase kind;
  double residual;  // implicit Case3 residual; NaN when m1 == m2
};

GalanisClassification galanis_moran_condition(const GalanisParams& g);
/// Solves the implicit Case3 equation for a1.
double galanis_case3_a1(double a2, double m1, double m2);

// ---------------------------------------------------------------------------
// Complete graph with loops

/// W = (1/n) 1^T 1, uniform selection.
MicSMPModel complete_graph_model(int n, double r);
/// max over transient x of |p+(x) - p+(j)| and |p-(x) - p-(j)| against the
/// classic Moran birth-death transitions.
double classic_moran_check(int n, double r);

// ---------------------------------------------------------------------------
// Random test families

/// Row-normalised random matrix on a random digraph that contains a
/// Hamiltonian cycle, so always strongly connected. Some vertices get loops.
Eigen::MatrixXd random_stochastic_matrix(int n, std::mt19937_64& rng);
/// Alternating row/column normalisation of a positive random matrix,
/// 500 rounds or until both margins are within 1e-12 of one.
Eigen::MatrixXd random_bistochastic_matrix(int n, std::mt19937_64& rng);
/// Strictly positive Dirichlet(1, ..., 1) draw.
Eigen::RowVectorXd random_policy(int n, std::mt19937_64& rng);

}  // namespace micsmp
