#pragma once

// Weighted population graphs, their stationary distribution and the
// bitmask representation of mutant configurations.

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace micsmp {

using Mask = std::uint32_t;

/// Hard limit on vertex count: 2^20 configurations.
inline constexpr int kMaxVertices = 20;
/// Largest n for which kernels are stored and solved densely.
inline constexpr int kMaxDenseVertices = 12;
inline constexpr double kDefaultTolerance = 1e-12;

struct ValidationOptions {
  double tolerance = kDefaultTolerance;
  /// If > 0, reject matrices with more vertices than this (exact-solver use).
  int max_vertices = kMaxVertices;
};

/// Row-stochastic, strongly connected weight matrix W of a population graph.
/// Entry (v, u) is the probability that an offspring of v replaces u.
class WeightMatrix {
 public:
  int n() const noexcept { return static_cast<int>(w_.rows()); }
  double operator()(int from, int to) const { return w_(from, to); }
  const Eigen::MatrixXd& matrix() const noexcept { return w_; }

 private:
  friend WeightMatrix validate_weight_matrix(const Eigen::MatrixXd&,
                                            const ValidationOptions&);
  explicit WeightMatrix(Eigen::MatrixXd w) : w_(std::move(w)) {}
  Eigen::MatrixXd w_;
};

/// Checks squareness, n >= 2, entries in [0, 1], row sums and strong
/// connectivity of the off-diagonal support. Self-loops are allowed.
WeightMatrix validate_weight_matrix(const Eigen::MatrixXd& raw,
                                    const ValidationOptions& opts = {});
WeightMatrix validate_weight_matrix(
    const std::vector<std::vector<double>>& rows,
    const ValidationOptions& opts = {});

/// Strong connectivity of {(v, u) : W(v, u) > 0, v != u}.
bool is_strongly_connected(const Eigen::MatrixXd& w);

/// Unique positive left eigenvector of W for eigenvalue 1, normalised.
class StationaryDistribution {
 public:
  const Eigen::RowVectorXd& values() const noexcept { return pi_; }
  double operator[](int v) const { return pi_(v); }
  int n() const noexcept { return static_cast<int>(pi_.size()); }

 private:
  friend StationaryDistribution stationary_distribution(const WeightMatrix&);
  explicit StationaryDistribution(Eigen::RowVectorXd pi) : pi_(std::move(pi)) {}
  Eigen::RowVectorXd pi_;
};

/// Solves {pi W = pi, sum(pi) = 1} directly. Throws NumericalFailure if the
/// fixed-point residual exceeds 1e-12.
StationaryDistribution stationary_distribution(const WeightMatrix& w);

/// W is bistochastic (column sums equal one).
bool is_isothermal(const WeightMatrix& w, double tol = kDefaultTolerance);

/// Probability distribution over vertices used to pick the reproducing
/// individual.
class SelectionPolicy {
 public:
  static SelectionPolicy from_values(std::span<const double> mu,
                                     double tol = kDefaultTolerance);
  static SelectionPolicy from_values(const Eigen::RowVectorXd& mu,
                                     double tol = kDefaultTolerance);
  static SelectionPolicy uniform(int n);
  static SelectionPolicy stationary(const WeightMatrix& w);

  const Eigen::RowVectorXd& values() const noexcept { return mu_; }
  double operator[](int v) const { return mu_(v); }
  int n() const noexcept { return static_cast<int>(mu_.size()); }

 private:
  explicit SelectionPolicy(Eigen::RowVectorXd mu) : mu_(std::move(mu)) {}
  Eigen::RowVectorXd mu_;
};

/// Mutant configuration; bit v set means vertex v (0-based) holds a mutant.
struct Configuration {
  Mask bits = 0;
  int n = 0;

  static Configuration all_ones(int n) { return {full_mask(n), n}; }
  static Configuration all_zeros(int n) { return {0, n}; }
  static constexpr Mask full_mask(int n) {
    return n >= 32 ? ~Mask{0} : (Mask{1} << n) - 1;
  }

  bool is_mutant(int v) const noexcept { return (bits >> v) & 1U; }
  bool is_absorbing() const noexcept { return bits == 0 || bits == full_mask(n); }
  Configuration complement() const noexcept { return {~bits & full_mask(n), n}; }

  friend bool operator==(const Configuration&, const Configuration&) = default;
};

/// Checks bits < 2^n and 1 <= n <= kMaxVertices.
Configuration make_configuration(Mask bits, int n);

/// Number of mutants, x 1^T.
int canonical_level(Configuration x) noexcept;

/// All C(n, j) configurations with j mutants, ascending by mask.
std::vector<Configuration> enumerate_level(int n, int j);

}  // namespace micsmp
