#pragma once

// One-step law of the microscopic spatial Moran process: a vertex v is
// selected with probability proportional to mu(v) (times r if v is a
// mutant), then copies its type onto u ~ W(v, .).

#include <optional>
#include <variant>
#include <vector>

#include "micsmp/population_graph.hpp"

namespace micsmp {

class MicSMPModel {
 public:
  /// Throws InvalidArgument if r is not positive and finite or mu has the
  /// wrong length.
  MicSMPModel(WeightMatrix w, SelectionPolicy mu, double r);

  /// mu := stationary_distribution(w).
  static MicSMPModel stationary(WeightMatrix w, double r);

  const WeightMatrix& weights() const noexcept { return w_; }
  const SelectionPolicy& policy() const noexcept { return mu_; }
  double fitness() const noexcept { return r_; }
  int n() const noexcept { return w_.n(); }

  /// diag(mu) W.
  Eigen::MatrixXd weighted_matrix() const;

  /// ||mu W - mu||_inf <= tol.
  bool has_stationary_selection(double tol = kDefaultTolerance) const;

 private:
  WeightMatrix w_;
  SelectionPolicy mu_;
  double r_;
};

struct Transition {
  Configuration target;
  double probability = 0.0;
};

struct StepDistribution {
  Configuration source;
  /// Ascending by target mask; every target differs from source in one bit.
  std::vector<Transition> transitions;
  double idle_probability = 1.0;

  double mass_to_level(int level) const;
};

/// Probability of selecting a mutant vertex, x mu^T.
double zeta(Configuration x, const SelectionPolicy& mu);

/// Probability that the mutant count grows by one from x.
double p_plus(Configuration x, const MicSMPModel& model);
/// Probability that the mutant count shrinks by one from x.
double p_minus(Configuration x, const MicSMPModel& model);

/// Enumerates (v, u) pairs in ascending order and aggregates their mass per
/// target. Self-replacements and same-type copies are idle.
StepDistribution step_distribution(Configuration x, const MicSMPModel& model);

/// 2^n x 2^n transition matrix indexed by mask. Dense for n <= 12, compressed
/// rows (diagonal included) above that.
class TransitionKernel {
 public:
  struct Entry {
    Mask to;
    double probability;
  };

  int n() const noexcept { return n_; }
  std::size_t size() const noexcept { return std::size_t{1} << n_; }
  bool is_dense() const noexcept {
    return std::holds_alternative<Dense>(storage_);
  }

  double operator()(Mask from, Mask to) const;
  /// Nonzero entries of a row, ascending by target.
  std::vector<Entry> row(Mask from) const;

  template <typename Fn>
  void for_each_in_row(Mask from, Fn&& fn) const {
    if (const auto* d = std::get_if<Dense>(&storage_)) {
      const std::size_t base = std::size_t{from} * size();
      for (Mask to = 0; to < size(); ++to) {
        if (double p = d->values[base + to]; p != 0.0) fn(to, p);
      }
    } else {
      const auto& s = std::get<Sparse>(storage_);
      for (std::size_t k = s.row_start[from]; k < s.row_start[from + 1]; ++k) {
        fn(s.columns[k], s.values[k]);
      }
    }
  }

 private:
  friend TransitionKernel transition_kernel(const MicSMPModel&, int);

  struct Dense {
    std::vector<double> values;
  };
  struct Sparse {
    std::vector<std::size_t> row_start;
    std::vector<Mask> columns;
    std::vector<double> values;
  };

  int n_ = 0;
  std::variant<Dense, Sparse> storage_;
};

/// Assembles the kernel row by row from step_distribution. Throws TooLarge
/// when n exceeds max_vertices (capped at 20).
TransitionKernel transition_kernel(const MicSMPModel& model,
                                   int max_vertices = kMaxVertices);

}  // namespace micsmp
