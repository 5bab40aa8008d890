#pragma once

// Test-only oracles, kept independent of the library's code paths.

#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "micsmp/population_graph.hpp"

namespace micsmp::testing {

/// Brute-force one-step law: enumerate every (selected, replaced) vertex
/// pair, build the resulting configuration, and accumulate its probability.
inline std::vector<double> brute_force_step(const Eigen::MatrixXd& w,
                                            const Eigen::RowVectorXd& mu, double r,
                                            unsigned x) {
  const int n = static_cast<int>(w.rows());
  std::vector<double> out(std::size_t{1} << n, 0.0);
  double total_weight = 0.0;
  for (int v = 0; v < n; ++v) total_weight += ((x >> v) & 1U ? r : 1.0) * mu(v);
  for (int v = 0; v < n; ++v) {
    const bool mutant = (x >> v) & 1U;
    const double pick = (mutant ? r : 1.0) * mu(v) / total_weight;
    for (int u = 0; u < n; ++u) {
      const unsigned y = mutant ? (x | (1U << u)) : (x & ~(1U << u));
      out[y] += pick * w(v, u);
    }
  }
  return out;
}

/// Fixation probabilities by plain power iteration of the full kernel,
/// starting from the indicator of the all-mutant state.
inline std::vector<double> power_iteration_rho(const Eigen::MatrixXd& p, int sweeps) {
  const auto size = p.rows();
  Eigen::VectorXd h = Eigen::VectorXd::Zero(size);
  h(size - 1) = 1.0;
  for (int k = 0; k < sweeps; ++k) h = p * h;
  return {h.data(), h.data() + size};
}

/// Classic Moran fixation probability as r^(n-i) sum_{k<i} r^k / sum_{k<n} r^k,
/// which has no cancellation near r = 1.
inline long double moran_reference(int i, int n, long double r) {
  long double num = 0.0L, den = 0.0L, power = 1.0L;
  for (int k = 0; k < n; ++k) {
    if (k < i) num += power;
    den += power;
    power *= r;
  }
  return std::pow(r, static_cast<long double>(n - i)) * num / den;
}

inline Eigen::MatrixXd three_vertex_matrix(double w12, double w13, double w21,
                                           double w23, double w31, double w32) {
  Eigen::MatrixXd w(3, 3);
  w << 1 - w12 - w13, w12, w13,
       w21, 1 - w21 - w23, w23,
       w31, w32, 1 - w31 - w32;
  return w;
}

}  // namespace micsmp::testing
