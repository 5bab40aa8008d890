#include "micsmp/population_graph.hpp"

#include <bit>
#include <cmath>
#include <sstream>

#include <Eigen/Dense>

#include "micsmp/error.hpp"

namespace micsmp {

namespace {

// Forward and backward reachability from vertex 0 over off-diagonal support.
bool reaches_all(const Eigen::MatrixXd& w, bool transpose) {
  const int n = static_cast<int>(w.rows());
  std::vector<char> seen(n, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int u = 0; u < n; ++u) {
      if (u == v || seen[u]) continue;
      const double weight = transpose ? w(u, v) : w(v, u);
      if (weight > 0.0) {
        seen[u] = 1;
        ++count;
        stack.push_back(u);
      }
    }
  }
  return count == n;
}

}  // namespace

bool is_strongly_connected(const Eigen::MatrixXd& w) {
  if (w.rows() == 0) return false;
  return reaches_all(w, false) && reaches_all(w, true);
}

WeightMatrix validate_weight_matrix(const Eigen::MatrixXd& raw,
                                    const ValidationOptions& opts) {
  if (raw.rows() != raw.cols()) {
    throw Error(ErrorCode::InvalidArgument, "weight matrix must be square");
  }
  const int n = static_cast<int>(raw.rows());
  if (n < 2) {
    throw Error(ErrorCode::InvalidArgument, "weight matrix needs n >= 2");
  }
  const int bound = opts.max_vertices > 0 ? std::min(opts.max_vertices, kMaxVertices)
                                          : kMaxVertices;
  if (n > bound) {
    throw Error(ErrorCode::TooLarge, "n = " + std::to_string(n) +
                                         " exceeds the supported bound " +
                                         std::to_string(bound));
  }
  for (int v = 0; v < n; ++v) {
    double sum = 0.0;
    for (int u = 0; u < n; ++u) {
      const double x = raw(v, u);
      if (!std::isfinite(x) || x < 0.0 || x > 1.0) {
        std::ostringstream msg;
        msg << "entry (" << v << ", " << u << ") = " << x << " is not in [0, 1]";
        throw Error(ErrorCode::NotStochastic, msg.str());
      }
      sum += x;
    }
    if (std::abs(sum - 1.0) > opts.tolerance) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "row " << v << " sums to " << sum;
      throw Error(ErrorCode::NotStochastic, msg.str());
    }
  }
  if (!is_strongly_connected(raw)) {
    throw Error(ErrorCode::NotStronglyConnected,
                "off-diagonal support of W is not strongly connected");
  }
  return WeightMatrix(raw);
}

WeightMatrix validate_weight_matrix(const std::vector<std::vector<double>>& rows,
                                    const ValidationOptions& opts) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  Eigen::MatrixXd raw(n, n);
  for (Eigen::Index v = 0; v < n; ++v) {
    if (static_cast<Eigen::Index>(rows[v].size()) != n) {
      throw Error(ErrorCode::InvalidArgument, "weight matrix must be square");
    }
    for (Eigen::Index u = 0; u < n; ++u) raw(v, u) = rows[v][u];
  }
  return validate_weight_matrix(raw, opts);
}

StationaryDistribution stationary_distribution(const WeightMatrix& w) {
  const int n = w.n();
  // (W^T - I) pi^T = 0 with the last balance row replaced by sum(pi) = 1.
  Eigen::MatrixXd a = w.matrix().transpose() - Eigen::MatrixXd::Identity(n, n);
  a.row(n - 1).setOnes();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
  rhs(n - 1) = 1.0;
  Eigen::RowVectorXd pi = a.colPivHouseholderQr().solve(rhs).transpose();
  pi /= pi.sum();

  const double residual = (pi * w.matrix() - pi).cwiseAbs().maxCoeff();
  if (!(residual <= kDefaultTolerance) || !(pi.minCoeff() > 0.0)) {
    std::ostringstream msg;
    msg << "stationary solve failed (residual " << residual << ")";
    throw Error(ErrorCode::NumericalFailure, msg.str());
  }
  return StationaryDistribution(std::move(pi));
}

bool is_isothermal(const WeightMatrix& w, double tol) {
  const Eigen::VectorXd cols = w.matrix().colwise().sum().transpose();
  return (cols.array() - 1.0).abs().maxCoeff() <= tol;
}

SelectionPolicy SelectionPolicy::from_values(std::span<const double> mu,
                                             double tol) {
  Eigen::RowVectorXd v(static_cast<Eigen::Index>(mu.size()));
  for (std::size_t i = 0; i < mu.size(); ++i) v(static_cast<Eigen::Index>(i)) = mu[i];
  return from_values(v, tol);
}

SelectionPolicy SelectionPolicy::from_values(const Eigen::RowVectorXd& mu,
                                             double tol) {
  if (mu.size() == 0) {
    throw Error(ErrorCode::InvalidArgument, "selection policy is empty");
  }
  for (Eigen::Index i = 0; i < mu.size(); ++i) {
    if (!std::isfinite(mu(i)) || mu(i) < 0.0) {
      throw Error(ErrorCode::InvalidArgument,
                  "selection policy entries must be non-negative");
    }
  }
  if (std::abs(mu.sum() - 1.0) > tol) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "selection policy sums to " << mu.sum();
    throw Error(ErrorCode::InvalidArgument, msg.str());
  }
  return SelectionPolicy(mu);
}

SelectionPolicy SelectionPolicy::uniform(int n) {
  return SelectionPolicy(Eigen::RowVectorXd::Constant(n, 1.0 / n));
}

SelectionPolicy SelectionPolicy::stationary(const WeightMatrix& w) {
  return SelectionPolicy(stationary_distribution(w).values());
}

Configuration make_configuration(Mask bits, int n) {
  if (n < 1 || n > kMaxVertices) {
    throw Error(ErrorCode::InvalidArgument, "vertex count out of range");
  }
  if (bits > Configuration::full_mask(n)) {
    throw Error(ErrorCode::InvalidArgument,
                "mask " + std::to_string(bits) + " has bits beyond n = " +
                    std::to_string(n));
  }
  return {bits, n};
}

int canonical_level(Configuration x) noexcept { return std::popcount(x.bits); }

std::vector<Configuration> enumerate_level(int n, int j) {
  if (n < 1 || n > kMaxVertices) {
    throw Error(ErrorCode::InvalidArgument, "vertex count out of range");
  }
  if (j < 0 || j > n) {
    throw Error(ErrorCode::LevelOutOfRange,
                "level " + std::to_string(j) + " not in [0, " +
                    std::to_string(n) + "]");
  }
  std::vector<Configuration> out;
  if (j == 0) return {Configuration{0, n}};
  // Gosper's hack walks same-popcount masks in increasing order.
  const Mask limit = Configuration::full_mask(n);
  Mask x = (Mask{1} << j) - 1;
  while (x <= limit) {
    out.push_back({x, n});
    const Mask c = x & (~x + 1);
    const Mask r = x + c;
    if (r == 0) break;
    x = (((r ^ x) >> 2) / c) | r;
  }
  return out;
}

}  // namespace micsmp
