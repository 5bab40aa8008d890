#include "micsmp/dynamics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "micsmp/error.hpp"

namespace micsmp {

MicSMPModel::MicSMPModel(WeightMatrix w, SelectionPolicy mu, double r)
    : w_(std::move(w)), mu_(std::move(mu)), r_(r) {
  if (!std::isfinite(r) || r <= 0.0) {
    throw Error(ErrorCode::InvalidArgument, "fitness r must be positive");
  }
  if (mu_.n() != w_.n()) {
    throw Error(ErrorCode::InvalidArgument,
                "selection policy length does not match W");
  }
}

MicSMPModel MicSMPModel::stationary(WeightMatrix w, double r) {
  SelectionPolicy pi = SelectionPolicy::stationary(w);
  return MicSMPModel(std::move(w), std::move(pi), r);
}

Eigen::MatrixXd MicSMPModel::weighted_matrix() const {
  return mu_.values().transpose().asDiagonal() * w_.matrix();
}

bool MicSMPModel::has_stationary_selection(double tol) const {
  const Eigen::RowVectorXd& mu = mu_.values();
  return (mu * w_.matrix() - mu).cwiseAbs().maxCoeff() <= tol;
}

double StepDistribution::mass_to_level(int level) const {
  double sum = 0.0;
  for (const auto& t : transitions) {
    if (canonical_level(t.target) == level) sum += t.probability;
  }
  return sum;
}

double zeta(Configuration x, const SelectionPolicy& mu) {
  double z = 0.0;
  for (int v = 0; v < x.n; ++v) {
    if (x.is_mutant(v)) z += mu[v];
  }
  return z;
}

namespace {

double selection_normaliser(Configuration x, const MicSMPModel& model) {
  return 1.0 + (model.fitness() - 1.0) * zeta(x, model.policy());
}

// sum over v with type `from_mutant`, u with the other type, of mu_v W(v, u).
double cross_flow(Configuration x, const MicSMPModel& model, bool from_mutant) {
  const auto& w = model.weights();
  const auto& mu = model.policy();
  double total = 0.0;
  for (int v = 0; v < x.n; ++v) {
    if (x.is_mutant(v) != from_mutant) continue;
    double row = 0.0;
    for (int u = 0; u < x.n; ++u) {
      if (x.is_mutant(u) != from_mutant) row += w(v, u);
    }
    total += mu[v] * row;
  }
  return total;
}

}  // namespace

double p_plus(Configuration x, const MicSMPModel& model) {
  if (x.is_absorbing()) return 0.0;
  return model.fitness() / selection_normaliser(x, model) *
         cross_flow(x, model, true);
}

double p_minus(Configuration x, const MicSMPModel& model) {
  if (x.is_absorbing()) return 0.0;
  return cross_flow(x, model, false) / selection_normaliser(x, model);
}

StepDistribution step_distribution(Configuration x, const MicSMPModel& model) {
  StepDistribution out;
  out.source = x;
  if (x.is_absorbing()) return out;

  const int n = x.n;
  const double r = model.fitness();
  const double norm = selection_normaliser(x, model);
  const auto& w = model.weights();
  const auto& mu = model.policy();

  std::vector<double> flip(n, 0.0);
  double idle = 0.0;
  for (int v = 0; v < n; ++v) {
    const bool mutant = x.is_mutant(v);
    const double s = (mutant ? r * mu[v] : mu[v]) / norm;
    for (int u = 0; u < n; ++u) {
      const double mass = s * w(v, u);
      if (u == v || x.is_mutant(u) == mutant) {
        idle += mass;
      } else {
        flip[u] += mass;
      }
    }
  }
  out.idle_probability = idle;
  for (int u = 0; u < n; ++u) {
    if (flip[u] > 0.0) {
      out.transitions.push_back({{x.bits ^ (Mask{1} << u), n}, flip[u]});
    }
  }
  std::sort(out.transitions.begin(), out.transitions.end(),
            [](const Transition& a, const Transition& b) {
              return a.target.bits < b.target.bits;
            });
  return out;
}

double TransitionKernel::operator()(Mask from, Mask to) const {
  if (const auto* d = std::get_if<Dense>(&storage_)) {
    return d->values[std::size_t{from} * size() + to];
  }
  const auto& s = std::get<Sparse>(storage_);
  const auto first = s.columns.begin() + static_cast<std::ptrdiff_t>(s.row_start[from]);
  const auto last = s.columns.begin() + static_cast<std::ptrdiff_t>(s.row_start[from + 1]);
  const auto it = std::lower_bound(first, last, to);
  if (it == last || *it != to) return 0.0;
  return s.values[static_cast<std::size_t>(it - s.columns.begin())];
}

std::vector<TransitionKernel::Entry> TransitionKernel::row(Mask from) const {
  std::vector<Entry> out;
  for_each_in_row(from, [&](Mask to, double p) { out.push_back({to, p}); });
  return out;
}

TransitionKernel transition_kernel(const MicSMPModel& model, int max_vertices) {
  const int n = model.n();
  const int bound = std::min(max_vertices, kMaxVertices);
  if (n > bound) {
    throw Error(ErrorCode::TooLarge, "kernel for n = " + std::to_string(n) +
                                         " exceeds bound " + std::to_string(bound));
  }
  TransitionKernel kernel;
  kernel.n_ = n;
  const std::size_t states = std::size_t{1} << n;

  // Row entries with the diagonal merged in, ascending by target.
  auto row_entries = [&](Mask x) {
    std::vector<TransitionKernel::Entry> row;
    const StepDistribution step = step_distribution({x, n}, model);
    bool placed = false;
    for (const auto& t : step.transitions) {
      if (!placed && t.target.bits > x) {
        row.push_back({x, step.idle_probability});
        placed = true;
      }
      row.push_back({t.target.bits, t.probability});
    }
    if (!placed) row.push_back({x, step.idle_probability});
    return row;
  };

  if (n <= kMaxDenseVertices) {
    TransitionKernel::Dense dense;
    dense.values.assign(states * states, 0.0);
    for (Mask x = 0; x < states; ++x) {
      for (const auto& e : row_entries(x)) dense.values[x * states + e.to] = e.probability;
    }
    kernel.storage_ = std::move(dense);
  } else {
    TransitionKernel::Sparse sparse;
    sparse.row_start.reserve(states + 1);
    sparse.row_start.push_back(0);
    for (Mask x = 0; x < states; ++x) {
      for (const auto& e : row_entries(x)) {
        sparse.columns.push_back(e.to);
        sparse.values.push_back(e.probability);
      }
      sparse.row_start.push_back(sparse.columns.size());
    }
    kernel.storage_ = std::move(sparse);
  }
  return kernel;
}

}  // namespace micsmp
