#include <doctest.h>

#include <random>

#include "micsmp/analysis.hpp"
#include "micsmp/error.hpp"
#include "micsmp/exact.hpp"
#include "test_support.hpp"

using namespace micsmp;

namespace {

MicSMPModel random_model(int n, std::mt19937_64& rng, double r, bool stationary) {
  auto w = validate_weight_matrix(random_stochastic_matrix(n, rng));
  if (stationary) return MicSMPModel::stationary(std::move(w), r);
  return MicSMPModel(std::move(w), SelectionPolicy::from_values(random_policy(n, rng)), r);
}

Eigen::MatrixXd dense_kernel(const MicSMPModel& model) {
  const auto kernel = transition_kernel(model);
  Eigen::MatrixXd p(kernel.size(), kernel.size());
  for (Mask i = 0; i < kernel.size(); ++i)
    for (Mask j = 0; j < kernel.size(); ++j) p(i, j) = kernel(i, j);
  return p;
}

}  // namespace

TEST_CASE("moran_rho examples") {
  for (int n = 2; n <= 10; ++n)
    for (int i = 0; i <= n; ++i) CHECK(moran_rho(i, n, 1.0) == doctest::Approx(double(i) / n));
  for (double r : {0.25, 0.5, 2.0, 10.0}) CHECK(moran_rho(1, 2, r) == doctest::Approx(r / (r + 1)));
  CHECK(moran_rho(1, 3, 2.0) == doctest::Approx(4.0 / 7).epsilon(1e-15));
  CHECK(moran_rho(1, 5, 2.0) == doctest::Approx(16.0 / 31).epsilon(1e-15));
}

TEST_CASE("moran_rho is accurate near neutrality") {
  for (double r : {1.0 + 1e-9, 1.0 - 1e-9, 1.0 + 1e-6, 1.0 + 1e-3, 0.999, 5.0}) {
    for (int n : {2, 5, 12}) {
      for (int i = 1; i < n; ++i) {
        const long double ref = micsmp::testing::moran_reference(i, n, r);
        CHECK(std::abs(moran_rho(i, n, r) - static_cast<double>(ref)) <= 1e-12);
      }
    }
  }
}

TEST_CASE("fixation on Galanis at neutrality") {
  const auto report = fixation_probabilities(galanis_model(1.0));
  for (const auto& x : enumerate_level(3, 1)) CHECK(std::abs(report.at(x) - 1.0 / 3) <= 1e-12);
  for (const auto& x : enumerate_level(3, 2)) CHECK(std::abs(report.at(x) - 2.0 / 3) <= 1e-12);
  CHECK(report.rho.front() == 0.0);
  CHECK(report.rho.back() == 1.0);
  CHECK(report.solver.kind == SolverKind::Dense);
}

TEST_CASE("exact solver agrees with power iteration") {
  std::mt19937_64 rng(41);
  for (int k = 0; k < 10; ++k) {
    const int n = 2 + k % 3;
    const auto model = random_model(n, rng, 0.7 + 0.3 * k, false);
    const auto oracle = micsmp::testing::power_iteration_rho(dense_kernel(model), 200000);
    const auto report = fixation_probabilities(model);
    for (std::size_t i = 0; i < oracle.size(); ++i) CHECK(std::abs(report.rho[i] - oracle[i]) <= 1e-10);
  }
}

TEST_CASE("stationary selection gives Moran fixation") {
  std::mt19937_64 rng(43);
  for (int k = 0; k < 12; ++k) {
    const int n = 2 + k % 7;
    for (double r : {0.5, 1.0, 2.0}) {
      const auto model = random_model(n, rng, r, true);
      const auto report = fixation_probabilities(model);
      for (Mask bits = 1; bits + 1 < report.rho.size(); ++bits) {
        CHECK(std::abs(report.rho[bits] - moran_rho(std::popcount(bits), n, r)) <= 1e-9);
      }
      for (const auto& [level, dev] : report.per_level_deviation) {
        CHECK(level > 0);
        CHECK(level < n);
        CHECK(dev <= 1e-9);
      }
    }
  }
}

TEST_CASE("dense and iterative solvers agree") {
  std::mt19937_64 rng(47);
  for (int k = 0; k < 14; ++k) {
    const int n = 2 + k % 7;
    const auto model = random_model(n, rng, 0.4 + 0.25 * k, false);
    const auto dense = fixation_probabilities(model, {.kind = SolverKind::Dense});
    const auto iter = fixation_probabilities(model, {.kind = SolverKind::Iterative});
    CHECK(iter.solver.kind == SolverKind::Iterative);
    CHECK(iter.solver.iterations > 0);
    for (std::size_t i = 0; i < dense.rho.size(); ++i) CHECK(std::abs(dense.rho[i] - iter.rho[i]) <= 1e-9);
  }
}

TEST_CASE("iterative solver above the dense bound") {
  std::mt19937_64 rng(53);
  const auto model = random_model(13, rng, 1.5, true);
  const auto report = fixation_probabilities(model);
  CHECK(report.solver.kind == SolverKind::Iterative);
  for (const auto& [level, dev] : report.per_level_deviation) CHECK(dev <= 1e-9);
  CHECK_THROWS_AS(fixation_probabilities(model, {.kind = SolverKind::Dense}), Error);
}

TEST_CASE("Jacobi reports non-convergence") {
  const auto model = galanis_model(1.3);
  try {
    fixation_probabilities(model, {.kind = SolverKind::Iterative, .max_sweeps = 2});
    FAIL("expected NoConvergence");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoConvergence);
  }
}

TEST_CASE("neutral complementarity") {
  std::mt19937_64 rng(59);
  for (int k = 0; k < 20; ++k) {
    const int n = 2 + k % 6;
    const auto report = fixation_probabilities(random_model(n, rng, 1.0, false));
    const Mask full = Configuration::full_mask(n);
    for (Mask bits = 0; bits <= full; ++bits)
      CHECK(std::abs(report.rho[bits] + report.rho[full ^ bits] - 1.0) <= 1e-10);
  }
}

TEST_CASE("fixation is strictly monotone in fitness under stationary selection") {
  std::mt19937_64 rng(61);
  for (int k = 0; k < 10; ++k) {
    const int n = 2 + k % 5;
    const auto w = validate_weight_matrix(random_stochastic_matrix(n, rng));
    std::vector<double> prev;
    for (double r : {0.5, 1.0, 2.0, 4.0}) {
      const auto report = fixation_probabilities(MicSMPModel::stationary(w, r));
      if (!prev.empty())
        for (std::size_t i = 1; i + 1 < prev.size(); ++i) CHECK(report.rho[i] > prev[i]);
      prev = report.rho;
    }
  }
}

TEST_CASE("initial distributions") {
  CHECK_THROWS_AS(InitialDistribution::point_mass(Configuration::all_ones(3)), Error);
  try {
    InitialDistribution::from_atoms({{Configuration::all_zeros(3), 1.0}});
    FAIL("expected AtomOnAbsorbing");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::AtomOnAbsorbing);
  }
  CHECK_THROWS_AS(InitialDistribution::from_atoms({{{0b001, 3}, 0.5}, {{0b010, 3}, 0.4}}), Error);
  CHECK_THROWS_AS(InitialDistribution::from_atoms({{{0b001, 3}, 1.5}, {{0b010, 3}, -0.5}}), Error);
  CHECK(InitialDistribution::uniform_level(4, 2).atoms().size() == 6);
  CHECK_THROWS_AS(InitialDistribution::uniform_level(4, 0), Error);
  CHECK_THROWS_AS(InitialDistribution::uniform_level(4, 4), Error);
}

TEST_CASE("fixation for an initial law") {
  for (double r : {0.5, 1.0, 3.0}) {
    const auto model = galanis_model(r);
    const auto point = InitialDistribution::point_mass({0b100, 3});
    CHECK(std::abs(fixation_for_initial(model, point) - moran_rho(1, 3, r)) <= 1e-10);
    // Mixture across levels.
    const double a = 0.3;
    const auto mix = InitialDistribution::from_atoms(
        {{{0b001, 3}, a / 2}, {{0b010, 3}, a / 2}, {{0b110, 3}, 1 - a}});
    CHECK(std::abs(fixation_for_initial(model, mix) -
                   (a * moran_rho(1, 3, r) + (1 - a) * moran_rho(2, 3, r))) <= 1e-10);
  }
  const auto uniform = MicSMPModel(validate_weight_matrix(galanis_weights()),
                                   SelectionPolicy::from_values(Eigen::RowVector3d(0.9, 0.05, 0.05)), 1.0);
  CHECK(std::abs(fixation_for_initial(uniform, InitialDistribution::uniform_level(3, 1)) - 1.0 / 3) <= 1e-10);
}

TEST_CASE("moran deviation") {
  CHECK(moran_deviation(galanis_model(2.0)).at(1) <= 1e-9);
  const auto off = MicSMPModel(validate_weight_matrix(galanis_weights()),
                               SelectionPolicy::from_values(Eigen::RowVector3d(0.6, 0.2, 0.2)), 1.0);
  const auto dev = moran_deviation(off);
  CHECK(std::max(dev.at(1), dev.at(2)) > 1e-6);
}

TEST_CASE("harmonic residual of the solution") {
  std::mt19937_64 rng(67);
  for (int k = 0; k < 10; ++k) {
    const auto model = random_model(2 + k % 6, rng, 1.8, false);
    const auto kernel = transition_kernel(model);
    const auto report = fixation_probabilities(model, kernel);
    CHECK(harmonic_residual(kernel, report.rho) <= 1e-10);
  }
}
