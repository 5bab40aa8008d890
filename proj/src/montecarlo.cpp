#include "micsmp/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "micsmp/error.hpp"

namespace micsmp {

namespace {

std::uint64_t splitmix64(std::uint64_t z) noexcept {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Configuration draw_initial(const InitialDistribution& alpha, std::mt19937_64& rng) {
  const auto& atoms = alpha.atoms();
  if (atoms.size() == 1) return atoms.front().x;
  const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  double acc = 0.0;
  for (const auto& atom : atoms) {
    acc += atom.weight;
    if (u < acc) return atom.x;
  }
  return atoms.back().x;
}

}  // namespace

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632BE59BD9B4E019ULL));
}

TrajectoryResult simulate_trajectory(const MicSMPModel& model, Configuration x0,
                                     const TrajectoryConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  return simulate_trajectory(model, x0, cfg, rng);
}

TrajectoryResult simulate_trajectory(const MicSMPModel& model, Configuration x0,
                                     const TrajectoryConfig& cfg,
                                     std::mt19937_64& rng) {
  if (x0.n != model.n()) {
    throw Error(ErrorCode::InvalidArgument, "start configuration has wrong n");
  }
  if (x0.is_absorbing()) {
    throw Error(ErrorCode::AbsorbingStart,
                "trajectory cannot start in absorbing mask " + std::to_string(x0.bits));
  }
  if (cfg.max_steps < 1) {
    throw Error(ErrorCode::InvalidArgument, "max_steps must be >= 1");
  }
  const Mask full = Configuration::full_mask(x0.n);
  Configuration x = x0;
  long steps = 0;
  while (!x.is_absorbing()) {
    if (steps >= cfg.max_steps) return {Outcome::Censored, steps};
    ++steps;
    const StepDistribution step = step_distribution(x, model);
    double moving = 0.0;
    for (const auto& t : step.transitions) moving += t.probability;
    if (!(moving > 0.0)) {
      // Frozen transient state; can only happen with degenerate policies.
      if (cfg.mode == SimulationMode::EventDriven) {
        return {Outcome::Censored, steps};
      }
      continue;
    }
    const double span = cfg.mode == SimulationMode::EventDriven ? moving : 1.0;
    const double u = std::uniform_real_distribution<double>(0.0, span)(rng);
    if (u >= moving) continue;  // idle step
    double acc = 0.0;
    Configuration next = step.transitions.back().target;
    for (const auto& t : step.transitions) {
      acc += t.probability;
      if (u < acc) {
        next = t.target;
        break;
      }
    }
    x = next;
  }
  return {x.bits == full ? Outcome::Fixation : Outcome::Extinction, steps};
}

int default_worker_count() {
  if (const char* env = std::getenv("MICSMP_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

SimulationResult estimate_fixation(const MicSMPModel& model,
                                   const InitialDistribution& alpha, long trials,
                                   const TrajectoryConfig& cfg, int workers) {
  if (trials < 1) {
    throw Error(ErrorCode::InvalidArgument, "trials must be >= 1");
  }
  if (alpha.n() != model.n()) {
    throw Error(ErrorCode::InvalidArgument,
                "initial distribution and model disagree on n");
  }
  if (workers <= 0) workers = default_worker_count();
  workers = static_cast<int>(std::min<long>(workers, trials));

  std::atomic<long> fixations{0};
  std::atomic<long> extinctions{0};
  std::atomic<long> censored{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto run_range = [&](long first, long last) {
    try {
      long fix = 0, ext = 0, cen = 0;
      for (long k = first; k < last; ++k) {
        std::mt19937_64 rng(trial_seed(cfg.seed, static_cast<std::uint64_t>(k)));
        const Configuration x0 = draw_initial(alpha, rng);
        switch (simulate_trajectory(model, x0, cfg, rng).outcome) {
          case Outcome::Fixation: ++fix; break;
          case Outcome::Extinction: ++ext; break;
          case Outcome::Censored: ++cen; break;
        }
      }
      fixations += fix;
      extinctions += ext;
      censored += cen;
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  };

  if (workers == 1) {
    run_range(0, trials);
  } else {
    std::vector<std::jthread> pool;
    const long chunk = (trials + workers - 1) / workers;
    for (long first = 0; first < trials; first += chunk) {
      pool.emplace_back(run_range, first, std::min(trials, first + chunk));
    }
  }
  if (failure) std::rethrow_exception(failure);

  SimulationResult result;
  result.trials = trials;
  result.fixations = fixations;
  result.extinctions = extinctions;
  result.censored = censored;
  result.seed = cfg.seed;
  const long decided = trials - result.censored;
  if (decided > 0) {
    result.frequency = static_cast<double>(result.fixations) / decided;
    result.ci_halfwidth =
        3.0 * std::sqrt(result.frequency * (1.0 - result.frequency) / decided);
  } else {
    result.frequency = std::numeric_limits<double>::quiet_NaN();
    result.ci_halfwidth = std::numeric_limits<double>::quiet_NaN();
  }
  return result;
}

}  // namespace micsmp
