#pragma once

#include <cstdint>
#include <random>

#include "micsmp/exact.hpp"

namespace micsmp {

enum class SimulationMode { Faithful, EventDriven };

struct TrajectoryConfig {
  std::uint64_t seed = 0;
  long max_steps = 10'000'000;
  SimulationMode mode = SimulationMode::EventDriven;
};

enum class Outcome { Fixation, Extinction, Censored };

struct TrajectoryResult {
  Outcome outcome;
  long steps;
};

struct SimulationResult {
  long trials = 0;
  long fixations = 0;
  long extinctions = 0;
  long censored = 0;
  /// fixations / (trials - censored).
  double frequency = 0.0;
  /// 3 * sqrt(f (1 - f) / (trials - censored)).
  double ci_halfwidth = 0.0;
  std::uint64_t seed = 0;
};

/// Independent 64-bit stream seed for trial `index`.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t index) noexcept;

/// Runs one trajectory from x0 with an engine seeded from cfg.seed.
/// Throws AbsorbingStart if x0 is absorbing.
TrajectoryResult simulate_trajectory(const MicSMPModel& model, Configuration x0,
                                     const TrajectoryConfig& cfg);
TrajectoryResult simulate_trajectory(const MicSMPModel& model, Configuration x0,
                                     const TrajectoryConfig& cfg,
                                     std::mt19937_64& rng);

/// Number of workers from MICSMP_THREADS, else hardware concurrency.
int default_worker_count();

/// Trial k draws x0 ~ alpha and runs a trajectory, both from the stream
/// trial_seed(cfg.seed, k); results do not depend on `workers`.
SimulationResult estimate_fixation(const MicSMPModel& model,
                                   const InitialDistribution& alpha, long trials,
                                   const TrajectoryConfig& cfg, int workers = 0);

}  // namespace micsmp
