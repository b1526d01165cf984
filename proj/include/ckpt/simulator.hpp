#ifndef CKPT_SIMULATOR_HPP
#define CKPT_SIMULATOR_HPP

#include <cstdint>
#include <string>

#include "ckpt/model.hpp"
#include "ckpt/rng.hpp"

// Monte Carlo discrete-event simulation of the periodic coordinated
// checkpointing protocol under exponentially distributed failures. The
// simulator runs the physical process (failures can strike during downtime,
// recovery and re-execution), so it is valid even where the first-order
// analytical model is not; the two are compared by validate_against_model.

namespace ckpt {
namespace sim {

struct SimConfig {
  Workload work;
  CheckpointParams ckpt;
  Platform platform;
  PowerProfile power;
  double period = 0.0;          // minutes; upper domain bound is not enforced
  std::uint64_t trials = 1;
  std::uint64_t seed = 0;
};

// One trial. total_time is the exact sum of the four phase times; energy
// accrues at a constant power per phase:
//   compute    p_static + p_cal
//   checkpoint p_static + omega * p_cal + p_io
//   downtime   p_static + p_down
//   recovery   p_static + p_io
struct SimOutcome {
  double total_time = 0.0;       // minutes
  double time_compute = 0.0;     // minutes
  double time_checkpoint = 0.0;  // minutes
  double time_down = 0.0;        // minutes
  double time_recovery = 0.0;    // minutes
  double energy = 0.0;           // mW*min
  std::uint64_t failures = 0;
};

struct BatchStats {
  double mean_time = 0.0;      // minutes
  double ci95_time = 0.0;      // 1.96 * stddev / sqrt(trials)
  double mean_energy = 0.0;    // mW*min
  double ci95_energy = 0.0;
  double mean_failures = 0.0;
  double ci95_failures = 0.0;
};

void validate(const SimConfig& config);

// Simulates one execution of the protocol: periods of T - C compute at work
// rate 1 followed by a checkpoint of length C at work rate omega. A
// checkpoint stores the state it saw when it started; progress committed by
// the last completed checkpoint is what a failure rolls back to. Failures
// follow a single exponential clock with mean platform.mtbf that keeps
// running through every phase; a failure during downtime or recovery
// restarts the downtime. The run ends the instant achieved work reaches
// t_base, with no trailing checkpoint.
SimOutcome run_trial(const SimConfig& config, SplitMix64& rng);

// `trials` independent trials on substreams trial_rng(seed, i), aggregated
// in trial-index order.
BatchStats run_batch(const SimConfig& config);

struct ValidationQuantity {
  double analytical = 0.0;
  double empirical = 0.0;
  double rel_gap = 0.0;
  double ci95 = 0.0;
  bool within_tolerance = false;
};

struct ValidationReport {
  bool analytical_valid = true;
  std::string analytical_error;  // set when the model rejects the config
  ValidationQuantity time;
  ValidationQuantity energy;
  double mean_failures = 0.0;
  double expected_failures = 0.0;  // empirical mean_time / mu
  double ci95_failures = 0.0;
  double tolerance = 0.0;          // relative
};

// Pairs the analytical t_final / E_final with batch statistics. When the
// analytical model is invalid for the config the report says so instead of
// failing; the simulation still runs.
ValidationReport validate_against_model(const SimConfig& config, double tolerance = 0.05);

}  // namespace sim
}  // namespace ckpt

#endif  // CKPT_SIMULATOR_HPP
