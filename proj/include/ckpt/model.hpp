#ifndef CKPT_MODEL_HPP
#define CKPT_MODEL_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

// Analytical model of periodic, non-blocking coordinated checkpointing.
//
// Unit conventions, fixed repo-wide: durations in minutes, power in
// milliwatts, energy in milliwatt-minutes. Unit conversions happen at the
// configuration boundary only (see config.hpp).

namespace ckpt {

inline constexpr double kInfiniteMtbf = std::numeric_limits<double>::infinity();

// Thrown when a scenario violates model validity (b <= 0, empty period
// domain) or when an operation has no defined result for the inputs.
class ModelError : public std::runtime_error {
public:
  explicit ModelError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a period T lies outside the valid PeriodDomain.
class PeriodDomainError : public ModelError {
public:
  explicit PeriodDomainError(const std::string& what) : ModelError(what) {}
};

// Checkpoint cost parameters. `c` is the checkpoint write time, `r` the
// recovery read time, `d` the downtime after a failure, and `omega` the
// slow-down factor: during a checkpoint of length c, omega*c work units
// still complete (omega=0 fully blocking, omega=1 fully overlapped).
struct CheckpointParams {
  double c = 0.0;      // minutes, > 0
  double r = 0.0;      // minutes, >= 0
  double d = 0.0;      // minutes, >= 0
  double omega = 0.0;  // dimensionless, in [0, 1]
};

// Platform power draw split by activity. p_static is the base power of the
// switched-on platform; the others are additive overheads for computation,
// file I/O, and downtime respectively.
struct PowerProfile {
  double p_static = 0.0;  // mW, > 0
  double p_cal = 0.0;     // mW, >= 0
  double p_io = 0.0;      // mW, >= 0
  double p_down = 0.0;    // mW, >= 0

  double alpha() const { return p_cal / p_static; }
  double beta() const { return p_io / p_static; }
  double gamma() const { return p_down / p_static; }
};

// Aggregate failure behaviour of the machine. The platform MTBF is
// mtbf_ind / n_nodes; kInfiniteMtbf models a failure-free platform.
struct Platform {
  std::uint64_t n_nodes = 1;
  double mtbf_ind = kInfiniteMtbf;  // minutes, per-node MTBF
  double mtbf = kInfiniteMtbf;      // minutes, platform MTBF

  static Platform from_nodes(std::uint64_t n, double mtbf_ind_min);
  static Platform with_mtbf(double mtbf_min);

  bool failure_free() const { return std::isinf(mtbf); }
};

struct Workload {
  double t_base = 0.0;  // minutes, failure-free checkpoint-free duration, > 0
};

// a = (1-omega)*C, b = 1 - (D + R + omega*C)/mu. The model is valid only
// for b > 0; b = 1 when mu is infinite.
struct ModelConstants {
  double a = 0.0;
  double b = 1.0;
};

// Expected execution time split at period T: fault-free part plus the
// expected time lost to failures.
struct TimeBreakdown {
  double period = 0.0;   // minutes
  double t_ff = 0.0;     // minutes
  double t_fails = 0.0;  // minutes
  double t_final = 0.0;  // minutes, t_ff + t_fails
};

// Expected busy times of the CPU, the I/O system, and the machine-down
// state, plus the resulting energy. t_cal + t_io + t_down equals t_final
// only for omega = 0; with overlap the CPU and I/O times double-count.
struct EnergyBreakdown {
  double t_cal = 0.0;    // minutes
  double t_io = 0.0;     // minutes
  double t_down = 0.0;   // minutes
  double e_final = 0.0;  // mW*min, filled by total_energy()
};

// Valid periods: T >= lower (= C), T < upper (= 2*mu*b, infinite for a
// failure-free platform). For omega = 0 the lower end is open since
// T = (1-omega)C leaves no work per period.
struct PeriodDomain {
  double lower = 0.0;
  double upper = kInfiniteMtbf;
  bool lower_open = false;

  bool feasible() const { return lower < upper; }
  bool contains(double t) const {
    if (lower_open ? t <= lower : t < lower) return false;
    return t < upper;
  }
};

// Full model evaluation at one period.
struct Evaluation {
  TimeBreakdown time;
  EnergyBreakdown energy;
};

ModelConstants derived_constants(const CheckpointParams& ckpt, const Platform& platform);

PeriodDomain period_domain(const CheckpointParams& ckpt, const Platform& platform);

TimeBreakdown expected_total_time(double period, const Workload& work,
                                  const CheckpointParams& ckpt, const Platform& platform);

// Busy-time part of the energy model; e_final is left at zero so callers
// can weight the times with any PowerProfile via total_energy().
EnergyBreakdown energy_breakdown(double period, const Workload& work,
                                 const CheckpointParams& ckpt, const Platform& platform,
                                 double t_final);

double total_energy(const EnergyBreakdown& breakdown, double t_final,
                    const PowerProfile& power);

Evaluation evaluate_period(double period, const Workload& work, const CheckpointParams& ckpt,
                           const Platform& platform, const PowerProfile& power);

// rho = (p_static + p_io) / (p_static + p_cal) = (1 + beta) / (1 + alpha).
double power_ratio_rho(const PowerProfile& power);

double platform_mtbf(std::uint64_t n_nodes, double mtbf_ind);

// Invariant checks used at the configuration boundary. Each throws
// std::invalid_argument naming the offending field.
void validate(const CheckpointParams& ckpt);
void validate(const PowerProfile& power);
void validate(const Platform& platform);
void validate(const Workload& work);

}  // namespace ckpt

#endif  // CKPT_MODEL_HPP
