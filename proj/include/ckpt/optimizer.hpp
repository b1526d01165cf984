#ifndef CKPT_OPTIMIZER_HPP
#define CKPT_OPTIMIZER_HPP

#include "ckpt/model.hpp"

// Optimal checkpoint periods for the two objectives. The time-optimal
// period has a closed form; the energy-optimal period is the in-domain root
// of a quadratic in T that equals K(T) * dE/dT, obtained by exact
// interpolation of numerically differentiated samples. A golden-section
// minimizer over the period domain serves as the independent oracle and is
// the source of truth whenever the two disagree.

namespace ckpt {

// Coefficients of q2*T^2 + q1*T + q0 = K(T) * E'(T) with
// K(T) = (T-a)^2 (b - T/(2 mu))^2 / (p_static * t_base).
struct QuadraticCoefficients {
  double q2 = 0.0;
  double q1 = 0.0;
  double q0 = 0.0;
};

struct OptimalPeriod {
  double period = 0.0;           // minutes, inside the period domain
  double objective_value = 0.0;  // t_final (minutes) or E_final (mW*min)
  bool clamped = false;   // unconstrained optimum fell below C
  bool fallback = false;  // quadratic route unusable or overruled by the oracle
};

struct ReferencePeriods {
  double young = 0.0;  // sqrt(2 C mu) + C
  double daly = 0.0;   // sqrt(2 C (mu + D + R)) + C
};

// AlgoT checkpoints with the time-optimal period, AlgoE with the
// energy-optimal one; the two ratios quantify the trade-off between them.
struct StrategyComparison {
  OptimalPeriod time_opt;
  OptimalPeriod energy_opt;
  double t_algo_t = 0.0;      // minutes
  double t_algo_e = 0.0;      // minutes
  double e_algo_t = 0.0;      // mW*min
  double e_algo_e = 0.0;      // mW*min
  double time_ratio = 0.0;    // t_algo_e / t_algo_t, >= 1
  double energy_ratio = 0.0;  // e_algo_t / e_algo_e, >= 1
};

// sqrt(2 (1-omega) C (mu - (D + R + omega C))), clamped to C from below.
// Throws ModelError for an infinite MTBF (no finite optimum exists; with
// omega = 1 every period is optimal) or when the model is invalid.
OptimalPeriod optimal_period_time(const CheckpointParams& ckpt, const Platform& platform,
                                  const Workload& work = Workload{1.0});

// Quadratic through three samples of K(T) * E'(T), with E' from a 5-point
// central difference (h = max(1e-4, 1e-6 T)). A fourth sample must match
// the fit to 1e-6 of the sample scale or ModelError("not quadratic") is
// thrown. The samples are evaluated with p_static-normalized powers, so the
// coefficients are invariant under scaling the whole PowerProfile.
QuadraticCoefficients quadratic_coefficients(const CheckpointParams& ckpt,
                                             const Platform& platform,
                                             const PowerProfile& power);

// Closed form of the same coefficients, derived by expanding K(T) * E'(T).
QuadraticCoefficients quadratic_coefficients_symbolic(const CheckpointParams& ckpt,
                                                      const Platform& platform,
                                                      const PowerProfile& power);

// In-domain root of the fitted quadratic (smaller E_final when two roots
// qualify), clamped to C from below. Falls back to numeric_argmin_energy,
// with the fallback flag set, when no usable root exists or the root
// disagrees with the oracle by more than 0.5% in period.
OptimalPeriod optimal_period_energy(const CheckpointParams& ckpt, const Platform& platform,
                                    const PowerProfile& power, const Workload& work);

// Golden-section search over the period domain to 1e-4 min, after a
// 1000-point scan that checks unimodality and brackets the minimum. If the
// scan sees several local minima the global grid minimum is returned with
// the fallback flag set. Throws ModelError for an infinite MTBF (energy
// only decreases as T grows; there is no interior optimum).
OptimalPeriod numeric_argmin_energy(const CheckpointParams& ckpt, const Platform& platform,
                                    const PowerProfile& power, const Workload& work);

ReferencePeriods reference_periods(const CheckpointParams& ckpt, const Platform& platform);

StrategyComparison compare_strategies(const CheckpointParams& ckpt, const Platform& platform,
                                      const PowerProfile& power, const Workload& work);

}  // namespace ckpt

#endif  // CKPT_OPTIMIZER_HPP
