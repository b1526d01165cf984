#include "ckpt/simulator.hpp"

#include <cmath>
#include <sstream>
#include <vector>

namespace ckpt {
namespace sim {

void validate(const SimConfig& config) {
  ckpt::validate(config.work);
  ckpt::validate(config.ckpt);
  ckpt::validate(config.platform);
  ckpt::validate(config.power);
  const double a = (1.0 - config.ckpt.omega) * config.ckpt.c;
  if (config.period < config.ckpt.c || config.period <= a) {
    std::ostringstream msg;
    msg << "run.period = " << config.period << " min violates period >= C and period > (1-omega)*C";
    throw std::invalid_argument(msg.str());
  }
  if (config.trials < 1) throw std::invalid_argument("run.trials violates trials >= 1");
}

namespace {

struct TrialState {
  double clock = 0.0;
  double next_failure = 0.0;
  double live = 0.0;       // achieved work, rolled back to `committed` on failure
  double committed = 0.0;  // work stored by the last completed checkpoint
  SimOutcome out;
};

double draw_failure_gap(const Platform& platform, SplitMix64& rng) {
  if (platform.failure_free()) return kInfiniteMtbf;
  return -platform.mtbf * std::log(rng.next_unit());
}

// Advances through one phase segment. Returns true if a failure interrupted
// it, in which case the segment ran only until the failure instant.
bool run_segment(TrialState& st, double length, double work_rate, double power_rate,
                 double& phase_time) {
  const bool failed = st.next_failure < st.clock + length;
  const double dt = failed ? st.next_failure - st.clock : length;
  st.clock += dt;
  st.live += work_rate * dt;
  phase_time += dt;
  st.out.energy += power_rate * dt;
  return failed;
}

}  // namespace

SimOutcome run_trial(const SimConfig& config, SplitMix64& rng) {
  const CheckpointParams& cp = config.ckpt;
  const PowerProfile& pw = config.power;
  const double t_base = config.work.t_base;
  const double work_eps = 1e-12 * t_base;

  const double rate_compute = pw.p_static + pw.p_cal;
  const double rate_ckpt = pw.p_static + cp.omega * pw.p_cal + pw.p_io;
  const double rate_down = pw.p_static + pw.p_down;
  const double rate_recovery = pw.p_static + pw.p_io;

  TrialState st;
  st.next_failure = draw_failure_gap(config.platform, rng);

  auto handle_failure = [&] {
    st.out.failures += 1;
    st.next_failure = st.clock + draw_failure_gap(config.platform, rng);
    st.live = st.committed;
    // Downtime restarts from scratch whenever a failure strikes it or the
    // recovery that follows.
    for (;;) {
      if (run_segment(st, cp.d, 0.0, rate_down, st.out.time_down) ||
          run_segment(st, cp.r, 0.0, rate_recovery, st.out.time_recovery)) {
        st.out.failures += 1;
        st.next_failure = st.clock + draw_failure_gap(config.platform, rng);
        continue;
      }
      return;
    }
  };

  while (t_base - st.live > work_eps) {
    // Compute part of the period, shortened if less work remains.
    const double compute_len = std::min(config.period - cp.c, t_base - st.live);
    if (run_segment(st, compute_len, 1.0, rate_compute, st.out.time_compute)) {
      handle_failure();
      continue;
    }
    if (t_base - st.live <= work_eps) break;

    // Checkpoint part; with omega > 0 the run can finish inside it.
    const double snapshot = st.live;
    double ckpt_len = cp.c;
    bool finishes_inside = false;
    if (cp.omega > 0.0 && st.live + cp.omega * cp.c >= t_base - work_eps) {
      ckpt_len = (t_base - st.live) / cp.omega;
      finishes_inside = true;
    }
    if (run_segment(st, ckpt_len, cp.omega, rate_ckpt, st.out.time_checkpoint)) {
      handle_failure();
      continue;
    }
    if (finishes_inside) break;
    if (snapshot < st.committed || snapshot > t_base + work_eps) {
      throw std::logic_error("simulator invariant broken: committed work must be "
                             "non-decreasing and bounded by t_base");
    }
    st.committed = snapshot;
  }

  st.out.total_time =
      st.out.time_compute + st.out.time_checkpoint + st.out.time_down + st.out.time_recovery;
  return st.out;
}

BatchStats run_batch(const SimConfig& config) {
  validate(config);
  const std::uint64_t n = config.trials;

  double sum_t = 0.0, sumsq_t = 0.0;
  double sum_e = 0.0, sumsq_e = 0.0;
  double sum_f = 0.0, sumsq_f = 0.0;
  for (std::uint64_t i = 0; i < n; ++i) {
    SplitMix64 rng = trial_rng(config.seed, i);
    const SimOutcome o = run_trial(config, rng);
    sum_t += o.total_time;
    sumsq_t += o.total_time * o.total_time;
    sum_e += o.energy;
    sumsq_e += o.energy * o.energy;
    const double f = static_cast<double>(o.failures);
    sum_f += f;
    sumsq_f += f * f;
  }

  const double dn = static_cast<double>(n);
  auto ci95 = [&](double sum, double sumsq) {
    if (n < 2) return 0.0;
    const double var = std::max(0.0, (sumsq - sum * sum / dn) / (dn - 1.0));
    return 1.96 * std::sqrt(var / dn);
  };

  BatchStats stats;
  stats.mean_time = sum_t / dn;
  stats.ci95_time = ci95(sum_t, sumsq_t);
  stats.mean_energy = sum_e / dn;
  stats.ci95_energy = ci95(sum_e, sumsq_e);
  stats.mean_failures = sum_f / dn;
  stats.ci95_failures = ci95(sum_f, sumsq_f);
  return stats;
}

ValidationReport validate_against_model(const SimConfig& config, double tolerance) {
  ValidationReport report;
  report.tolerance = tolerance;

  double analytical_time = std::numeric_limits<double>::quiet_NaN();
  double analytical_energy = std::numeric_limits<double>::quiet_NaN();
  try {
    const Evaluation ev = evaluate_period(config.period, config.work, config.ckpt,
                                          config.platform, config.power);
    analytical_time = ev.time.t_final;
    analytical_energy = ev.energy.e_final;
  } catch (const ModelError& err) {
    report.analytical_valid = false;
    report.analytical_error = err.what();
  }

  const BatchStats stats = run_batch(config);
  report.mean_failures = stats.mean_failures;
  report.ci95_failures = stats.ci95_failures;
  report.expected_failures =
      config.platform.failure_free() ? 0.0 : stats.mean_time / config.platform.mtbf;

  auto fill = [&](ValidationQuantity& q, double analytical, double empirical, double ci) {
    q.analytical = analytical;
    q.empirical = empirical;
    q.ci95 = ci;
    if (report.analytical_valid) {
      q.rel_gap = std::abs(empirical - analytical) / analytical;
      q.within_tolerance = q.rel_gap <= tolerance;
    } else {
      q.rel_gap = std::numeric_limits<double>::quiet_NaN();
      q.within_tolerance = false;
    }
  };
  fill(report.time, analytical_time, stats.mean_time, stats.ci95_time);
  fill(report.energy, analytical_energy, stats.mean_energy, stats.ci95_energy);
  return report;
}

}  // namespace sim
}  // namespace ckpt
