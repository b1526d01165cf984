#include "ckpt/model.hpp"

#include <sstream>

namespace ckpt {

namespace {

void require(bool ok, const char* field, const char* constraint) {
  if (!ok) {
    std::ostringstream msg;
    msg << field << " violates " << constraint;
    throw std::invalid_argument(msg.str());
  }
}

}  // namespace

Platform Platform::from_nodes(std::uint64_t n, double mtbf_ind_min) {
  Platform p;
  p.n_nodes = n;
  p.mtbf_ind = mtbf_ind_min;
  p.mtbf = platform_mtbf(n, mtbf_ind_min);
  return p;
}

Platform Platform::with_mtbf(double mtbf_min) {
  Platform p;
  p.n_nodes = 1;
  p.mtbf_ind = mtbf_min;
  p.mtbf = mtbf_min;
  return p;
}

double platform_mtbf(std::uint64_t n_nodes, double mtbf_ind) {
  if (std::isinf(mtbf_ind)) return kInfiniteMtbf;
  return mtbf_ind / static_cast<double>(n_nodes);
}

ModelConstants derived_constants(const CheckpointParams& ckpt, const Platform& platform) {
  ModelConstants k;
  k.a = (1.0 - ckpt.omega) * ckpt.c;
  if (platform.failure_free()) {
    k.b = 1.0;
  } else {
    k.b = 1.0 - (ckpt.d + ckpt.r + ckpt.omega * ckpt.c) / platform.mtbf;
  }
  if (k.b <= 0.0) {
    std::ostringstream msg;
    msg << "model invalid: MTBF too small (mu = " << platform.mtbf
        << " min <= D + R + omega*C = " << ckpt.d + ckpt.r + ckpt.omega * ckpt.c << " min)";
    throw ModelError(msg.str());
  }
  return k;
}

PeriodDomain period_domain(const CheckpointParams& ckpt, const Platform& platform) {
  const ModelConstants k = derived_constants(ckpt, platform);
  PeriodDomain dom;
  dom.lower = ckpt.c;
  dom.upper = platform.failure_free() ? kInfiniteMtbf : 2.0 * platform.mtbf * k.b;
  dom.lower_open = ckpt.omega == 0.0;
  return dom;
}

namespace {

void check_period(double period, const CheckpointParams& ckpt, const Platform& platform,
                  const ModelConstants& k) {
  const PeriodDomain dom = period_domain(ckpt, platform);
  if (!dom.feasible()) {
    std::ostringstream msg;
    msg << "infeasible scenario: period domain [" << dom.lower << ", " << dom.upper
        << ") is empty";
    throw ModelError(msg.str());
  }
  if (!dom.contains(period) || period <= k.a) {
    std::ostringstream msg;
    msg << "period T = " << period << " min outside valid domain [" << dom.lower << ", "
        << dom.upper << ") with T > " << k.a;
    throw PeriodDomainError(msg.str());
  }
}

}  // namespace

TimeBreakdown expected_total_time(double period, const Workload& work,
                                  const CheckpointParams& ckpt, const Platform& platform) {
  const ModelConstants k = derived_constants(ckpt, platform);
  check_period(period, ckpt, platform, k);

  TimeBreakdown out;
  out.period = period;
  out.t_ff = work.t_base * period / (period - k.a);
  if (platform.failure_free()) {
    out.t_final = out.t_ff;
    out.t_fails = 0.0;
  } else {
    out.t_final =
        work.t_base * period / ((period - k.a) * (k.b - period / (2.0 * platform.mtbf)));
    out.t_fails = out.t_final - out.t_ff;
  }
  return out;
}

EnergyBreakdown energy_breakdown(double period, const Workload& work,
                                 const CheckpointParams& ckpt, const Platform& platform,
                                 double t_final) {
  const ModelConstants k = derived_constants(ckpt, platform);
  check_period(period, ckpt, platform, k);

  const double c = ckpt.c;
  const double fails = platform.failure_free() ? 0.0 : t_final / platform.mtbf;

  EnergyBreakdown out;
  out.t_cal = work.t_base +
              fails * (ckpt.omega * c + (period * period - c * c) / (2.0 * period) +
                       ckpt.omega * c * c / (2.0 * period));
  out.t_io = work.t_base * c / (period - k.a) + fails * (ckpt.r + c * c / (2.0 * period));
  out.t_down = fails * ckpt.d;
  return out;
}

double total_energy(const EnergyBreakdown& breakdown, double t_final,
                    const PowerProfile& power) {
  return breakdown.t_cal * power.p_cal + breakdown.t_io * power.p_io +
         breakdown.t_down * power.p_down + t_final * power.p_static;
}

Evaluation evaluate_period(double period, const Workload& work, const CheckpointParams& ckpt,
                           const Platform& platform, const PowerProfile& power) {
  Evaluation ev;
  ev.time = expected_total_time(period, work, ckpt, platform);
  ev.energy = energy_breakdown(period, work, ckpt, platform, ev.time.t_final);
  ev.energy.e_final = total_energy(ev.energy, ev.time.t_final, power);
  return ev;
}

double power_ratio_rho(const PowerProfile& power) {
  return (power.p_static + power.p_io) / (power.p_static + power.p_cal);
}

void validate(const CheckpointParams& ckpt) {
  require(ckpt.c > 0.0, "checkpoint.c", "c > 0");
  require(ckpt.r >= 0.0, "checkpoint.r", "r >= 0");
  require(ckpt.d >= 0.0, "checkpoint.d", "d >= 0");
  require(ckpt.omega >= 0.0 && ckpt.omega <= 1.0, "checkpoint.omega", "0 <= omega <= 1");
}

void validate(const PowerProfile& power) {
  require(power.p_static > 0.0, "power.p_static", "p_static > 0");
  require(power.p_cal >= 0.0, "power.p_cal", "p_cal >= 0");
  require(power.p_io >= 0.0, "power.p_io", "p_io >= 0");
  require(power.p_down >= 0.0, "power.p_down", "p_down >= 0");
}

void validate(const Platform& platform) {
  require(platform.n_nodes >= 1, "platform.n_nodes", "n_nodes >= 1");
  require(platform.mtbf_ind > 0.0, "platform.mtbf_ind", "mtbf_ind > 0");
  require(platform.mtbf > 0.0, "platform.mtbf", "mtbf > 0");
}

void validate(const Workload& work) {
  require(work.t_base > 0.0, "workload.t_base", "t_base > 0");
}

}  // namespace ckpt
