#include "ckpt/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <vector>

namespace ckpt {

namespace {

// Energy objective with p_static = 1 and t_base = 1. Both factors only
// scale E_final, so argmin and the fitted quadratic are unchanged while
// power-scaling invariance holds to rounding error.
double normalized_energy(double period, const CheckpointParams& cp, const Platform& platform,
                         const PowerProfile& power) {
  const Workload unit{1.0};
  const TimeBreakdown tb = expected_total_time(period, unit, cp, platform);
  const EnergyBreakdown eb = energy_breakdown(period, unit, cp, platform, tb.t_final);
  return eb.t_cal * power.alpha() + eb.t_io * power.beta() + eb.t_down * power.gamma() +
         tb.t_final;
}

double energy_at(double period, const CheckpointParams& cp, const Platform& platform,
                 const PowerProfile& power, const Workload& work) {
  return evaluate_period(period, work, cp, platform, power).energy.e_final;
}

// Interval on which samples may be taken: strictly inside the domain, with
// room for the widest finite-difference stencil.
struct SampleInterval {
  double lo = 0.0;
  double hi = 0.0;
};

SampleInterval sample_interval(const PeriodDomain& dom) {
  const double span = dom.upper - dom.lower;
  const double h_max = std::max(1e-4, 1e-6 * dom.upper);
  const double margin = std::max(1e-3 * span, 8.0 * h_max);
  return {dom.lower + margin, dom.upper - margin};
}

double derivative_5pt(const std::function<double(double)>& f, double x) {
  const double h = std::max(1e-4, 1e-6 * x);
  return (-f(x + 2.0 * h) + 8.0 * f(x + h) - 8.0 * f(x - h) + f(x - 2.0 * h)) / (12.0 * h);
}

void require_finite_mtbf(const Platform& platform, const char* what) {
  if (platform.failure_free()) {
    std::ostringstream msg;
    msg << what << " is undefined for an infinite MTBF";
    throw ModelError(msg.str());
  }
}

void require_feasible(const PeriodDomain& dom) {
  if (!dom.feasible()) {
    std::ostringstream msg;
    msg << "infeasible scenario: period domain [" << dom.lower << ", " << dom.upper
        << ") is empty";
    throw ModelError(msg.str());
  }
}

double golden_min(const std::function<double(double)>& f, double lo, double hi, double tol) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

OptimalPeriod optimal_period_time(const CheckpointParams& ckpt, const Platform& platform,
                                  const Workload& work) {
  require_finite_mtbf(platform, "the time-optimal period");
  const ModelConstants k = derived_constants(ckpt, platform);
  const PeriodDomain dom = period_domain(ckpt, platform);
  require_feasible(dom);

  const double mu_eff = platform.mtbf - (ckpt.d + ckpt.r + ckpt.omega * ckpt.c);
  const double unconstrained = std::sqrt(2.0 * k.a * mu_eff);

  OptimalPeriod out;
  out.clamped = unconstrained < ckpt.c;
  out.period = out.clamped ? ckpt.c : unconstrained;
  out.objective_value = expected_total_time(out.period, work, ckpt, platform).t_final;
  return out;
}

QuadraticCoefficients quadratic_coefficients(const CheckpointParams& ckpt,
                                             const Platform& platform,
                                             const PowerProfile& power) {
  require_finite_mtbf(platform, "the energy quadratic");
  const ModelConstants k = derived_constants(ckpt, platform);
  const PeriodDomain dom = period_domain(ckpt, platform);
  require_feasible(dom);

  const auto e_norm = [&](double t) { return normalized_energy(t, ckpt, platform, power); };
  const auto g = [&](double t) {
    const double p = t - k.a;
    const double q = k.b - t / (2.0 * platform.mtbf);
    return p * p * q * q * derivative_5pt(e_norm, t);
  };

  const SampleInterval iv = sample_interval(dom);
  const double span = iv.hi - iv.lo;
  const double t1 = iv.lo + 0.15 * span;
  const double t2 = iv.lo + 0.45 * span;
  const double t3 = iv.lo + 0.75 * span;
  const double t4 = iv.lo + 0.60 * span;

  // Newton interpolation on points centered at t2 keeps the solve well
  // conditioned even for very wide domains.
  const double s1 = t1 - t2, s2 = 0.0, s3 = t3 - t2;
  const double g1 = g(t1), g2 = g(t2), g3 = g(t3), g4 = g(t4);
  const double d1 = (g2 - g1) / (s2 - s1);
  const double d2 = ((g3 - g2) / (s3 - s2) - d1) / (s3 - s1);
  const double c2 = d2;
  const double c1 = d1 - d2 * (s1 + s2);
  const double c0 = g1 - d1 * s1 + d2 * s1 * s2;

  QuadraticCoefficients coeff;
  coeff.q2 = c2;
  coeff.q1 = c1 - 2.0 * c2 * t2;
  coeff.q0 = c0 - c1 * t2 + c2 * t2 * t2;

  const double fitted4 = coeff.q2 * t4 * t4 + coeff.q1 * t4 + coeff.q0;
  const double scale =
      std::max({std::abs(g1), std::abs(g2), std::abs(g3), std::abs(g4)});
  if (std::abs(g4 - fitted4) > 1e-6 * scale) {
    std::ostringstream msg;
    msg << "not quadratic: residual " << std::abs(g4 - fitted4) / scale
        << " at T = " << t4 << " exceeds 1e-6";
    throw ModelError(msg.str());
  }
  return coeff;
}

QuadraticCoefficients quadratic_coefficients_symbolic(const CheckpointParams& ckpt,
                                                      const Platform& platform,
                                                      const PowerProfile& power) {
  require_finite_mtbf(platform, "the energy quadratic");
  const ModelConstants k = derived_constants(ckpt, platform);

  const double mu = platform.mtbf;
  const double c = ckpt.c;
  const double alpha = power.alpha();
  const double beta = power.beta();
  const double gamma = power.gamma();
  const double s = alpha * ckpt.omega * c + beta * ckpt.r + gamma * ckpt.d;
  const double cross = (alpha * (1.0 - ckpt.omega) - beta) * c * c;

  QuadraticCoefficients coeff;
  coeff.q2 = s / (2.0 * mu * mu) + 1.0 / (2.0 * mu) + alpha * k.b / (2.0 * mu) +
             alpha * k.a / (4.0 * mu * mu) - beta * c / (4.0 * mu * mu);
  coeff.q1 = (beta * c - alpha * k.a) * k.b / mu - cross / (2.0 * mu * mu);
  coeff.q0 = -k.a * k.b * (s + mu) / mu - beta * c * k.b * k.b +
             cross * (k.b / (2.0 * mu) + k.a / (4.0 * mu * mu));
  return coeff;
}

OptimalPeriod numeric_argmin_energy(const CheckpointParams& ckpt, const Platform& platform,
                                    const PowerProfile& power, const Workload& work) {
  require_finite_mtbf(platform,
                      "the energy-optimal period (no interior optimum: checkpoints only "
                      "cost energy when failures cannot occur)");
  const PeriodDomain dom = period_domain(ckpt, platform);
  require_feasible(dom);

  const auto f = [&](double t) { return normalized_energy(t, ckpt, platform, power); };

  // Coarse scan: bracket the minimum and detect non-unimodal shapes.
  constexpr int kGrid = 1000;
  const SampleInterval iv = sample_interval(dom);
  const double step = (iv.hi - iv.lo) / (kGrid - 1);
  std::vector<double> values(kGrid);
  for (int i = 0; i < kGrid; ++i) values[i] = f(iv.lo + i * step);

  int best = 0;
  std::vector<int> local_minima;
  for (int i = 0; i < kGrid; ++i) {
    if (values[i] < values[best]) best = i;
    const bool left_ok = i == 0 || values[i] < values[i - 1];
    const bool right_ok = i == kGrid - 1 || values[i] < values[i + 1];
    if (i > 0 && i < kGrid - 1 && left_ok && right_ok) local_minima.push_back(i);
  }

  OptimalPeriod out;
  if (local_minima.size() > 1 &&
      (local_minima.back() - local_minima.front()) * step > 1e-4) {
    out.fallback = true;  // not unimodal on the scan; keep the global grid minimum
    out.period = iv.lo + best * step;
  } else {
    const double lo = iv.lo + std::max(0, best - 1) * step;
    const double hi = iv.lo + std::min(kGrid - 1, best + 1) * step;
    out.period = golden_min(f, lo, hi, 1e-4);
  }

  // A minimum at the scan's lower edge means the true optimum sits at (or
  // below) the domain bound C.
  if (out.period <= iv.lo + step) {
    const double at_c = dom.lower_open ? iv.lo : dom.lower;
    if (f(at_c) <= f(out.period)) {
      out.period = at_c;
      out.clamped = true;
    }
  }
  out.objective_value = energy_at(out.period, ckpt, platform, power, work);
  return out;
}

OptimalPeriod optimal_period_energy(const CheckpointParams& ckpt, const Platform& platform,
                                    const PowerProfile& power, const Workload& work) {
  const PeriodDomain dom = period_domain(ckpt, platform);
  const QuadraticCoefficients coeff = quadratic_coefficients(ckpt, platform, power);

  std::vector<double> candidates;
  if (coeff.q2 > 0.0) {
    const double disc = coeff.q1 * coeff.q1 - 4.0 * coeff.q2 * coeff.q0;
    if (disc >= 0.0) {
      const double sq = std::sqrt(disc);
      const double q = -0.5 * (coeff.q1 + std::copysign(sq, coeff.q1));
      const double r1 = q / coeff.q2;
      const double r2 = q != 0.0 ? coeff.q0 / q : r1;
      for (double r : {r1, r2}) {
        if (r > 0.0) candidates.push_back(r);
      }
    }
  }

  OptimalPeriod out;
  bool have_root = false;
  double best_e = 0.0;
  for (double r : candidates) {
    if (!dom.contains(r)) continue;
    const double e = normalized_energy(r, ckpt, platform, power);
    if (!have_root || e < best_e) {
      out.period = r;
      best_e = e;
      have_root = true;
    }
  }
  if (!have_root) {
    // Roots below C mean the optimum is pushed onto the bound.
    const bool below = !candidates.empty() &&
                       std::all_of(candidates.begin(), candidates.end(),
                                   [&](double r) { return r < dom.lower; }) &&
                       !dom.lower_open;
    if (below) {
      out.period = dom.lower;
      out.clamped = true;
    } else {
      OptimalPeriod numeric = numeric_argmin_energy(ckpt, platform, power, work);
      numeric.fallback = true;
      return numeric;
    }
  }

  // The oracle wins any disagreement beyond 0.5% in period.
  const OptimalPeriod numeric = numeric_argmin_energy(ckpt, platform, power, work);
  if (std::abs(out.period - numeric.period) > 0.005 * numeric.period) {
    OptimalPeriod overruled = numeric;
    overruled.fallback = true;
    return overruled;
  }
  out.objective_value = energy_at(out.period, ckpt, platform, power, work);
  return out;
}

ReferencePeriods reference_periods(const CheckpointParams& ckpt, const Platform& platform) {
  require_finite_mtbf(platform, "the reference period");
  derived_constants(ckpt, platform);  // rejects invalid models
  ReferencePeriods out;
  out.young = std::sqrt(2.0 * ckpt.c * platform.mtbf) + ckpt.c;
  out.daly = std::sqrt(2.0 * ckpt.c * (platform.mtbf + ckpt.d + ckpt.r)) + ckpt.c;
  return out;
}

StrategyComparison compare_strategies(const CheckpointParams& ckpt, const Platform& platform,
                                      const PowerProfile& power, const Workload& work) {
  StrategyComparison cmp;
  cmp.time_opt = optimal_period_time(ckpt, platform, work);
  cmp.energy_opt = optimal_period_energy(ckpt, platform, power, work);

  cmp.t_algo_t = cmp.time_opt.objective_value;
  cmp.t_algo_e = expected_total_time(cmp.energy_opt.period, work, ckpt, platform).t_final;
  cmp.e_algo_t = energy_at(cmp.time_opt.period, ckpt, platform, power, work);
  cmp.e_algo_e = cmp.energy_opt.objective_value;

  cmp.time_ratio = cmp.t_algo_e / cmp.t_algo_t;
  cmp.energy_ratio = cmp.e_algo_t / cmp.e_algo_e;
  return cmp;
}

}  // namespace ckpt
