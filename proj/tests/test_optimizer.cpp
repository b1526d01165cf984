#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "ckpt/optimizer.hpp"
#include "test_util.hpp"

using namespace ckpt;
using testutil::random_scenario;

namespace {

const CheckpointParams kS1Ckpt{10.0, 10.0, 1.0, 0.5};
const Platform kMu300 = Platform::with_mtbf(300.0);
const PowerProfile kS1Power{10.0, 10.0, 100.0, 0.0};
const PowerProfile kS2Power{5.0, 10.0, 100.0, 0.0};
const Workload kUnit{1.0};

// Independent sample of K(T) * E'(T): energy from the public model API, the
// derivative from a plain central difference.
double k_times_e_prime(double t, const CheckpointParams& cp, const Platform& platform,
                       const PowerProfile& power) {
  const auto energy = [&](double x) {
    return evaluate_period(x, kUnit, cp, platform, power).energy.e_final;
  };
  const double h = std::max(1e-4, 1e-6 * t);
  const double deriv =
      (-energy(t + 2 * h) + 8 * energy(t + h) - 8 * energy(t - h) + energy(t - 2 * h)) /
      (12 * h);
  const ModelConstants k = derived_constants(cp, platform);
  const double p = t - k.a;
  const double q = k.b - t / (2.0 * platform.mtbf);
  return p * p * q * q * deriv / power.p_static;
}

double grid_argmin_energy(const CheckpointParams& cp, const Platform& platform,
                          const PowerProfile& power, double step) {
  const PeriodDomain dom = period_domain(cp, platform);
  double best_t = 0.0, best_e = std::numeric_limits<double>::infinity();
  for (double t = dom.lower + (dom.lower_open ? step : 0.0); t < dom.upper - step;
       t += step) {
    const double e = evaluate_period(t, kUnit, cp, platform, power).energy.e_final;
    if (e < best_e) {
      best_e = e;
      best_t = t;
    }
  }
  return best_t;
}

}  // namespace

TEST_CASE("time-optimal period closed form and clamping") {
  const OptimalPeriod t = optimal_period_time(kS1Ckpt, kMu300, kUnit);
  CHECK(t.period == doctest::Approx(std::sqrt(2840.0)).epsilon(1e-12));
  CHECK(!t.clamped);
  CHECK(t.objective_value ==
        doctest::Approx(expected_total_time(t.period, kUnit, kS1Ckpt, kMu300).t_final));

  // Fully overlapped checkpoints drive the unconstrained optimum to zero.
  const CheckpointParams overlapped{10.0, 10.0, 1.0, 1.0};
  const OptimalPeriod t1 = optimal_period_time(overlapped, kMu300, kUnit);
  CHECK(t1.period == 10.0);
  CHECK(t1.clamped);

  // Weak-scaling point at 5e7 nodes: sqrt(0.8) < C = 1.
  const CheckpointParams weak{1.0, 1.0, 0.1, 0.5};
  const OptimalPeriod t2 = optimal_period_time(weak, Platform::with_mtbf(2.4), kUnit);
  CHECK(t2.period == 1.0);
  CHECK(t2.clamped);

  CHECK_THROWS_AS(optimal_period_time(kS1Ckpt, Platform(), kUnit), ModelError);
  CHECK_THROWS_AS(optimal_period_time(weak, Platform::with_mtbf(1.2), kUnit), ModelError);
}

TEST_CASE("fitted quadratic matches the symbolic expansion") {
  // Coefficients are compared at 1e-9 relative to the polynomial's own value
  // scale over the domain, which also covers coefficients that are exactly
  // zero (q1 vanishes when beta C = alpha a and the cross term is zero).
  const auto check_agreement = [](const CheckpointParams& cp, const Platform& platform,
                                  const PowerProfile& power) {
    const QuadraticCoefficients fit = quadratic_coefficients(cp, platform, power);
    const QuadraticCoefficients sym = quadratic_coefficients_symbolic(cp, platform, power);
    const PeriodDomain dom = period_domain(cp, platform);
    const double tm = 0.5 * (dom.lower + dom.upper);
    double g_scale = 0.0;
    for (double f : {0.25, 0.5, 0.75}) {
      const double t = dom.lower + f * (dom.upper - dom.lower);
      g_scale = std::max(g_scale, std::abs(sym.q2 * t * t + sym.q1 * t + sym.q0));
    }
    CHECK(std::abs(fit.q2 - sym.q2) <=
          1e-9 * std::max(std::abs(sym.q2), g_scale / (tm * tm)));
    CHECK(std::abs(fit.q1 - sym.q1) <= 1e-9 * std::max(std::abs(sym.q1), g_scale / tm));
    CHECK(std::abs(fit.q0 - sym.q0) <= 1e-9 * std::max(std::abs(sym.q0), g_scale));
  };

  check_agreement(kS1Ckpt, kMu300, kS1Power);
  check_agreement(kS1Ckpt, kMu300, kS2Power);
  check_agreement(CheckpointParams{1.0, 1.0, 0.1, 0.5}, Platform::with_mtbf(120.0),
                  kS1Power);

  // alpha = beta and omega = 0 cancel the ambiguous C^2 cross terms; the
  // agreement must be equally tight.
  for (double scale : {1.0, 2.0}) {
    const CheckpointParams cp{10.0, 10.0, 1.0, 0.0};
    const PowerProfile pw{10.0, 10.0 * scale, 10.0 * scale, 0.0};
    check_agreement(cp, kMu300, pw);
  }
}

TEST_CASE("quadratic reproduces K * E' at extra points") {
  std::mt19937_64 rng(505);
  for (int i = 0; i < 30; ++i) {
    const auto s = random_scenario(rng);
    const QuadraticCoefficients fit = quadratic_coefficients(s.ckpt, s.platform, s.power);
    const PeriodDomain dom = period_domain(s.ckpt, s.platform);
    const double lo = dom.lower + 0.02 * (dom.upper - dom.lower);
    const double hi = dom.upper - 0.02 * (dom.upper - dom.lower);

    double scale = 0.0;
    std::vector<std::pair<double, double>> samples;
    for (int j = 0; j < 10; ++j) {
      const double t = testutil::uniform(rng, lo, hi);
      const double g = k_times_e_prime(t, s.ckpt, s.platform, s.power);
      samples.emplace_back(t, g);
      scale = std::max(scale, std::abs(g));
    }
    for (const auto& [t, g] : samples) {
      const double fitted = fit.q2 * t * t + fit.q1 * t + fit.q0;
      CHECK(std::abs(fitted - g) <= 1e-6 * scale);
    }
  }
}

TEST_CASE("energy-optimal period on the 300-min scenario") {
  const OptimalPeriod e = optimal_period_energy(kS1Ckpt, kMu300, kS1Power, kUnit);
  CHECK(!e.fallback);
  CHECK(!e.clamped);
  CHECK(e.period > 120.0);
  CHECK(e.period < 135.0);

  // Regression baselines recorded from the 0.01-min grid search.
  CHECK(e.period == doctest::Approx(128.0673).epsilon(2e-5));
  CHECK(e.objective_value == doctest::Approx(40.49039).epsilon(1e-5));

  const double grid = grid_argmin_energy(kS1Ckpt, kMu300, kS1Power, 0.01);
  CHECK(std::abs(e.period - grid) <= 1e-3 * grid);

  // I/O-heavy power makes the energy optimum sit above the time optimum.
  const OptimalPeriod t = optimal_period_time(kS1Ckpt, kMu300, kUnit);
  CHECK(e.period > t.period);
}

TEST_CASE("scaling every power leaves the optima alone and scales E") {
  const OptimalPeriod base_e = optimal_period_energy(kS1Ckpt, kMu300, kS1Power, kUnit);
  const OptimalPeriod base_t = optimal_period_time(kS1Ckpt, kMu300, kUnit);
  for (double c : {0.1, 3.0, 100.0}) {
    const PowerProfile scaled{kS1Power.p_static * c, kS1Power.p_cal * c, kS1Power.p_io * c,
                              kS1Power.p_down * c};
    const OptimalPeriod e = optimal_period_energy(kS1Ckpt, kMu300, scaled, kUnit);
    CHECK(e.period == doctest::Approx(base_e.period).epsilon(1e-9));
    CHECK(e.objective_value == doctest::Approx(c * base_e.objective_value).epsilon(1e-12));
    const OptimalPeriod t = optimal_period_time(kS1Ckpt, kMu300, kUnit);
    CHECK(t.period == base_t.period);
  }
}

TEST_CASE("numeric argmin agrees with the quadratic root") {
  struct Case {
    CheckpointParams cp;
    Platform platform;
    PowerProfile power;
  };
  const Case cases[] = {
      {kS1Ckpt, kMu300, kS1Power},
      {kS1Ckpt, kMu300, kS2Power},
      {CheckpointParams{1.0, 1.0, 0.1, 0.5}, Platform::with_mtbf(120.0), kS1Power},
  };
  for (const Case& c : cases) {
    const OptimalPeriod root = optimal_period_energy(c.cp, c.platform, c.power, kUnit);
    const OptimalPeriod numeric = numeric_argmin_energy(c.cp, c.platform, c.power, kUnit);
    CHECK(!root.fallback);
    CHECK(std::abs(root.period - numeric.period) <= 0.005 * numeric.period);
  }
}

TEST_CASE("degenerate case: energy objective is an affine image of time") {
  // omega = 0, R = D = 0 and beta = alpha collapse E to (1+alpha) t_final.
  const CheckpointParams cp{10.0, 0.0, 0.0, 0.0};
  const PowerProfile pw{10.0, 10.0, 10.0, 0.0};
  const Platform platform = Platform::with_mtbf(300.0);

  const OptimalPeriod t = optimal_period_time(cp, platform, kUnit);
  const OptimalPeriod n = numeric_argmin_energy(cp, platform, pw, kUnit);
  CHECK(std::abs(n.period - t.period) <= 1e-3);

  const StrategyComparison cmp = compare_strategies(cp, platform, pw, kUnit);
  CHECK(cmp.time_ratio == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(cmp.energy_ratio == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("failure-free platform has no interior energy optimum") {
  CHECK_THROWS_WITH_AS(numeric_argmin_energy(kS1Ckpt, Platform(), kS1Power, kUnit),
                       doctest::Contains("no interior optimum"), ModelError);
}

TEST_CASE("reference periods") {
  const ReferencePeriods refs = reference_periods(kS1Ckpt, kMu300);
  CHECK(refs.young == doctest::Approx(std::sqrt(6000.0) + 10.0).epsilon(1e-12));
  CHECK(refs.daly == doctest::Approx(std::sqrt(6220.0) + 10.0).epsilon(1e-12));
  CHECK(refs.young == doctest::Approx(87.46).epsilon(1e-4));
  CHECK(refs.daly == doctest::Approx(88.87).epsilon(1e-4));

  const CheckpointParams no_dr{10.0, 0.0, 0.0, 0.5};
  const ReferencePeriods same = reference_periods(no_dr, kMu300);
  CHECK(same.young == same.daly);
}

TEST_CASE("Eq-1 converges to Daly as mu grows") {
  const CheckpointParams cp{10.0, 0.0, 0.0, 0.0};
  double prev_gap = 1.0;
  for (double mu : {1e3, 1e4, 1e5, 1e6}) {
    const Platform p = Platform::with_mtbf(mu);
    const double eq1 = optimal_period_time(cp, p, kUnit).period;
    const double daly = reference_periods(cp, p).daly;
    const double gap = std::abs(eq1 - daly) / daly;
    CHECK(gap < prev_gap);
    prev_gap = gap;
  }
  CHECK(prev_gap <= 0.005);
}

TEST_CASE("strategy comparison on the Exascale scenarios") {
  const StrategyComparison s1 = compare_strategies(kS1Ckpt, kMu300, kS1Power, kUnit);
  CHECK(s1.energy_ratio > 1.15);
  CHECK(s1.energy_ratio < 1.30);
  CHECK(s1.time_ratio > 1.05);
  CHECK(s1.time_ratio < 1.15);

  // Both optima clamp to C at the 5e7-node weak-scaling point.
  const CheckpointParams weak{1.0, 1.0, 0.1, 0.5};
  const StrategyComparison clamped =
      compare_strategies(weak, Platform::with_mtbf(2.4), kS1Power, kUnit);
  CHECK(clamped.time_opt.clamped);
  CHECK(clamped.energy_opt.clamped);
  CHECK(clamped.time_ratio == doctest::Approx(1.0).epsilon(0.02));
  CHECK(clamped.energy_ratio == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("ratios do not depend on t_base") {
  for (double t_base : {1.0, 37.5, 777.0}) {
    const StrategyComparison cmp =
        compare_strategies(kS1Ckpt, kMu300, kS1Power, Workload{t_base});
    const StrategyComparison unit = compare_strategies(kS1Ckpt, kMu300, kS1Power, kUnit);
    CHECK(cmp.time_ratio == doctest::Approx(unit.time_ratio).epsilon(1e-12));
    CHECK(cmp.energy_ratio == doctest::Approx(unit.energy_ratio).epsilon(1e-12));
    CHECK(cmp.time_opt.period == unit.time_opt.period);
    CHECK(cmp.energy_opt.period == doctest::Approx(unit.energy_opt.period).epsilon(1e-12));
  }
}

TEST_CASE("both optima beat every grid point") {
  std::mt19937_64 rng(606);
  for (int i = 0; i < 1000; ++i) {
    const auto s = random_scenario(rng);
    const OptimalPeriod t = optimal_period_time(s.ckpt, s.platform, s.work);
    const OptimalPeriod e = optimal_period_energy(s.ckpt, s.platform, s.power, s.work);

    const PeriodDomain dom = period_domain(s.ckpt, s.platform);
    const double lo = dom.lower + (dom.lower_open ? 1e-4 * (dom.upper - dom.lower) : 0.0);
    const double hi = dom.upper * (1.0 - 1e-9);
    const double step = (hi - lo) / 199.0;
    for (int j = 0; j < 200; ++j) {
      const double T = lo + j * step;
      const double tv = expected_total_time(T, s.work, s.ckpt, s.platform).t_final;
      CHECK(t.objective_value <= tv * (1.0 + 1e-9));
      const double ev = evaluate_period(T, s.work, s.ckpt, s.platform, s.power).energy.e_final;
      CHECK(e.objective_value <= ev * (1.0 + 1e-9));
    }
  }
}
