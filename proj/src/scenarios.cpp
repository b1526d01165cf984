#include "ckpt/scenarios.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace ckpt {

namespace {

constexpr double kMinutesPerYear = 365.0 * 24.0 * 60.0;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

Scenario exascale_base(const char* name, double p_static) {
  Scenario s;
  s.name = name;
  s.ckpt = CheckpointParams{10.0, 10.0, 1.0, 0.5};
  s.power = PowerProfile{p_static, 10.0, 100.0, 0.0};
  // 125-year per-node MTBF; 219,000 nodes put the platform MTBF at 300 min.
  s.platform = Platform::from_nodes(219'000, 125.0 * kMinutesPerYear);
  return s;
}

Scenario weak_base() {
  Scenario s;
  s.name = "WEAK";
  s.ckpt = CheckpointParams{1.0, 1.0, 0.1, 0.5};
  s.power = PowerProfile{10.0, 10.0, 100.0, 0.0};
  // mu = 120 min at 10^6 nodes, scaling linearly with the node count.
  s.platform = Platform::from_nodes(1'000'000, 120.0 * 1e6);
  return s;
}

void validate_scenario(const Scenario& s) {
  validate(s.work);
  validate(s.ckpt);
  validate(s.platform);
  validate(s.power);
}

}  // namespace

const char* axis_name(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::kRho: return "rho";
    case SweepAxis::kNodes: return "n_nodes";
    case SweepAxis::kMtbf: return "mu";
    case SweepAxis::kPeriod: return "period";
    case SweepAxis::kOmega: return "omega";
  }
  return "?";
}

SweepAxis axis_from_name(const std::string& name) {
  if (name == "rho") return SweepAxis::kRho;
  if (name == "n_nodes") return SweepAxis::kNodes;
  if (name == "mu") return SweepAxis::kMtbf;
  if (name == "period") return SweepAxis::kPeriod;
  if (name == "omega") return SweepAxis::kOmega;
  throw std::invalid_argument("unknown sweep axis '" + name +
                              "' (expected rho, n_nodes, mu, period or omega)");
}

Scenario preset(const std::string& name, std::uint64_t n_nodes) {
  Scenario s;
  if (name == "S1_rho5.5") {
    s = exascale_base("S1_rho5.5", 10.0);
  } else if (name == "S2_rho7") {
    s = exascale_base("S2_rho7", 5.0);
  } else if (name == "WEAK") {
    s = weak_base();
  } else {
    throw std::invalid_argument("unknown preset '" + name +
                                "' (expected S1_rho5.5, S2_rho7 or WEAK)");
  }
  if (n_nodes != 0) s.platform = Platform::from_nodes(n_nodes, s.platform.mtbf_ind);
  return s;
}

std::vector<std::string> preset_names() { return {"S1_rho5.5", "S2_rho7", "WEAK"}; }

Scenario derive_scenario(const Scenario& base, SweepAxis axis, double value) {
  Scenario s = base;
  switch (axis) {
    case SweepAxis::kRho:
      s.power.p_io = value * (s.power.p_static + s.power.p_cal) - s.power.p_static;
      break;
    case SweepAxis::kNodes:
      s.platform = Platform::from_nodes(static_cast<std::uint64_t>(std::llround(value)),
                                        s.platform.mtbf_ind);
      break;
    case SweepAxis::kMtbf:
      s.platform = Platform::with_mtbf(value);
      break;
    case SweepAxis::kOmega:
      s.ckpt.omega = value;
      break;
    case SweepAxis::kPeriod:
      break;  // the period is applied at evaluation time, not to the scenario
  }
  return s;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  if (spec.values.empty()) throw std::invalid_argument("sweep values must be non-empty");
  for (std::size_t i = 1; i < spec.values.size(); ++i) {
    const bool increasing = spec.values[1] > spec.values[0];
    if ((increasing && spec.values[i] <= spec.values[i - 1]) ||
        (!increasing && spec.values[i] >= spec.values[i - 1])) {
      throw std::invalid_argument("sweep values must be strictly monotone");
    }
  }

  std::vector<SweepRow> rows;
  rows.reserve(spec.values.size());
  for (double value : spec.values) {
    SweepRow row;
    row.axis_value = value;
    try {
      const Scenario s = derive_scenario(spec.base, spec.axis, value);
      validate_scenario(s);
      const StrategyComparison cmp =
          compare_strategies(s.ckpt, s.platform, s.power, s.work);
      row.t_opt_time = cmp.time_opt.period;
      row.t_opt_energy = cmp.energy_opt.period;
      if (spec.axis == SweepAxis::kPeriod) {
        const Evaluation ev = evaluate_period(value, s.work, s.ckpt, s.platform, s.power);
        row.time_ratio = ev.time.t_final / cmp.t_algo_t;
        row.energy_ratio = ev.energy.e_final / cmp.e_algo_e;
      } else {
        row.time_ratio = cmp.time_ratio;
        row.energy_ratio = cmp.energy_ratio;
      }
      row.clamped = cmp.time_opt.clamped || cmp.energy_opt.clamped;
      row.fallback = cmp.energy_opt.fallback;
    } catch (const std::exception& err) {
      row.invalid = true;
      row.note = err.what();
      row.t_opt_time = kNaN;
      row.t_opt_energy = kNaN;
      row.time_ratio = kNaN;
      row.energy_ratio = kNaN;
    }
    rows.push_back(row);
  }
  return rows;
}

std::vector<SweepRow> weak_scaling_table(const Scenario& base,
                                         const std::vector<double>& n_values) {
  SweepSpec spec;
  spec.base = base;
  spec.axis = SweepAxis::kNodes;
  spec.values = n_values;
  return run_sweep(spec);
}

}  // namespace ckpt
