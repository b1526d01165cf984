#ifndef CKPT_SCENARIOS_HPP
#define CKPT_SCENARIOS_HPP

#include <string>
#include <vector>

#include "ckpt/model.hpp"
#include "ckpt/optimizer.hpp"

// Preset scenarios for Exascale-class platforms and generic one-axis
// parameter sweeps producing the rows behind trade-off plots.

namespace ckpt {

struct Scenario {
  std::string name;
  Workload work{1.0};  // ratios are scale-free, so presets use t_base = 1
  CheckpointParams ckpt;
  Platform platform;
  PowerProfile power;
};

enum class SweepAxis { kRho, kNodes, kMtbf, kPeriod, kOmega };

const char* axis_name(SweepAxis axis);
SweepAxis axis_from_name(const std::string& name);

// rho is varied by fixing p_static and p_cal and setting
// p_io = rho * (p_static + p_cal) - p_static.
struct SweepSpec {
  Scenario base;
  SweepAxis axis = SweepAxis::kRho;
  std::vector<double> values;  // non-empty, strictly monotone
};

struct SweepRow {
  double axis_value = 0.0;
  double t_opt_time = 0.0;    // minutes; NaN when invalid
  double t_opt_energy = 0.0;  // minutes; NaN when invalid
  double time_ratio = 0.0;    // NaN when invalid
  double energy_ratio = 0.0;  // NaN when invalid
  bool clamped = false;
  bool fallback = false;
  bool invalid = false;
  std::string note;  // reason when invalid
};

// Known presets: "S1_rho5.5", "S2_rho7", "WEAK".
//   S1: C = R = 10 min, D = 1 min, omega = 1/2, powers (10, 10, 100, 0) mW,
//       per-node MTBF 125 years; the default 219,000 nodes give mu = 300 min.
//   S2: S1 with p_static = 5 mW (rho = 7).
//   WEAK: C = R = 1 min, D = 0.1 min, omega = 1/2, rho = 5.5 powers, and a
//       per-node MTBF chosen so mu = 120 min at the default 10^6 nodes.
// Pass n_nodes = 0 for the preset default.
Scenario preset(const std::string& name, std::uint64_t n_nodes = 0);

std::vector<std::string> preset_names();

// Applies one axis value to the base scenario. Exposed for the CLI.
Scenario derive_scenario(const Scenario& base, SweepAxis axis, double value);

// One row per axis value. A value that produces an invalid or infeasible
// model yields a flagged row instead of aborting the sweep. For the period
// axis the ratios compare the objectives at the given period against the
// optima, which the t_opt columns still report.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

// n_nodes sweep over a WEAK-style scenario; mu rescales linearly via the
// per-node MTBF.
std::vector<SweepRow> weak_scaling_table(const Scenario& base,
                                         const std::vector<double>& n_values);

}  // namespace ckpt

#endif  // CKPT_SCENARIOS_HPP
