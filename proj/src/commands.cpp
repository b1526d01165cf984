#include "ckpt/commands.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <vector>

#include "ckpt/simulator.hpp"

namespace ckpt {
namespace cli {

namespace {

std::string format_g(double value, const char* fmt) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), fmt, value);
  return buf;
}

// Full-precision rendering for metadata, so a re-parsed file reproduces the
// exact same doubles and therefore the exact same bytes.
std::string format_exact(double value) { return format_g(value, "%.17g"); }

std::string flags_text(const OptimalPeriod& p) {
  std::string out;
  if (p.clamped) out += "clamped";
  if (p.fallback) out += out.empty() ? "fallback" : ";fallback";
  return out;
}

std::string row_flags_text(const SweepRow& row) {
  std::string out;
  auto add = [&](const char* token) {
    if (!out.empty()) out += ';';
    out += token;
  };
  if (row.clamped) add("clamped");
  if (row.fallback) add("fallback");
  if (row.invalid) add("invalid");
  return out;
}

using Metadata = std::vector<std::pair<std::string, std::string>>;

Metadata scenario_metadata(const RunConfig& cfg) {
  const Scenario& s = cfg.scenario;
  Metadata md;
  md.emplace_back("artifact.name", kArtifactName);
  md.emplace_back("artifact.version", kArtifactVersion);
  md.emplace_back("run.command", cfg.command);
  if (!cfg.preset_name.empty()) md.emplace_back("run.preset", cfg.preset_name);
  md.emplace_back("platform.n_nodes", std::to_string(s.platform.n_nodes));
  md.emplace_back("platform.mtbf_ind", format_exact(s.platform.mtbf_ind));
  md.emplace_back("derived.mtbf", format_exact(s.platform.mtbf));
  md.emplace_back("checkpoint.c", format_exact(s.ckpt.c));
  md.emplace_back("checkpoint.r", format_exact(s.ckpt.r));
  md.emplace_back("checkpoint.d", format_exact(s.ckpt.d));
  md.emplace_back("checkpoint.omega", format_exact(s.ckpt.omega));
  md.emplace_back("power.p_static", format_exact(s.power.p_static));
  md.emplace_back("power.p_cal", format_exact(s.power.p_cal));
  md.emplace_back("power.p_io", format_exact(s.power.p_io));
  md.emplace_back("power.p_down", format_exact(s.power.p_down));
  md.emplace_back("derived.rho", format_exact(power_ratio_rho(s.power)));
  md.emplace_back("workload.t_base", format_exact(s.work.t_base));
  return md;
}

void write_metadata(std::ostream& os, const Metadata& md) {
  for (const auto& [key, value] : md) os << "# " << key << " = " << value << "\n";
}

void write_sweep_rows(std::ostream& os, const std::string& axis,
                      const std::vector<SweepRow>& rows, const std::string& extra_cell) {
  for (const SweepRow& row : rows) {
    os << axis << ',' << format_cell(row.axis_value) << ',' << format_cell(row.t_opt_time)
       << ',' << format_cell(row.t_opt_energy) << ',' << format_cell(row.time_ratio) << ','
       << format_cell(row.energy_ratio) << ',' << row_flags_text(row);
    if (!extra_cell.empty()) os << ',' << extra_cell;
    os << "\n";
  }
}

CommandResult cmd_optimize(const RunConfig& cfg) {
  const Scenario& s = cfg.scenario;
  const StrategyComparison cmp = compare_strategies(s.ckpt, s.platform, s.power, s.work);
  const ReferencePeriods refs = reference_periods(s.ckpt, s.platform);
  const Evaluation at_t =
      evaluate_period(cmp.time_opt.period, s.work, s.ckpt, s.platform, s.power);
  const Evaluation at_e =
      evaluate_period(cmp.energy_opt.period, s.work, s.ckpt, s.platform, s.power);

  std::ostringstream csv;
  write_metadata(csv, scenario_metadata(cfg));
  csv << "metric,period_min,value,flag\n";
  auto row = [&](const char* metric, double period, double value, const std::string& flag) {
    csv << metric << ',' << format_cell(period) << ',' << format_cell(value) << ',' << flag
        << "\n";
  };
  const double nan = std::numeric_limits<double>::quiet_NaN();
  row("t_opt_time", cmp.time_opt.period, cmp.time_opt.objective_value,
      flags_text(cmp.time_opt));
  row("t_opt_energy", cmp.energy_opt.period, cmp.energy_opt.objective_value,
      flags_text(cmp.energy_opt));
  row("young", refs.young, nan, "");
  row("daly", refs.daly, nan, "");
  row("time_ratio", nan, cmp.time_ratio, "");
  row("energy_ratio", nan, cmp.energy_ratio, "");
  row("t_ff", cmp.time_opt.period, at_t.time.t_ff, "");
  row("t_fails", cmp.time_opt.period, at_t.time.t_fails, "");
  row("t_final", cmp.time_opt.period, at_t.time.t_final, "");
  row("t_cal", cmp.energy_opt.period, at_e.energy.t_cal, "");
  row("t_io", cmp.energy_opt.period, at_e.energy.t_io, "");
  row("t_down", cmp.energy_opt.period, at_e.energy.t_down, "");
  row("e_final", cmp.energy_opt.period, at_e.energy.e_final, "");

  std::ostringstream table;
  table << "scenario " << s.name << ": mu = " << format_cell(s.platform.mtbf)
        << " min, rho = " << format_cell(power_ratio_rho(s.power)) << "\n"
        << "  time-optimal period    " << format_cell(cmp.time_opt.period)
        << " min  (t_final " << format_cell(cmp.time_opt.objective_value) << " min"
        << (cmp.time_opt.clamped ? ", clamped" : "") << ")\n"
        << "  energy-optimal period  " << format_cell(cmp.energy_opt.period)
        << " min  (e_final " << format_cell(cmp.energy_opt.objective_value) << " mW*min"
        << (cmp.energy_opt.clamped ? ", clamped" : "")
        << (cmp.energy_opt.fallback ? ", fallback" : "") << ")\n"
        << "  young " << format_cell(refs.young) << " min, daly " << format_cell(refs.daly)
        << " min\n"
        << "  time ratio (AlgoE/AlgoT)   " << format_cell(cmp.time_ratio) << "\n"
        << "  energy ratio (AlgoT/AlgoE) " << format_cell(cmp.energy_ratio) << "\n";

  return CommandResult{csv.str(), table.str(), kExitOk};
}

CommandResult cmd_validate(const RunConfig& cfg) {
  const Scenario& s = cfg.scenario;

  double period = cfg.period;
  if (period <= 0.0) {
    period = optimal_period_time(s.ckpt, s.platform, s.work).period;
  }

  sim::SimConfig sc;
  sc.work = s.work;
  sc.ckpt = s.ckpt;
  sc.platform = s.platform;
  sc.power = s.power;
  sc.period = period;
  sc.trials = cfg.trials;
  sc.seed = cfg.seed;
  const sim::ValidationReport report =
      sim::validate_against_model(sc, cfg.tolerance_pct / 100.0);

  Metadata md = scenario_metadata(cfg);
  md.emplace_back("run.period", format_exact(period));
  md.emplace_back("run.trials", std::to_string(cfg.trials));
  md.emplace_back("run.seed", std::to_string(cfg.seed));
  md.emplace_back("run.tolerance", format_exact(cfg.tolerance_pct));

  std::ostringstream csv;
  write_metadata(csv, md);
  csv << "quantity,analytical,empirical,rel_gap,ci95,within_tol\n";
  auto row = [&](const char* quantity, const sim::ValidationQuantity& q) {
    csv << quantity << ',' << format_cell(q.analytical) << ',' << format_cell(q.empirical)
        << ',' << format_cell(q.rel_gap) << ',' << format_cell(q.ci95) << ','
        << (q.within_tolerance ? "true" : "false") << "\n";
  };
  row("time", report.time);
  row("energy", report.energy);

  sim::ValidationQuantity failures;
  failures.empirical = report.mean_failures;
  failures.ci95 = report.ci95_failures;
  if (report.analytical_valid && !s.platform.failure_free()) {
    failures.analytical = report.time.analytical / s.platform.mtbf;
    failures.rel_gap = std::abs(failures.empirical - failures.analytical) /
                       failures.analytical;
    failures.within_tolerance = failures.rel_gap <= report.tolerance;
  } else if (s.platform.failure_free()) {
    failures.analytical = 0.0;
    failures.rel_gap = 0.0;
    failures.within_tolerance = failures.empirical == 0.0;
  } else {
    failures.analytical = std::numeric_limits<double>::quiet_NaN();
    failures.rel_gap = std::numeric_limits<double>::quiet_NaN();
  }
  row("failures", failures);

  std::ostringstream table;
  table << "validate " << s.name << " at T = " << format_cell(period) << " min, "
        << cfg.trials << " trials, seed " << cfg.seed << "\n";
  if (!report.analytical_valid) {
    table << "  analytical model invalid: " << report.analytical_error << "\n"
          << "  empirical mean time " << format_cell(report.time.empirical)
          << " min, mean energy " << format_cell(report.energy.empirical) << " mW*min\n";
    return CommandResult{csv.str(), table.str(), kExitModelInvalid};
  }
  table << "  time:   analytical " << format_cell(report.time.analytical) << " vs empirical "
        << format_cell(report.time.empirical) << " min, gap "
        << format_cell(100.0 * report.time.rel_gap) << "%\n"
        << "  energy: analytical " << format_cell(report.energy.analytical)
        << " vs empirical " << format_cell(report.energy.empirical) << " mW*min, gap "
        << format_cell(100.0 * report.energy.rel_gap) << "%\n"
        << "  tolerance " << format_cell(cfg.tolerance_pct) << "%: "
        << (report.time.within_tolerance && report.energy.within_tolerance ? "PASS" : "FAIL")
        << "\n";

  const bool ok = report.time.within_tolerance && report.energy.within_tolerance;
  return CommandResult{csv.str(), table.str(), ok ? kExitOk : kExitToleranceFailed};
}

CommandResult cmd_sweep(const RunConfig& cfg) {
  if (cfg.axis.empty()) throw ValidationError("missing required key run.axis");
  if (cfg.values.empty()) throw ValidationError("missing required key run.values");

  SweepSpec spec;
  spec.base = cfg.scenario;
  spec.axis = axis_from_name(cfg.axis);
  spec.values = cfg.values;
  std::vector<SweepRow> rows;
  try {
    rows = run_sweep(spec);
  } catch (const std::invalid_argument& err) {
    throw ValidationError(std::string("run.values: ") + err.what());
  }

  Metadata md = scenario_metadata(cfg);
  md.emplace_back("run.axis", cfg.axis);
  std::string values_text;
  for (double v : cfg.values) {
    if (!values_text.empty()) values_text += ',';
    values_text += format_exact(v);
  }
  md.emplace_back("run.values", values_text);
  if (spec.axis == SweepAxis::kRho) {
    md.emplace_back("run.rho_mode", "p_io = rho*(p_static+p_cal) - p_static");
  }

  std::ostringstream csv;
  write_metadata(csv, md);
  csv << "axis,axis_value,t_opt_time_min,t_opt_energy_min,time_ratio,energy_ratio,flags\n";
  write_sweep_rows(csv, cfg.axis, rows, "");

  std::ostringstream table;
  table << "sweep over " << cfg.axis << ": " << rows.size() << " rows\n";
  for (const SweepRow& row : rows) {
    table << "  " << cfg.axis << " = " << format_cell(row.axis_value);
    if (row.invalid) {
      table << "  invalid (" << row.note << ")\n";
    } else {
      table << "  time_ratio " << format_cell(row.time_ratio) << ", energy_ratio "
            << format_cell(row.energy_ratio) << "\n";
    }
  }
  return CommandResult{csv.str(), table.str(), kExitOk};
}

CommandResult cmd_reproduce(const RunConfig& cfg) {
  const std::string& fig = cfg.fig;
  if (fig != "fig1" && fig != "fig2" && fig != "fig3") {
    throw ValidationError("run.fig must be one of fig1, fig2, fig3");
  }

  Metadata md = scenario_metadata(cfg);
  md.emplace_back("run.fig", fig);

  std::ostringstream csv;
  std::ostringstream table;
  if (fig == "fig1") {
    // Trade-off ratios against rho at mu = 300 min.
    SweepSpec spec;
    spec.base = cfg.scenario;
    spec.axis = SweepAxis::kRho;
    spec.values = {1, 2, 3, 4, 5, 5.5, 6, 7, 8, 9, 10};
    const auto rows = run_sweep(spec);
    write_metadata(csv, md);
    csv << "axis,axis_value,t_opt_time_min,t_opt_energy_min,time_ratio,energy_ratio,flags\n";
    write_sweep_rows(csv, "rho", rows, "");
    table << "fig1: ratios vs rho on " << spec.base.name << ", " << rows.size() << " rows\n";
  } else {
    write_metadata(csv, md);
    csv << "axis,axis_value,t_opt_time_min,t_opt_energy_min,time_ratio,energy_ratio,flags,"
           "rho\n";
    for (double rho : {5.5, 7.0}) {
      SweepSpec spec;
      spec.base = derive_scenario(cfg.scenario, SweepAxis::kRho, rho);
      if (fig == "fig2") {
        // Ratios against the platform MTBF for the two emphasized rho values.
        spec.axis = SweepAxis::kMtbf;
        spec.values = {30, 60, 120, 300, 600};
      } else {
        // Weak scaling: mu shrinks linearly as nodes are added.
        spec.axis = SweepAxis::kNodes;
        spec.values = {1e5, 2e5, 5e5, 1e6, 2e6, 5e6, 1e7, 2e7, 5e7, 1e8};
      }
      const auto rows = run_sweep(spec);
      write_sweep_rows(csv, axis_name(spec.axis), rows, format_cell(rho));
      table << fig << ": ratios vs " << axis_name(spec.axis) << " at rho = "
            << format_cell(rho) << ", " << rows.size() << " rows\n";
    }
  }
  return CommandResult{csv.str(), table.str(), kExitOk};
}

}  // namespace

std::string format_cell(double value) {
  if (std::isnan(value)) return "";
  return format_g(value, "%.6g");
}

CommandResult run_command(const RunConfig& cfg) {
  try {
    if (cfg.command == "optimize") return cmd_optimize(cfg);
    if (cfg.command == "validate") return cmd_validate(cfg);
    if (cfg.command == "sweep") return cmd_sweep(cfg);
    if (cfg.command == "reproduce") return cmd_reproduce(cfg);
    throw ValidationError("unknown command '" + cfg.command + "'");
  } catch (const ModelError& err) {
    CommandResult result;
    result.exit_code = kExitModelInvalid;
    result.table = std::string("model-invalid scenario: ") + err.what() + "\n";
    return result;
  }
}

}  // namespace cli
}  // namespace ckpt
