#ifndef CKPT_COMMANDS_HPP
#define CKPT_COMMANDS_HPP

#include <string>

#include "ckpt/config.hpp"

// Command implementations behind the ckpt-planner binary. Each command
// renders its CSV (and a short human-readable table) into strings so that
// byte-level determinism is testable without touching the filesystem.
//
// CSV layout, fixed per command (future columns are appended, never
// inserted):
//   optimize          metric,period_min,value,flag
//   sweep             axis,axis_value,t_opt_time_min,t_opt_energy_min,
//                     time_ratio,energy_ratio,flags
//   reproduce fig1    sweep layout
//   reproduce fig2/3  sweep layout plus a trailing rho column
//   validate          quantity,analytical,empirical,rel_gap,ci95,within_tol
// Metadata comment lines of the form `# key = value` precede the header and
// carry every input needed to reproduce the file byte for byte.

namespace ckpt {
namespace cli {

inline constexpr const char* kArtifactName = "ckpt-planner";
inline constexpr const char* kArtifactVersion = "1.0.0";

// Exit codes shared by the library and the binary.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitValidation = 3;
inline constexpr int kExitModelInvalid = 4;
inline constexpr int kExitToleranceFailed = 5;

struct CommandResult {
  std::string csv;
  std::string table;
  int exit_code = kExitOk;
};

// Dispatches on cfg.command. Model-invalid scenarios return
// kExitModelInvalid with the reason in `table`; a validate run whose gap
// exceeds the tolerance returns kExitToleranceFailed.
CommandResult run_command(const RunConfig& cfg);

// 6-significant-digit formatting used for CSV data cells; NaN renders as an
// empty cell.
std::string format_cell(double value);

}  // namespace cli
}  // namespace ckpt

#endif  // CKPT_COMMANDS_HPP
