#ifndef CKPT_CONFIG_HPP
#define CKPT_CONFIG_HPP

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "ckpt/scenarios.hpp"

// Configuration boundary of the command-line tool. Files use flat
// `[section]` blocks of `key = value` lines (dotted `section.key = value`
// works too); `#` and `;` start comments. Durations accept the suffixes
// min, h, d, y and powers the suffixes mW, W, MW; everything is normalized
// to minutes and milliwatts here so the core stays unit-pure.

namespace ckpt {
namespace cli {

class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& where, int line, const std::string& what)
      : std::runtime_error(where + ":" + std::to_string(line) + ": " + what) {}
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

class ValidationError : public std::runtime_error {
public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

struct RunConfig {
  std::string command;  // optimize | validate | sweep | reproduce
  Scenario scenario;
  std::string preset_name;  // empty when the scenario was given explicitly

  std::uint64_t trials = 10000;
  std::uint64_t seed = 0;
  double tolerance_pct = 5.0;
  double period = 0.0;  // validate: simulated period; 0 = use the time optimum

  std::string axis;            // sweep
  std::vector<double> values;  // sweep
  std::string fig;             // reproduce: fig1 | fig2 | fig3
  std::string out_path;
};

// Ordered key/value view of a config source; later assignments win.
using KeyValues = std::vector<std::pair<std::string, std::string>>;

KeyValues read_config_file(const std::string& path);

// Splits "section.key=value" items as passed via --set.
KeyValues parse_overrides(const std::vector<std::string>& assignments);

// Builds and fully validates a RunConfig from file keys plus overrides,
// applied in that order. A preset (run.preset) provides defaults that
// explicit scenario keys override key by key; without a preset the full
// parameter set is required.
RunConfig build_config(const KeyValues& file_keys, const KeyValues& overrides);

// Unit-aware scalar parsers, exposed for tests.
double parse_duration_min(const std::string& text);  // "10", "5 h", "125 y", "inf"
double parse_power_mw(const std::string& text);      // "10", "20 MW", "3.5 W"
double parse_double(const std::string& text);
std::uint64_t parse_u64(const std::string& text);
std::vector<double> parse_value_list(const std::string& text);

}  // namespace cli
}  // namespace ckpt

#endif  // CKPT_CONFIG_HPP
