#include "ckpt/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

namespace ckpt {
namespace cli {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

// Splits "12.5 min" into the numeric part and a suffix (possibly empty).
std::pair<double, std::string> split_number_suffix(const std::string& text) {
  const std::string t = trim(text);
  std::size_t pos = 0;
  double value = 0.0;
  try {
    value = std::stod(t, &pos);
  } catch (const std::exception&) {
    throw ParseError("not a number: '" + t + "'");
  }
  return {value, trim(t.substr(pos))};
}

bool is_infinite_token(const std::string& text) {
  std::string t = trim(text);
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
  return t == "inf" || t == "infinite" || t == "infinity";
}

}  // namespace

double parse_duration_min(const std::string& text) {
  if (is_infinite_token(text)) return kInfiniteMtbf;
  const auto [value, suffix] = split_number_suffix(text);
  if (suffix.empty() || suffix == "min") return value;
  if (suffix == "h") return value * 60.0;
  if (suffix == "d") return value * 24.0 * 60.0;
  if (suffix == "y") return value * 365.0 * 24.0 * 60.0;
  throw ParseError("unknown duration unit '" + suffix + "' (expected min, h, d or y)");
}

double parse_power_mw(const std::string& text) {
  const auto [value, suffix] = split_number_suffix(text);
  if (suffix.empty() || suffix == "mW") return value;
  if (suffix == "W") return value * 1e3;
  if (suffix == "MW") return value * 1e9;
  throw ParseError("unknown power unit '" + suffix + "' (expected mW, W or MW)");
}

double parse_double(const std::string& text) {
  const auto [value, suffix] = split_number_suffix(text);
  if (!suffix.empty()) throw ParseError("unexpected trailing '" + suffix + "'");
  return value;
}

std::uint64_t parse_u64(const std::string& text) {
  const std::string t = trim(text);
  // Counts may be written in scientific notation (n_nodes = 1e6).
  const auto [value, suffix] = split_number_suffix(t);
  if (!suffix.empty()) throw ParseError("unexpected trailing '" + suffix + "'");
  if (value < 0 || value != std::floor(value) || value > 1.8e19) {
    throw ParseError("not a non-negative integer: '" + t + "'");
  }
  return static_cast<std::uint64_t>(value);
}

std::vector<double> parse_value_list(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (trim(item).empty()) continue;
    values.push_back(parse_double(item));
  }
  if (values.empty()) throw ParseError("empty value list");
  return values;
}

KeyValues read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file '" + path + "'");

  KeyValues keys;
  std::string section;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto comment = line.find_first_of("#;");
    if (comment != std::string::npos) line.erase(comment);
    const std::string t = trim(line);
    if (t.empty()) continue;

    if (t.front() == '[') {
      if (t.back() != ']') throw ParseError(path, lineno, "unterminated section header");
      section = trim(t.substr(1, t.size() - 2));
      if (section.empty()) throw ParseError(path, lineno, "empty section name");
      continue;
    }

    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ParseError(path, lineno, "expected 'key = value', got '" + t + "'");
    }
    std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (key.empty()) throw ParseError(path, lineno, "empty key");
    if (key.find('.') == std::string::npos) {
      if (section.empty()) {
        throw ParseError(path, lineno, "key '" + key + "' outside any [section]");
      }
      key = section + "." + key;
    }
    keys.emplace_back(key, value);
  }
  return keys;
}

KeyValues parse_overrides(const std::vector<std::string>& assignments) {
  KeyValues keys;
  for (const std::string& item : assignments) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) {
      throw ParseError("--set expects section.key=value, got '" + item + "'");
    }
    const std::string key = trim(item.substr(0, eq));
    if (key.find('.') == std::string::npos) {
      throw ParseError("--set key '" + key + "' must be qualified as section.key");
    }
    keys.emplace_back(key, trim(item.substr(eq + 1)));
  }
  return keys;
}

namespace {

struct KeyTable {
  std::map<std::string, std::string> values;

  bool has(const std::string& key) const { return values.count(key) != 0; }
  const std::string* find(const std::string& key) const {
    const auto it = values.find(key);
    return it == values.end() ? nullptr : &it->second;
  }
};

template <typename Parser>
auto parse_key(const KeyTable& table, const std::string& key, Parser parser)
    -> decltype(parser(std::string{})) {
  const std::string* raw = table.find(key);
  if (raw == nullptr) throw ValidationError("missing required key " + key);
  try {
    return parser(*raw);
  } catch (const std::exception& err) {
    throw ValidationError(key + " = " + *raw + ": " + err.what());
  }
}

template <typename Parser, typename T>
T parse_key_or(const KeyTable& table, const std::string& key, Parser parser, T fallback) {
  if (!table.has(key)) return fallback;
  return parse_key(table, key, parser);
}

const char* const kScenarioKeys[] = {
    "platform.n_nodes", "platform.mtbf_ind", "platform.mtbf",
    "checkpoint.c",     "checkpoint.r",      "checkpoint.d",
    "checkpoint.omega", "power.p_static",    "power.p_cal",
    "power.p_io",       "power.p_down",      "workload.t_base",
};

const char* const kRunKeys[] = {
    "run.preset", "run.command", "run.trials", "run.seed",   "run.tolerance",
    "run.period", "run.axis",    "run.values", "run.fig",    "run.out",
};

bool known_key(const std::string& key) {
  for (const char* k : kScenarioKeys) {
    if (key == k) return true;
  }
  for (const char* k : kRunKeys) {
    if (key == k) return true;
  }
  // Emitted metadata carries informational namespaces that round-trip as
  // config input; they are accepted and ignored.
  return key.rfind("artifact.", 0) == 0 || key.rfind("derived.", 0) == 0;
}

void validate_scenario_config(const Scenario& s) {
  // Re-raise invariant violations as validation errors so the CLI can map
  // them to the right exit code with the offending key in the message.
  try {
    validate(s.ckpt);
    validate(s.power);
    validate(s.platform);
    validate(s.work);
  } catch (const std::invalid_argument& err) {
    throw ValidationError(err.what());
  }
}

}  // namespace

RunConfig build_config(const KeyValues& file_keys, const KeyValues& overrides) {
  KeyTable table;
  for (const auto& source : {file_keys, overrides}) {
    for (const auto& [key, value] : source) {
      if (!known_key(key)) throw ValidationError("unknown key " + key);
      table.values[key] = value;
    }
  }

  RunConfig cfg;
  const bool has_preset = table.has("run.preset");

  if (has_preset) {
    cfg.preset_name = *table.find("run.preset");
    try {
      cfg.scenario = preset(cfg.preset_name);
    } catch (const std::invalid_argument& err) {
      throw ValidationError(std::string("run.preset: ") + err.what());
    }
  } else {
    // Without a preset the scenario must be fully explicit.
    for (const char* key :
         {"checkpoint.c", "checkpoint.r", "checkpoint.d", "checkpoint.omega",
          "power.p_static", "power.p_cal", "power.p_io", "power.p_down",
          "workload.t_base"}) {
      if (!table.has(key)) throw ValidationError("missing required key " + std::string(key));
    }
    if (!table.has("platform.mtbf") && !table.has("platform.mtbf_ind")) {
      throw ValidationError(
          "missing required key platform.mtbf_ind (or platform.mtbf); "
          "provide a preset or the full parameter set");
    }
    cfg.scenario.name = "custom";
  }

  Scenario& s = cfg.scenario;
  s.ckpt.c = parse_key_or(table, "checkpoint.c", parse_duration_min, s.ckpt.c);
  s.ckpt.r = parse_key_or(table, "checkpoint.r", parse_duration_min, s.ckpt.r);
  s.ckpt.d = parse_key_or(table, "checkpoint.d", parse_duration_min, s.ckpt.d);
  s.ckpt.omega = parse_key_or(table, "checkpoint.omega", parse_double, s.ckpt.omega);
  s.power.p_static = parse_key_or(table, "power.p_static", parse_power_mw, s.power.p_static);
  s.power.p_cal = parse_key_or(table, "power.p_cal", parse_power_mw, s.power.p_cal);
  s.power.p_io = parse_key_or(table, "power.p_io", parse_power_mw, s.power.p_io);
  s.power.p_down = parse_key_or(table, "power.p_down", parse_power_mw, s.power.p_down);
  s.work.t_base = parse_key_or(table, "workload.t_base", parse_duration_min, s.work.t_base);

  if (table.has("platform.mtbf") && table.has("platform.mtbf_ind")) {
    throw ValidationError(
        "platform.mtbf and platform.mtbf_ind are mutually exclusive; give one");
  }
  if (table.has("platform.mtbf")) {
    if (table.has("platform.n_nodes")) {
      throw ValidationError("platform.mtbf fixes the platform MTBF directly; "
                            "platform.n_nodes cannot be combined with it");
    }
    s.platform = Platform::with_mtbf(parse_key(table, "platform.mtbf", parse_duration_min));
  } else {
    const std::uint64_t n =
        parse_key_or(table, "platform.n_nodes", parse_u64, s.platform.n_nodes);
    const double mtbf_ind =
        parse_key_or(table, "platform.mtbf_ind", parse_duration_min, s.platform.mtbf_ind);
    s.platform = Platform::from_nodes(n, mtbf_ind);
  }

  validate_scenario_config(s);

  cfg.command = parse_key_or(table, "run.command", [](const std::string& v) { return v; },
                             cfg.command);
  cfg.trials = parse_key_or(table, "run.trials", parse_u64, cfg.trials);
  cfg.seed = parse_key_or(table, "run.seed", parse_u64, cfg.seed);
  cfg.tolerance_pct = parse_key_or(table, "run.tolerance", parse_double, cfg.tolerance_pct);
  cfg.period = parse_key_or(table, "run.period", parse_duration_min, cfg.period);
  cfg.axis = parse_key_or(table, "run.axis", [](const std::string& v) { return v; }, cfg.axis);
  cfg.fig = parse_key_or(table, "run.fig", [](const std::string& v) { return v; }, cfg.fig);
  cfg.out_path =
      parse_key_or(table, "run.out", [](const std::string& v) { return v; }, cfg.out_path);
  if (table.has("run.values")) cfg.values = parse_key(table, "run.values", parse_value_list);

  if (cfg.trials < 1) throw ValidationError("run.trials violates trials >= 1");
  if (cfg.tolerance_pct <= 0) throw ValidationError("run.tolerance violates tolerance > 0");
  if (!cfg.axis.empty()) {
    try {
      axis_from_name(cfg.axis);
    } catch (const std::invalid_argument& err) {
      throw ValidationError(std::string("run.axis: ") + err.what());
    }
  }
  return cfg;
}

}  // namespace cli
}  // namespace ckpt
