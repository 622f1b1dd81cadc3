#pragma once

// Flat key=value run configuration shared by every CLI verb.
//
// Precedence, lowest first: built-in defaults, config file, SQG_* environment
// variables, command-line overrides.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sqg/gevrey.hpp"
#include "sqg/littlewood_paley.hpp"
#include "sqg/snapshot.hpp"
#include "sqg/solver.hpp"
#include "sqg/verification.hpp"

namespace sqg {

enum class KeyType { integer, real, text, flag, real_list };
std::string to_string(KeyType type);

struct KeySpec {
  std::string key;
  KeyType type;
  /// Empty for verify.* keys, which fall back to the per-check defaults.
  std::string default_value;
  std::string help;
};

/// Every recognized key in display order.
const std::vector<KeySpec>& config_keys();

class Config {
 public:
  /// All keys at their defaults.
  Config();

  /// Sets a key after checking the name and the value's type. `where`
  /// prefixes error messages (e.g. "run.cfg:3").
  void set(const std::string& key, const std::string& value, const std::string& where = "");

  bool is_set(const std::string& key) const;
  const std::string& raw(const std::string& key) const;
  long long integer(const std::string& key) const;
  double real(const std::string& key) const;
  const std::string& text(const std::string& key) const;
  bool flag(const std::string& key) const;
  std::vector<double> real_list(const std::string& key) const;

  /// key -> value for every key, in display order (the echo block).
  Metadata echo() const;

 private:
  std::map<std::string, std::string> values_;
};

/// Parses key=value lines: '#' starts a comment, blank lines are skipped.
/// Throws ConfigError naming the line for malformed lines, unknown keys
/// (listing the valid ones) and type mismatches.
void apply_config_text(Config& config, const std::string& text, const std::string& source);

/// SQG_<KEY> variables from the process environment ('.' in a key becomes
/// '_', case-insensitive). Unknown SQG_ names are rejected.
std::vector<std::pair<std::string, std::string>> environment_overrides();

/// Defaults < file (when given) < environment < overrides ("key=value").
Config parse_config(const std::optional<std::string>& path, const std::vector<std::string>& overrides,
                    const std::vector<std::pair<std::string, std::string>>& environment =
                        environment_overrides());

SolverConfig solver_config(const Config& config);
GevreyParams gevrey_params(const Config& config);
/// Besov parameters for analysis; s = sigma unless besov_s is set.
BesovParams besov_params(const Config& config);
/// Per-check defaults with verify.* keys applied on top.
CheckConfig check_config(const Config& config, const std::string& check_id);

}  // namespace sqg
