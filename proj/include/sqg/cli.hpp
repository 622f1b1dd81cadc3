#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace sqg {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitBlowUp = 3;
inline constexpr int kExitCheckFailed = 4;

struct Command {
  /// simulate, picard, analyze, verify or symbols.
  std::string verb;
  std::optional<std::string> config_path;
  std::string output_dir = "sqg_out";
  /// key=value overrides, applied last.
  std::vector<std::string> overrides;
  /// verify: check ids to run; empty means all.
  std::vector<std::string> checks;
};

/// Runs one command and returns its exit status. Progress goes to `out`,
/// diagnostics to `err`. Configuration and usage errors return kExitUsage.
int run(const Command& command, std::ostream& out, std::ostream& err);

}  // namespace sqg
