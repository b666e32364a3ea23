#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "sshent/config.hpp"

namespace sshent {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumerical = 3;

/// Environment variable naming the default output directory.
inline constexpr const char* kOutputDirEnv = "SSHENT_OUTPUT_DIR";

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Invariant checks run by `sshent verify`.
std::vector<CheckResult> verify_suite();

/// Executes a parsed configuration. Tables go to cfg.output, to
/// $SSHENT_OUTPUT_DIR/<command>.<format> when no path is given, or to `out`.
/// Notes and diagnostics go to `err`.
/// Returns 0 on success, 2 on validation errors, 3 on numerical errors
/// (including gapless requested points and failed verify checks).
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Parses `sshent <command> [--config file] [flags]` and runs it.
/// Flags override values read from the config file.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sshent
