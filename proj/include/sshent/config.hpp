#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sshent/entanglement.hpp"
#include "sshent/errors.hpp"
#include "sshent/model.hpp"

namespace sshent {

enum class Command { Sweep, Critical, Graph, Kitaev, Disorder, Obc, Verify };
enum class OutputFormat { Csv, Json };

std::string to_string(Command c);
std::string to_string(OutputFormat f);

/// Config or flag error with the offending line (0 for flags) and field.
class ConfigError : public ValidationError {
 public:
  ConfigError(int line, std::string field, const std::string& message);
  int line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  int line_;
  std::string field_;
};

/// Inclusive grid `start:stop:points`.
struct Grid {
  double start = 0.0;
  double stop = 0.0;
  int points = 2;
};

Grid parse_grid(const std::string& text);
std::string to_string(const Grid& g);

/// Everything a CLI run needs. Config files and flags share the same keys:
///
///   command = sweep
///   [model]     family, N, lambda, t, delta, mu, boundary, thermodynamic,
///               fill, sizes, full_scan
///   [disorder]  enabled, amplitude, seed, realizations
///   [grid]      range = start:stop:points
///   [output]    path, format, plot_data
///
/// Setting disorder.amplitude or disorder.seed enables disorder.
struct RunConfig {
  Command command = Command::Sweep;

  Family family = Family::SSH;
  int n = 16;
  bool thermodynamic = false;
  double lambda = 0.0;
  double t = 1.0;
  double delta = 1.0;
  double mu = 0.0;
  Boundary boundary = Boundary::Periodic;
  Filling fill = Filling::Auto;
  std::vector<int> sizes;
  bool full_scan = false;

  bool disordered = false;
  double amplitude = 0.1;
  std::uint64_t seed = 20170101;
  int realizations = 100;

  std::optional<Grid> grid;

  std::string output;
  OutputFormat format = OutputFormat::Csv;
  bool plot_data = false;

  /// Model at the configured lambda / mu.
  ModelSpec model() const;
  /// The configured grid, or the command's default.
  Grid effective_grid() const;
  /// Grid values. For clean periodic chains with a gapless point on the grid
  /// (lambda = 0 for even N or the thermodynamic limit; mu = 2t for even-N
  /// Kitaev) that point is dropped and a note appended to `notes`.
  std::vector<double> grid_values(std::vector<std::string>* notes = nullptr) const;
  /// Throws ConfigError on inconsistent settings.
  void validate() const;
};

/// Applies one `section.key = value` setting (top-level keys have no section).
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value, int line = 0);

/// Parses key = value text with [section] headers on top of `base`.
RunConfig parse_config(std::istream& in, RunConfig base = {});
RunConfig load_config(const std::string& path, RunConfig base = {});

/// Text that parse_config maps back to the same RunConfig.
std::string serialize(const RunConfig& cfg);

}  // namespace sshent
