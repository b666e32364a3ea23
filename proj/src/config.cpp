#include "sshent/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

#include "sshent/analysis.hpp"
#include "sshent/io.hpp"

namespace sshent {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

template <class T>
T parse_integer(const std::string& v, const std::string& key, int line) {
  T out{};
  const auto* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end || v.empty()) throw ConfigError(line, key, "expected an integer, got '" + v + "'");
  return out;
}

double parse_real(const std::string& v, const std::string& key, int line) {
  try {
    const double x = parse_double(v);
    if (!std::isfinite(x)) throw ValidationError("non-finite");
    return x;
  } catch (const ValidationError&) {
    throw ConfigError(line, key, "expected a finite number, got '" + v + "'");
  }
}

bool parse_bool(const std::string& v, const std::string& key, int line) {
  const auto s = lower(v);
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  throw ConfigError(line, key, "expected true or false, got '" + v + "'");
}

Command parse_command(const std::string& v, int line) {
  static const std::pair<const char*, Command> names[] = {
      {"sweep", Command::Sweep},   {"critical", Command::Critical}, {"graph", Command::Graph},
      {"kitaev", Command::Kitaev}, {"disorder", Command::Disorder}, {"obc", Command::Obc},
      {"verify", Command::Verify}};
  for (const auto& [name, c] : names)
    if (v == name) return c;
  throw ConfigError(line, "command", "unknown command '" + v + "'");
}

bool near(double x, double target) { return std::abs(x - target) <= 1e-12 * std::max(1.0, std::abs(target)); }

}  // namespace

ConfigError::ConfigError(int line, std::string field, const std::string& message)
    : ValidationError((line > 0 ? "line " + std::to_string(line) + ", " : std::string()) + "field '" + field +
                      "': " + message),
      line_(line),
      field_(std::move(field)) {}

std::string to_string(Command c) {
  switch (c) {
    case Command::Sweep: return "sweep";
    case Command::Critical: return "critical";
    case Command::Graph: return "graph";
    case Command::Kitaev: return "kitaev";
    case Command::Disorder: return "disorder";
    case Command::Obc: return "obc";
    case Command::Verify: return "verify";
  }
  return "sweep";
}

std::string to_string(OutputFormat f) { return f == OutputFormat::Csv ? "csv" : "json"; }

Grid parse_grid(const std::string& text) {
  const auto first = text.find(':');
  const auto second = first == std::string::npos ? std::string::npos : text.find(':', first + 1);
  if (second == std::string::npos || text.find(':', second + 1) != std::string::npos)
    throw ConfigError(0, "grid.range", "expected start:stop:points, got '" + text + "'");
  Grid g;
  g.start = parse_real(trim(text.substr(0, first)), "grid.range", 0);
  g.stop = parse_real(trim(text.substr(first + 1, second - first - 1)), "grid.range", 0);
  g.points = parse_integer<int>(trim(text.substr(second + 1)), "grid.range", 0);
  return g;
}

std::string to_string(const Grid& g) {
  return format_double(g.start) + ":" + format_double(g.stop) + ":" + std::to_string(g.points);
}

ModelSpec RunConfig::model() const {
  ModelSpec spec = family == Family::SSH ? ModelSpec::ssh(n, lambda, boundary)
                                         : ModelSpec::kitaev(n, t, delta, mu, boundary);
  if (disordered || command == Command::Disorder) spec.disorder = DisorderSpec{amplitude, seed};
  return spec;
}

Grid RunConfig::effective_grid() const {
  if (grid) return *grid;
  switch (command) {
    case Command::Kitaev: return {2.0 * t - 0.5, 2.0 * t + 0.5, 100};
    case Command::Disorder: return {-0.2, 0.2, 40};
    case Command::Obc: return {-0.02, 0.06, 161};
    default: return {-0.9, 0.9, 180};
  }
}

std::vector<double> RunConfig::grid_values(std::vector<std::string>* notes) const {
  const Grid g = effective_grid();
  auto values = linspace(g.start, g.stop, g.points);
  const bool clean_periodic = boundary == Boundary::Periodic && !disordered && command != Command::Disorder;
  if (!clean_periodic) return values;
  const bool even = thermodynamic || n % 2 == 0;
  std::vector<double> kept;
  for (double x : values) {
    bool drop = false;
    if (command == Command::Kitaev) {
      drop = (even && near(x, 2.0 * t)) || near(x, -2.0 * t);
    } else if (command == Command::Sweep) {
      drop = even && near(x, 0.0);
    }
    if (drop) {
      if (notes) notes->push_back("dropped gapless grid point " + format_double(x));
    } else {
      kept.push_back(x);
    }
  }
  return kept;
}

void RunConfig::validate() const {
  if (n < 2) throw ConfigError(0, "model.N", "must be at least 2");
  if ((command == Command::Kitaev) != (family == Family::Kitaev))
    throw ConfigError(0, "model.family", "the kitaev command and family = kitaev go together");
  if (grid) {
    if (grid->points < 2) throw ConfigError(0, "grid.range", "needs at least 2 points");
    if (!(grid->stop > grid->start)) throw ConfigError(0, "grid.range", "stop must exceed start");
  }
  if (realizations < 1) throw ConfigError(0, "disorder.realizations", "must be at least 1");
  if (amplitude < 0.0) throw ConfigError(0, "disorder.amplitude", "must be non-negative");
  for (int s : sizes)
    if (s < 2) throw ConfigError(0, "model.sizes", "sizes must be at least 2");
  if (thermodynamic && (boundary == Boundary::Open || disordered || command == Command::Graph ||
                        command == Command::Disorder || command == Command::Obc))
    throw ConfigError(0, "model.thermodynamic", "needs a clean periodic chain and a sweep-type command");
  if (std::abs(lambda) > 1.0) throw ConfigError(0, "model.lambda", "must lie in [-1, 1]");
  if (!output.empty()) {
    const auto parent = std::filesystem::path(output).parent_path();
    std::error_code ec;
    if (!parent.empty() && std::filesystem::exists(parent, ec) && !std::filesystem::is_directory(parent, ec))
      throw ConfigError(0, "output.path", "parent is not a directory");
    if (std::filesystem::is_directory(output, ec)) throw ConfigError(0, "output.path", "is a directory");
  }
}

void apply_setting(RunConfig& cfg, const std::string& key, const std::string& raw, int line) {
  const std::string v = trim(raw);
  if (key == "command") {
    cfg.command = parse_command(v, line);
    if (cfg.command == Command::Kitaev) cfg.family = Family::Kitaev;
  } else if (key == "model.family") {
    const auto s = lower(v);
    if (s == "ssh") cfg.family = Family::SSH;
    else if (s == "kitaev") cfg.family = Family::Kitaev;
    else throw ConfigError(line, key, "expected ssh or kitaev, got '" + v + "'");
  } else if (key == "model.N") {
    cfg.n = parse_integer<int>(v, key, line);
  } else if (key == "model.lambda") {
    cfg.lambda = parse_real(v, key, line);
  } else if (key == "model.t") {
    cfg.t = parse_real(v, key, line);
  } else if (key == "model.delta") {
    cfg.delta = parse_real(v, key, line);
  } else if (key == "model.mu") {
    cfg.mu = parse_real(v, key, line);
  } else if (key == "model.boundary") {
    const auto s = lower(v);
    if (s == "periodic" || s == "pbc") cfg.boundary = Boundary::Periodic;
    else if (s == "open" || s == "obc") cfg.boundary = Boundary::Open;
    else throw ConfigError(line, key, "expected periodic or open, got '" + v + "'");
  } else if (key == "model.thermodynamic") {
    cfg.thermodynamic = parse_bool(v, key, line);
  } else if (key == "model.fill") {
    const auto s = lower(v);
    if (s == "auto") cfg.fill = Filling::Auto;
    else if (s == "below") cfg.fill = Filling::Below;
    else if (s == "above") cfg.fill = Filling::Above;
    else throw ConfigError(line, key, "expected auto, below or above, got '" + v + "'");
  } else if (key == "model.sizes") {
    cfg.sizes.clear();
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      if (!item.empty()) cfg.sizes.push_back(parse_integer<int>(item, key, line));
    }
  } else if (key == "model.full_scan") {
    cfg.full_scan = parse_bool(v, key, line);
  } else if (key == "disorder.enabled") {
    cfg.disordered = parse_bool(v, key, line);
  } else if (key == "disorder.amplitude") {
    cfg.amplitude = parse_real(v, key, line);
    cfg.disordered = true;
  } else if (key == "disorder.seed") {
    cfg.seed = parse_integer<std::uint64_t>(v, key, line);
    cfg.disordered = true;
  } else if (key == "disorder.realizations") {
    cfg.realizations = parse_integer<int>(v, key, line);
  } else if (key == "grid.range") {
    try {
      cfg.grid = parse_grid(v);
    } catch (const ConfigError&) {
      throw ConfigError(line, key, "expected start:stop:points, got '" + v + "'");
    }
  } else if (key == "output.path") {
    cfg.output = v;
  } else if (key == "output.format") {
    const auto s = lower(v);
    if (s == "csv") cfg.format = OutputFormat::Csv;
    else if (s == "json") cfg.format = OutputFormat::Json;
    else throw ConfigError(line, key, "expected csv or json, got '" + v + "'");
  } else if (key == "output.plot_data") {
    cfg.plot_data = parse_bool(v, key, line);
  } else {
    throw ConfigError(line, key, "unknown key");
  }
}

RunConfig parse_config(std::istream& in, RunConfig cfg) {
  static const char* sections[] = {"model", "disorder", "grid", "output"};
  std::string section, line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto text = trim(line);
    if (text.empty() || text[0] == '#' || text[0] == ';') continue;
    if (text.front() == '[') {
      if (text.back() != ']') throw ConfigError(lineno, text, "unterminated section header");
      section = trim(text.substr(1, text.size() - 2));
      if (std::find(std::begin(sections), std::end(sections), section) == std::end(sections))
        throw ConfigError(lineno, section, "unknown section");
      continue;
    }
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw ConfigError(lineno, text, "expected key = value");
    const auto key = trim(text.substr(0, eq));
    if (key.empty()) throw ConfigError(lineno, text, "missing key");
    apply_setting(cfg, section.empty() ? key : section + "." + key, text.substr(eq + 1), lineno);
  }
  return cfg;
}

RunConfig load_config(const std::string& path, RunConfig base) {
  std::ifstream f(path);
  if (!f) throw ConfigError(0, "config", "cannot read '" + path + "'");
  return parse_config(f, std::move(base));
}

std::string serialize(const RunConfig& c) {
  std::ostringstream os;
  os << "command = " << to_string(c.command) << "\n\n[model]\n"
     << "family = " << to_string(c.family) << '\n'
     << "N = " << c.n << '\n'
     << "lambda = " << format_double(c.lambda) << '\n'
     << "t = " << format_double(c.t) << '\n'
     << "delta = " << format_double(c.delta) << '\n'
     << "mu = " << format_double(c.mu) << '\n'
     << "boundary = " << to_string(c.boundary) << '\n'
     << "thermodynamic = " << (c.thermodynamic ? "true" : "false") << '\n'
     << "fill = " << to_string(c.fill) << '\n'
     << "sizes = ";
  for (std::size_t i = 0; i < c.sizes.size(); ++i) os << (i ? "," : "") << c.sizes[i];
  os << '\n'
     << "full_scan = " << (c.full_scan ? "true" : "false") << "\n\n[disorder]\n"
     << "amplitude = " << format_double(c.amplitude) << '\n'
     << "seed = " << c.seed << '\n'
     << "realizations = " << c.realizations << '\n'
     << "enabled = " << (c.disordered ? "true" : "false") << "\n\n";
  if (c.grid) os << "[grid]\nrange = " << to_string(*c.grid) << "\n\n";
  os << "[output]\n"
     << "path = " << c.output << '\n'
     << "format = " << to_string(c.format) << '\n'
     << "plot_data = " << (c.plot_data ? "true" : "false") << '\n';
  return os.str();
}

}  // namespace sshent
