#include "sshent/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "sshent/errors.hpp"

namespace sshent {

namespace fs = std::filesystem;
using nlohmann::json;

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double parse_double(const std::string& s) {
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  double v = 0.0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) throw ValidationError("not a number: '" + s + "'");
  return v;
}

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return i;
  throw ValidationError("missing column: " + name);
}

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

json number(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json records(const CsvTable& t) {
  json arr = json::array();
  for (const auto& row : t.rows) {
    json rec = json::object();
    for (std::size_t i = 0; i < t.header.size(); ++i) {
      const auto& cell = row[i];
      if (cell.empty()) {
        rec[t.header[i]] = nullptr;
        continue;
      }
      try {
        rec[t.header[i]] = number(parse_double(cell));
      } catch (const ValidationError&) {
        rec[t.header[i]] = cell;
      }
    }
    arr.push_back(std::move(rec));
  }
  return arr;
}

std::string size_label(Size s) { return s.is_thermodynamic() ? "inf" : std::to_string(*s.cells); }

void write_series(const fs::path& path, std::span<const double> xs, std::span<const double> ys) {
  std::ostringstream os;
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (std::isfinite(ys[i])) os << format_double(xs[i]) << ' ' << format_double(ys[i]) << '\n';
  write_file(path, os.str());
}

fs::path with_suffix(const fs::path& stem, const std::string& suffix) {
  return stem.parent_path() / (stem.filename().string() + suffix);
}

}  // namespace

CsvTable read_csv(std::istream& in) {
  CsvTable t;
  std::string line;
  if (!std::getline(in, line)) throw ValidationError("empty CSV input");
  t.header = split(line, ',');
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto row = split(line, ',');
    if (row.size() != t.header.size())
      throw ValidationError("CSV line " + std::to_string(lineno) + ": expected " +
                            std::to_string(t.header.size()) + " fields, got " + std::to_string(row.size()));
    t.rows.push_back(std::move(row));
  }
  return t;
}

void write_csv(std::ostream& out, const CsvTable& table) {
  auto emit = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
    out << '\n';
  };
  emit(table.header);
  for (const auto& row : table.rows) emit(row);
}

CsvTable sweep_table(const SweepResult& r) {
  CsvTable t;
  t.header = {"lambda", "eta1", "eta2", "c1", "c2", "dc2_dlambda", "n", "boundary", "seed"};
  const std::string n = size_label(r.size);
  const std::string seed = r.seed ? std::to_string(*r.seed) : "";
  for (std::size_t i = 0; i < r.lambdas.size(); ++i) {
    const double d = i < r.dc2_dlambda.size() ? r.dc2_dlambda[i] : std::numeric_limits<double>::quiet_NaN();
    t.rows.push_back({format_double(r.lambdas[i]), format_double(r.eta1[i]), format_double(r.eta2[i]),
                      format_double(r.c1[i]), format_double(r.c2[i]), format_double(d), n,
                      to_string(r.boundary), seed});
  }
  return t;
}

SweepResult sweep_from_table(const CsvTable& t) {
  SweepResult r;
  const std::size_t cl = t.column("lambda"), ce1 = t.column("eta1"), ce2 = t.column("eta2"),
                    cc1 = t.column("c1"), cc2 = t.column("c2"), cd = t.column("dc2_dlambda"),
                    cn = t.column("n"), cb = t.column("boundary"), cs = t.column("seed");
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const auto& row = t.rows[i];
    r.lambdas.push_back(parse_double(row[cl]));
    r.eta1.push_back(parse_double(row[ce1]));
    r.eta2.push_back(parse_double(row[ce2]));
    r.c1.push_back(parse_double(row[cc1]));
    r.c2.push_back(parse_double(row[cc2]));
    r.dc2_dlambda.push_back(parse_double(row[cd]));
    if (std::isnan(r.c2.back()) && std::isnan(r.eta1.back())) r.gapless_points.push_back(i);
    if (i == 0) {
      r.size = row[cn] == "inf" ? Size::thermodynamic() : Size::finite(std::stoi(row[cn]));
      r.boundary = row[cb] == "open" ? Boundary::Open : Boundary::Periodic;
      if (!row[cs].empty()) r.seed = std::stoull(row[cs]);
    }
  }
  return r;
}

json sweep_json(const SweepResult& r) { return records(sweep_table(r)); }

CsvTable kitaev_table(const KitaevTable& kt) {
  CsvTable t;
  t.header = {"mu", "eta_z", "density", "compressibility", "n"};
  const std::string n = size_label(kt.size);
  for (const auto& row : kt.rows)
    t.rows.push_back({format_double(row.mu), format_double(row.eta_z), format_double(row.density),
                      format_double(row.compressibility), n});
  return t;
}

json kitaev_json(const KitaevTable& t) { return records(kitaev_table(t)); }

CsvTable disorder_table(const DisorderTable& d) {
  CsvTable t;
  t.header = {"lambda", "mean_c2", "std_c2", "n", "amplitude", "realizations"};
  for (std::size_t i = 0; i < d.lambdas.size(); ++i)
    t.rows.push_back({format_double(d.lambdas[i]), format_double(d.mean_c2[i]), format_double(d.std_c2[i]),
                      std::to_string(d.n), format_double(d.amplitude), std::to_string(d.seeds.size())});
  return t;
}

json disorder_json(const DisorderTable& d) {
  json out;
  out["records"] = records(disorder_table(d));
  json per_seed = json::array();
  for (std::size_t r = 0; r < d.seeds.size(); ++r) {
    json c2 = json::array();
    for (double v : d.per_seed[r]) c2.push_back(number(v));
    per_seed.push_back({{"seed", d.seeds[r]}, {"c2", std::move(c2)}});
  }
  out["per_seed"] = std::move(per_seed);
  return out;
}

std::string to_string(Filling f) {
  switch (f) {
    case Filling::Auto: return "auto";
    case Filling::Below: return "below";
    case Filling::Above: return "above";
  }
  return "auto";
}

CsvTable obc_table(const ObcTable& o) {
  CsvTable t;
  t.header = {"lambda", "c2", "dc2_dlambda", "n", "fill"};
  for (std::size_t i = 0; i < o.lambdas.size(); ++i)
    t.rows.push_back({format_double(o.lambdas[i]), format_double(o.c2[i]), format_double(o.dc2_dlambda[i]),
                      std::to_string(o.n), to_string(o.fill)});
  return t;
}

json obc_json(const ObcTable& o) {
  return {{"records", records(obc_table(o))},
          {"peak_lambda", number(o.peak_lambda)},
          {"peak_value", number(o.peak_value)}};
}

json critical_json(const CriticalReport& r) {
  json j = {{"n", size_label(r.size)},
            {"lambda_plus", r.lambda_plus},
            {"lambda_minus", r.lambda_minus},
            {"slope_at_plus", r.slope_at_plus},
            {"logfit_slope", r.log.slope},
            {"logfit_intercept", r.log.intercept},
            {"logfit_rms_residual", r.log.rms_residual},
            {"logfit_poor", r.log.poor}};
  j["jump_delta"] = r.jump_delta ? json(*r.jump_delta) : json(nullptr);
  return j;
}

std::string critical_text(const CriticalReport& r) {
  std::ostringstream os;
  os << "n = " << size_label(r.size) << '\n'
     << "lambda_plus = " << format_double(r.lambda_plus) << '\n'
     << "lambda_minus = " << format_double(r.lambda_minus) << '\n'
     << "slope_at_plus = " << format_double(r.slope_at_plus) << '\n';
  if (r.jump_delta) os << "jump_delta = " << format_double(*r.jump_delta) << '\n';
  os << "logfit_slope = " << format_double(r.log.slope) << '\n'
     << "logfit_intercept = " << format_double(r.log.intercept) << '\n'
     << "logfit_rms_residual = " << format_double(r.log.rms_residual) << '\n'
     << "logfit_poor = " << (r.log.poor ? "true" : "false") << '\n';
  return os.str();
}

json graph_json(const EntangledGraph& g) {
  json vertices = json::array();
  for (int s = 0; s < g.num_sites; ++s)
    vertices.push_back({{"id", s}, {"cell", cell_of(s)}, {"sublattice", is_a_site(s) ? "a" : "b"}});
  json edges = json::array();
  for (const auto& e : g.edges)
    edges.push_back({{"source", e.site1}, {"target", e.site2}, {"concurrence", e.concurrence}});
  return {{"num_cells", g.num_cells}, {"num_sites", g.num_sites}, {"phase", to_string(g.phase)},
          {"c1", g.c1},           {"c2", g.c2},               {"vertices", std::move(vertices)},
          {"edges", std::move(edges)}};
}

std::string graph_edge_list(const EntangledGraph& g) {
  std::ostringstream os;
  os << "# phase " << to_string(g.phase) << '\n';
  for (const auto& e : g.edges) os << e.site1 << ' ' << e.site2 << ' ' << format_double(e.concurrence) << '\n';
  return os.str();
}

std::vector<fs::path> emit_plot_data(const SweepResult& r, const fs::path& stem) {
  if (r.lambdas.empty()) return {};
  std::vector<double> d = r.dc2_dlambda;
  d.resize(r.lambdas.size(), std::numeric_limits<double>::quiet_NaN());
  const std::vector<fs::path> paths = {with_suffix(stem, "_c1.dat"), with_suffix(stem, "_c2.dat"),
                                       with_suffix(stem, "_dc2.dat")};
  write_series(paths[0], r.lambdas, r.c1);
  write_series(paths[1], r.lambdas, r.c2);
  write_series(paths[2], r.lambdas, d);
  return paths;
}

std::vector<fs::path> emit_plot_data(const ObcTable& t, const fs::path& stem) {
  if (t.lambdas.empty()) return {};
  const std::vector<fs::path> paths = {with_suffix(stem, "_c2.dat"), with_suffix(stem, "_dc2.dat")};
  write_series(paths[0], t.lambdas, t.c2);
  write_series(paths[1], t.lambdas, t.dc2_dlambda);
  return paths;
}

std::vector<fs::path> emit_plot_data(const KitaevTable& t, const fs::path& stem) {
  if (t.rows.empty()) return {};
  std::vector<double> mu, dens, comp;
  for (const auto& row : t.rows) {
    mu.push_back(row.mu);
    dens.push_back(row.density);
    comp.push_back(row.compressibility);
  }
  const std::vector<fs::path> paths = {with_suffix(stem, "_density.dat"), with_suffix(stem, "_compressibility.dat")};
  write_series(paths[0], mu, dens);
  write_series(paths[1], mu, comp);
  return paths;
}

std::vector<fs::path> emit_plot_data(const DisorderTable& t, const fs::path& stem) {
  if (t.lambdas.empty()) return {};
  const std::vector<fs::path> paths = {with_suffix(stem, "_mean_c2.dat")};
  write_series(paths[0], t.lambdas, t.mean_c2);
  return paths;
}

fs::path emit_lambda_plus_series(std::span<const int> sizes, std::span<const double> values, const fs::path& stem) {
  std::vector<double> xs(sizes.begin(), sizes.end());
  const auto path = with_suffix(stem, "_lambda_plus.dat");
  write_series(path, xs, values);
  return path;
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open for writing: " + path.string());
  f << text;
  if (!f) throw Error("write failed: " + path.string());
}

}  // namespace sshent
