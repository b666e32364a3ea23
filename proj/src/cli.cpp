#include "sshent/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <numbers>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <Eigen/Eigenvalues>

#include "sshent/analysis.hpp"
#include "sshent/gaussian.hpp"
#include "sshent/io.hpp"

namespace sshent {

namespace fs = std::filesystem;

namespace {

std::string extension(OutputFormat f) { return f == OutputFormat::Csv ? ".csv" : ".json"; }

std::optional<fs::path> output_path(const RunConfig& cfg) {
  if (!cfg.output.empty()) return fs::path(cfg.output);
  if (const char* dir = std::getenv(kOutputDirEnv); dir && *dir)
    return fs::path(dir) / (to_string(cfg.command) + extension(cfg.format));
  return std::nullopt;
}

fs::path plot_stem(const RunConfig& cfg) {
  if (auto p = output_path(cfg)) return p->parent_path() / p->stem();
  return fs::path(to_string(cfg.command));
}

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out, std::ostream& err) {
  if (auto p = output_path(cfg)) {
    write_file(*p, text);
    err << "wrote " << p->string() << '\n';
  } else {
    out << text;
  }
}

std::string table_text(const RunConfig& cfg, const CsvTable& table, const nlohmann::json& j) {
  if (cfg.format == OutputFormat::Json) return j.dump(2) + "\n";
  std::ostringstream os;
  write_csv(os, table);
  return os.str();
}

void report_plot_files(const std::vector<fs::path>& files, std::ostream& err) {
  if (files.empty()) err << "warning: empty result, no plot data written\n";
  for (const auto& f : files) err << "wrote " << f.string() << '\n';
}

Size size_of(const RunConfig& cfg) { return cfg.thermodynamic ? Size::thermodynamic() : Size::finite(cfg.n); }

int gapless_exit(const std::vector<std::size_t>& points, std::span<const double> grid, std::ostream& err) {
  if (points.empty()) return kExitOk;
  for (auto i : points) err << "error: gapless at requested point " << format_double(grid[i]) << '\n';
  return kExitNumerical;
}

int run_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::vector<std::string> notes;
  const auto lambdas = cfg.grid_values(&notes);
  for (const auto& n : notes) err << "note: " << n << '\n';
  const auto r = sweep(cfg.model(), lambdas, size_of(cfg), cfg.fill);
  emit(cfg, table_text(cfg, sweep_table(r), sweep_json(r)), out, err);
  if (cfg.plot_data) report_plot_files(emit_plot_data(r, plot_stem(cfg)), err);
  return gapless_exit(r.gapless_points, r.lambdas, err);
}

int run_critical(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto rep = critical_report(size_of(cfg));
  std::vector<double> lp;
  if (!cfg.sizes.empty()) lp = lambda_plus_vs_size(cfg.sizes);
  std::string text;
  if (cfg.format == OutputFormat::Json) {
    auto j = critical_json(rep);
    if (!cfg.sizes.empty()) {
      nlohmann::json series = nlohmann::json::array();
      for (std::size_t i = 0; i < cfg.sizes.size(); ++i)
        series.push_back({{"n", cfg.sizes[i]},
                          {"lambda_plus", std::isfinite(lp[i]) ? nlohmann::json(lp[i]) : nlohmann::json(nullptr)}});
      j["lambda_plus_vs_n"] = std::move(series);
    }
    text = j.dump(2) + "\n";
  } else {
    text = critical_text(rep);
    for (std::size_t i = 0; i < cfg.sizes.size(); ++i)
      text += "lambda_plus[" + std::to_string(cfg.sizes[i]) + "] = " + format_double(lp[i]) + "\n";
  }
  emit(cfg, text, out, err);
  if (cfg.plot_data) {
    if (cfg.sizes.empty()) {
      err << "warning: no sizes given, no plot data written\n";
    } else {
      report_plot_files({emit_lambda_plus_series(cfg.sizes, lp, plot_stem(cfg))}, err);
    }
  }
  return kExitOk;
}

int run_graph(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto g = entangled_graph(cfg.model(), GraphOptions{cfg.full_scan, cfg.fill});
  emit(cfg, cfg.format == OutputFormat::Json ? graph_json(g).dump(2) + "\n" : graph_edge_list(g), out, err);
  return kExitOk;
}

int run_kitaev(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::vector<std::string> notes;
  const auto mus = cfg.grid_values(&notes);
  for (const auto& n : notes) err << "note: " << n << '\n';
  const auto t = kitaev_density(cfg.model(), mus, size_of(cfg));
  emit(cfg, table_text(cfg, kitaev_table(t), kitaev_json(t)), out, err);
  if (cfg.plot_data) report_plot_files(emit_plot_data(t, plot_stem(cfg)), err);
  return gapless_exit(t.gapless_points, mus, err);
}

int run_disorder(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto lambdas = cfg.grid_values();
  const auto t = disorder_ensemble(cfg.model(), lambdas, cfg.realizations);
  emit(cfg, table_text(cfg, disorder_table(t), disorder_json(t)), out, err);
  if (cfg.plot_data) report_plot_files(emit_plot_data(t, plot_stem(cfg)), err);
  return kExitOk;
}

int run_obc(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto lambdas = cfg.grid_values();
  const Filling fill = cfg.fill == Filling::Auto ? Filling::Below : cfg.fill;
  const auto t = obc_center_derivative(cfg.n, lambdas, fill);
  emit(cfg, table_text(cfg, obc_table(t), obc_json(t)), out, err);
  if (cfg.plot_data) report_plot_files(emit_plot_data(t, plot_stem(cfg)), err);
  return kExitOk;
}

int run_verify(std::ostream& out) {
  bool all = true;
  for (const auto& c : verify_suite()) {
    out << (c.pass ? "PASS " : "FAIL ") << c.name;
    if (!c.detail.empty()) out << "  (" << c.detail << ")";
    out << '\n';
    all = all && c.pass;
  }
  out << (all ? "all checks passed" : "some checks failed") << '\n';
  return all ? kExitOk : kExitNumerical;
}

Eigen::MatrixXd random_skew(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      a(i, j) = u(rng);
      a(j, i) = -a(i, j);
    }
  return a;
}

CheckResult check(std::string name, double error, double tol) {
  return {std::move(name), error <= tol, "error " + format_double(error) + ", tol " + format_double(tol)};
}

}  // namespace

std::vector<CheckResult> verify_suite() {
  std::vector<CheckResult> out;
  auto guarded = [&](const std::string& name, auto&& body) {
    try {
      out.push_back(body());
    } catch (const std::exception& e) {
      out.push_back({name, false, e.what()});
    }
  };

  guarded("hamiltonian skew-symmetric", [] {
    const auto m = realspace_hamiltonian(ModelSpec::ssh(8, 0.3)).matrix();
    const auto k = realspace_hamiltonian(ModelSpec::kitaev(7, 1.0, 0.7, 0.4)).matrix();
    return check("hamiltonian skew-symmetric", (m + m.transpose()).cwiseAbs().maxCoeff() +
                                                    (k + k.transpose()).cwiseAbs().maxCoeff(), 0.0);
  });

  guarded("flattened square is -1", [] {
    const auto mbar = spectral_flatten(realspace_hamiltonian(ModelSpec::kitaev(9, 1.0, 0.6, 0.8))).matrix();
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(mbar.rows(), mbar.cols());
    return check("flattened square is -1", (mbar * mbar + id).cwiseAbs().maxCoeff(), 1e-10);
  });

  guarded("iM spectrum matches |h(k)|", [] {
    const auto spec = ModelSpec::ssh(8, 0.3);
    const Eigen::MatrixXcd im = std::complex<double>(0, 1) * realspace_hamiltonian(spec).matrix().cast<std::complex<double>>();
    Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(im).eigenvalues();
    std::vector<double> expect;
    for (double k : momentum_grid(8).momenta) {
      const double h = bloch_vector(spec, k).norm();
      for (double s : {-h, -h, h, h}) expect.push_back(s);
    }
    std::sort(expect.begin(), expect.end());
    double err = 0.0;
    for (Eigen::Index i = 0; i < ev.size(); ++i) err = std::max(err, std::abs(ev(i) - expect[static_cast<std::size_t>(i)]));
    return check("iM spectrum matches |h(k)|", err, 1e-10);
  });

  guarded("reduced density matrix valid", [] {
    const auto mbar = ground_state_correlations(ModelSpec::kitaev(8, 1.0, 0.5, 0.3));
    const int modes[] = {1, 2, 5};
    const auto rho = rdm_from_restriction(restrict_modes(mbar, modes)).matrix;
    const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    const double tr = std::abs(rho.trace() - 1.0);
    const double neg = std::max(0.0, -Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(rho).eigenvalues().minCoeff());
    return check("reduced density matrix valid", std::max({herm, tr, neg}), 1e-12);
  });

  guarded("pfaffian squared is determinant", [] {
    std::mt19937_64 rng(7);
    double worst = 0.0;
    for (int n = 2; n <= 12; n += 2) {
      const auto a = random_skew(n, rng);
      const double pf = pfaffian(a), det = a.determinant();
      worst = std::max(worst, std::abs(pf * pf - det) / std::max(1e-300, std::abs(det)));
    }
    return check("pfaffian squared is determinant", worst, 1e-8);
  });

  guarded("concurrence closed form", [] {
    double worst = 0.0;
    for (double eta : {-0.9, -0.5, 0.1, 0.4, 0.6, 0.95})
      worst = std::max(worst, std::abs(concurrence(eta_form_rdm(eta)) - concurrence_from_eta(eta)));
    return check("concurrence closed form", worst, 1e-10);
  });

  guarded("momentum and real-space RDMs agree", [] {
    double worst = 0.0;
    for (int n : {3, 4, 5}) {
      const auto spec = ModelSpec::ssh(n, 0.3);
      const auto mbar = ground_state_correlations(spec);
      for (int s1 = 0; s1 < 2 * n; ++s1)
        for (int s2 = s1 + 1; s2 < 2 * n; ++s2) {
          const auto a = rdm_pair(spec, s1, s2).matrix;
          const auto b = rdm_pair_from_correlations(mbar, s1, s2).matrix;
          worst = std::max(worst, (a - b).cwiseAbs().maxCoeff());
        }
    }
    return check("momentum and real-space RDMs agree", worst, 1e-10);
  });

  guarded("free-energy identity", [] {
    double worst = 0.0;
    for (int n : {11, 16}) worst = std::max(worst, free_energy_check(n, 0.3).diff);
    return check("free-energy identity", worst, 1e-6);
  });

  guarded("lambda_minus = -lambda_plus", [] {
    const auto s = Size::finite(40);
    return check("lambda_minus = -lambda_plus", std::abs(find_lambda_plus(s) + find_lambda_minus(s)), 1e-9);
  });

  guarded("even-N jump is 2/N", [] {
    double worst = 0.0;
    for (int n : {4, 16, 30}) worst = std::max(worst, std::abs(jump_at_zero(n) - 2.0 / n));
    return check("even-N jump is 2/N", worst, 1e-9);
  });

  return out;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    cfg.validate();
    switch (cfg.command) {
      case Command::Sweep: return run_sweep(cfg, out, err);
      case Command::Critical: return run_critical(cfg, out, err);
      case Command::Graph: return run_graph(cfg, out, err);
      case Command::Kitaev: return run_kitaev(cfg, out, err);
      case Command::Disorder: return run_disorder(cfg, out, err);
      case Command::Obc: return run_obc(cfg, out, err);
      case Command::Verify: return run_verify(out);
    }
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const WindowError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const GridTooCoarse& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitOk;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  struct Flag {
    const char* name;
    const char* key;
    const char* help;
    bool is_switch;
  };
  static const Flag flags[] = {
      {"--model", "model.family", "model family: ssh or kitaev", false},
      {"-N,--N", "model.N", "unit cells (SSH) or sites (Kitaev)", false},
      {"--lambda", "model.lambda", "SSH dimerization lambda", false},
      {"--t", "model.t", "Kitaev hopping", false},
      {"--delta", "model.delta", "Kitaev pairing", false},
      {"--mu", "model.mu", "Kitaev chemical potential", false},
      {"--boundary", "model.boundary", "periodic or open", false},
      {"--thermodynamic", "model.thermodynamic", "use the N -> infinity limit", true},
      {"--fill", "model.fill", "auto, below or above", false},
      {"--sizes", "model.sizes", "comma-separated N list for lambda_plus(N)", false},
      {"--full-scan", "model.full_scan", "graph: scan all site pairs", true},
      {"--disorder", "disorder.enabled", "enable onsite disorder", true},
      {"--amplitude", "disorder.amplitude", "disorder amplitude W (onsite energies in [-W, W])", false},
      {"--seed", "disorder.seed", "disorder seed", false},
      {"--realizations", "disorder.realizations", "disorder realizations", false},
      {"--grid", "grid.range", "start:stop:points, inclusive", false},
      {"-o,--output", "output.path", "output file", false},
      {"--format", "output.format", "csv or json", false},
      {"--plot-data", "output.plot_data", "also write two-column .dat series", true},
  };
  static const std::pair<const char*, const char*> commands[] = {
      {"sweep", "eta and concurrence over a lambda grid"},
      {"critical", "lambda_plus, slope, jump and log-law fit"},
      {"graph", "entangled graph and phase label"},
      {"kitaev", "Kitaev local density and compressibility over a mu grid"},
      {"disorder", "disorder-averaged centre-bond C2"},
      {"obc", "open-chain centre-bond C2 and its derivative"},
      {"verify", "run the invariant checks"},
  };
  constexpr std::size_t kFlags = std::size(flags);

  CLI::App app{"Two-site entanglement of free-fermion chains", "sshent"};
  app.require_subcommand(1);
  std::string config_path;
  std::vector<std::string> values(kFlags);
  std::vector<bool> switches(kFlags, false);
  std::vector<std::pair<CLI::App*, std::vector<CLI::Option*>>> subs;
  for (const auto& [name, desc] : commands) {
    auto* sub = app.add_subcommand(name, desc);
    sub->add_option("--config", config_path, "key = value config file");
    std::vector<CLI::Option*> opts;
    for (std::size_t i = 0; i < kFlags; ++i) {
      if (flags[i].is_switch) {
        opts.push_back(sub->add_flag(flags[i].name, flags[i].help));
      } else {
        opts.push_back(sub->add_option(flags[i].name, values[i], flags[i].help)->allow_extra_args(false));
      }
    }
    subs.emplace_back(sub, std::move(opts));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    RunConfig cfg;
    for (const auto& [sub, opts] : subs) {
      if (!sub->parsed()) continue;
      if (!config_path.empty()) cfg = load_config(config_path);
      apply_setting(cfg, "command", sub->get_name());
      for (std::size_t i = 0; i < kFlags; ++i) {
        if (opts[i]->count() == 0) continue;
        apply_setting(cfg, flags[i].key, flags[i].is_switch ? "true" : values[i]);
      }
    }
    return run(cfg, out, err);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
}

}  // namespace sshent
