// Acceptance suite: one PASS/FAIL line per criterion.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "fock_oracle.hpp"
#include "sshent/analysis.hpp"
#include "sshent/cli.hpp"
#include "sshent/entanglement.hpp"
#include "sshent/gaussian.hpp"

using namespace sshent;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

nlohmann::json cli_json(std::vector<std::string> args) {
  args.insert(args.begin(), "sshent");
  args.insert(args.end(), {"--format", "json"});
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  if (code != kExitOk) throw std::runtime_error("sshent exited with " + std::to_string(code) + ": " + err.str());
  return nlohmann::json::parse(out.str());
}

bool within_rel(double x, double target, double rel) { return std::abs(x - target) <= rel * std::abs(target); }

double max_abs(const Eigen::Matrix4cd& a, const Eigen::Matrix4cd& b) { return (a - b).cwiseAbs().maxCoeff(); }

Outcome c1_lambda_plus() {
  const auto j = cli_json({"critical", "--thermodynamic"});
  const double lp = j["lambda_plus"], lm = j["lambda_minus"];
  const bool pass = lp >= 0.136 && lp <= 0.140 && std::abs(lm + lp) < 1e-9;
  return {pass, fmt("lambda_plus = %.12f, lambda_minus = %.12f, |sum| = %.1e", lp, lm, std::abs(lm + lp))};
}

Outcome c2_slope() {
  const auto j = cli_json({"critical", "--thermodynamic"});
  const double s = j["slope_at_plus"];
  return {within_rel(s, -1.476, 0.02), fmt("dC1/dlambda below lambda_plus = %.5f (target -1.476, 2%%)", s)};
}

Outcome c3_jump() {
  double worst_even = 0.0, worst_direct = 0.0, worst_odd = 0.0, min_even_step = 1e300;
  for (int n = 4; n <= 200; n += 2) {
    worst_even = std::max(worst_even, std::abs(jump_at_zero(n) - 2.0 / n));
    const double step = std::abs(eta1(Size::finite(n), 1e-11) - eta1(Size::finite(n), -1e-11));
    worst_direct = std::max(worst_direct, std::abs(step - 2.0 / n));
    min_even_step = std::min(min_even_step, step / 2e-6);
  }
  for (int n = 5; n <= 199; n += 2) {
    const Size s = Size::finite(n);
    const double h = 1e-7;
    for (double l : {-1e-6, 1e-6})
      worst_odd = std::max(worst_odd, std::abs(eta1(s, l + h) - eta1(s, l - h)) / (2.0 * h));
    worst_odd = std::max(worst_odd, std::abs(eta1(s, 1e-6) - eta1(s, -1e-6)) / 2e-6);
  }
  const bool pass = worst_even < 1e-9 && worst_direct < 1e-9 && worst_odd < 10.0;
  return {pass, fmt("even max|delta - 2/N| = %.1e (direct %.1e); odd max slope = %.3f (even would be >= %.0f)",
                    worst_even, worst_direct, worst_odd, min_even_step)};
}

Outcome c4_logfit() {
  const auto j = cli_json({"critical", "--thermodynamic"});
  const double slope = j["logfit_slope"], icpt = j["logfit_intercept"];
  const double ts = 2.0 / std::numbers::pi, ti = ts * 2.0 * std::log(std::numbers::e / 2.0);
  const bool pass = within_rel(slope, ts, 0.05) && within_rel(icpt, ti, 0.10);
  return {pass, fmt("slope = %.5f (2/pi = %.5f), intercept = %.5f (target %.5f)", slope, ts, icpt, ti)};
}

Outcome c5_free_energy() {
  double worst = 0.0;
  for (int n : {11, 16})
    for (double l : linspace(-0.9, 0.8, 21)) worst = std::max(worst, free_energy_check(n, l).diff);
  return {worst < 1e-6, fmt("max |dE/dlambda - N(eta1 - eta2)| = %.2e over 21 points, N = 11, 16", worst)};
}

Outcome c6_oracles() {
  double worst_routes = 0.0;
  for (int n = 3; n <= 8; ++n)
    for (double l : {-0.6, -0.2, 0.35, 0.7}) {
      const auto spec = ModelSpec::ssh(n, l);
      const auto mbar = ground_state_correlations(spec);
      for (int i = 0; i < 2 * n; ++i)
        for (int j = i + 1; j < 2 * n; ++j)
          worst_routes = std::max(worst_routes, max_abs(rdm_pair(spec, i, j).matrix,
                                                        rdm_pair_from_correlations(mbar, i, j).matrix));
    }
  double worst_fock = 0.0;
  std::vector<ModelSpec> small = {ModelSpec::ssh(2, -0.25), ModelSpec::ssh(3, 0.4), ModelSpec::kitaev(2, 1.0, 0.8, 0.5),
                                  ModelSpec::kitaev(3, 1.0, 0.8, 0.5)};
  for (const auto& spec : small) {
    const auto q = realspace_quadratic(spec);
    const int modes = spec.num_modes();
    const oracle::Fock f(modes);
    const auto psi = oracle::ground_state(f.hamiltonian(q.hopping, q.pairing));
    const auto mbar = ground_state_correlations(spec);
    for (int i = 0; i < modes; ++i)
      for (int j = i + 1; j < modes; ++j) {
        const Eigen::Matrix4cd ref = oracle::reduced_density_matrix(f, psi, {i, j}).cast<std::complex<double>>();
        worst_fock = std::max(worst_fock, max_abs(rdm_pair_from_correlations(mbar, i, j).matrix, ref));
      }
  }
  return {worst_routes < 1e-10 && worst_fock < 1e-8,
          fmt("analytic vs real-space max diff = %.1e (N = 3..8); Gaussian vs Fock max diff = %.1e "
              "(SSH 2, 3 cells; Kitaev 2, 3 modes)",
              worst_routes, worst_fock)};
}

Outcome c7_structure() {
  int checked = 0, nonzero = 0;
  for (int n : {7, 8, 15, 16})
    for (double l : {-0.9, -0.5, -0.2, 0.2, 0.5, 0.9}) {
      const auto spec = ModelSpec::ssh(n, l);
      for (int i = 0; i < 2 * n; ++i)
        for (int j = i + 1; j < 2 * n; ++j) {
          int d = std::abs(cell_of(i) - cell_of(j));
          d = std::min(d, n - d);
          if (is_a_site(i) != is_a_site(j) && d < 2) continue;
          ++checked;
          if (concurrence(rdm_pair(spec, i, j)) != 0.0) ++nonzero;
        }
    }
  return {nonzero == 0, fmt("%d of %d same-sublattice or |m-n| >= 2 pairs nonzero", nonzero, checked)};
}

Outcome c8_phases() {
  const std::vector<std::pair<double, std::string>> expect = {{-0.5, "P0"}, {-0.05, "Q0"}, {0.05, "Q1"}, {0.5, "P1"}};
  std::string got;
  bool pass = true;
  for (const auto& [l, label] : expect) {
    const auto j = cli_json({"graph", "-N", "31", "--lambda", fmt("%.17g", l)});
    const std::string phase = j["phase"];
    pass = pass && phase == label;
    got += fmt("%+.2f:%s ", l, phase.c_str());
  }
  return {pass, "N = 31 " + got + "(want P0 Q0 Q1 P1)"};
}

Outcome c9_kitaev() {
  double worst_jump = 0.0, worst_direct = 0.0, worst_odd = 0.0;
  auto density = [](const ModelSpec& s, double mu) { return 0.5 * (1.0 - kitaev_eta_z(s.with_mu(mu))); };
  for (int n = 4; n <= 200; n += 2) {
    const auto spec = ModelSpec::kitaev(n, 1.0, 1.0, 0.0);
    const double jump = std::abs(kitaev_density_one_sided(spec, +1) - kitaev_density_one_sided(spec, -1));
    worst_jump = std::max(worst_jump, std::abs(jump - 1.0 / n));
    const double direct = std::abs(density(spec, 2.0 + 1e-11) - density(spec, 2.0 - 1e-11));
    worst_direct = std::max(worst_direct, std::abs(direct - 1.0 / n));
  }
  for (int n = 5; n <= 199; n += 2) {
    const auto spec = ModelSpec::kitaev(n, 1.0, 1.0, 0.0);
    worst_odd = std::max(worst_odd, std::abs(density(spec, 2.0 + 1e-6) - density(spec, 2.0 - 1e-6)) / 2e-6);
  }
  const auto fit = kitaev_compressibility_logfit(ModelSpec::kitaev(2, 1.0, 1.0, 0.0), 1e-5, 1e-3);
  const double ts = 2.0 / std::numbers::pi;
  const bool jumps = worst_jump < 1e-9 && worst_direct < 1e-9 && worst_odd < 10.0;
  const bool slope = within_rel(fit.slope, ts, 0.05);
  return {jumps && slope,
          fmt("even max|jump - 1/N| = %.1e (direct %.1e); odd max slope = %.3f; compressibility log slope = %.5f "
              "(target 2/pi = %.5f)%s",
              worst_jump, worst_direct, worst_odd, fit.slope, ts, slope ? "" : " MISMATCH")};
}

Outcome c10_disorder() {
  const double d = 0.005;
  const std::vector<double> across = {-d, d};
  auto gap = [&](int n) {
    auto base = ModelSpec::ssh(n, 0.0);
    base.disorder = DisorderSpec{0.1, 20170101};
    const auto t = disorder_ensemble(base, across, 100);
    return std::abs(t.mean_c2[1] - t.mean_c2[0]);
  };
  const double even = gap(16), odd = gap(15);

  bool exact = true;
  const std::vector<double> grid = {-0.3, -0.1, 0.1, 0.3};
  for (int n : {15, 16}) {
    auto base = ModelSpec::ssh(n, 0.0);
    base.disorder = DisorderSpec{0.0, 5};
    const auto t = disorder_ensemble(base, grid, 10);
    const int c = std::max(0, n / 2 - 1);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const auto clean = ModelSpec::ssh(n, grid[i]);
      const double ref = concurrence(rdm_pair_from_correlations(ground_state_correlations(clean), 2 * c + 1, 2 * c + 2));
      exact = exact && t.std_c2[i] == 0.0 && t.mean_c2[i] == ref;
    }
  }
  return {even > 3.0 * odd && exact,
          fmt("mean C2 gap across lambda = 0 (+-%.3f): N = 16 %.4f, N = 15 %.4f, ratio %.2f; amplitude 0 %s", d, even,
              odd, even / odd, exact ? "matches clean exactly" : "differs from clean")};
}

Outcome c11_obc() {
  const auto grid = linspace(-0.02, 0.06, 161);
  double worst = 0.0;
  std::vector<double> peaks;
  for (int n : {32, 64, 128, 256}) {
    const auto below = obc_center_derivative(n, grid, Filling::Below);
    const auto above = obc_center_derivative(n, grid, Filling::Above);
    for (std::size_t i = 0; i < grid.size(); ++i) worst = std::max(worst, std::abs(below.c2[i] - above.c2[i]));
    peaks.push_back(below.peak_lambda);
  }
  bool monotone = true;
  for (std::size_t i = 1; i < peaks.size(); ++i)
    monotone = monotone && std::abs(peaks[i]) < std::abs(peaks[i - 1]);
  return {worst < 1e-10 && monotone, fmt("fill difference %.1e; peaks N = 32..256: %.4f %.4f %.4f %.4f", worst,
                                         peaks[0], peaks[1], peaks[2], peaks[3])};
}

Outcome c12_pfaffian() {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst_pf = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int dim = 2 + 2 * (trial % 8);
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = i + 1; j < dim; ++j) {
        a(i, j) = u(rng);
        a(j, i) = -a(i, j);
      }
    const double pf = pfaffian(a), det = a.determinant();
    worst_pf = std::max(worst_pf, std::abs(pf * pf - det) / std::abs(det));
  }

  double worst_corr = 0.0;
  int sets = 0;
  for (int modes = 2; modes <= 6; ++modes) {
    Eigen::MatrixXd hop(modes, modes), pair = Eigen::MatrixXd::Zero(modes, modes);
    for (int i = 0; i < modes; ++i)
      for (int j = i; j < modes; ++j) hop(i, j) = hop(j, i) = u(rng);
    for (int i = 0; i < modes; ++i)
      for (int j = i + 1; j < modes; ++j) {
        pair(i, j) = u(rng);
        pair(j, i) = -pair(i, j);
      }
    const auto mbar = spectral_flatten(majorana_from_quadratic(hop, pair));
    const oracle::Fock f(modes);
    const Eigen::VectorXcd psi = oracle::ground_state(f.hamiltonian(hop, pair)).cast<std::complex<double>>();
    std::vector<Eigen::MatrixXcd> c;
    for (int j = 0; j < 2 * modes; ++j) c.push_back(f.majorana(j));
    const int m = 2 * modes;
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j)
        for (int k = j + 1; k < m; ++k)
          for (int l = k + 1; l < m; ++l) {
            const int idx[] = {i, j, k, l};
            const Eigen::MatrixXcd prod = c[static_cast<std::size_t>(i)] * c[static_cast<std::size_t>(j)] *
                                          c[static_cast<std::size_t>(k)] * c[static_cast<std::size_t>(l)];
            const double ref = -psi.dot(prod * psi).real();
            worst_corr = std::max(worst_corr, std::abs(correlator(mbar, idx) - ref));
            ++sets;
          }
  }
  return {worst_pf < 1e-8 && worst_corr < 1e-8,
          fmt("max relative |Pf^2 - det| = %.1e (100 matrices, 2..16); max 4-point error = %.1e (%d sets, 2..6 modes)",
              worst_pf, worst_corr, sets)};
}

}  // namespace

int main() {
  std::setvbuf(stdout, nullptr, _IOLBF, 0);
  const std::vector<std::function<Outcome()>> criteria = {c1_lambda_plus, c2_slope,     c3_jump,      c4_logfit,
                                                          c5_free_energy, c6_oracles,   c7_structure, c8_phases,
                                                          c9_kitaev,      c10_disorder, c11_obc,      c12_pfaffian};
  int passed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    passed += o.pass;
    std::printf("criterion %2zu %s  %s\n", i + 1, o.pass ? "PASS" : "FAIL", o.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", passed, criteria.size());
  return passed == static_cast<int>(criteria.size()) ? 0 : 1;
}
