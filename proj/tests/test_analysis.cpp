#include <doctest.h>

#include <cmath>
#include <numbers>

#include "sshent/analysis.hpp"
#include "sshent/errors.hpp"

using namespace sshent;

TEST_CASE("linspace is inclusive") {
  const auto g = linspace(-1.0, 1.0, 5);
  REQUIRE(g.size() == 5);
  CHECK(g.front() == -1.0);
  CHECK(g.back() == 1.0);
  CHECK(g[2] == 0.0);
  CHECK(linspace(0.0, 1.0, 1).size() == 1);
  CHECK(linspace(0.0, 1.0, 0).empty());
}

TEST_CASE("central differences") {
  const auto xs = linspace(0.0, 1.0, 11);
  std::vector<double> ys;
  for (double x : xs) ys.push_back(3.0 * x * x - x);
  const auto d = central_derivative(xs, ys);
  CHECK(std::isnan(d.front()));
  CHECK(std::isnan(d.back()));
  for (std::size_t i = 1; i + 1 < xs.size(); ++i) CHECK(d[i] == doctest::Approx(6.0 * xs[i] - 1.0));
  const std::vector<double> two = {0.0, 1.0};
  CHECK_THROWS_AS(central_derivative(two, two), GridTooCoarse);
  const std::vector<double> bad = {0.0, 2.0, 1.0};
  CHECK_THROWS_AS(central_derivative(bad, bad), ValidationError);
}

TEST_CASE("lambda_plus in the thermodynamic limit") {
  const double lp = find_lambda_plus(Size::thermodynamic());
  CHECK(lp > 0.136);
  CHECK(lp < 0.140);
  CHECK(std::abs(eta1(Size::thermodynamic(), lp) - kEtaThreshold) < 1e-9);
  CHECK(std::abs(find_lambda_minus(Size::thermodynamic()) + lp) < 1e-9);
  CHECK(slope_below_lambda_plus(Size::thermodynamic(), lp) == doctest::Approx(-1.476).epsilon(0.02));
}

TEST_CASE("lambda_plus for finite chains") {
  CHECK_THROWS_AS(find_lambda_plus(Size::finite(2)), NoRoot);
  CHECK_THROWS_AS(find_lambda_plus(Size::finite(4)), NoRoot);
  const std::vector<int> sizes = {6, 10, 20, 40, 80, 160};
  const auto lp = lambda_plus_vs_size(sizes);
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    CHECK(std::abs(eta1(Size::finite(sizes[i]), lp[i]) - kEtaThreshold) < 1e-9);
    CHECK(std::abs(find_lambda_minus(Size::finite(sizes[i])) + lp[i]) < 1e-9);
  }
  for (std::size_t i = 1; i < sizes.size(); ++i) CHECK(lp[i] > lp[i - 1]);
  CHECK(std::abs(lp.back() - find_lambda_plus(Size::thermodynamic())) < 1e-3);
  const std::vector<int> tiny = {4};
  CHECK(std::isnan(lambda_plus_vs_size(tiny)[0]));
}

TEST_CASE("even-N jump at lambda = 0") {
  for (int n : {4, 10, 64}) {
    CHECK(jump_at_zero(n) == doctest::Approx(2.0 / n).epsilon(1e-12));
    // one-sided limits agree with direct evaluation just off zero
    CHECK(std::abs(eta1_one_sided_at_zero(n, +1) - eta1(Size::finite(n), 1e-10)) < 1e-8);
    CHECK(std::abs(eta1_one_sided_at_zero(n, -1) - eta1(Size::finite(n), -1e-10)) < 1e-8);
  }
  CHECK_THROWS_AS(jump_at_zero(7), ParityError);
  CHECK_THROWS_AS(eta1(Size::finite(8), 0.0), GaplessError);
  CHECK_NOTHROW(eta1(Size::finite(7), 0.0));
}

TEST_CASE("finite-difference step") {
  CHECK(fd_step(1e-3) == doctest::Approx(1e-5));
  CHECK(fd_step(1e-5) == doctest::Approx(1e-7));
  CHECK(fd_step(1e-8) == doctest::Approx(2.5e-9));
  CHECK(fd_step(0.5) == doctest::Approx(1e-5));
}

TEST_CASE("log-law fit of d eta_1 / d lambda") {
  const auto fit = logfit(Size::thermodynamic(), 1e-5, 1e-3);
  CHECK(fit.slope == doctest::Approx(2.0 / std::numbers::pi).epsilon(0.05));
  CHECK(fit.intercept == doctest::Approx(log_law_intercept()).epsilon(0.10));
  CHECK_FALSE(fit.poor);
  CHECK(fit.lambdas.size() == 9);
  // same sign: d eta_1 / d lambda ~ (2/pi) ln|lambda| on both sides
  const auto neg = logfit(Size::thermodynamic(), -1e-3, -1e-5);
  CHECK(neg.slope == doctest::Approx(2.0 / std::numbers::pi).epsilon(0.05));
  CHECK(logfit(Size::thermodynamic(), 0.1, 0.5).poor);
  CHECK_THROWS_AS(logfit(Size::thermodynamic(), -1e-3, 1e-3), WindowError);
  CHECK_THROWS_AS(logfit(Size::thermodynamic(), 0.0, 1e-3), WindowError);
}

TEST_CASE("free-energy identity") {
  for (int n : {11, 16}) {
    for (double l : linspace(-0.9, 0.8, 21)) {
      const auto c = free_energy_check(n, l);
      CHECK(c.diff < 1e-6);
    }
  }
  CHECK(ground_state_energy(4, 0.5) < 0.0);
}

TEST_CASE("critical report") {
  const auto rep = critical_report(Size::finite(40));
  CHECK(rep.jump_delta.has_value());
  CHECK(*rep.jump_delta == doctest::Approx(0.05));
  CHECK(rep.lambda_minus == doctest::Approx(-rep.lambda_plus));
  CHECK_FALSE(critical_report(Size::finite(41)).jump_delta.has_value());
  CHECK_FALSE(critical_report(Size::thermodynamic()).jump_delta.has_value());
}

TEST_CASE("sweeps") {
  const auto grid = linspace(-0.2, 0.2, 5);
  SUBCASE("even N records the gapless point") {
    const auto r = sweep(ModelSpec::ssh(8, 0.0), grid, Size::finite(8));
    REQUIRE(r.gapless_points.size() == 1);
    CHECK(r.gapless_points[0] == 2);
    CHECK(std::isnan(r.c2[2]));
    CHECK(std::isfinite(r.c2[1]));
    CHECK(std::isnan(r.dc2_dlambda[0]));
  }
  SUBCASE("momentum, quadrature and real-space routes") {
    const std::vector<double> g = {-0.3, 0.1, 0.4};
    const auto mom = sweep(ModelSpec::ssh(9, 0.0), g, Size::finite(9));
    const auto th = sweep(ModelSpec::ssh(9, 0.0), g, Size::thermodynamic());
    CHECK(th.size.is_thermodynamic());
    auto dis = ModelSpec::ssh(9, 0.0);
    dis.disorder = DisorderSpec{0.0, 1};
    const auto rs = sweep(dis, g, Size::finite(9));
    CHECK(rs.seed.has_value());
    for (std::size_t i = 0; i < g.size(); ++i) {
      CHECK(std::abs(mom.eta1[i] - rs.eta1[i]) < 1e-10);
      CHECK(std::abs(mom.eta2[i] - rs.eta2[i]) < 1e-10);
      CHECK(std::abs(mom.c1[i] - rs.c1[i]) < 1e-10);
      CHECK(std::abs(mom.c2[i] - rs.c2[i]) < 1e-10);
      CHECK(std::abs(th.eta1[i] - eta1(Size::thermodynamic(), g[i])) == 0.0);
    }
  }
  SUBCASE("invalid requests") {
    const std::vector<double> unsorted = {0.1, -0.1};
    CHECK_THROWS_AS(sweep(ModelSpec::ssh(8, 0.0), unsorted), ValidationError);
    CHECK_THROWS_AS(sweep(ModelSpec::kitaev(8, 1, 1, 0), grid), ValidationError);
    CHECK_THROWS_AS(sweep(ModelSpec::ssh(8, 0.0, Boundary::Open), grid, Size::thermodynamic()), ValidationError);
  }
  SUBCASE("parallel evaluation is deterministic") {
    const auto g = linspace(-0.5, 0.5, 40);
    const auto a = sweep(ModelSpec::ssh(16, 0.0), g, Size::finite(16));
    const auto b = sweep(ModelSpec::ssh(16, 0.0), g, Size::finite(16));
    CHECK(a.c2 == b.c2);
    CHECK(a.eta1 == b.eta1);
  }
}

TEST_CASE("Kitaev density jump and continuity") {
  for (int n : {4, 8, 20}) {
    const auto spec = ModelSpec::kitaev(n, 1.0, 1.0, 0.0);
    const double jump = kitaev_density_one_sided(spec, +1) - kitaev_density_one_sided(spec, -1);
    CHECK(std::abs(jump) == doctest::Approx(1.0 / n).epsilon(1e-12));
    const double above = 0.5 * (1.0 - kitaev_eta_z(spec.with_mu(2.0 + 1e-10)));
    CHECK(std::abs(kitaev_density_one_sided(spec, +1) - above) < 1e-8);
  }
  for (int n : {5, 9}) {
    const auto spec = ModelSpec::kitaev(n, 1.0, 1.0, 0.0);
    CHECK(std::abs(kitaev_density_one_sided(spec, +1) - kitaev_density_one_sided(spec, -1)) < 1e-15);
  }
}

TEST_CASE("Kitaev density table") {
  const auto mus = linspace(1.5, 2.5, 11);
  const auto even = kitaev_density(ModelSpec::kitaev(8, 1.0, 1.0, 0.0), mus, Size::finite(8));
  REQUIRE(even.gapless_points.size() == 1);
  CHECK(even.rows[5].mu == 2.0);
  const auto odd = kitaev_density(ModelSpec::kitaev(9, 1.0, 1.0, 0.0), mus, Size::finite(9));
  CHECK(odd.gapless_points.empty());
  for (const auto& row : odd.rows) {
    CHECK(row.density == doctest::Approx(0.5 * (1.0 - row.eta_z)));
    CHECK(row.density >= 0.0);
    CHECK(row.density <= 1.0);
  }
  CHECK(std::isfinite(odd.rows[5].compressibility));
}

TEST_CASE("Kitaev compressibility diverges as -ln|mu - 2t| / (4 pi delta)") {
  for (double delta : {1.0, 0.5}) {
    const auto spec = ModelSpec::kitaev(2, 1.0, delta, 0.0);
    const auto fit = kitaev_compressibility_logfit(spec, 1e-5, 1e-3);
    CHECK(fit.slope == doctest::Approx(-1.0 / (4.0 * std::numbers::pi * delta)).epsilon(0.05));
    CHECK_FALSE(fit.poor);
  }
}

TEST_CASE("disorder ensemble") {
  auto base = ModelSpec::ssh(8, 0.0);
  base.disorder = DisorderSpec{0.1, 100};
  const std::vector<double> g = {-0.3, 0.2};
  const auto t = disorder_ensemble(base, g, 6);
  CHECK(t.seeds == std::vector<std::uint64_t>{100, 101, 102, 103, 104, 105});
  CHECK(t.per_seed.size() == 6);
  // C2 is zero for every realization at lambda = -0.3
  CHECK(t.std_c2[0] == 0.0);
  CHECK(t.std_c2[1] > 0.0);
  const auto again = disorder_ensemble(base, g, 6);
  CHECK(again.per_seed == t.per_seed);
  CHECK(again.mean_c2 == t.mean_c2);

  auto zero = base;
  zero.disorder->amplitude = 0.0;
  const auto z = disorder_ensemble(zero, g, 5);
  for (std::size_t i = 0; i < g.size(); ++i) {
    CHECK(z.std_c2[i] == 0.0);
    const double clean = concurrence_from_eta(eta2(Size::finite(8), g[i]));
    CHECK(std::abs(z.mean_c2[i] - clean) < 1e-12);
  }
  CHECK_THROWS_AS(disorder_ensemble(ModelSpec::ssh(8, 0.0), g, 3), ValidationError);
  CHECK_THROWS_AS(disorder_ensemble(base, g, 0), ValidationError);
}

TEST_CASE("open chain centre-bond derivative") {
  const auto g = linspace(-0.1, 0.3, 81);
  const auto below = obc_center_derivative(16, g, Filling::Below);
  const auto above = obc_center_derivative(16, g, Filling::Above);
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(std::abs(below.c2[i] - above.c2[i]) < 1e-10);
  const auto bigger = obc_center_derivative(32, g, Filling::Below);
  CHECK(bigger.peak_lambda < below.peak_lambda);
  CHECK(bigger.peak_lambda > 0.0);
  CHECK_THROWS_AS(obc_center_derivative(16, g, Filling::Auto), DegenerateFillError);
}
