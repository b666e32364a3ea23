#include "sshent/entanglement.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>

#include "sshent/errors.hpp"
#include "sshent/parallel.hpp"
#include "sshent/quadrature.hpp"

namespace sshent {

namespace {

void require_clean_periodic_ssh(const ModelSpec& spec, const char* what) {
  spec.validate();
  if (!spec.is_ssh()) throw ValidationError(std::string(what) + " is defined for the SSH chain");
  if (!spec.translation_invariant())
    throw DisorderUnsupported(std::string(what) + " needs a clean periodic chain");
}

void check_site(const ModelSpec& spec, int site) {
  if (site < 0 || site >= spec.num_modes())
    throw IndexError("site " + std::to_string(site) + " out of range [0, " +
                     std::to_string(spec.num_modes()) + ")");
}

}  // namespace

EtaValue eta_analytic(const ModelSpec& spec, int site1, int site2) {
  require_clean_periodic_ssh(spec, "analytic eta");
  check_site(spec, site1);
  check_site(spec, site2);
  EtaValue out{0.0, site1, site2, EtaRoute::MomentumAnalytic};
  if (is_a_site(site1) == is_a_site(site2)) return out;

  const int a = is_a_site(site1) ? site1 : site2;
  const int b = is_a_site(site1) ? site2 : site1;
  const int d = cell_of(b) - cell_of(a);
  const auto grid = momentum_grid(spec.N);
  double sum = 0.0;
  for (double k : grid.momenta) {
    const auto h = bloch_vector(spec, k).normalized();
    // cos[k d + phi] with cos(phi) = hx_hat, sin(phi) = hy_hat
    sum += std::cos(k * d) * h.hx - std::sin(k * d) * h.hy;
  }
  out.value = sum / spec.N;
  return out;
}

double eta_bond(const ModelSpec& spec, Bond bond) {
  const int n = 0;
  const int next = spec.N > 1 ? 1 % spec.N : 0;
  return bond == Bond::Intra ? eta_analytic(spec, site_a(n), site_b(n)).value
                             : eta_analytic(spec, site_b(n), site_a(next)).value;
}

EtaValue eta_thermodynamic(const ModelSpec& spec, Bond bond) {
  spec.validate();
  if (!spec.is_ssh()) throw ValidationError("thermodynamic eta is defined for the SSH chain");
  const double l = spec.ssh_params().lambda;
  if (std::abs(l) < kGapTolerance) throw GaplessError("band touching at k = pi for lambda = 0");
  const double t1 = intra_hopping(l), t2 = inter_hopping(l);

  std::function<double(double)> f;
  if (bond == Bond::Intra) {
    f = [=](double k) {
      const double hx = t1 + t2 * std::cos(k), hy = t2 * std::sin(k);
      return hx / std::hypot(hx, hy);
    };
  } else {
    f = [=](double k) {
      const double hx = t1 + t2 * std::cos(k), hy = t2 * std::sin(k);
      return (hx * std::cos(k) + hy * std::sin(k)) / std::hypot(hx, hy);
    };
  }
  const double value = bz_average(f, std::numbers::pi, std::abs(l));
  return {value, 0, bond == Bond::Intra ? 1 : 2, EtaRoute::Thermodynamic};
}

double kitaev_eta_z(const ModelSpec& spec) {
  spec.validate();
  if (spec.is_ssh()) throw ValidationError("eta_z is defined for the Kitaev chain");
  if (!spec.translation_invariant())
    throw DisorderUnsupported("momentum-space eta_z needs a clean periodic chain");
  double sum = 0.0;
  for (double k : momentum_grid(spec.N).momenta) sum += bloch_vector(spec, k).normalized().hz;
  return sum / spec.N;
}

double kitaev_eta_z_thermodynamic(const ModelSpec& spec) {
  const auto& kp = spec.kitaev_params();
  const double gap0 = std::abs(0.5 * kp.mu + kp.t);   // |h(0)| when delta != 0
  const double gappi = std::abs(0.5 * kp.mu - kp.t);  // |h(pi)|
  if (std::min(gap0, gappi) < kGapTolerance)
    throw GaplessError("Kitaev band touching at mu = +-2t");
  auto f = [=](double k) {
    const double hy = kp.delta * std::sin(k), hz = -0.5 * kp.mu - kp.t * std::cos(k);
    const double r = std::hypot(hy, hz);
    return r > 0.0 ? hz / r : 0.0;
  };
  return gappi < gap0 ? bz_average(f, std::numbers::pi, gappi) : bz_average(f, 0.0, gap0);
}

TwoSiteRDM eta_form_rdm(double eta, int site1, int site2) {
  TwoSiteRDM r;
  r.site1 = site1;
  r.site2 = site2;
  r.eta = eta;
  const double e2 = eta * eta;
  r.matrix.setZero();
  r.matrix(0, 0) = 0.25 * (1.0 - e2);
  r.matrix(1, 1) = 0.25 * (1.0 + e2);
  r.matrix(2, 2) = 0.25 * (1.0 + e2);
  r.matrix(3, 3) = 0.25 * (1.0 - e2);
  r.matrix(1, 2) = -0.5 * eta;
  r.matrix(2, 1) = -0.5 * eta;
  return r;
}

MajoranaMatrix ground_state_correlations(const ModelSpec& spec, Filling fill) {
  const auto m = realspace_hamiltonian(spec);
  switch (fill) {
    case Filling::Auto:
      if (spec.disorder && spec.is_ssh()) return flatten_from_fill(m, spec.N);
      return spectral_flatten(m);
    case Filling::Below:
    case Filling::Above:
      if (!spec.is_ssh()) throw ValidationError("below/above filling applies to the SSH chain");
      return flatten_from_fill(m, fill == Filling::Below ? spec.N - 1 : spec.N + 1);
  }
  throw ValidationError("unknown filling");
}

TwoSiteRDM rdm_pair_from_correlations(const MajoranaMatrix& mbar, int site1, int site2) {
  if (site1 == site2) throw IndexError("a two-site RDM needs two distinct sites");
  const std::array<int, 2> modes{site1, site2};
  const auto rdm = rdm_from_restriction(restrict_modes(mbar, modes));
  TwoSiteRDM out;
  out.matrix = rdm.matrix;
  out.site1 = site1;
  out.site2 = site2;
  return out;
}

TwoSiteRDM rdm_pair(const ModelSpec& spec, int site1, int site2, Filling fill) {
  spec.validate();
  check_site(spec, site1);
  check_site(spec, site2);
  if (site1 == site2) throw IndexError("a two-site RDM needs two distinct sites");
  if (spec.is_ssh() && spec.translation_invariant() && fill == Filling::Auto)
    return eta_form_rdm(eta_analytic(spec, site1, site2).value, site1, site2);
  return rdm_pair_from_correlations(ground_state_correlations(spec, fill), site1, site2);
}

double concurrence_from_eta(double eta) {
  const double a = std::abs(eta);
  return std::max(0.0, 0.5 * (a * a + 2.0 * a - 1.0));
}

double concurrence(const TwoSiteRDM& rdm) {
  constexpr double tol = 1e-10;
  const Eigen::Matrix4cd& rho = rdm.matrix;
  if (std::abs(rho.trace() - std::complex<double>(1.0, 0.0)) > tol)
    throw InvalidState("density matrix trace is not 1");
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > tol)
    throw InvalidState("density matrix is not Hermitian");

  const Eigen::Matrix4cd herm = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(herm);
  if (es.eigenvalues().minCoeff() < -tol) throw InvalidState("density matrix is not positive");

  const Eigen::Vector4d sqrt_ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const Eigen::Matrix4cd sqrt_rho =
      es.eigenvectors() * sqrt_ev.cast<std::complex<double>>().asDiagonal() * es.eigenvectors().adjoint();

  Eigen::Matrix4cd yy = Eigen::Matrix4cd::Zero();
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;
  const Eigen::Matrix4cd flipped = yy * herm.conjugate() * yy;
  Eigen::Matrix4cd r = sqrt_rho * flipped * sqrt_rho;
  r = 0.5 * (r + r.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> er(r, Eigen::EigenvaluesOnly);
  Eigen::Vector4d l = er.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  std::sort(l.data(), l.data() + 4, std::greater<>());
  return std::max(0.0, l(0) - l(1) - l(2) - l(3));
}

std::string to_string(Phase p) {
  switch (p) {
    case Phase::P0: return "P0";
    case Phase::Q0: return "Q0";
    case Phase::Q1: return "Q1";
    case Phase::P1: return "P1";
    case Phase::Critical: return "Critical";
  }
  return "?";
}

Phase classify(double c1, double c2) {
  if (std::abs(c1 - c2) <= kPhaseTieTol) return Phase::Critical;
  const bool has1 = c1 > kConcurrenceZero, has2 = c2 > kConcurrenceZero;
  if (has1 && !has2) return Phase::P0;
  if (!has1 && has2) return Phase::P1;
  return c1 > c2 ? Phase::Q0 : Phase::Q1;
}

EntangledGraph entangled_graph(const ModelSpec& spec, const GraphOptions& options) {
  spec.validate();
  if (!spec.is_ssh()) throw ValidationError("entangled graphs are built for the SSH chain");
  const int n = spec.N;
  const int sites = spec.num_modes();
  const bool periodic = spec.boundary == Boundary::Periodic;

  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < sites; ++i) {
    for (int j = i + 1; j < sites; ++j) {
      int d = std::abs(cell_of(i) - cell_of(j));
      if (periodic) d = std::min(d, n - d);
      if (options.full_scan || 2 * d <= n) pairs.emplace_back(i, j);
    }
  }

  const bool analytic = spec.translation_invariant() && options.fill == Filling::Auto;
  std::optional<MajoranaMatrix> mbar;
  if (!analytic) mbar = ground_state_correlations(spec, options.fill);

  std::vector<double> conc(pairs.size(), 0.0);
  parallel_for(pairs.size(), [&](std::size_t p) {
    const auto [i, j] = pairs[p];
    conc[p] = analytic ? concurrence_from_eta(eta_analytic(spec, i, j).value)
                       : concurrence(rdm_pair_from_correlations(*mbar, i, j));
  });

  EntangledGraph g;
  g.num_cells = n;
  g.num_sites = sites;
  std::map<std::pair<int, int>, double> lookup;
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    lookup[pairs[p]] = conc[p];
    if (conc[p] > kConcurrenceZero) g.edges.push_back({pairs[p].first, pairs[p].second, conc[p]});
  }
  auto pair_value = [&](int i, int j) { return lookup.at({std::min(i, j), std::max(i, j)}); };

  const int inter_bonds = periodic ? n : n - 1;
  std::map<Phase, int> votes;
  double sum1 = 0.0, sum2 = 0.0;
  for (int c = 0; c < n; ++c) {
    const double c1 = pair_value(site_a(c), site_b(c));
    sum1 += c1;
    if (c < inter_bonds) {
      const double c2 = pair_value(site_b(c), site_a((c + 1) % n));
      sum2 += c2;
      ++votes[classify(c1, c2)];
    }
  }
  g.c1 = sum1 / n;
  g.c2 = inter_bonds > 0 ? sum2 / inter_bonds : 0.0;

  if (analytic) {
    g.phase = classify(pair_value(site_a(0), site_b(0)), pair_value(site_b(0), site_a(1 % n)));
  } else {
    int best = -1;
    bool tie = false;
    for (const auto& [phase, count] : votes) {
      if (count > best) {
        best = count;
        g.phase = phase;
        tie = false;
      } else if (count == best) {
        tie = true;
      }
    }
    if (tie) g.phase = Phase::Critical;
  }
  return g;
}

}  // namespace sshent
