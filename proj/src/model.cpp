#include "sshent/model.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "sshent/errors.hpp"

namespace sshent {

std::string to_string(Family f) { return f == Family::SSH ? "ssh" : "kitaev"; }
std::string to_string(Boundary b) { return b == Boundary::Periodic ? "periodic" : "open"; }

ModelSpec ModelSpec::ssh(int n, double lambda, Boundary b) {
  ModelSpec s;
  s.N = n;
  s.params = SshParams{lambda};
  s.boundary = b;
  return s;
}

ModelSpec ModelSpec::kitaev(int n, double t, double delta, double mu, Boundary b) {
  ModelSpec s;
  s.N = n;
  s.params = KitaevParams{t, delta, mu};
  s.boundary = b;
  return s;
}

const SshParams& ModelSpec::ssh_params() const {
  if (!is_ssh()) throw ValidationError("model is not an SSH chain");
  return std::get<SshParams>(params);
}

const KitaevParams& ModelSpec::kitaev_params() const {
  if (is_ssh()) throw ValidationError("model is not a Kitaev chain");
  return std::get<KitaevParams>(params);
}

void ModelSpec::validate() const {
  if (N < 2) throw ValidationError("N must be at least 2, got " + std::to_string(N));
  if (is_ssh()) {
    const double l = ssh_params().lambda;
    if (!(l >= -1.0 && l <= 1.0))
      throw ValidationError("lambda must lie in [-1, 1], got " + std::to_string(l));
  } else {
    const auto& kp = kitaev_params();
    if (!std::isfinite(kp.t) || !std::isfinite(kp.delta) || !std::isfinite(kp.mu))
      throw ValidationError("Kitaev parameters must be finite");
  }
  if (disorder && !(disorder->amplitude >= 0.0))
    throw ValidationError("disorder amplitude must be nonnegative");
}

ModelSpec ModelSpec::with_lambda(double lambda) const {
  ModelSpec s = *this;
  s.params = SshParams{lambda};
  return s;
}

ModelSpec ModelSpec::with_mu(double mu) const {
  ModelSpec s = *this;
  KitaevParams kp = kitaev_params();
  kp.mu = mu;
  s.params = kp;
  return s;
}

double BlochVector::norm() const { return std::sqrt(hx * hx + hy * hy + hz * hz); }

BlochVector BlochVector::normalized() const {
  const double n = norm();
  if (n < kGapTolerance)
    throw GaplessError("band touching at k = " + std::to_string(k) + " (|h| = " +
                       std::to_string(n) + ")");
  return {hx / n, hy / n, hz / n, k};
}

MomentumGrid momentum_grid(int n) {
  if (n < 2) throw ValidationError("momentum grid needs N >= 2");
  MomentumGrid g;
  g.N = n;
  g.momenta.resize(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) g.momenta[static_cast<std::size_t>(j)] = 2.0 * std::numbers::pi * j / n;
  // exact pi so that cos(pi) = -1 and sin(pi) is the library's value for M_PI
  if (n % 2 == 0) g.momenta[static_cast<std::size_t>(n / 2)] = std::numbers::pi;
  return g;
}

BlochVector bloch_vector(const ModelSpec& spec, double k) {
  if (spec.disorder)
    throw DisorderUnsupported("Bloch vector requires a translation-invariant model");
  if (spec.boundary != Boundary::Periodic)
    throw DisorderUnsupported("Bloch vector requires periodic boundary conditions");
  if (spec.is_ssh()) {
    const double l = spec.ssh_params().lambda;
    const double t1 = intra_hopping(l), t2 = inter_hopping(l);
    return {t1 + t2 * std::cos(k), t2 * std::sin(k), 0.0, k};
  }
  const auto& kp = spec.kitaev_params();
  return {0.0, kp.delta * std::sin(k), -0.5 * kp.mu - kp.t * std::cos(k), k};
}

std::vector<double> onsite_energies(const ModelSpec& spec) {
  std::vector<double> eps(static_cast<std::size_t>(spec.num_modes()), 0.0);
  if (!spec.disorder) return eps;
  const double w = spec.disorder->amplitude;
  std::mt19937_64 rng(spec.disorder->seed);
  for (double& e : eps) {
    // 53-bit uniform in [0, 1); independent of the stdlib's distribution code
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    e = w * (2.0 * u - 1.0);
  }
  return eps;
}

namespace {

void add_hopping(Eigen::MatrixXd& a, int i, int j, double t) {
  a(i, j) += t;
  a(j, i) += t;
}

// delta (a_i a_j + a_j^dag a_i^dag)
void add_pairing(Eigen::MatrixXd& b, int i, int j, double delta) {
  b(j, i) += delta;
  b(i, j) -= delta;
}

}  // namespace

QuadraticForm realspace_quadratic(const ModelSpec& spec) {
  spec.validate();
  const int L = spec.num_modes();
  const bool periodic = spec.boundary == Boundary::Periodic;
  QuadraticForm q{Eigen::MatrixXd::Zero(L, L), Eigen::MatrixXd::Zero(L, L)};

  if (spec.is_ssh()) {
    const double l = spec.ssh_params().lambda;
    const double t1 = intra_hopping(l), t2 = inter_hopping(l);
    for (int n = 0; n < spec.N; ++n) {
      add_hopping(q.hopping, site_a(n), site_b(n), t1);
      if (n + 1 < spec.N)
        add_hopping(q.hopping, site_b(n), site_a(n + 1), t2);
      else if (periodic)
        add_hopping(q.hopping, site_b(n), site_a(0), t2);
    }
  } else {
    const auto& kp = spec.kitaev_params();
    for (int j = 0; j < spec.N; ++j) {
      q.hopping(j, j) -= kp.mu;
      if (j + 1 < spec.N || periodic) {
        const int next = (j + 1) % spec.N;
        add_hopping(q.hopping, j, next, -kp.t);
        add_pairing(q.pairing, j, next, kp.delta);
      }
    }
  }

  const auto eps = onsite_energies(spec);
  for (int i = 0; i < L; ++i) q.hopping(i, i) += eps[static_cast<std::size_t>(i)];
  return q;
}

MajoranaMatrix realspace_hamiltonian(const ModelSpec& spec) {
  const auto q = realspace_quadratic(spec);
  return majorana_from_quadratic(q.hopping, q.pairing);
}

}  // namespace sshent
