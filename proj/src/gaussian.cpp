#include "sshent/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#define LAPACK_COMPLEX_CPP
#include <lapacke.h>

#include "sshent/errors.hpp"
#include "sshent/model.hpp"

namespace sshent {

namespace {

constexpr double kFillDegeneracyTol = 1e-10;
constexpr double kEtaSlack = 1e-10;

struct ModePair {
  Eigen::VectorXd first;   // row 2j of W
  Eigen::VectorXd second;  // row 2j+1 of W
  double eps;
};

// Lexicographic order on entries rounded to 1e-8; breaks ties inside
// degenerate eps groups deterministically.
bool lex_less(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const double ra = std::round(a(i) * 1e8), rb = std::round(b(i) * 1e8);
    if (ra != rb) return ra < rb;
  }
  return false;
}

Eigen::MatrixXd block_form(std::span<const double> eps) {
  const auto L = static_cast<Eigen::Index>(eps.size());
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(2 * L, 2 * L);
  for (Eigen::Index b = 0; b < L; ++b) {
    j(2 * b, 2 * b + 1) = eps[static_cast<std::size_t>(b)];
    j(2 * b + 1, 2 * b) = -eps[static_cast<std::size_t>(b)];
  }
  return j;
}

bool is_tridiagonal(const Eigen::MatrixXd& a) {
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (std::abs(i - j) > 1 && a(i, j) != 0.0) return false;
  return true;
}

// Ascending eigenvalues and orthonormal eigenvectors of a real symmetric matrix.
// Open chains in site order are tridiagonal; LAPACK's divide and conquer
// handles those several times faster than a dense solver.
void symmetric_eigen(const Eigen::MatrixXd& a, Eigen::VectorXd& e, Eigen::MatrixXd& v) {
  const Eigen::Index n = a.rows();
  if (n > 2 && is_tridiagonal(a)) {
    e = a.diagonal();
    Eigen::VectorXd off = a.diagonal(1);
    v.resize(n, n);
    const lapack_int info = LAPACKE_dstedc(LAPACK_COL_MAJOR, 'I', static_cast<lapack_int>(n), e.data(),
                                           off.data(), v.data(), static_cast<lapack_int>(n));
    if (info == 0) return;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
  e = es.eigenvalues();
  v = es.eigenvectors();
}

MajoranaMatrix flatten_particle_conserving(const Eigen::MatrixXd& a, int num_filled) {
  const Eigen::Index L = a.rows();
  Eigen::VectorXd e;
  Eigen::MatrixXd v;
  symmetric_eigen(0.5 * (a + a.transpose()), e, v);
  if (num_filled < 0) {
    for (Eigen::Index i = 0; i < L; ++i)
      if (std::abs(e(i)) <= kGapTolerance)
        throw GaplessError("zero-energy single-particle level (|e| = " +
                           std::to_string(std::abs(e(i))) + ")");
    num_filled = static_cast<int>((e.array() < 0.0).count());
  } else if (num_filled > 0 && num_filled < L &&
             e(num_filled) - e(num_filled - 1) <= kFillDegeneracyTol) {
    throw DegenerateFillError("filling " + std::to_string(num_filled) +
                              " levels splits a degenerate pair (gap " +
                              std::to_string(e(num_filled) - e(num_filled - 1)) + ")");
  }
  Eigen::MatrixXd abar = Eigen::MatrixXd::Identity(L, L);
  abar.selfadjointView<Eigen::Lower>().rankUpdate(v.leftCols(num_filled), -2.0);
  abar.triangularView<Eigen::StrictlyUpper>() = abar.transpose();
  return majorana_from_quadratic(abar, Eigen::MatrixXd::Zero(L, L));
}

}  // namespace

Eigen::MatrixXd BlockDiagonalization::reassemble(std::span<const double> eps) const {
  return W.transpose() * block_form(eps) * W;
}

BlockDiagonalization block_diagonalize(const MajoranaMatrix& m) {
  const Eigen::Index n = m.dim();
  const Eigen::Index L = n / 2;
  BlockDiagonalization out;
  out.W = Eigen::MatrixXd::Identity(n, n);
  if (n == 0) return out;

  const Eigen::MatrixXd& x = m.matrix();
  const double scale = std::max(1.0, x.cwiseAbs().maxCoeff());
  const double ztol = 64.0 * std::numeric_limits<double>::epsilon() * static_cast<double>(n) * scale;

  const Eigen::MatrixXcd h = std::complex<double>(0.0, 1.0) * x.cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  const Eigen::VectorXd& lam = es.eigenvalues();
  const Eigen::MatrixXcd& vec = es.eigenvectors();

  Eigen::Index p = 0;
  while (p < L && lam(n - 1 - p) > ztol) ++p;

  std::vector<ModePair> pairs;
  pairs.reserve(static_cast<std::size_t>(L));

  // Null space: real orthonormal basis from real and imaginary parts.
  const Eigen::Index d0 = n - 2 * p;
  if (d0 > 0) {
    const Eigen::MatrixXcd v0 = vec.middleCols(p, d0);
    Eigen::MatrixXd span(n, 2 * d0);
    span << v0.real(), v0.imag();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(span, Eigen::ComputeThinU);
    const Eigen::MatrixXd q = svd.matrixU().leftCols(d0);
    for (Eigen::Index b = 0; b < d0 / 2; ++b) {
      Eigen::VectorXd u = q.col(2 * b), w = q.col(2 * b + 1);
      double e = u.dot(x * w);
      if (e < 0.0) {
        std::swap(u, w);
        e = -e;
      }
      pairs.push_back({u, w, e});
    }
    std::sort(pairs.begin(), pairs.end(),
              [](const ModePair& a, const ModePair& b) { return a.eps < b.eps; });
  }

  const double root2 = std::sqrt(2.0);
  for (Eigen::Index i = n - p; i < n; ++i) {
    const Eigen::VectorXcd v = vec.col(i);
    pairs.push_back({root2 * v.imag(), root2 * v.real(), lam(i)});
  }

  // degenerate groups: deterministic order by eigenvector entries
  for (std::size_t s = 0; s < pairs.size();) {
    std::size_t e = s + 1;
    while (e < pairs.size() && pairs[e].eps - pairs[s].eps <= 1e-10) ++e;
    if (e - s > 1)
      std::stable_sort(pairs.begin() + static_cast<std::ptrdiff_t>(s),
                       pairs.begin() + static_cast<std::ptrdiff_t>(e),
                       [](const ModePair& a, const ModePair& b) { return lex_less(a.first, b.first); });
    s = e;
  }

  out.epsilons.resize(static_cast<std::size_t>(L));
  for (Eigen::Index b = 0; b < L; ++b) {
    const auto& pr = pairs[static_cast<std::size_t>(b)];
    out.W.row(2 * b) = pr.first.transpose();
    out.W.row(2 * b + 1) = pr.second.transpose();
    out.epsilons[static_cast<std::size_t>(b)] = pr.eps;
  }
  return out;
}

MajoranaMatrix spectral_flatten(const MajoranaMatrix& m) {
  if (is_particle_conserving(m)) return flatten_particle_conserving(hopping_block(m), -1);

  const auto bd = block_diagonalize(m);
  for (double e : bd.epsilons)
    if (e <= kGapTolerance)
      throw GaplessError("zero-energy mode in block diagonalization (eps = " + std::to_string(e) + ")");
  const std::vector<double> ones(bd.epsilons.size(), 1.0);
  return MajoranaMatrix::from_nearly_skew(bd.reassemble(ones));
}

MajoranaMatrix flatten_from_fill(const MajoranaMatrix& m, int num_filled) {
  const auto L = static_cast<int>(m.num_modes());
  if (num_filled < 0 || num_filled > L)
    throw ValidationError("num_filled must lie in [0, " + std::to_string(L) + "]");
  if (is_particle_conserving(m)) return flatten_particle_conserving(hopping_block(m), num_filled);

  const auto bd = block_diagonalize(m);
  const auto& eps = bd.epsilons;
  if (num_filled > 0 && num_filled < L &&
      eps[static_cast<std::size_t>(num_filled)] - eps[static_cast<std::size_t>(num_filled - 1)] <=
          kFillDegeneracyTol)
    throw DegenerateFillError("quasiparticle fill boundary splits a degenerate pair");
  std::vector<double> signs(eps.size(), 1.0);
  for (int j = 0; j < num_filled; ++j) signs[static_cast<std::size_t>(j)] = -1.0;
  return MajoranaMatrix::from_nearly_skew(bd.reassemble(signs));
}

MajoranaMatrix restrict_modes(const MajoranaMatrix& mbar, std::span<const int> modes) {
  const auto L = static_cast<int>(mbar.num_modes());
  std::vector<int> seen;
  for (int mode : modes) {
    if (mode < 0 || mode >= L)
      throw IndexError("mode " + std::to_string(mode) + " out of range [0, " + std::to_string(L) + ")");
    if (std::find(seen.begin(), seen.end(), mode) != seen.end())
      throw IndexError("mode " + std::to_string(mode) + " listed twice");
    seen.push_back(mode);
  }
  const auto na = static_cast<Eigen::Index>(modes.size());
  Eigen::MatrixXd sub(2 * na, 2 * na);
  for (Eigen::Index i = 0; i < 2 * na; ++i) {
    const Eigen::Index gi = 2 * modes[static_cast<std::size_t>(i / 2)] + i % 2;
    for (Eigen::Index j = 0; j < 2 * na; ++j) {
      const Eigen::Index gj = 2 * modes[static_cast<std::size_t>(j / 2)] + j % 2;
      sub(i, j) = mbar(gi, gj);
    }
  }
  return MajoranaMatrix(std::move(sub));
}

std::vector<Eigen::MatrixXcd> majorana_operators(int num_modes) {
  using C = std::complex<double>;
  const Eigen::Index dim = Eigen::Index{1} << num_modes;
  std::vector<Eigen::MatrixXcd> ops;
  ops.reserve(static_cast<std::size_t>(2 * num_modes));
  for (int j = 0; j < num_modes; ++j) {
    // mode j sits at bit (num_modes - 1 - j); the string covers modes before j
    const int bit = num_modes - 1 - j;
    Eigen::MatrixXcd cx = Eigen::MatrixXcd::Zero(dim, dim);
    Eigen::MatrixXcd cy = Eigen::MatrixXcd::Zero(dim, dim);
    for (Eigen::Index s = 0; s < dim; ++s) {
      int parity = 0;
      for (int i = 0; i < j; ++i) parity ^= static_cast<int>((s >> (num_modes - 1 - i)) & 1);
      const double sign = parity ? -1.0 : 1.0;
      const Eigen::Index flipped = s ^ (Eigen::Index{1} << bit);
      const bool occupied = (s >> bit) & 1;
      // X = a + a^dag, Y = -i (a - a^dag) on the single mode
      cx(flipped, s) = sign;
      cy(flipped, s) = occupied ? C(0.0, -sign) : C(0.0, sign);
    }
    ops.push_back(std::move(cx));
    ops.push_back(std::move(cy));
  }
  return ops;
}

ReducedDensityMatrix rdm_from_restriction(const MajoranaMatrix& mbar_a, int max_modes) {
  const auto na = static_cast<int>(mbar_a.num_modes());
  if (na > max_modes)
    throw SizeError("dense reduced density matrix capped at " + std::to_string(max_modes) +
                    " modes, requested " + std::to_string(na));

  const auto bd = block_diagonalize(mbar_a);
  ReducedDensityMatrix rdm;
  rdm.num_modes = na;
  rdm.etas.reserve(bd.epsilons.size());
  for (double e : bd.epsilons) {
    if (e > 1.0 + kEtaSlack)
      throw InvalidState("restricted correlation matrix has eta = " + std::to_string(e) + " > 1");
    rdm.etas.push_back(std::min(e, 1.0));
  }

  const Eigen::Index dim = Eigen::Index{1} << na;
  const auto c = majorana_operators(na);
  std::vector<Eigen::MatrixXcd> cp(c.size(), Eigen::MatrixXcd::Zero(dim, dim));
  for (std::size_t l = 0; l < c.size(); ++l)
    for (std::size_t k = 0; k < c.size(); ++k)
      if (bd.W(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(k)) != 0.0)
        cp[l] += bd.W(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(k)) * c[k];

  const std::complex<double> i_unit(0.0, 1.0);
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(dim, dim);
  Eigen::MatrixXcd rho = id;
  for (int j = 0; j < na; ++j) {
    const double eta = rdm.etas[static_cast<std::size_t>(j)];
    const Eigen::MatrixXcd factor =
        0.5 * (id - i_unit * eta * (cp[static_cast<std::size_t>(2 * j)] * cp[static_cast<std::size_t>(2 * j + 1)]));
    rho = rho * factor;
  }
  rdm.matrix = 0.5 * (rho + rho.adjoint());
  return rdm;
}

double pfaffian(const Eigen::MatrixXd& input) {
  const Eigen::Index n = input.rows();
  if (input.cols() != n) throw ValidationError("Pfaffian needs a square matrix");
  if (n % 2 != 0) throw OddDimension("Pfaffian of odd-dimensional matrix");
  if (n == 0) return 1.0;

  Eigen::MatrixXd a = input;
  double pf = 1.0;
  for (Eigen::Index k = 0; k + 1 < n; k += 2) {
    Eigen::Index kp = k + 1;
    a.col(k).segment(k + 1, n - k - 1).cwiseAbs().maxCoeff(&kp);
    kp += k + 1;
    if (kp != k + 1) {
      a.row(k + 1).swap(a.row(kp));
      a.col(k + 1).swap(a.col(kp));
      pf = -pf;
    }
    if (a(k + 1, k) == 0.0) return 0.0;
    pf *= a(k, k + 1);
    if (k + 2 < n) {
      const Eigen::Index r = n - k - 2;
      const Eigen::VectorXd tau = a.row(k).segment(k + 2, r).transpose() / a(k, k + 1);
      const Eigen::VectorXd col = a.col(k + 1).segment(k + 2, r);
      a.block(k + 2, k + 2, r, r) += tau * col.transpose() - col * tau.transpose();
    }
  }
  return pf;
}

double correlator(const MajoranaMatrix& mbar, std::span<const int> indices) {
  if (indices.size() % 2 != 0) throw OddDimension("odd-order Majorana correlators vanish identically");
  if (indices.empty()) throw IndexError("correlator needs at least two indices");
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] < 0 || indices[i] >= mbar.dim())
      throw IndexError("Majorana index " + std::to_string(indices[i]) + " out of range");
    if (i > 0 && indices[i] <= indices[i - 1]) throw IndexError("indices must be strictly increasing");
  }
  const auto k = static_cast<Eigen::Index>(indices.size());
  Eigen::MatrixXd sub(k, k);
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < k; ++j)
      sub(i, j) = mbar(indices[static_cast<std::size_t>(i)], indices[static_cast<std::size_t>(j)]);
  return pfaffian(sub);
}

}  // namespace sshent
