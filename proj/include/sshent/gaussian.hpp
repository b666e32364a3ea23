#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "sshent/majorana.hpp"

namespace sshent {

/// W M W^T = diag([[0, eps_j], [-eps_j, 0]]) with W real orthogonal.
struct BlockDiagonalization {
  Eigen::MatrixXd W;
  std::vector<double> epsilons;  ///< nonnegative, ascending

  /// W^T J W with J the canonical block form built from `eps`.
  Eigen::MatrixXd reassemble(std::span<const double> eps) const;
  Eigen::MatrixXd reassemble() const { return reassemble(epsilons); }
};

/// Deterministic real block diagonalization through the Hermitian matrix iM.
/// Eigenvectors of iM with eigenvalue +eps pair into real columns; the
/// null space is orthonormalized separately. Each block's upper-right entry
/// is +eps_j >= 0.
BlockDiagonalization block_diagonalize(const MajoranaMatrix& m);

/// Ground-state correlation matrix: every eps_j replaced by 1.
/// Throws GaplessError if any eps_j <= kGapTolerance.
MajoranaMatrix spectral_flatten(const MajoranaMatrix& m);

/// Correlation matrix of the state filling the `num_filled` lowest levels.
///
/// For particle-conserving M the levels are the eigenvalues of the hopping
/// block and `num_filled` is the particle number. With pairing terms it is
/// the number of quasiparticles excited above the BdG vacuum, lowest eps
/// first. Throws DegenerateFillError when the boundary splits levels closer
/// than 1e-10.
MajoranaMatrix flatten_from_fill(const MajoranaMatrix& m, int num_filled);

/// Principal submatrix over both Majoranas of each listed fermionic mode,
/// in the listed order.
MajoranaMatrix restrict_modes(const MajoranaMatrix& mbar, std::span<const int> modes);

inline constexpr int kDefaultRdmModeCap = 10;

/// Explicit reduced density matrix of a Gaussian state.
///
/// The Fock basis is the occupation-number tensor basis with the first
/// mode as the most significant bit: index = sum_j n_j 2^(N_A - 1 - j),
/// state = (a_0^dag)^n_0 (a_1^dag)^n_1 ... |0>. For a pair (a, b) this is
/// {|0>, b^dag|0>, a^dag|0>, a^dag b^dag|0>}.
struct ReducedDensityMatrix {
  int num_modes = 0;
  std::vector<double> etas;  ///< in [0, 1], ascending
  Eigen::MatrixXcd matrix;
};

ReducedDensityMatrix rdm_from_restriction(const MajoranaMatrix& mbar_a,
                                          int max_modes = kDefaultRdmModeCap);

/// Pfaffian via Parlett-Reid skew tridiagonalization with partial pivoting.
double pfaffian(const Eigen::MatrixXd& a);
inline double pfaffian(const MajoranaMatrix& a) { return pfaffian(a.matrix()); }

/// (-i)^n Tr(rho_0 c_{j1} ... c_{j2n}) = Pf(Mbar restricted to j1 < ... < j2n).
/// Indices are 0-based Majorana indices; odd lengths are rejected.
double correlator(const MajoranaMatrix& mbar, std::span<const int> indices);

/// Dense Jordan-Wigner Majorana operators c_0 .. c_{2L-1} on 2^L states,
/// in the Fock basis documented on ReducedDensityMatrix.
std::vector<Eigen::MatrixXcd> majorana_operators(int num_modes);

}  // namespace sshent
