#pragma once

#include <Eigen/Dense>

namespace sshent {

/// Real skew-symmetric 2L x 2L matrix in the Majorana basis
/// a_j = (c_{2j} + i c_{2j+1}) / 2 (0-based), so that H = (i/4) c^T M c.
///
/// Construction enforces an even dimension and exact skew-symmetry; the
/// `from_nearly_skew` factory antisymmetrizes rounding noise away.
class MajoranaMatrix {
 public:
  MajoranaMatrix() = default;

  /// Throws OddDimension for odd sizes and ValidationError unless M^T == -M exactly.
  explicit MajoranaMatrix(Eigen::MatrixXd entries);

  /// Returns (X - X^T) / 2 after checking |X + X^T| <= tol * max(1, |X|).
  static MajoranaMatrix from_nearly_skew(const Eigen::MatrixXd& x, double tol = 1e-8);

  static MajoranaMatrix zero(Eigen::Index num_modes);

  Eigen::Index dim() const { return m_.rows(); }
  Eigen::Index num_modes() const { return m_.rows() / 2; }
  double operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }
  const Eigen::MatrixXd& matrix() const { return m_; }

 private:
  Eigen::MatrixXd m_;
};

/// Builds M for H = sum_ij A_ij a_i^dag a_j + sum_{i<j} B_ij (a_i^dag a_j^dag + h.c.)
/// with A real symmetric (hopping + onsite) and B real antisymmetric (pairing).
/// Constant shifts are dropped.
MajoranaMatrix majorana_from_quadratic(const Eigen::MatrixXd& hopping,
                                       const Eigen::MatrixXd& pairing);

/// True when M has vanishing even-even and odd-odd blocks and a symmetric
/// even-odd block, i.e. M describes a real particle-conserving Hamiltonian.
bool is_particle_conserving(const MajoranaMatrix& m, double tol = 0.0);

/// The L x L hopping matrix A of a particle-conserving M (A_ij = M(2i, 2j+1)).
Eigen::MatrixXd hopping_block(const MajoranaMatrix& m);

}  // namespace sshent
