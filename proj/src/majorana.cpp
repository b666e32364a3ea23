#include "sshent/majorana.hpp"

#include <cmath>
#include <string>

#include "sshent/errors.hpp"

namespace sshent {

MajoranaMatrix::MajoranaMatrix(Eigen::MatrixXd entries) : m_(std::move(entries)) {
  if (m_.rows() != m_.cols()) throw ValidationError("Majorana matrix must be square");
  if (m_.rows() % 2 != 0)
    throw OddDimension("Majorana matrix dimension must be even, got " +
                       std::to_string(m_.rows()));
  for (Eigen::Index i = 0; i < m_.rows(); ++i)
    for (Eigen::Index j = i; j < m_.cols(); ++j)
      if (m_(i, j) != -m_(j, i)) throw ValidationError("Majorana matrix is not skew-symmetric");
}

MajoranaMatrix MajoranaMatrix::from_nearly_skew(const Eigen::MatrixXd& x, double tol) {
  const double scale = std::max(1.0, x.cwiseAbs().maxCoeff());
  if (x.rows() > 0 && (x + x.transpose()).cwiseAbs().maxCoeff() > tol * scale)
    throw ValidationError("matrix is not skew-symmetric within tolerance");
  return MajoranaMatrix(Eigen::MatrixXd(0.5 * (x - x.transpose())));
}

MajoranaMatrix MajoranaMatrix::zero(Eigen::Index num_modes) {
  return MajoranaMatrix(Eigen::MatrixXd::Zero(2 * num_modes, 2 * num_modes));
}

MajoranaMatrix majorana_from_quadratic(const Eigen::MatrixXd& hopping,
                                       const Eigen::MatrixXd& pairing) {
  const Eigen::Index L = hopping.rows();
  if (hopping.cols() != L || pairing.rows() != L || pairing.cols() != L)
    throw ValidationError("hopping and pairing matrices must be L x L");
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2 * L, 2 * L);
  for (Eigen::Index i = 0; i < L; ++i) {
    for (Eigen::Index j = 0; j < L; ++j) {
      const double v = hopping(i, j) - pairing(i, j);
      m(2 * i, 2 * j + 1) = v;
      m(2 * j + 1, 2 * i) = -v;
    }
  }
  return MajoranaMatrix(std::move(m));
}

bool is_particle_conserving(const MajoranaMatrix& m, double tol) {
  const auto& x = m.matrix();
  const Eigen::Index L = m.num_modes();
  for (Eigen::Index i = 0; i < L; ++i) {
    for (Eigen::Index j = 0; j < L; ++j) {
      if (std::abs(x(2 * i, 2 * j)) > tol || std::abs(x(2 * i + 1, 2 * j + 1)) > tol) return false;
      if (std::abs(x(2 * i, 2 * j + 1) - x(2 * j, 2 * i + 1)) > tol) return false;
    }
  }
  return true;
}

Eigen::MatrixXd hopping_block(const MajoranaMatrix& m) {
  const Eigen::Index L = m.num_modes();
  Eigen::MatrixXd a(L, L);
  for (Eigen::Index i = 0; i < L; ++i)
    for (Eigen::Index j = 0; j < L; ++j) a(i, j) = m(2 * i, 2 * j + 1);
  return a;
}

}  // namespace sshent
