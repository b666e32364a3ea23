#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "sshent/majorana.hpp"

namespace sshent {

/// |h(k)| or a single-particle level below this is treated as gapless.
inline constexpr double kGapTolerance = 1e-12;

enum class Family { SSH, Kitaev };
enum class Boundary { Periodic, Open };

std::string to_string(Family f);
std::string to_string(Boundary b);

/// Onsite energies drawn uniformly from [-amplitude, amplitude].
struct DisorderSpec {
  double amplitude = 0.1;
  std::uint64_t seed = 20170101;
};

/// SSH chain with t1 = 1 - lambda (intra-cell) and t2 = 1 + lambda (inter-cell).
struct SshParams {
  double lambda = 0.0;
};

/// Kitaev chain H = sum_j [-t (a_j^dag a_{j+1} + h.c.) + delta (a_j a_{j+1} + h.c.)]
///                  - mu sum_j a_j^dag a_j.
struct KitaevParams {
  double t = 1.0;
  double delta = 1.0;
  double mu = 0.0;
};

struct ModelSpec {
  int N = 2;  ///< unit cells (SSH) or sites (Kitaev)
  std::variant<SshParams, KitaevParams> params = SshParams{};
  Boundary boundary = Boundary::Periodic;
  std::optional<DisorderSpec> disorder;

  static ModelSpec ssh(int n, double lambda, Boundary b = Boundary::Periodic);
  static ModelSpec kitaev(int n, double t, double delta, double mu,
                          Boundary b = Boundary::Periodic);

  Family family() const {
    return std::holds_alternative<SshParams>(params) ? Family::SSH : Family::Kitaev;
  }
  bool is_ssh() const { return family() == Family::SSH; }
  const SshParams& ssh_params() const;
  const KitaevParams& kitaev_params() const;

  /// Clean and periodic: the momentum-space route applies.
  bool translation_invariant() const {
    return boundary == Boundary::Periodic && !disorder.has_value();
  }

  /// Number of fermionic modes L (2N for SSH, N for Kitaev).
  int num_modes() const { return is_ssh() ? 2 * N : N; }

  /// Throws ValidationError on N < 2, |lambda| > 1 or negative disorder amplitude.
  void validate() const;

  ModelSpec with_lambda(double lambda) const;
  ModelSpec with_mu(double mu) const;
};

inline double intra_hopping(double lambda) { return 1.0 - lambda; }
inline double inter_hopping(double lambda) { return 1.0 + lambda; }

/// Real-space mode index of a_n and b_n (cells are 0-based).
inline int site_a(int cell) { return 2 * cell; }
inline int site_b(int cell) { return 2 * cell + 1; }
inline int cell_of(int site) { return site / 2; }
inline bool is_a_site(int site) { return site % 2 == 0; }

struct BlochVector {
  double hx = 0.0;
  double hy = 0.0;
  double hz = 0.0;
  double k = 0.0;

  double norm() const;
  /// h / |h|; throws GaplessError when |h| < kGapTolerance.
  BlochVector normalized() const;
};

struct MomentumGrid {
  int N = 0;
  std::vector<double> momenta;  ///< k_j = 2 pi j / N

  bool contains_pi() const { return N % 2 == 0; }
  /// Index of k = pi, or -1 for odd N.
  int pi_index() const { return contains_pi() ? N / 2 : -1; }
};

MomentumGrid momentum_grid(int n);

/// SSH: h = (t1 + t2 cos k, t2 sin k, 0).
/// Kitaev: h = (0, delta sin k, -mu/2 - t cos k), so that H = sum_k psi_k^dag (h.sigma) psi_k
/// with psi_k = (a_k, a_{-k}^dag).
BlochVector bloch_vector(const ModelSpec& spec, double k);

/// Onsite energies for every mode, in site order (a_0, b_0, a_1, ... for SSH).
/// Returns zeros when no disorder is set.
std::vector<double> onsite_energies(const ModelSpec& spec);

/// Hopping (A) and pairing (B) matrices of the real-space Hamiltonian.
struct QuadraticForm {
  Eigen::MatrixXd hopping;
  Eigen::MatrixXd pairing;
};

QuadraticForm realspace_quadratic(const ModelSpec& spec);
MajoranaMatrix realspace_hamiltonian(const ModelSpec& spec);

}  // namespace sshent
