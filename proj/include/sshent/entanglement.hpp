#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sshent/gaussian.hpp"
#include "sshent/model.hpp"

namespace sshent {

/// Concurrences at or below this value count as exactly zero.
inline constexpr double kConcurrenceZero = 1e-12;
/// C1 and C2 closer than this are a tie (phase label Critical).
inline constexpr double kPhaseTieTol = 1e-10;

enum class EtaRoute { MomentumAnalytic, RealSpace, Thermodynamic };
enum class Bond { Intra, Inter };  ///< (a_n, b_n) and (b_n, a_{n+1})

struct EtaValue {
  double value = 0.0;
  int site1 = 0;
  int site2 = 0;
  EtaRoute route = EtaRoute::MomentumAnalytic;
};

/// eta_{a_n b_m} = (1/N) sum_k cos[k (m - n) + phi(k)], e^{i phi} = hx_hat + i hy_hat.
/// Same-sublattice pairs are exactly 0. Needs a clean periodic SSH spec.
EtaValue eta_analytic(const ModelSpec& spec, int site1, int site2);

/// Convenience: eta_1 (intra) or eta_2 (inter) on the finite momentum grid.
double eta_bond(const ModelSpec& spec, Bond bond);

/// N -> infinity limit of eta_1 / eta_2 by adaptive quadrature. Throws GaplessError at lambda = 0.
EtaValue eta_thermodynamic(const ModelSpec& spec, Bond bond);

/// Kitaev single-site coefficient eta_z = (1/N) sum_k hz_hat(k).
double kitaev_eta_z(const ModelSpec& spec);
/// Brillouin-zone integral of hz_hat; `spec.N` is ignored.
double kitaev_eta_z_thermodynamic(const ModelSpec& spec);

/// 4x4 density matrix over two modes (first listed mode is the high bit):
/// basis {|0>, s2^dag|0>, s1^dag|0>, s1^dag s2^dag|0>}.
struct TwoSiteRDM {
  Eigen::Matrix4cd matrix;
  int site1 = 0;
  int site2 = 1;
  std::optional<double> eta;  ///< set when the matrix has the one-parameter eta form
};

/// (1/4) [[1-eta^2, 0, 0, 0], [0, 1+eta^2, -2eta, 0], [0, -2eta, 1+eta^2, 0], [0, 0, 0, 1-eta^2]].
TwoSiteRDM eta_form_rdm(double eta, int site1 = 0, int site2 = 1);

/// Which occupation the real-space ground state uses.
/// Auto: negative levels for clean chains, half filling for disordered ones.
/// Below / Above: half filling minus / plus one particle (open chains with
/// a pair of midgap states).
enum class Filling { Auto, Below, Above };

/// Ground-state correlation matrix Mbar of the real-space Hamiltonian.
MajoranaMatrix ground_state_correlations(const ModelSpec& spec, Filling fill = Filling::Auto);

/// Two-site RDM from a correlation matrix (general Gaussian route).
TwoSiteRDM rdm_pair_from_correlations(const MajoranaMatrix& mbar, int site1, int site2);

/// Clean periodic SSH: eta form with eta from eta_analytic.
/// Otherwise: real-space correlation matrix, restriction and reconstruction.
TwoSiteRDM rdm_pair(const ModelSpec& spec, int site1, int site2, Filling fill = Filling::Auto);

/// Wootters concurrence max{0, l1 - l2 - l3 - l4}, l_i the descending square
/// roots of the eigenvalues of rho (sy x sy) rho^* (sy x sy).
/// Throws InvalidState when trace, hermiticity or positivity fail by > 1e-10.
double concurrence(const TwoSiteRDM& rdm);

/// Closed form for the eta-form state: max{0, (eta^2 + 2|eta| - 1) / 2}.
double concurrence_from_eta(double eta);

enum class Phase { P0, Q0, Q1, P1, Critical };
std::string to_string(Phase p);

/// Quadrant of (C1, C2) in the entangled-graph phase diagram.
Phase classify(double c1, double c2);

struct GraphEdge {
  int site1 = 0;
  int site2 = 0;
  double concurrence = 0.0;
};

struct EntangledGraph {
  int num_cells = 0;
  int num_sites = 0;
  std::vector<GraphEdge> edges;  ///< sorted by (site1, site2), site1 < site2
  Phase phase = Phase::Critical;
  double c1 = 0.0;  ///< mean intra-cell concurrence
  double c2 = 0.0;  ///< mean inter-cell concurrence
};

struct GraphOptions {
  bool full_scan = false;  ///< all pairs instead of cell distance <= N/2
  Filling fill = Filling::Auto;
};

/// Pairwise concurrences over the SSH chain, assembled into a graph. With
/// disorder the phase is the majority label over per-cell (C1_n, C2_n).
EntangledGraph entangled_graph(const ModelSpec& spec, const GraphOptions& options = {});

}  // namespace sshent
