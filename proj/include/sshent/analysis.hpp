#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sshent/entanglement.hpp"
#include "sshent/model.hpp"

namespace sshent {

/// sqrt(2) - 1: eta above which the eta-form state is entangled.
inline const double kEtaThreshold = 0.41421356237309504880;

/// System size: a finite number of cells, or the N -> infinity limit.
struct Size {
  std::optional<int> cells;
  static Size thermodynamic() { return {}; }
  static Size finite(int n) { return {n}; }
  bool is_thermodynamic() const { return !cells.has_value(); }
};

/// eta_1 / eta_2 of the clean periodic SSH chain at `lambda`.
double eta1(Size size, double lambda);
double eta2(Size size, double lambda);

struct SweepResult {
  std::vector<double> lambdas;
  std::vector<double> eta1, eta2, c1, c2;
  std::vector<double> dc2_dlambda;  ///< NaN where undefined (endpoints, gapless neighbours)
  Size size;
  Boundary boundary = Boundary::Periodic;
  std::optional<std::uint64_t> seed;
  std::vector<std::size_t> gapless_points;  ///< indices recorded as NaN rows
};

/// eta and concurrence columns over a strictly increasing lambda grid.
///
/// Clean periodic SSH uses the momentum route (or quadrature when `size` is
/// thermodynamic). Disordered or open chains use the real-space route on the
/// centre cell n = N/2 - 1: eta_1 on (a_n, b_n), eta_2 on (b_n, a_{n+1}).
/// Gapless points become NaN rows listed in `gapless_points`.
SweepResult sweep(const ModelSpec& base, std::span<const double> lambdas,
                  Size size = Size::thermodynamic(), Filling fill = Filling::Auto);

/// Centred differences (y[i+1] - y[i-1]) / (x[i+1] - x[i-1]); endpoints NaN.
/// Throws GridTooCoarse for fewer than 3 points, ValidationError unless x is strictly increasing.
std::vector<double> central_derivative(std::span<const double> xs, std::span<const double> ys);

/// Fills `dc2_dlambda` of a sweep in place and returns it.
const std::vector<double>& derivative(SweepResult& result);

/// Root of eta_1(lambda) - (sqrt 2 - 1) on (1e-6, 0.9) by bisection to 1e-13.
/// Throws NoRoot when there is no sign change (N = 2, 4).
double find_lambda_plus(Size size);
/// Root of eta_2(lambda) - (sqrt 2 - 1) on (-0.9, -1e-6).
double find_lambda_minus(Size size);

/// dC1/dlambda evaluated just below lambda_plus (centred difference at lambda_plus - 2h).
double slope_below_lambda_plus(Size size, double lambda_plus, double h = 1e-5);

/// One-sided limit eta_1(0+) or eta_1(0-) for even N: all k != pi terms at
/// lambda = 0 plus the limiting hx_hat(pi) = -sign(lambda).
double eta1_one_sided_at_zero(int n, int side);

/// |eta_1(0+) - eta_1(0-)|; throws ParityError for odd N.
double jump_at_zero(int n);

/// Finite-difference step used for d eta/d lambda near lambda = 0.
double fd_step(double lambda);

struct LogFit {
  double slope = 0.0;
  double intercept = 0.0;
  double rms_residual = 0.0;
  bool poor = false;  ///< asymptotic log law not reached in the window
  std::vector<double> lambdas, derivatives;
};

/// Least-squares fit of d eta_1/d lambda against ln|lambda| over `points`
/// geometrically spaced values in [lo, hi]. Throws WindowError when the
/// window touches or straddles 0.
LogFit logfit(Size size, double lo, double hi, int points = 9);

/// Asymptotic slope 2/pi and intercept (2/pi) ln((e/2)^2) of d eta_1/d lambda.
double log_law_slope();
double log_law_intercept();

struct FreeEnergyCheck {
  double lhs = 0.0;  ///< centred difference of E(lambda) = -sum_k |h(k)|
  double rhs = 0.0;  ///< N (eta_1 - eta_2)
  double diff = 0.0;
};

double ground_state_energy(int n, double lambda);
FreeEnergyCheck free_energy_check(int n, double lambda, double h = 1e-5);

struct CriticalReport {
  Size size;
  double lambda_plus = 0.0;
  double lambda_minus = 0.0;
  double slope_at_plus = 0.0;
  std::optional<double> jump_delta;  ///< even finite N only
  LogFit log;
};

CriticalReport critical_report(Size size);

/// lambda_plus for each N (NaN where no root exists).
std::vector<double> lambda_plus_vs_size(std::span<const int> sizes);

struct KitaevRow {
  double mu = 0.0;
  double eta_z = 0.0;
  double density = 0.0;          ///< (1 - eta_z) / 2
  double compressibility = 0.0;  ///< d density / d mu, NaN at endpoints
};

struct KitaevTable {
  std::vector<KitaevRow> rows;
  Size size;
  std::vector<std::size_t> gapless_points;
};

/// Local density and compressibility of the Kitaev chain over a uniform mu grid.
KitaevTable kitaev_density(const ModelSpec& spec, std::span<const double> mu_grid,
                           Size size = Size::thermodynamic());

/// Density at mu = 2t approached from above (side = +1) or below (side = -1);
/// the k = pi term takes its limiting value. Meaningful for even N.
double kitaev_density_one_sided(const ModelSpec& spec, int side);

/// Fit of the thermodynamic compressibility against ln|mu - 2t| over
/// mu - 2t in [lo, hi].
LogFit kitaev_compressibility_logfit(const ModelSpec& spec, double lo, double hi, int points = 9);

struct DisorderTable {
  std::vector<double> lambdas;
  std::vector<double> mean_c2, std_c2;
  std::vector<std::uint64_t> seeds;
  std::vector<std::vector<double>> per_seed;  ///< [realization][lambda]
  int n = 0;
  double amplitude = 0.0;
};

/// Centre-bond C2 statistics over `num_realizations` seeds (base seed + r).
DisorderTable disorder_ensemble(const ModelSpec& base, std::span<const double> lambdas,
                                int num_realizations);

struct ObcTable {
  std::vector<double> lambdas, c2, dc2_dlambda;
  int n = 0;
  Filling fill = Filling::Below;
  double peak_lambda = 0.0;
  double peak_value = 0.0;
};

/// dC2/dlambda of the centre inter-cell pair of an open SSH chain.
/// `fill` must be Below or Above (DegenerateFillError otherwise).
ObcTable obc_center_derivative(int n, std::span<const double> lambdas, Filling fill);

/// Inclusive grid of `points` values from start to stop.
std::vector<double> linspace(double start, double stop, int points);

}  // namespace sshent
