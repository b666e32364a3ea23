#include "sshent/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "sshent/errors.hpp"
#include "sshent/parallel.hpp"

namespace sshent {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

ModelSpec clean_ssh(Size size, double lambda) {
  return ModelSpec::ssh(size.cells.value_or(2), lambda);
}

int centre_cell(int n) { return std::max(0, n / 2 - 1); }

template <class F>
double bisect(F&& f, double lo, double hi) {
  double flo = f(lo);
  const double fhi = f(hi);
  if (!(flo * fhi < 0.0)) throw NoRoot("no sign change on [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

LogFit fit_against_log(std::vector<double> xs, std::vector<double> ys) {
  LogFit fit;
  const auto n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double x = std::log(std::abs(xs[i]));
    sx += x;
    sy += ys[i];
    sxx += x * x;
    sxy += x * ys[i];
  }
  fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  fit.intercept = (sy - fit.slope * sx) / n;
  double ss = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (fit.slope * std::log(std::abs(xs[i])) + fit.intercept);
    ss += r * r;
  }
  fit.rms_residual = std::sqrt(ss / n);
  fit.lambdas = std::move(xs);
  fit.derivatives = std::move(ys);
  return fit;
}

std::vector<double> geometric_window(double lo, double hi, int points) {
  if (lo == 0.0 || hi == 0.0 || lo * hi < 0.0) throw WindowError("fit window must not touch lambda = 0");
  if (points < 3) throw WindowError("fit window needs at least 3 points");
  const double sign = lo < 0.0 ? -1.0 : 1.0;
  double a = std::abs(lo), b = std::abs(hi);
  if (a > b) std::swap(a, b);
  std::vector<double> out(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i)
    out[static_cast<std::size_t>(i)] = sign * a * std::pow(b / a, static_cast<double>(i) / (points - 1));
  return out;
}

double mean_abs(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += std::abs(x);
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

// Shifted accumulation: identical samples give exactly that mean and zero spread.
std::pair<double, double> mean_and_std(const std::vector<double>& v) {
  if (v.empty()) return {kNaN, kNaN};
  const double x0 = v.front();
  double s = 0.0, ss = 0.0;
  for (double x : v) {
    s += x - x0;
    ss += (x - x0) * (x - x0);
  }
  const auto n = static_cast<double>(v.size());
  const double mean = x0 + s / n;
  if (v.size() < 2) return {mean, 0.0};
  const double var = (ss - s * s / n) / (n - 1.0);
  return {mean, std::sqrt(std::max(0.0, var))};
}

double kitaev_density_at(const ModelSpec& spec, Size size) {
  const double ez = size.is_thermodynamic() ? kitaev_eta_z_thermodynamic(spec) : kitaev_eta_z(spec);
  return 0.5 * (1.0 - ez);
}

}  // namespace

double eta1(Size size, double lambda) {
  const auto spec = clean_ssh(size, lambda);
  return size.is_thermodynamic() ? eta_thermodynamic(spec, Bond::Intra).value : eta_bond(spec, Bond::Intra);
}

double eta2(Size size, double lambda) {
  const auto spec = clean_ssh(size, lambda);
  return size.is_thermodynamic() ? eta_thermodynamic(spec, Bond::Inter).value : eta_bond(spec, Bond::Inter);
}

std::vector<double> linspace(double start, double stop, int points) {
  if (points < 1) return {};
  if (points == 1) return {start};
  std::vector<double> out(static_cast<std::size_t>(points));
  const double step = (stop - start) / (points - 1);
  for (int i = 0; i < points; ++i) out[static_cast<std::size_t>(i)] = start + step * i;
  out.back() = stop;
  return out;
}

SweepResult sweep(const ModelSpec& base, std::span<const double> lambdas, Size size, Filling fill) {
  base.validate();
  if (!base.is_ssh()) throw ValidationError("sweeps run over the SSH control parameter");
  for (std::size_t i = 1; i < lambdas.size(); ++i)
    if (!(lambdas[i] > lambdas[i - 1])) throw ValidationError("lambda grid must be strictly increasing");
  const bool momentum = base.translation_invariant() && fill == Filling::Auto;
  if (size.is_thermodynamic() && !momentum)
    throw ValidationError("the thermodynamic limit needs a clean periodic chain");

  SweepResult r;
  r.lambdas.assign(lambdas.begin(), lambdas.end());
  const std::size_t n = lambdas.size();
  r.eta1.assign(n, kNaN);
  r.eta2.assign(n, kNaN);
  r.c1.assign(n, kNaN);
  r.c2.assign(n, kNaN);
  r.dc2_dlambda.assign(n, kNaN);
  r.size = momentum ? size : Size::finite(base.N);
  r.boundary = base.boundary;
  if (base.disorder) r.seed = base.disorder->seed;

  const Size eval_size = momentum && size.is_thermodynamic() ? size : Size::finite(base.N);
  std::vector<char> gapless(n, 0);
  parallel_for(n, [&](std::size_t i) {
    const double l = lambdas[i];
    try {
      if (momentum) {
        r.eta1[i] = eta1(eval_size, l);
        r.eta2[i] = eta2(eval_size, l);
        r.c1[i] = concurrence_from_eta(r.eta1[i]);
        r.c2[i] = concurrence_from_eta(r.eta2[i]);
      } else {
        const auto spec = base.with_lambda(l);
        const auto mbar = ground_state_correlations(spec, fill);
        const int c = centre_cell(base.N);
        const int a = site_a(c), b = site_b(c), a_next = site_a((c + 1) % base.N);
        r.eta1[i] = mbar(2 * a, 2 * b + 1);
        r.eta2[i] = mbar(2 * a_next, 2 * b + 1);
        r.c1[i] = concurrence(rdm_pair_from_correlations(mbar, a, b));
        r.c2[i] = concurrence(rdm_pair_from_correlations(mbar, b, a_next));
      }
    } catch (const GaplessError&) {
      gapless[i] = 1;
    }
  });
  for (std::size_t i = 0; i < n; ++i)
    if (gapless[i]) r.gapless_points.push_back(i);
  if (n >= 3) derivative(r);
  return r;
}

std::vector<double> central_derivative(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() < 3) throw GridTooCoarse("centred differences need at least 3 grid points");
  if (ys.size() != xs.size()) throw ValidationError("column length mismatch");
  for (std::size_t i = 1; i < xs.size(); ++i)
    if (!(xs[i] > xs[i - 1])) throw ValidationError("grid must be strictly increasing");
  std::vector<double> d(xs.size(), kNaN);
  for (std::size_t i = 1; i + 1 < xs.size(); ++i) d[i] = (ys[i + 1] - ys[i - 1]) / (xs[i + 1] - xs[i - 1]);
  return d;
}

const std::vector<double>& derivative(SweepResult& result) {
  result.dc2_dlambda = central_derivative(result.lambdas, result.c2);
  return result.dc2_dlambda;
}

double find_lambda_plus(Size size) {
  return bisect([&](double l) { return eta1(size, l) - kEtaThreshold; }, 1e-6, 0.9);
}

double find_lambda_minus(Size size) {
  return bisect([&](double l) { return eta2(size, l) - kEtaThreshold; }, -0.9, -1e-6);
}

double slope_below_lambda_plus(Size size, double lambda_plus, double h) {
  const double x = lambda_plus - 2.0 * h;
  auto c1 = [&](double l) { return concurrence_from_eta(eta1(size, l)); };
  return (c1(x + h) - c1(x - h)) / (2.0 * h);
}

double eta1_one_sided_at_zero(int n, int side) {
  if (n % 2 != 0) throw ParityError("one-sided limits at lambda = 0 differ only for even N");
  const auto spec = ModelSpec::ssh(n, 0.0);
  const auto grid = momentum_grid(n);
  double sum = 0.0;
  for (int j = 0; j < n; ++j) {
    if (j == grid.pi_index()) {
      // h(pi) = (-2 lambda, 0)
      sum += side > 0 ? -1.0 : 1.0;
    } else {
      sum += bloch_vector(spec, grid.momenta[static_cast<std::size_t>(j)]).normalized().hx;
    }
  }
  return sum / n;
}

double jump_at_zero(int n) {
  if (n % 2 != 0) throw ParityError("eta_1 is continuous at lambda = 0 for odd N");
  return std::abs(eta1_one_sided_at_zero(n, +1) - eta1_one_sided_at_zero(n, -1));
}

double fd_step(double lambda) {
  const double a = std::abs(lambda);
  double h = std::clamp(1e-2 * a, 1e-7, 1e-5);
  if (a > 0.0) h = std::min(h, 0.25 * a);
  return h;
}

double log_law_slope() { return 2.0 / std::numbers::pi; }
double log_law_intercept() { return 2.0 / std::numbers::pi * 2.0 * std::log(std::numbers::e / 2.0); }

LogFit logfit(Size size, double lo, double hi, int points) {
  const auto xs = geometric_window(lo, hi, points);
  std::vector<double> ys(xs.size());
  parallel_for(xs.size(), [&](std::size_t i) {
    const double h = fd_step(xs[i]);
    ys[i] = (eta1(size, xs[i] + h) - eta1(size, xs[i] - h)) / (2.0 * h);
  });
  auto fit = fit_against_log(xs, ys);
  const double expected = log_law_slope();
  fit.poor = std::abs(fit.slope - expected) > 0.05 * expected ||
             fit.rms_residual > 1e-2 * mean_abs(fit.derivatives);
  return fit;
}

double ground_state_energy(int n, double lambda) {
  const auto spec = ModelSpec::ssh(n, lambda);
  double e = 0.0;
  for (double k : momentum_grid(n).momenta) e -= bloch_vector(spec, k).norm();
  return e;
}

FreeEnergyCheck free_energy_check(int n, double lambda, double h) {
  FreeEnergyCheck c;
  c.rhs = n * (eta1(Size::finite(n), lambda) - eta2(Size::finite(n), lambda));
  c.lhs = (ground_state_energy(n, lambda + h) - ground_state_energy(n, lambda - h)) / (2.0 * h);
  c.diff = std::abs(c.lhs - c.rhs);
  return c;
}

CriticalReport critical_report(Size size) {
  CriticalReport rep;
  rep.size = size;
  rep.lambda_plus = find_lambda_plus(size);
  rep.lambda_minus = find_lambda_minus(size);
  rep.slope_at_plus = slope_below_lambda_plus(size, rep.lambda_plus);
  if (!size.is_thermodynamic() && *size.cells % 2 == 0) rep.jump_delta = jump_at_zero(*size.cells);
  rep.log = logfit(size, 1e-5, 1e-3);
  return rep;
}

std::vector<double> lambda_plus_vs_size(std::span<const int> sizes) {
  std::vector<double> out(sizes.size(), kNaN);
  parallel_for(sizes.size(), [&](std::size_t i) {
    try {
      out[i] = find_lambda_plus(Size::finite(sizes[i]));
    } catch (const NoRoot&) {
    }
  });
  return out;
}

KitaevTable kitaev_density(const ModelSpec& spec, std::span<const double> mu_grid, Size size) {
  spec.validate();
  if (spec.is_ssh()) throw ValidationError("local density sweep needs a Kitaev chain");
  KitaevTable t;
  t.size = size.is_thermodynamic() ? size : Size::finite(spec.N);
  t.rows.resize(mu_grid.size());
  std::vector<char> gapless(mu_grid.size(), 0);
  const Size eval = size.is_thermodynamic() ? size : Size::finite(spec.N);
  parallel_for(mu_grid.size(), [&](std::size_t i) {
    auto& row = t.rows[i];
    row.mu = mu_grid[i];
    row.compressibility = kNaN;
    try {
      row.density = kitaev_density_at(spec.with_mu(mu_grid[i]), eval);
      row.eta_z = 1.0 - 2.0 * row.density;
    } catch (const GaplessError&) {
      row.density = row.eta_z = kNaN;
      gapless[i] = 1;
    }
  });
  for (std::size_t i = 0; i < gapless.size(); ++i)
    if (gapless[i]) t.gapless_points.push_back(i);
  if (mu_grid.size() >= 3) {
    std::vector<double> dens(t.rows.size());
    for (std::size_t i = 0; i < dens.size(); ++i) dens[i] = t.rows[i].density;
    const auto d = central_derivative(mu_grid, dens);
    for (std::size_t i = 0; i < d.size(); ++i) t.rows[i].compressibility = d[i];
  }
  return t;
}

double kitaev_density_one_sided(const ModelSpec& spec, int side) {
  const auto& kp = spec.kitaev_params();
  const auto at_critical = spec.with_mu(2.0 * kp.t);
  const auto grid = momentum_grid(spec.N);
  double sum = 0.0;
  for (int j = 0; j < spec.N; ++j) {
    if (j == grid.pi_index()) {
      // hz(pi) = t - mu/2 changes sign across mu = 2t
      sum += side > 0 ? -1.0 : 1.0;
    } else {
      sum += bloch_vector(at_critical, grid.momenta[static_cast<std::size_t>(j)]).normalized().hz;
    }
  }
  return 0.5 * (1.0 - sum / spec.N);
}

LogFit kitaev_compressibility_logfit(const ModelSpec& spec, double lo, double hi, int points) {
  const auto offsets = geometric_window(lo, hi, points);
  const double mu_c = 2.0 * spec.kitaev_params().t;
  std::vector<double> ys(offsets.size());
  parallel_for(offsets.size(), [&](std::size_t i) {
    const double h = fd_step(offsets[i]);
    const double mu = mu_c + offsets[i];
    ys[i] = (kitaev_density_at(spec.with_mu(mu + h), Size::thermodynamic()) -
             kitaev_density_at(spec.with_mu(mu - h), Size::thermodynamic())) /
            (2.0 * h);
  });
  auto fit = fit_against_log(offsets, ys);
  fit.poor = fit.rms_residual > 1e-2 * mean_abs(fit.derivatives);
  return fit;
}

DisorderTable disorder_ensemble(const ModelSpec& base, std::span<const double> lambdas,
                                int num_realizations) {
  base.validate();
  if (!base.is_ssh() || !base.disorder) throw ValidationError("disorder ensemble needs a disordered SSH spec");
  if (num_realizations < 1) throw ValidationError("need at least one realization");

  DisorderTable t;
  t.lambdas.assign(lambdas.begin(), lambdas.end());
  t.n = base.N;
  t.amplitude = base.disorder->amplitude;
  const auto R = static_cast<std::size_t>(num_realizations);
  for (std::size_t r = 0; r < R; ++r) t.seeds.push_back(base.disorder->seed + r);
  t.per_seed.assign(R, std::vector<double>(lambdas.size(), kNaN));

  const int c = centre_cell(base.N);
  const int b = site_b(c), a_next = site_a((c + 1) % base.N);
  parallel_for(R * lambdas.size(), [&](std::size_t task) {
    const std::size_t r = task / lambdas.size(), i = task % lambdas.size();
    auto spec = base.with_lambda(lambdas[i]);
    spec.disorder->seed = t.seeds[r];
    t.per_seed[r][i] = concurrence(rdm_pair(spec, b, a_next));
  });

  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    std::vector<double> col(R);
    for (std::size_t r = 0; r < R; ++r) col[r] = t.per_seed[r][i];
    const auto [m, s] = mean_and_std(col);
    t.mean_c2.push_back(m);
    t.std_c2.push_back(s);
  }
  return t;
}

ObcTable obc_center_derivative(int n, std::span<const double> lambdas, Filling fill) {
  if (fill == Filling::Auto)
    throw DegenerateFillError("open chain: choose filling below or above the midgap pair");
  ObcTable t;
  t.n = n;
  t.fill = fill;
  t.lambdas.assign(lambdas.begin(), lambdas.end());
  t.c2.assign(lambdas.size(), kNaN);
  const int c = centre_cell(n);
  const int b = site_b(c), a_next = site_a(c + 1);
  parallel_for(lambdas.size(), [&](std::size_t i) {
    const auto spec = ModelSpec::ssh(n, lambdas[i], Boundary::Open);
    t.c2[i] = concurrence(rdm_pair(spec, b, a_next, fill));
  });
  t.dc2_dlambda = central_derivative(t.lambdas, t.c2);
  t.peak_value = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < t.dc2_dlambda.size(); ++i) {
    if (std::isfinite(t.dc2_dlambda[i]) && t.dc2_dlambda[i] > t.peak_value) {
      t.peak_value = t.dc2_dlambda[i];
      t.peak_lambda = t.lambdas[i];
    }
  }
  return t;
}

}  // namespace sshent
