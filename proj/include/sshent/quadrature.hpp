#pragma once

#include <functional>

namespace sshent {

/// (1/pi) * integral over [0, pi] of an integrand even in k, i.e. the
/// Brillouin-zone average (1/2pi) * integral over [0, 2pi).
///
/// `focus_k` (0 or pi) is where the integrand varies fastest; the interval
/// is split at geometric distances `width * 10^p` from it so the adaptive
/// Gauss-Kronrod rule resolves features of width ~ `width`.
double bz_average(const std::function<double(double)>& integrand, double focus_k, double width,
                  double tol = 1e-14);

}  // namespace sshent
