#include "sshent/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace sshent {

double bz_average(const std::function<double(double)>& integrand, double focus_k, double width,
                  double tol) {
  constexpr double pi = std::numbers::pi;
  std::vector<double> cuts{0.0, pi};
  if (width != 0.0) {
    for (double d = std::abs(width); d < pi; d *= 10.0) cuts.push_back(focus_k > 0.5 * pi ? pi - d : d);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  // Pieces whose integral nearly cancels never meet a relative tolerance;
  // the geometric cuts already resolve the gap scale, so depth stays small.
  constexpr unsigned kMaxDepth = 6;
  using Rule = boost::math::quadrature::gauss_kronrod<double, 31>;
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    double err = 0.0;
    total += Rule::integrate(integrand, cuts[i], cuts[i + 1], kMaxDepth, tol, &err);
  }
  return total / pi;
}

}  // namespace sshent
