#include "mi.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "errors.hpp"
#include "math_util.hpp"
#include "tolerances.hpp"

namespace oic {

namespace {

constexpr double kLog2PiE = 2.837877066409345;

double output_density_discrete(const DiscreteDist& d, double sigma, double y) {
  double f = 0.0;
  for (std::size_t i = 0; i < d.support().size(); ++i) {
    f += d.masses()[i] * gauss_pdf((y - d.support()[i]) / sigma);
  }
  return f / sigma;
}

// Per segment [u,v] with density e^{A - L s}:
// integral of e^{A - L s} phi_sigma(y - s) ds
//   = e^{A - L y + L^2 sigma^2 / 2} [Q((u - y + L sigma^2)/sigma) - Q((v - ...)/sigma)].
double output_density_pwexp(const PiecewiseExpDist& d, double sigma, double y) {
  const auto& b = d.breakpoints();
  const auto& lam = d.lambdas();
  const std::size_t m = lam.size();
  double f = 0.0;
  double rate = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    rate += lam[k];
    const double u = b[k], v = b[k + 1];
    const double logamp = d.log_density(u);  // A - L u
    const double shift = rate * sigma;
    const double a1 = (u - y) / sigma + shift;
    const double a2 = (v - y) / sigma + shift;
    const double lg = logamp - rate * (y - u) + 0.5 * shift * shift + log_Q_diff(a1, a2);
    f += std::exp(lg);
  }
  return f;
}

}  // namespace

double output_density(const BoundedDist& S, double sigma, double y) {
  if (!(sigma > 0.0)) throw std::domain_error("output_density: sigma must be positive");
  if (S.is_discrete()) return output_density_discrete(S.discrete(), sigma, y);
  return output_density_pwexp(S.pwexp(), sigma, y);
}

MIResult mutual_info(const BoundedDist& S, double sigma) {
  if (!(sigma > 0.0)) throw std::domain_error("mutual_info: sigma must be positive");
  // Q(9) ~ 1e-19, so nine deviations hold all but far less than 1e-10 of the
  // output mass.
  const double lo = -9.0 * sigma;
  const double hi = 1.0 + 9.0 * sigma;
  auto integrand = [&](double y) {
    const double f = output_density(S, sigma, y);
    return f > 0.0 ? -f * std::log(f) : 0.0;
  };

  // Composite Simpson with grid doubling; start fine enough to resolve the
  // sigma-scale features.
  std::size_t N = 256;
  while (N < 32.0 * (hi - lo) / sigma && N < (1u << 15)) N *= 2;
  auto simpson = [&](std::size_t cells) {
    const double w = (hi - lo) / cells;
    double s = integrand(lo) + integrand(hi);
    for (std::size_t i = 1; i < cells; ++i) s += (i % 2 ? 4.0 : 2.0) * integrand(lo + i * w);
    return s * w / 3.0;
  };
  double prev = simpson(N);
  double cur = prev;
  double change = std::numeric_limits<double>::infinity();
  for (int level = 0; level < 8; ++level) {
    N *= 2;
    cur = simpson(N);
    change = std::abs(cur - prev);
    prev = cur;
    if (change < tol.quad) break;
  }
  if (!(change < 1e-4)) throw ConvergenceError("mutual_info: quadrature did not converge");
  MIResult out;
  out.value = cur - 0.5 * (kLog2PiE + 2.0 * std::log(sigma));
  out.estimated_error = std::max(change, 1e-12);
  return out;
}

}  // namespace oic
