#include "qjump/special_functions.hpp"

#include <cmath>
#include <string>

#include "qjump/errors.hpp"
#include "qjump/quadrature.hpp"

namespace qjump::special {

double log_factorial(int n) {
  if (n < 0) {
    throw DomainError("log_factorial: n must be >= 0, got " + std::to_string(n));
  }
  if (n < 2) return 0.0;
  return static_cast<double>(std::lgamma(static_cast<long double>(n) + 1.0L));
}

double tricomi_psi_3(int n) {
  if (n < 1) {
    throw DomainError("tricomi_psi_3: n must be >= 1, got " + std::to_string(n));
  }
  const double nn = static_cast<double>(n);
  auto log_kernel = [nn](double t) {
    return 2.0 * std::log(t) + (2.0 * nn - 2.0) * std::log1p(t) - 2.0 * nn * t;
  };
  const double peak = 1.0 / std::sqrt(nn);
  const double log_peak = log_kernel(peak);

  // Extend the range until the kernel is 1e-18 of its peak value. The log
  // kernel is concave, so stepping outward in multiples of the width is safe.
  const double width = 1.0 / (2.0 * std::sqrt(nn));
  double upper = peak + width;
  while (log_kernel(upper) - log_peak > -41.5) upper += 4.0 * width;

  auto scaled = [&](double t) -> quad::Complex {
    if (t <= 0.0) return 0.0;
    return std::exp(log_kernel(t) - log_peak);
  };
  quad::QuadratureSpec spec;
  spec.rel_tol = 1e-13;
  spec.abs_tol = 1e-300;
  const double breaks[] = {peak};
  const auto r = quad::integrate(scaled, 0.0, upper, breaks, spec);
  if (!r.converged) {
    throw QuadratureError("tricomi_psi_3: quadrature did not converge",
                          r.error_estimate);
  }
  // 1/Gamma(3) = 1/2.
  return 0.5 * r.value.real() * std::exp(log_peak);
}

double laguerre_assoc(int k, double alpha, double x) {
  if (k < 0) {
    throw DomainError("laguerre_assoc: k must be >= 0, got " + std::to_string(k));
  }
  double prev = 1.0;
  if (k == 0) return prev;
  double curr = 1.0 + alpha - x;
  for (int j = 1; j < k; ++j) {
    const double next =
        ((2.0 * j + 1.0 + alpha - x) * curr - (j + alpha) * prev) / (j + 1.0);
    prev = curr;
    curr = next;
  }
  return curr;
}

double tricomi_psi_3_laguerre(int n) {
  if (n < 1) {
    throw DomainError("tricomi_psi_3_laguerre: n must be >= 1");
  }
  const double two_n = 2.0 * n;
  const double log_pref = log_factorial(2 * n - 2) - (1.0 + two_n) * std::log(two_n);
  return std::exp(log_pref) * laguerre_assoc(2 * n - 2, -1.0 - two_n, two_n);
}

}  // namespace qjump::special
