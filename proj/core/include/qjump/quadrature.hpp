#pragma once

#include <complex>
#include <functional>
#include <span>

namespace qjump::quad {

using Complex = std::complex<double>;
using Integrand = std::function<Complex(double)>;

struct QuadratureSpec {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  int max_subdivisions = 10'000;
  /// Angular frequency of the dominant oscillation (radians per unit of the
  /// integration variable). When positive, initial panels are at most one
  /// period wide.
  double oscillation_frequency_hint = 0.0;

  void validate() const;
};

struct QuadratureResult {
  Complex value{};
  double error_estimate = 0.0;
  /// Number of panels in the final partition.
  int subdivisions_used = 0;
  bool converged = false;
};

/// Globally adaptive 7/15-point Gauss-Kronrod quadrature on [lo, hi].
/// The panel with the largest error estimate is bisected until
/// error <= max(rel_tol*|value|, abs_tol) or the panel cap is reached, in
/// which case `converged` is false.
/// Throws NonFiniteIntegrand if f returns NaN/Inf.
QuadratureResult integrate(const Integrand& f, double lo, double hi,
                           const QuadratureSpec& spec = {});

/// Same, with the initial partition forced to include `breakpoints`
/// (interior points outside (lo, hi) are ignored).
QuadratureResult integrate(const Integrand& f, double lo, double hi,
                           std::span<const double> breakpoints,
                           const QuadratureSpec& spec = {});

/// Single non-adaptive 15-point Kronrod panel; `error` receives |K15 - G7|.
Complex kronrod_panel(const Integrand& f, double lo, double hi,
                      double* error = nullptr);

}  // namespace qjump::quad
