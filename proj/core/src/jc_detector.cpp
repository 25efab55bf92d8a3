#include "qjump/jc_detector.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "qjump/diagnostics.hpp"
#include "qjump/errors.hpp"

namespace qjump::jc {
namespace {

constexpr Complex kI{0.0, 1.0};

/// sin(x)/x for complex x, with the series near 0.
Complex sinc(Complex x) {
  if (std::abs(x) < 1e-4) {
    const Complex x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

/// exp(-a) * sin(x) / x, stable for large |Im x|.
Complex damped_sinc(Complex x, double a) {
  if (std::abs(x.imag()) < 20.0) return std::exp(-a) * sinc(x);
  const Complex e1 = std::exp(kI * x - a);
  const Complex e2 = std::exp(-kI * x - a);
  return (e1 - e2) / (2.0 * kI * x);
}

/// exp(-a) * cos(x), stable for large |Im x|.
Complex damped_cos(Complex x, double a) {
  if (std::abs(x.imag()) < 20.0) return std::exp(-a) * std::cos(x);
  return 0.5 * (std::exp(kI * x - a) + std::exp(-kI * x - a));
}

void require_time(double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw DomainError("time must be finite and >= 0");
  }
}

}  // namespace

JCParams::JCParams(double omega, double omega0, Complex g, double lambda)
    : omega_(omega),
      omega0_(omega0),
      g_(g),
      lambda_(lambda),
      chi_(lambda / (2.0 * std::abs(g))),
      delta_(0.5 * Complex(omega0 - omega, -lambda)) {}

JCParams JCParams::make(double omega, double omega0, Complex g, double lambda) {
  JCParams p(omega, omega0, g, lambda);
  p.validate();
  return p;
}

JCParams JCParams::resonant(double chi, double omega_over_g, double abs_g) {
  if (!(chi > 0.0)) throw InvalidConfig("chi must be > 0");
  const double omega = omega_over_g * abs_g;
  return make(omega, omega, abs_g, 2.0 * chi * abs_g);
}

void JCParams::validate() const {
  if (!(omega_ > 0.0) || !(omega0_ > 0.0)) {
    throw InvalidConfig("JCParams: frequencies must be > 0");
  }
  if (!(std::abs(g_) > 0.0)) throw InvalidConfig("JCParams: |g| must be > 0");
  if (!(lambda_ > 0.0)) throw InvalidConfig("JCParams: lambda must be > 0");
  const double chi = lambda_ / (2.0 * std::abs(g_));
  if (std::abs(chi - chi_) > 1e-14 * std::max(1.0, chi)) {
    throw InvalidConfig("JCParams: stored chi inconsistent with primaries");
  }
}

Complex b_n(int n, const JCParams& p) {
  const Complex r = p.delta() / p.abs_g();
  const Complex z = static_cast<double>(n) + r * r;
  // Adding +0.0 clears a negative zero so the principal root lands on +i.
  return std::sqrt(Complex(z.real(), z.imag() + 0.0));
}

CnSn cn_sn(int n, double t, const JCParams& p) {
  require_time(t);
  const Complex x = p.abs_g() * b_n(n, p) * t;
  return {std::cos(x), p.abs_g() * t * sinc(x)};
}

Complex damped_sn(int n, double t, const JCParams& p) {
  require_time(t);
  const Complex x = p.abs_g() * b_n(n, p) * t;
  return p.abs_g() * t * damped_sinc(x, 0.5 * p.lambda() * t);
}

JCEvolution jc_evolution(const JCParams& p, double t, Eigen::Index field_dim) {
  require_time(t);
  if (field_dim < 2) throw InvalidDimension("field_dim must be >= 2");
  const double ag = p.abs_g();
  const Complex dg = p.delta() / ag;
  const double half_decay = 0.5 * p.lambda() * t;

  JCEvolution ev;
  ev.t = t;
  ev.field_dim = field_dim;
  ev.U = CMatrix::Zero(2 * field_dim, 2 * field_dim);
  auto idx = [field_dim](int level, Eigen::Index n) {
    return JCEvolution::index(level, n, field_dim);
  };

  for (Eigen::Index n = 0; n < field_dim; ++n) {
    const int ni = static_cast<int>(n);
    // exp(-i omega (sigma0/2 + n) t) on |e,n> and |g,n>.
    const Complex phase_e = std::exp(-kI * p.omega() * (0.5 + ni) * t);
    const Complex phase_g = std::exp(-kI * p.omega() * (ni - 0.5) * t);

    const Complex x_up = ag * b_n(ni + 1, p) * t;
    const Complex c_up = damped_cos(x_up, half_decay);
    const Complex s_up = ag * t * damped_sinc(x_up, half_decay);
    ev.U(idx(1, n), idx(1, n)) = phase_e * (c_up - kI * dg * s_up);

    const Complex x_n = ag * b_n(ni, p) * t;
    const Complex c_n = damped_cos(x_n, half_decay);
    const Complex s_n = ag * t * damped_sinc(x_n, half_decay);
    ev.U(idx(0, n), idx(0, n)) = phase_g * (c_n + kI * dg * s_n);

    if (n >= 1) {
      const double root = std::sqrt(static_cast<double>(n));
      // <e,n-1|U|g,n> and <g,n|U|e,n-1> share the phase exp(-i omega (n-1/2) t).
      ev.U(idx(1, n - 1), idx(0, n)) = phase_g * (-kI * p.g_phase()) * s_n * root;
      ev.U(idx(0, n), idx(1, n - 1)) =
          phase_g * (-kI * std::conj(p.g_phase())) * s_n * root;
    }
  }
  return ev;
}

fock::FockOperator transition_operator_jc(const JCParams& p, double t,
                                          Eigen::Index field_dim) {
  require_time(t);
  if (field_dim < 2) throw InvalidDimension("field_dim must be >= 2");
  CMatrix gamma = CMatrix::Zero(field_dim, field_dim);
  for (Eigen::Index n = 1; n < field_dim; ++n) {
    const int ni = static_cast<int>(n);
    const Complex phase = std::exp(-kI * p.omega() * static_cast<double>(ni - 1) * t);
    gamma(n - 1, n) = -kI * p.g_phase() * phase * damped_sn(ni, t, p) *
                      std::sqrt(static_cast<double>(n));
  }
  return fock::FockOperator(std::move(gamma));
}

fock::DensityMatrix transition_superop_jc(const JCParams& p, double t,
                                          const fock::DensityMatrix& rho) {
  const auto gamma = transition_operator_jc(p, t, rho.dim());
  return fock::DensityMatrix::unchecked(
      2.0 * p.lambda() * fock::sandwich(gamma.matrix(), rho.matrix()));
}

double waiting_density_fock_jc(const JCParams& p, double t, int n) {
  if (n <= 0) return 0.0;
  return 2.0 * p.lambda() * n * std::norm(damped_sn(n, t, p));
}

double gamma_sd(const JCParams& p, double dt) {
  const double x = p.abs_g() * dt;
  return 2.0 * p.lambda() * x * x;
}

double small_dt_parameter(const JCParams& p, double dt, Eigen::Index dim) {
  return p.abs_g() * dt * std::sqrt(static_cast<double>(dim));
}

fock::DensityMatrix small_dt_qjs(const JCParams& p, double dt,
                                 const fock::DensityMatrix& rho) {
  const Eigen::Index dim = rho.dim();
  if (const double k = small_dt_parameter(p, dt, dim); k > 0.1) {
    std::ostringstream os;
    os << "small_dt_qjs: |g| dt sqrt(N+1) = " << k
       << " is not small; the short-window jump is inaccurate";
    diagnostics::warn(os.str());
  }
  const auto ops = fock::build_ladder_ops(dim);
  CMatrix out = gamma_sd(p, dt) * fock::sandwich(ops.a.matrix(), rho.matrix());
  // Conjugation by exp(-i omega n dt) multiplies entry (j,k) by
  // exp(-i omega (j-k) dt).
  for (Eigen::Index j = 0; j < dim; ++j) {
    for (Eigen::Index k = 0; k < dim; ++k) {
      if (j != k) {
        out(j, k) *= std::exp(-kI * p.omega() * static_cast<double>(j - k) * dt);
      }
    }
  }
  return fock::DensityMatrix::unchecked(std::move(out));
}

FmnResult fmn_jc(const JCParams& p, double T, int m, int n) {
  if (m < 1 || n < 1) throw DomainError("fmn_jc: m, n must be >= 1");
  if (!(T > 0.0)) throw DomainError("fmn_jc: T must be > 0");

  const double detuning = p.omega() * static_cast<double>(n - m);
  const double prefactor = 2.0 * p.lambda();
  auto integrand = [&](double t) -> Complex {
    const Complex sm = damped_sn(m, t, p);
    const Complex sn = damped_sn(n, t, p);
    return prefactor * std::exp(kI * detuning * t) * sm * std::conj(sn);
  };

  // Panels resolve the faster of the free-field beat and the Rabi
  // oscillation of |S_n|^2.
  const double rabi = 2.0 * p.abs_g() *
                      std::max(std::abs(b_n(m, p).real()), std::abs(b_n(n, p).real()));
  quad::QuadratureSpec spec;
  spec.oscillation_frequency_hint = std::max(std::abs(detuning), rabi);
  spec.max_subdivisions = 200'000;
  // Integral is T f_mn ~ 1/sqrt(mn); the absolute floor sits well below it.
  spec.abs_tol = 1e-14 / std::sqrt(static_cast<double>(m) * n);
  if (m == n) {
    auto real_integrand = [&](double t) -> Complex {
      return prefactor * std::norm(damped_sn(n, t, p));
    };
    const auto r = quad::integrate(real_integrand, 0.0, T, spec);
    if (!r.converged) {
      throw QuadratureError("fmn_jc: quadrature did not converge", r.error_estimate);
    }
    return {Complex(r.value.real() / T, 0.0), r.error_estimate / T,
            std::exp(-p.lambda() * T)};
  }
  // Off-diagonal values are suppressed by lambda/omega; rounding across the
  // many beat periods sets the floor.
  spec.abs_tol = 1e-12 / std::sqrt(static_cast<double>(m) * n);
  const auto r = quad::integrate(integrand, 0.0, T, spec);
  if (!r.converged) {
    throw QuadratureError("fmn_jc: quadrature did not converge", r.error_estimate);
  }
  return {r.value / T, r.error_estimate / T, std::exp(-p.lambda() * T)};
}

double fnn_exact_jc(int n, double T) {
  if (n < 1) throw DomainError("fnn_exact_jc: n must be >= 1");
  if (!(T > 0.0)) throw DomainError("fnn_exact_jc: T must be > 0");
  return 1.0 / (static_cast<double>(n) * T);
}

InterpResult fnn_interp_jc(int n, double T, const JCParams& p) {
  if (n < 1) throw DomainError("fnn_interp_jc: n must be >= 1");
  const double chi2 = p.chi() * p.chi();
  InterpResult r;
  r.regime_ratio = n / chi2;
  r.saturation = p.lambda() * T * n / (2.0 * chi2);
  r.value = -std::expm1(-r.saturation) / (static_cast<double>(n) * T);
  return r;
}

}  // namespace qjump::jc
