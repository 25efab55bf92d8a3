#include "qjump/oscillator_detector.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qjump/errors.hpp"
#include "qjump/quadrature.hpp"
#include "qjump/special_functions.hpp"

namespace qjump::osc {
namespace {

constexpr Complex kI{0.0, 1.0};
constexpr double kPi = std::numbers::pi;

Complex sinc(Complex x) {
  if (std::abs(x) < 1e-4) {
    const Complex x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

void require_time(double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw DomainError("time must be finite and >= 0");
  }
}

/// <n-1| Gamma(t) |n> for n >= 1.
Complex gamma_element(const OscParams& p, double t, int n) {
  const Complex eta_t = p.eta() * t;
  const Complex a_upsilon = -kI * std::conj(p.g()) * t * sinc(eta_t);
  const Complex ups = upsilon(p, t);
  const double nn = static_cast<double>(n);
  Complex log_rest = -0.5 * kI * p.Omega() * t * nn;
  if (n > 1) {
    if (ups == Complex(0.0, 0.0)) return 0.0;
    log_rest += (nn - 1.0) * std::log(ups);
  }
  return std::sqrt(nn) * a_upsilon * std::exp(log_rest);
}

/// ln(cosh z + zeta sinh z) for z >= 0, zeta > 1.
double log_cosh_plus_zeta_sinh(double z, double zeta) {
  return z + std::log(0.5 * (1.0 + zeta) + 0.5 * (1.0 - zeta) * std::exp(-2.0 * z));
}

/// ln sinh z for z > 0.
double log_sinh(double z) {
  if (z < 1e-3) return std::log(std::sinh(z));
  return z + std::log(-std::expm1(-2.0 * z)) - std::numbers::ln2;
}

FmnResult finish(const quad::QuadratureResult& r, double scale, double T,
                 double lambda, const char* who) {
  if (!r.converged) {
    throw QuadratureError(std::string(who) + ": quadrature did not converge",
                          r.error_estimate * scale);
  }
  return {r.value * scale / T, r.error_estimate * scale / T,
          std::exp(-lambda * T)};
}

FmnResult fmn_sub(const OscParams& p, double T, int m, int n) {
  const double chi = p.chi();
  const double xi = p.xi();
  const double one_minus = 1.0 - chi * chi;
  const double prefactor = 4.0 * chi / (one_minus * std::sqrt(one_minus));
  const double z_hi = p.lambda() * T / (2.0 * xi);
  const double beat = p.omega_bar() * static_cast<double>(n - m);
  const int power = m + n - 2;
  const double decay = xi * static_cast<double>(m + n);

  auto integrand = [=](double z) -> Complex {
    const double s = std::sin(z);
    const double c = std::cos(z) + xi * std::sin(z);
    if (s == 0.0) return 0.0;
    double log_mag = 2.0 * std::log(std::abs(s)) - decay * z;
    double sign = 1.0;
    if (power > 0) {
      if (c == 0.0) return 0.0;
      log_mag += power * std::log(std::abs(c));
      if (c < 0.0 && power % 2 == 1) sign = -1.0;
    }
    const double mag = sign * std::exp(log_mag);
    if (beat == 0.0) return mag;
    return mag * std::exp(kI * beat * z);
  };

  // Saddle locations k pi +- z0 of the diagonal integrand as breakpoints.
  std::vector<double> breaks;
  const double nn = 0.5 * (m + n);
  const double mu = 1.0 / std::sqrt(xi * xi * nn + nn - 1.0 + 1e-300);
  const double z0 = std::atan(mu);
  for (double base = 0.0; base < z_hi; base += kPi) {
    breaks.push_back(base + z0);
    if (base > 0.0) breaks.push_back(base - z0);
    if (breaks.size() > 4000) break;
  }

  quad::QuadratureSpec spec;
  spec.oscillation_frequency_hint = std::max(2.0, std::abs(beat));
  spec.max_subdivisions = 400'000;
  // Off-diagonal values are small remainders of a fast oscillation, so the
  // floor is set against the O(1) diagonal scale instead.
  spec.abs_tol = (m == n ? 1e-15 : 1e-13) / prefactor;
  const auto r = quad::integrate(integrand, 0.0, z_hi, breaks, spec);
  FmnResult out = finish(r, prefactor, T, p.lambda(), "fnn_integral_osc");
  if (m == n) out.value = Complex(out.value.real(), 0.0);
  return out;
}

FmnResult fnn_critical(const OscParams& p, double T, int n) {
  const double nn = static_cast<double>(n);
  auto integrand = [=](double y) -> Complex {
    if (y <= 0.0) return 0.0;
    return std::exp(2.0 * std::log(y) + (2.0 * nn - 2.0) * std::log1p(y) -
                    2.0 * nn * y);
  };
  const double y_hi = 0.5 * p.lambda() * T;
  const double breaks[] = {1.0 / std::sqrt(nn)};
  quad::QuadratureSpec spec;
  spec.abs_tol = 1e-16;
  spec.max_subdivisions = 100'000;
  const auto r = quad::integrate(integrand, 0.0, y_hi, breaks, spec);
  FmnResult out = finish(r, 4.0, T, p.lambda(), "fnn_integral_osc");
  out.value = Complex(out.value.real(), 0.0);
  return out;
}

FmnResult fnn_super(const OscParams& p, double T, int n) {
  const double chi = p.chi();
  const double zeta = p.zeta();
  const double excess = chi * chi - 1.0;
  const double prefactor = 4.0 * chi / (excess * std::sqrt(excess));
  const double z_hi = p.lambda() * T / (2.0 * zeta);
  const double nn = static_cast<double>(n);

  auto integrand = [=](double z) -> Complex {
    if (z <= 0.0) return 0.0;
    return std::exp(2.0 * log_sinh(z) +
                    (2.0 * nn - 2.0) * log_cosh_plus_zeta_sinh(z, zeta) -
                    2.0 * nn * zeta * z);
  };
  const double nu = 1.0 / std::sqrt((zeta * zeta - 1.0) * nn + 1.0);
  const double breaks[] = {std::atanh(nu)};
  quad::QuadratureSpec spec;
  spec.abs_tol = 1e-15 / prefactor;
  spec.max_subdivisions = 100'000;
  const auto r = quad::integrate(integrand, 0.0, z_hi, breaks, spec);
  FmnResult out = finish(r, prefactor, T, p.lambda(), "fnn_integral_osc");
  out.value = Complex(out.value.real(), 0.0);
  return out;
}

}  // namespace

const char* to_string(Regime r) {
  switch (r) {
    case Regime::sub:
      return "sub";
    case Regime::critical:
      return "critical";
    case Regime::super:
      return "super";
  }
  return "?";
}

OscParams::OscParams(double omega_a, double omega_b, Complex g, double lambda)
    : omega_a_(omega_a),
      omega_b_(omega_b),
      g_(g),
      lambda_(lambda),
      chi_(lambda / (2.0 * std::abs(g))) {
  if (std::abs(chi_ - 1.0) <= critical_window) {
    regime_ = Regime::critical;
  } else {
    regime_ = chi_ < 1.0 ? Regime::sub : Regime::super;
  }
  const double ag2 = std::norm(g);
  eta0_ = std::sqrt(Complex(ag2 - 0.25 * lambda * lambda, 0.0));
  omega_ba_ = Complex(omega_b - omega_a, -lambda);
  eta_ = std::sqrt(ag2 + 0.25 * omega_ba_ * omega_ba_);
  Omega_ = Complex(omega_b + omega_a, -lambda);
}

OscParams OscParams::make(double omega_a, double omega_b, Complex g,
                          double lambda) {
  OscParams p(omega_a, omega_b, g, lambda);
  p.validate();
  return p;
}

OscParams OscParams::resonant(double chi, double omega_over_g, double abs_g) {
  if (!(chi > 0.0)) throw InvalidConfig("chi must be > 0");
  const double omega = omega_over_g * abs_g;
  return make(omega, omega, abs_g, 2.0 * chi * abs_g);
}

bool OscParams::is_resonant() const noexcept {
  return std::abs(omega_a_ - omega_b_) <=
         1e-12 * std::max(std::abs(omega_a_), std::abs(omega_b_));
}

double OscParams::xi() const {
  if (!(chi_ < 1.0)) throw UnsupportedRegime("xi is defined for chi < 1 only");
  return chi_ / std::sqrt(1.0 - chi_ * chi_);
}

double OscParams::zeta() const {
  if (!(chi_ > 1.0)) throw UnsupportedRegime("zeta is defined for chi > 1 only");
  return chi_ / std::sqrt(chi_ * chi_ - 1.0);
}

double OscParams::omega_bar() const {
  if (!(chi_ < 1.0)) {
    throw UnsupportedRegime("omega_bar is defined for chi < 1 only");
  }
  return omega_a_ / (abs_g() * std::sqrt(1.0 - chi_ * chi_));
}

void OscParams::validate() const {
  if (!(omega_a_ > 0.0) || !(omega_b_ > 0.0)) {
    throw InvalidConfig("OscParams: frequencies must be > 0");
  }
  if (!(abs_g() > 0.0)) throw InvalidConfig("OscParams: |g| must be > 0");
  if (!(lambda_ > 0.0)) throw InvalidConfig("OscParams: lambda must be > 0");
  const OscParams fresh(omega_a_, omega_b_, g_, lambda_);
  auto close = [](Complex a, Complex b) {
    return std::abs(a - b) <= 1e-13 * std::max(1.0, std::abs(b));
  };
  if (!close(chi_, fresh.chi_) || !close(eta0_, fresh.eta0_) ||
      !close(eta_, fresh.eta_) || !close(Omega_, fresh.Omega_) ||
      !close(omega_ba_, fresh.omega_ba_) || regime_ != fresh.regime_) {
    throw InvalidConfig("OscParams: derived quantities inconsistent");
  }
}

Complex upsilon(const OscParams& p, double t) {
  const Complex x = p.eta() * t;
  return std::cos(x) + kI * 0.5 * p.omega_ba() * t * sinc(x);
}

SU11Coefficients su11_coefficients(const OscParams& p, double t) {
  require_time(t);
  const Complex ups = upsilon(p, t);
  if (std::abs(ups) < 1e-14) {
    std::ostringstream os;
    os << "su(1,1) factorization is singular at t = " << t
       << " (|Upsilon| = " << std::abs(ups) << ")";
    throw SingularFactorization(os.str());
  }
  const Complex s = t * sinc(p.eta() * t);  // sin(eta t) / eta

  // Continue arg(Upsilon) from t = 0 where Upsilon = 1.
  const double rate = std::abs(p.eta()) + 0.5 * std::abs(p.omega_ba());
  const int steps =
      std::max(1, static_cast<int>(std::ceil(rate * t / (kPi / 16.0))));
  double phase = 0.0;
  Complex prev(1.0, 0.0);
  for (int k = 1; k <= steps; ++k) {
    const Complex cur =
        k == steps ? ups : upsilon(p, t * static_cast<double>(k) / steps);
    phase += std::arg(cur / prev);
    prev = cur;
  }

  SU11Coefficients c;
  c.t = t;
  c.Upsilon = ups;
  c.A = -kI * std::conj(p.g()) * s / ups;
  c.C = kI * p.g() * s / ups;
  c.B = -2.0 * Complex(std::log(std::abs(ups)), phase);
  return c;
}

TwoModeBasis::TwoModeBasis(int max_total) : max_total_(max_total) {
  if (max_total < 1) throw InvalidDimension("TwoModeBasis: max_total must be >= 1");
  for (int total = 0; total <= max_total; ++total) {
    for (int nb = 0; nb <= total; ++nb) states_.emplace_back(total - nb, nb);
  }
}

Eigen::Index TwoModeBasis::index(int n_a, int n_b) const {
  if (n_a < 0 || n_b < 0 || n_a + n_b > max_total_) return -1;
  const int total = n_a + n_b;
  return static_cast<Eigen::Index>(total * (total + 1) / 2 + n_b);
}

CMatrix su11_evolution(const OscParams& p, double t, const TwoModeBasis& basis) {
  const SU11Coefficients k = su11_coefficients(p, t);
  const Eigen::Index dim = basis.size();
  using special::log_factorial;

  // sqrt(n!/(n-k)!) * sqrt((m+k)!/m!)
  auto ladder_weight = [](int n, int m, int k) {
    return std::exp(0.5 * (log_factorial(n) - log_factorial(n - k) +
                           log_factorial(m + k) - log_factorial(m)));
  };

  CMatrix exp_a = CMatrix::Zero(dim, dim);  // exp(A K+), K+ = b^dag a
  CMatrix exp_c = CMatrix::Zero(dim, dim);  // exp(C K-), K- = -b a^dag
  CMatrix exp_b = CMatrix::Zero(dim, dim);  // exp(B K0)
  CMatrix exp_n = CMatrix::Zero(dim, dim);  // exp(-i Omega t N)
  for (Eigen::Index col = 0; col < dim; ++col) {
    const auto [na, nb] = basis.state(col);
    Complex a_pow(1.0, 0.0);
    for (int j = 0; j <= na; ++j) {
      exp_a(basis.index(na - j, nb + j), col) +=
          a_pow * ladder_weight(na, nb, j) / std::exp(log_factorial(j));
      a_pow *= k.A;
    }
    Complex c_pow(1.0, 0.0);
    for (int j = 0; j <= nb; ++j) {
      exp_c(basis.index(na + j, nb - j), col) +=
          c_pow * ladder_weight(nb, na, j) / std::exp(log_factorial(j));
      c_pow *= -k.C;
    }
    exp_b(col, col) = std::exp(0.5 * k.B * static_cast<double>(nb - na));
    exp_n(col, col) = std::exp(-0.5 * kI * p.Omega() * t * static_cast<double>(na + nb));
  }
  return exp_n * exp_a * exp_b * exp_c;
}

fock::FockOperator transition_operator_osc(const OscParams& p, double t,
                                           Eigen::Index field_dim) {
  require_time(t);
  if (field_dim < 2) throw InvalidDimension("field_dim must be >= 2");
  CMatrix gamma = CMatrix::Zero(field_dim, field_dim);
  for (Eigen::Index n = 1; n < field_dim; ++n) {
    gamma(n - 1, n) = gamma_element(p, t, static_cast<int>(n));
  }
  return fock::FockOperator(std::move(gamma));
}

double waiting_density_fock_osc(const OscParams& p, double t, int n) {
  if (n <= 0) return 0.0;
  require_time(t);
  return 2.0 * p.lambda() * std::norm(gamma_element(p, t, n));
}

FmnResult fmn_osc_time_domain(const OscParams& p, double T, int m, int n) {
  if (m < 1 || n < 1) throw DomainError("fmn_osc_time_domain: m, n must be >= 1");
  if (!(T > 0.0)) throw DomainError("fmn_osc_time_domain: T must be > 0");
  const double scale = 2.0 * p.lambda() / std::sqrt(static_cast<double>(m) * n);
  auto integrand = [&](double t) -> Complex {
    return scale * gamma_element(p, t, m) * std::conj(gamma_element(p, t, n));
  };
  quad::QuadratureSpec spec;
  const double beat = 0.5 * std::abs(p.Omega().real()) * std::abs(m - n);
  spec.oscillation_frequency_hint =
      std::max({beat, 2.0 * std::abs(p.eta().real()), 2.0 * p.abs_g()});
  spec.max_subdivisions = 400'000;
  spec.abs_tol = 1e-14 / std::sqrt(static_cast<double>(m) * n);
  const auto r = quad::integrate(integrand, 0.0, T, spec);
  FmnResult out = finish(r, 1.0, T, p.lambda(), "fmn_osc_time_domain");
  if (m == n) out.value = Complex(out.value.real(), 0.0);
  return out;
}

FmnResult fnn_integral_osc(const OscParams& p, double T, int m, int n) {
  if (m < 1 || n < 1) throw DomainError("fnn_integral_osc: m, n must be >= 1");
  if (!(T > 0.0)) throw DomainError("fnn_integral_osc: T must be > 0");
  if (!p.is_resonant()) return fmn_osc_time_domain(p, T, m, n);
  switch (p.regime()) {
    case Regime::sub:
      return fmn_sub(p, T, m, n);
    case Regime::critical:
      if (m != n) {
        throw UnsupportedRegime(
            "off-diagonal oscillator coefficients are available for chi < 1 only");
      }
      return fnn_critical(p, T, n);
    case Regime::super:
      if (m != n) {
        throw UnsupportedRegime(
            "off-diagonal oscillator coefficients are available for chi < 1 only");
      }
      return fnn_super(p, T, n);
  }
  throw UnsupportedRegime("unknown regime");
}

SmallChiResult fnn_small_chi(int n, double T) {
  if (n < 1) throw DomainError("fnn_small_chi: n must be >= 1");
  if (!(T > 0.0)) throw DomainError("fnn_small_chi: T must be > 0");
  using special::log_factorial;
  const double nn = static_cast<double>(n);
  const double log_exact = std::log(4.0) + log_factorial(2 * n - 2) -
                           2.0 * (nn * std::numbers::ln2 + log_factorial(n));
  SmallChiResult r;
  r.exact = std::exp(log_exact) / T;
  r.stirling = 1.0 / (T * std::sqrt(kPi * std::pow(nn, 5)));
  return r;
}

double plateau_threshold(const OscParams& p, double T) {
  return 4.0 * p.chi() * p.chi() * std::exp(-p.lambda() * T);
}

SteepestDescentResult fnn_steepest_descent(const OscParams& p, int n, double T) {
  if (n < 1) throw DomainError("fnn_steepest_descent: n must be >= 1");
  if (!(T > 0.0)) throw DomainError("fnn_steepest_descent: T must be > 0");
  const double chi = p.chi();
  const double chi2 = chi * chi;
  const double nn = static_cast<double>(n);
  const Regime regime = p.regime();

  if (regime == Regime::super) {
    const double n_star = plateau_threshold(p, T);
    if (nn <= n_star) {
      std::ostringstream os;
      os << "steepest descent needs n > n* ~ 4 chi^2 exp(-lambda T) = " << n_star
         << " (approximate threshold); got n = " << n;
      throw RegimeViolation(os.str(), n_star);
    }
  }

  // xi*mu (chi < 1) and zeta*nu (chi > 1) share the closed form below.
  const double a = chi / std::sqrt(nn - 1.0 + chi2);
  double exponent = 0.0;  // -2 z0 xi n - n ln(1+mu^2), or its continuation
  double log_coth = 0.0;
  SaddleData saddle;
  saddle.regime = regime;

  if (regime == Regime::sub) {
    const double xi = p.xi();
    const double mu2 = (1.0 - chi2) / (nn - 1.0 + chi2);
    const double mu = std::sqrt(mu2);
    const double z0 = std::atan(mu);
    const double xi_z0 = a * (mu > 1e-8 ? z0 / mu : 1.0 - mu2 / 3.0);
    exponent = -2.0 * xi_z0 * nn - nn * std::log1p(mu2);
    log_coth = -std::log(std::tanh(xi * nn * kPi));

    saddle.mu_or_nu = mu;
    saddle.z_saddle = z0;
    saddle.second_derivative = -4.0 * nn * (xi * xi + 1.0) / (1.0 + a);
    const double log_g0 = std::log(mu2) + (2.0 * nn - 2.0) * std::log1p(a) -
                          nn * std::log1p(mu2) - 2.0 * xi_z0 * nn;
    for (int k = 0; k < 8; ++k) {
      saddle.saddle_values.push_back(std::exp(log_g0 - 2.0 * xi * kPi * nn * k));
    }
  } else if (regime == Regime::critical) {
    exponent = -2.0 * a * nn;
    const double y = 1.0 / std::sqrt(nn);
    saddle.mu_or_nu = 0.0;
    saddle.z_saddle = y;
    saddle.second_derivative =
        -2.0 / (y * y) - (2.0 * nn - 2.0) / ((1.0 + y) * (1.0 + y));
    saddle.saddle_values.push_back(std::exp(
        2.0 * std::log(y) + (2.0 * nn - 2.0) * std::log1p(y) - 2.0 * nn * y));
  } else {
    const double zeta = p.zeta();
    const double nu2 = (chi2 - 1.0) / (nn - 1.0 + chi2);
    const double nu = std::sqrt(nu2);
    const double z_max = std::atanh(nu);
    const double zeta_z = a * (nu > 1e-8 ? z_max / nu : 1.0 + nu2 / 3.0);
    exponent = -2.0 * zeta_z * nn - nn * std::log1p(-nu2);

    saddle.mu_or_nu = nu;
    saddle.z_saddle = z_max;
    saddle.second_derivative = -4.0 * nn * (zeta * zeta - 1.0) / (1.0 + a);
    saddle.saddle_values.push_back(
        std::exp(2.0 * log_sinh(z_max) +
                 (2.0 * nn - 2.0) * log_cosh_plus_zeta_sinh(z_max, zeta) -
                 2.0 * nn * zeta * z_max));
  }

  const double log_value = std::log(chi * std::sqrt(8.0 * kPi)) +
                           (2.0 * nn - 1.5) * std::log1p(a) + exponent -
                           0.5 * std::log(nn) - std::log(nn + chi2 - 1.0) +
                           log_coth;
  return {std::exp(log_value) / T, std::move(saddle)};
}

AsymptoticLaw asymptotic_beta(AsymptoticRegime regime, double chi) {
  switch (regime) {
    case AsymptoticRegime::two_level:
      return {0.5, 1.0, true};
    case AsymptoticRegime::oscillator_small_chi:
      return {1.25, 1.0 / std::sqrt(kPi), true};
    case AsymptoticRegime::oscillator_moderate_chi:
      return {0.75, chi * std::sqrt(8.0 * kPi) / std::numbers::e, true};
  }
  throw DomainError("unknown asymptotic regime");
}

double small_chi_saddle_prefactor() {
  return std::sqrt(8.0 / kPi) / std::numbers::e;
}

}  // namespace qjump::osc
