#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "qjump/fock.hpp"
#include "qjump/jc_detector.hpp"

namespace qjump::osc {

enum class Regime { sub, critical, super };

/// Width of the window |chi - 1| <= epsilon treated as chi = 1.
inline constexpr double critical_window = 1e-6;

const char* to_string(Regime r);

/// Parameters of the harmonic-oscillator detector: field mode a, detector
/// mode b, coupling g and detector half decay rate lambda.
class OscParams {
 public:
  static OscParams make(double omega_a, double omega_b, Complex g, double lambda);
  /// omega_a = omega_b = omega_over_g |g|, lambda = 2 chi |g|.
  static OscParams resonant(double chi, double omega_over_g, double abs_g = 1.0);

  double omega_a() const noexcept { return omega_a_; }
  double omega_b() const noexcept { return omega_b_; }
  Complex g() const noexcept { return g_; }
  double abs_g() const noexcept { return std::abs(g_); }
  double lambda() const noexcept { return lambda_; }
  double chi() const noexcept { return chi_; }
  Regime regime() const noexcept { return regime_; }
  bool is_resonant() const noexcept;

  /// chi / sqrt(1 - chi^2); requires chi < 1.
  double xi() const;
  /// chi / sqrt(chi^2 - 1); requires chi > 1.
  double zeta() const;
  /// omega_a / (|g| sqrt(1 - chi^2)); requires chi < 1.
  double omega_bar() const;
  /// (|g|^2 - lambda^2/4)^{1/2}: real for chi < 1, imaginary for chi > 1.
  Complex eta0() const noexcept { return eta0_; }
  /// omega_b - omega_a - i lambda.
  Complex omega_ba() const noexcept { return omega_ba_; }
  /// (|g|^2 + omega_ba^2/4)^{1/2}.
  Complex eta() const noexcept { return eta_; }
  /// omega_b + omega_a - i lambda.
  Complex Omega() const noexcept { return Omega_; }

  void validate() const;

 private:
  OscParams(double omega_a, double omega_b, Complex g, double lambda);

  double omega_a_;
  double omega_b_;
  Complex g_;
  double lambda_;
  double chi_;
  Regime regime_;
  Complex eta0_;
  Complex omega_ba_;
  Complex eta_;
  Complex Omega_;
};

/// Coefficients of U(t) = exp(-i Omega t N) exp(A K+) exp(B K0) exp(C K-)
/// with K+ = b^dag a, K- = -b a^dag, K0 = (b^dag b - a^dag a)/2.
struct SU11Coefficients {
  double t = 0.0;
  Complex A{};
  Complex B{};
  Complex C{};
  Complex Upsilon{1.0, 0.0};
};

/// Upsilon(t) = cos(eta t) + i (omega_ba / (2 eta)) sin(eta t).
Complex upsilon(const OscParams& p, double t);

/// Throws SingularFactorization when |Upsilon(t)| < 1e-14. B = -2 ln Upsilon
/// uses the logarithm continued along [0, t].
SU11Coefficients su11_coefficients(const OscParams& p, double t);

/// Two-mode Fock basis {|n_a, n_b> : n_a + n_b <= max_total}. H_eff
/// conserves n_a + n_b, so this truncation is exact.
class TwoModeBasis {
 public:
  explicit TwoModeBasis(int max_total);

  int max_total() const noexcept { return max_total_; }
  Eigen::Index size() const noexcept {
    return static_cast<Eigen::Index>(states_.size());
  }
  /// (n_a, n_b) of basis vector i.
  const std::pair<int, int>& state(Eigen::Index i) const { return states_[i]; }
  /// Index of |n_a, n_b>, or -1 if outside the basis.
  Eigen::Index index(int n_a, int n_b) const;

 private:
  int max_total_;
  std::vector<std::pair<int, int>> states_;
};

/// Evolution operator assembled from the disentangled product, each factor
/// applied through its exact action on Fock states.
CMatrix su11_evolution(const OscParams& p, double t, const TwoModeBasis& basis);

/// Gamma(t) = <1_b| U(t) |0_b> = A(t) exp[-(i Omega t + B(t))(a^dag a + 1)/2] a,
/// assembled from A Upsilon = -i g* sin(eta t)/eta so it stays finite at
/// zeros of Upsilon.
fock::FockOperator transition_operator_osc(const OscParams& p, double t,
                                           Eigen::Index field_dim);

/// 2 lambda |<n-1|Gamma(t)|n>|^2, the waiting density for initial |n>.
double waiting_density_fock_osc(const OscParams& p, double t, int n);

/// f_mn from the reduced z-integrals: the oscillatory form for chi < 1, the
/// y-form at chi = 1 and the hyperbolic form for chi > 1 (diagonal only).
/// Off-resonant parameters fall back to fmn_osc_time_domain.
/// Throws UnsupportedRegime for off-diagonal entries outside chi < 1.
FmnResult fnn_integral_osc(const OscParams& p, double T, int m, int n);

/// f_mn = (1/T) int_0^T 2 lambda <m-1|Gamma|m> conj(<n-1|Gamma|n>) dt,
/// integrated directly in t from the transition operator.
FmnResult fmn_osc_time_domain(const OscParams& p, double T, int m, int n);

struct SmallChiResult {
  /// 4 (2n-2)! / (T (2^n n!)^2)
  double exact = 0.0;
  /// (T sqrt(pi n^5))^{-1}
  double stirling = 0.0;
};

SmallChiResult fnn_small_chi(int n, double T);

struct SaddleData {
  Regime regime = Regime::sub;
  /// mu for chi <= 1, nu for chi > 1. Zero at chi = 1.
  double mu_or_nu = 0.0;
  /// z0 = atan(mu) for chi < 1, z_max = atanh(nu) for chi > 1. At chi = 1
  /// the saddle is reported in y = lambda t / 2: y* = 1/sqrt(n).
  double z_saddle = 0.0;
  /// G''(z) at the saddle (in the same variable as z_saddle).
  double second_derivative = 0.0;
  /// exp[G(z_k)] for k = 0, 1, ... (a single entry for chi >= 1).
  std::vector<double> saddle_values;
};

struct SteepestDescentResult {
  double value = 0.0;
  SaddleData saddle;
};

/// Saddle-point approximation of f_nn (Z, Y -> infinity), continuous
/// across chi = 1. For chi > 1 throws RegimeViolation when
/// n <= n* = 4 chi^2 exp(-lambda T).
SteepestDescentResult fnn_steepest_descent(const OscParams& p, int n, double T);

/// n* = 4 chi^2 exp(-lambda T), the approximate edge of the SD plateau.
double plateau_threshold(const OscParams& p, double T);

enum class AsymptoticRegime {
  two_level,              ///< F = (n+1)^{-1/2}
  oscillator_small_chi,   ///< F = (n+1)^{-5/4}
  oscillator_moderate_chi ///< F = (n+1)^{-3/4}
};

struct AsymptoticLaw {
  double beta = 0.0;
  /// gamma * T, i.e. the rate prefactor per unit 1/T.
  double gamma_coeff = 0.0;
  bool T_scaled = true;
};

AsymptoticLaw asymptotic_beta(AsymptoticRegime regime, double chi);

/// sqrt(8/pi)/e: the small-chi limit of the saddle-point prefactor, to be
/// compared against 1/sqrt(pi).
double small_chi_saddle_prefactor();

}  // namespace qjump::osc
