#pragma once

#include <complex>

#include "qjump/fock.hpp"
#include "qjump/quadrature.hpp"

namespace qjump {

/// A single averaged coefficient f_mn together with its numerical metadata.
struct FmnResult {
  Complex value{};
  double error_estimate = 0.0;
  /// exp(-lambda T): the weight assumed negligible when extending the
  /// averaging window to infinity.
  double neglected_tail = 0.0;
};

namespace jc {

/// Jaynes-Cummings detector parameters: field frequency omega, atomic
/// transition omega0, coupling g and half decay rate lambda.
class JCParams {
 public:
  static JCParams make(double omega, double omega0, Complex g, double lambda);
  /// Resonant parameters with |g| = abs_g, lambda = 2 chi |g| and
  /// omega = omega_over_g * |g|.
  static JCParams resonant(double chi, double omega_over_g, double abs_g = 1.0);

  double omega() const noexcept { return omega_; }
  double omega0() const noexcept { return omega0_; }
  Complex g() const noexcept { return g_; }
  double abs_g() const noexcept { return std::abs(g_); }
  double lambda() const noexcept { return lambda_; }
  /// lambda / (2|g|).
  double chi() const noexcept { return chi_; }
  /// (omega0 - omega - i lambda) / 2.
  Complex delta() const noexcept { return delta_; }
  /// Phase g/|g|.
  Complex g_phase() const noexcept { return g_ / std::abs(g_); }

  /// Throws InvalidConfig if a primary is out of range or a derived
  /// quantity drifted from its recomputed value.
  void validate() const;

 private:
  JCParams(double omega, double omega0, Complex g, double lambda);

  double omega_;
  double omega0_;
  Complex g_;
  double lambda_;
  double chi_;
  Complex delta_;
};

struct CnSn {
  Complex c;  ///< cos(|g| B_n t)
  Complex s;  ///< sin(|g| B_n t) / B_n
};

/// B_n = sqrt(n + (delta/|g|)^2), principal branch.
Complex b_n(int n, const JCParams& p);

/// C_n(t) and S_n(t). S_n is evaluated as |g| t sinc(|g| B_n t), which is
/// even in B_n and finite at B_n = 0.
CnSn cn_sn(int n, double t, const JCParams& p);

/// exp(-lambda t / 2) * S_n(t), evaluated without overflow in the
/// hyperbolic regime.
Complex damped_sn(int n, double t, const JCParams& p);

/// Non-unitary evolution exp(-i H_eff t) on qubit (x) field.
/// Basis index: level * field_dim + n with level 0 = |g>, 1 = |e>.
struct JCEvolution {
  double t = 0.0;
  Eigen::Index field_dim = 0;
  CMatrix U;

  static Eigen::Index index(int level, Eigen::Index n, Eigen::Index field_dim) {
    return level * field_dim + n;
  }
};

JCEvolution jc_evolution(const JCParams& p, double t, Eigen::Index field_dim);

/// Gamma(t) = -i (g/|g|) exp(-lambda t/2 - i omega n t) S_{n+1}(t) a.
fock::FockOperator transition_operator_jc(const JCParams& p, double t,
                                          Eigen::Index field_dim);

/// Xi(t) rho = 2 lambda Gamma(t) rho Gamma(t)^dagger. Its trace is the
/// waiting density for the next photoemission.
fock::DensityMatrix transition_superop_jc(const JCParams& p, double t,
                                          const fock::DensityMatrix& rho);

/// Waiting density for an initial Fock state |n>:
/// 2 lambda n exp(-lambda t) |S_n(t)|^2.
double waiting_density_fock_jc(const JCParams& p, double t, int n);

/// 2 lambda (|g| dt)^2.
double gamma_sd(const JCParams& p, double dt);

/// |g| dt sqrt(dim); the short-window jump is valid when this is << 1.
double small_dt_parameter(const JCParams& p, double dt, Eigen::Index dim);

/// Short-window jump exp(-i omega n dt) [gamma_SD a rho a^dag] exp(i omega n dt).
/// Emits a diagnostics warning when small_dt_parameter exceeds 0.1.
fock::DensityMatrix small_dt_qjs(const JCParams& p, double dt,
                                 const fock::DensityMatrix& rho);

/// Time-averaged coefficient
///   f_mn = (2 lambda / T) int_0^T exp(i omega t (n-m) - lambda t)
///          S_m(t) conj(S_n(t)) dt.
/// Throws QuadratureError if the quadrature does not converge.
FmnResult fmn_jc(const JCParams& p, double T, int m, int n);

/// 1/(nT).
double fnn_exact_jc(int n, double T);

struct InterpResult {
  double value = 0.0;
  /// n / chi^2; the formula assumes this is << 1.
  double regime_ratio = 0.0;
  /// lambda T n / (2 chi^2); large values saturate to 1/(nT).
  double saturation = 0.0;
};

/// (nT)^{-1} (1 - exp(-lambda T n / (2 chi^2))).
InterpResult fnn_interp_jc(int n, double T, const JCParams& p);

}  // namespace jc
}  // namespace qjump
