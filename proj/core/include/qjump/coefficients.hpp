#pragma once

#include <span>
#include <variant>

#include "qjump/fock.hpp"
#include "qjump/jc_detector.hpp"
#include "qjump/oscillator_detector.hpp"

namespace qjump {

enum class ModelTag { jc, oscillator };

enum class Provenance {
  quadrature,
  analytic_exact,
  analytic_interp,
  steepest_descent,
  empirical
};

const char* to_string(ModelTag m);
const char* to_string(Provenance p);

using ModelParams = std::variant<jc::JCParams, osc::OscParams>;

ModelTag model_of(const ModelParams& params);
double lambda_of(const ModelParams& params);
double abs_g_of(const ModelParams& params);

/// Averaged coefficients f_mn, 1 <= m, n <= n_max, defining
///   J_T rho = sum_mn rho_mn sqrt(mn) f_mn |m-1><n-1|.
class CoefficientTable {
 public:
  /// entries(m-1, n-1) = f_mn. Throws InvalidState when the table is not
  /// hermitian to 1e-10 or a diagonal entry is negative or complex.
  CoefficientTable(ModelParams params, double T, CMatrix entries,
                   Provenance provenance);

  ModelTag model() const noexcept { return model_of(params_); }
  const ModelParams& params() const noexcept { return params_; }
  double T() const noexcept { return T_; }
  int n_max() const noexcept { return static_cast<int>(entries_.rows()); }
  Provenance provenance() const noexcept { return provenance_; }
  /// exp(-lambda T).
  double neglected_tail() const;

  /// f_mn with 1-based indices.
  Complex at(int m, int n) const;
  const CMatrix& entries() const noexcept { return entries_; }
  /// f_nn for n = 1..n_max.
  Eigen::VectorXd diagonal() const { return entries_.diagonal().real(); }
  double hermiticity_defect() const;

  /// J_T rho. Requires rho.dim() - 1 <= n_max.
  fock::DensityMatrix apply(const fock::DensityMatrix& rho) const;

 private:
  ModelParams params_;
  double T_;
  CMatrix entries_;
  Provenance provenance_;
};

struct TableOptions {
  /// Skip the off-diagonal quadratures (entries stay zero).
  bool diagonal_only = false;
};

/// Entries are computed independently (upper triangle plus conjugate
/// mirror) and in parallel; the result does not depend on scheduling.
CoefficientTable build_jc_table(const jc::JCParams& p, double T, int n_max,
                                TableOptions options = {});
/// Throws UnsupportedRegime for off-diagonal tables outside chi < 1.
CoefficientTable build_osc_table(const osc::OscParams& p, double T, int n_max,
                                 TableOptions options = {});

struct PowerLawFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Least-squares line through (ln n, ln f_nn) for n in [n_lo, n_hi].
/// Throws DomainError for an empty or out-of-range window and when an
/// entry is not strictly positive.
PowerLawFit fit_power_law(const CoefficientTable& table, int n_lo, int n_hi);
PowerLawFit fit_power_law(std::span<const double> n, std::span<const double> f);

/// beta with F(n) = (n+1)^{-beta}: f_nn ~ n^{-2 beta}, so beta = -slope/2.
double implied_beta(double slope);

}  // namespace qjump
