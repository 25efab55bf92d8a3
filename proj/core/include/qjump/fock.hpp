#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qjump {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

namespace tolerance {
inline constexpr double hermiticity = 1e-12;
inline constexpr double psd_slack = 1e-10;
inline constexpr double trace_slack = 1e-12;
/// Maximum acceptable weight in the two highest Fock levels.
inline constexpr double leakage = 1e-8;
}  // namespace tolerance

namespace fock {

/// Square complex matrix on a truncated Fock space {|0>, ..., |dim-1>}.
class FockOperator {
 public:
  explicit FockOperator(CMatrix entries);

  static FockOperator identity(Eigen::Index dim);
  static FockOperator zero(Eigen::Index dim);

  Eigen::Index dim() const noexcept { return entries_.rows(); }
  const CMatrix& matrix() const noexcept { return entries_; }
  Complex operator()(Eigen::Index row, Eigen::Index col) const {
    return entries_(row, col);
  }

  FockOperator adjoint() const;

  friend FockOperator operator*(const FockOperator& lhs,
                                const FockOperator& rhs);
  friend FockOperator operator+(const FockOperator& lhs,
                                const FockOperator& rhs);
  friend FockOperator operator-(const FockOperator& lhs,
                                const FockOperator& rhs);
  friend FockOperator operator*(Complex scale, const FockOperator& op);

 private:
  CMatrix entries_;
};

/// Field density matrix. Sub-normalized states (trace < 1) are allowed so
/// no-count evolution and unnormalized jump outputs share the type.
class DensityMatrix {
 public:
  /// Validates hermiticity, trace in (0, 1+eps] and positivity.
  static DensityMatrix checked(CMatrix entries);
  /// Wraps an operation result; only squareness is enforced.
  static DensityMatrix unchecked(CMatrix entries);

  static DensityMatrix fock_projector(Eigen::Index dim, Eigen::Index n);
  static DensityMatrix from_pure(const CVector& psi);

  Eigen::Index dim() const noexcept { return entries_.rows(); }
  const CMatrix& matrix() const noexcept { return entries_; }
  Complex operator()(Eigen::Index row, Eigen::Index col) const {
    return entries_(row, col);
  }

  double trace() const { return entries_.trace().real(); }
  /// Photon-number populations rho_nn.
  Eigen::VectorXd populations() const { return entries_.diagonal().real(); }
  /// If the state is |n><n| (to 1e-12), returns n.
  std::optional<Eigen::Index> fock_index() const;

  /// Empty string when every invariant holds, otherwise the first violation.
  std::string invariant_violation() const;

 private:
  explicit DensityMatrix(CMatrix entries);
  CMatrix entries_;
};

struct LadderOps {
  FockOperator a;
  FockOperator a_dagger;
  FockOperator number;
};

/// Annihilation, creation and number operators truncated to `dim` levels.
LadderOps build_ladder_ops(Eigen::Index dim);

/// Susskind-Glogower exponential phase operators E- = (n+1)^{-1/2} a and
/// E+ = (E-)^dagger.
struct ExponentialPhaseOps {
  FockOperator e_minus;
  FockOperator e_plus;
};

ExponentialPhaseOps build_phase_ops(Eigen::Index dim);

/// Diagonal function F(n) used in nonlinear jump operators.
class DiagonalF {
 public:
  static DiagonalF ones(Eigen::Index dim);
  /// F(n) = (n+1)^{-beta}.
  static DiagonalF power_law(Eigen::Index dim, double beta);
  static DiagonalF from_values(Eigen::VectorXd values);

  Eigen::Index dim() const noexcept { return values_.size(); }
  const Eigen::VectorXd& values() const noexcept { return values_; }
  std::optional<double> beta() const noexcept { return beta_; }

 private:
  DiagonalF(Eigen::VectorXd values, std::optional<double> beta);
  Eigen::VectorXd values_;
  std::optional<double> beta_;
};

struct JumpSpec {
  double gamma = 1.0;
  DiagonalF F;
  bool diagonal_only = false;
};

/// gamma * F(n) a rho a^dag F(n), optionally reduced to its diagonal part.
/// F == 1 with diagonal_only == false is the Srinivas-Davies jump.
DensityMatrix apply_jump(const JumpSpec& spec, const DensityMatrix& rho);

CMatrix diag_part(const CMatrix& x);

/// X rho X^dagger.
CMatrix sandwich(const CMatrix& x, const CMatrix& rho);

/// Probability weight in the two highest Fock levels.
double leakage(const DensityMatrix& rho);
double leakage(const CMatrix& rho);

}  // namespace fock
}  // namespace qjump
