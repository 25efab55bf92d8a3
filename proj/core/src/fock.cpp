#include "qjump/fock.hpp"

#include <cmath>
#include <sstream>

#include "qjump/errors.hpp"

namespace qjump::fock {
namespace {

void require_square(const CMatrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    std::ostringstream os;
    os << what << ": matrix is " << m.rows() << "x" << m.cols()
       << ", expected square";
    throw DimensionMismatch(os.str());
  }
}

void require_dim(Eigen::Index dim) {
  if (dim < 2) {
    throw InvalidDimension("Fock space dimension must be >= 2, got " +
                           std::to_string(dim));
  }
}

}  // namespace

FockOperator::FockOperator(CMatrix entries) : entries_(std::move(entries)) {
  require_square(entries_, "FockOperator");
  require_dim(entries_.rows());
}

FockOperator FockOperator::identity(Eigen::Index dim) {
  require_dim(dim);
  return FockOperator(CMatrix::Identity(dim, dim));
}

FockOperator FockOperator::zero(Eigen::Index dim) {
  require_dim(dim);
  return FockOperator(CMatrix::Zero(dim, dim));
}

FockOperator FockOperator::adjoint() const {
  return FockOperator(entries_.adjoint());
}

FockOperator operator*(const FockOperator& lhs, const FockOperator& rhs) {
  if (lhs.dim() != rhs.dim()) throw DimensionMismatch("FockOperator product");
  return FockOperator(lhs.entries_ * rhs.entries_);
}

FockOperator operator+(const FockOperator& lhs, const FockOperator& rhs) {
  if (lhs.dim() != rhs.dim()) throw DimensionMismatch("FockOperator sum");
  return FockOperator(lhs.entries_ + rhs.entries_);
}

FockOperator operator-(const FockOperator& lhs, const FockOperator& rhs) {
  if (lhs.dim() != rhs.dim()) throw DimensionMismatch("FockOperator difference");
  return FockOperator(lhs.entries_ - rhs.entries_);
}

FockOperator operator*(Complex scale, const FockOperator& op) {
  return FockOperator(scale * op.entries_);
}

DensityMatrix::DensityMatrix(CMatrix entries) : entries_(std::move(entries)) {
  require_square(entries_, "DensityMatrix");
  if (entries_.rows() < 1) throw InvalidDimension("empty density matrix");
}

DensityMatrix DensityMatrix::checked(CMatrix entries) {
  DensityMatrix rho(std::move(entries));
  if (auto why = rho.invariant_violation(); !why.empty()) {
    throw InvalidState(why);
  }
  return rho;
}

DensityMatrix DensityMatrix::unchecked(CMatrix entries) {
  return DensityMatrix(std::move(entries));
}

DensityMatrix DensityMatrix::fock_projector(Eigen::Index dim, Eigen::Index n) {
  require_dim(dim);
  if (n < 0 || n >= dim) {
    throw DomainError("Fock index " + std::to_string(n) +
                      " outside truncated space of dimension " +
                      std::to_string(dim));
  }
  CMatrix m = CMatrix::Zero(dim, dim);
  m(n, n) = 1.0;
  return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::from_pure(const CVector& psi) {
  return checked(psi * psi.adjoint());
}

std::optional<Eigen::Index> DensityMatrix::fock_index() const {
  Eigen::Index idx = -1;
  for (Eigen::Index i = 0; i < dim(); ++i) {
    if (std::abs(entries_(i, i) - 1.0) < 1e-12) idx = i;
  }
  if (idx < 0) return std::nullopt;
  CMatrix projector = CMatrix::Zero(dim(), dim());
  projector(idx, idx) = 1.0;
  if ((entries_ - projector).cwiseAbs().maxCoeff() > 1e-12) return std::nullopt;
  return idx;
}

std::string DensityMatrix::invariant_violation() const {
  const double herm = (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
  if (herm > tolerance::hermiticity) {
    return "density matrix not hermitian (max deviation " +
           std::to_string(herm) + ")";
  }
  const Complex tr = entries_.trace();
  if (std::abs(tr.imag()) > tolerance::hermiticity || tr.real() <= 0.0 ||
      tr.real() > 1.0 + tolerance::trace_slack) {
    return "density matrix trace " + std::to_string(tr.real()) +
           " outside (0, 1]";
  }
  const CMatrix h = 0.5 * (entries_ + entries_.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
  const double min_eig = es.eigenvalues().minCoeff();
  if (min_eig < -tolerance::psd_slack) {
    return "density matrix has negative eigenvalue " + std::to_string(min_eig);
  }
  return {};
}

LadderOps build_ladder_ops(Eigen::Index dim) {
  require_dim(dim);
  CMatrix a = CMatrix::Zero(dim, dim);
  for (Eigen::Index n = 1; n < dim; ++n) {
    a(n - 1, n) = std::sqrt(static_cast<double>(n));
  }
  CMatrix number = CMatrix::Zero(dim, dim);
  for (Eigen::Index n = 0; n < dim; ++n) number(n, n) = static_cast<double>(n);
  FockOperator a_op(a);
  return {a_op, a_op.adjoint(), FockOperator(std::move(number))};
}

ExponentialPhaseOps build_phase_ops(Eigen::Index dim) {
  require_dim(dim);
  // (n+1)^{-1/2} a has <n-1|E-|n> = sqrt(n)/sqrt(n) = 1.
  CMatrix e_minus = CMatrix::Zero(dim, dim);
  for (Eigen::Index n = 1; n < dim; ++n) e_minus(n - 1, n) = 1.0;
  FockOperator em(std::move(e_minus));
  return {em, em.adjoint()};
}

DiagonalF::DiagonalF(Eigen::VectorXd values, std::optional<double> beta)
    : values_(std::move(values)), beta_(beta) {
  if ((values_.array() < 0.0).any()) {
    throw DomainError("DiagonalF values must be non-negative");
  }
}

DiagonalF DiagonalF::ones(Eigen::Index dim) {
  return DiagonalF(Eigen::VectorXd::Ones(dim), 0.0);
}

DiagonalF DiagonalF::power_law(Eigen::Index dim, double beta) {
  Eigen::VectorXd v(dim);
  for (Eigen::Index n = 0; n < dim; ++n) {
    v(n) = std::pow(static_cast<double>(n + 1), -beta);
  }
  return DiagonalF(std::move(v), beta);
}

DiagonalF DiagonalF::from_values(Eigen::VectorXd values) {
  return DiagonalF(std::move(values), std::nullopt);
}

DensityMatrix apply_jump(const JumpSpec& spec, const DensityMatrix& rho) {
  const Eigen::Index dim = rho.dim();
  if (spec.F.dim() != dim) {
    throw DimensionMismatch("jump F has length " +
                            std::to_string(spec.F.dim()) +
                            " but rho has dimension " + std::to_string(dim));
  }
  if (!(spec.gamma > 0.0)) throw DomainError("jump rate gamma must be > 0");

  // (F a)_{n-1,n} = F(n-1) sqrt(n); everything else vanishes.
  CMatrix fa = CMatrix::Zero(dim, dim);
  for (Eigen::Index n = 1; n < dim; ++n) {
    fa(n - 1, n) = spec.F.values()(n - 1) * std::sqrt(static_cast<double>(n));
  }
  CMatrix out = spec.gamma * sandwich(fa, rho.matrix());
  if (spec.diagonal_only) out = diag_part(out);
  return DensityMatrix::unchecked(std::move(out));
}

CMatrix diag_part(const CMatrix& x) {
  require_square(x, "diag_part");
  CMatrix out = CMatrix::Zero(x.rows(), x.cols());
  out.diagonal() = x.diagonal();
  return out;
}

CMatrix sandwich(const CMatrix& x, const CMatrix& rho) {
  if (x.cols() != rho.rows() || rho.rows() != rho.cols()) {
    throw DimensionMismatch("sandwich: operator/state dimension mismatch");
  }
  return x * rho * x.adjoint();
}

double leakage(const CMatrix& rho) {
  const Eigen::Index dim = rho.rows();
  double w = 0.0;
  for (Eigen::Index n = std::max<Eigen::Index>(0, dim - 2); n < dim; ++n) {
    w += rho(n, n).real();
  }
  return w;
}

double leakage(const DensityMatrix& rho) { return leakage(rho.matrix()); }

}  // namespace qjump::fock
