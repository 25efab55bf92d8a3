#include "qjump/coefficients.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "qjump/errors.hpp"
#include "qjump/parallel.hpp"

namespace qjump {
namespace {

struct Pair {
  int m;
  int n;
};

std::vector<Pair> work_list(int n_max, bool diagonal_only) {
  std::vector<Pair> pairs;
  for (int m = 1; m <= n_max; ++m) {
    if (diagonal_only) {
      pairs.push_back({m, m});
      continue;
    }
    for (int n = m; n <= n_max; ++n) pairs.push_back({m, n});
  }
  return pairs;
}

template <typename Entry>
CMatrix fill_table(int n_max, bool diagonal_only, Entry&& entry) {
  if (n_max < 1) throw InvalidDimension("coefficient table needs n_max >= 1");
  const auto pairs = work_list(n_max, diagonal_only);
  std::vector<Complex> values(pairs.size());
  parallel_for(pairs.size(), [&](std::size_t i) {
    values[i] = entry(pairs[i].m, pairs[i].n);
  });
  CMatrix f = CMatrix::Zero(n_max, n_max);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto [m, n] = pairs[i];
    f(m - 1, n - 1) = values[i];
    if (m != n) f(n - 1, m - 1) = std::conj(values[i]);
  }
  return f;
}

}  // namespace

const char* to_string(ModelTag m) {
  return m == ModelTag::jc ? "jc" : "osc";
}

const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::quadrature:
      return "quadrature";
    case Provenance::analytic_exact:
      return "analytic_exact";
    case Provenance::analytic_interp:
      return "analytic_interp";
    case Provenance::steepest_descent:
      return "steepest_descent";
    case Provenance::empirical:
      return "empirical";
  }
  return "?";
}

ModelTag model_of(const ModelParams& params) {
  return std::holds_alternative<jc::JCParams>(params) ? ModelTag::jc
                                                      : ModelTag::oscillator;
}

double lambda_of(const ModelParams& params) {
  return std::visit([](const auto& p) { return p.lambda(); }, params);
}

double abs_g_of(const ModelParams& params) {
  return std::visit([](const auto& p) { return p.abs_g(); }, params);
}

CoefficientTable::CoefficientTable(ModelParams params, double T, CMatrix entries,
                                   Provenance provenance)
    : params_(std::move(params)),
      T_(T),
      entries_(std::move(entries)),
      provenance_(provenance) {
  if (!(T_ > 0.0)) throw DomainError("CoefficientTable: T must be > 0");
  if (entries_.rows() < 1 || entries_.rows() != entries_.cols()) {
    throw InvalidDimension("CoefficientTable: entries must be square, n_max >= 1");
  }
  const double defect = hermiticity_defect();
  if (defect > 1e-10) {
    std::ostringstream os;
    os << "CoefficientTable: f_mn != conj(f_nm) (defect " << defect << ")";
    throw InvalidState(os.str());
  }
  for (Eigen::Index i = 0; i < entries_.rows(); ++i) {
    const Complex d = entries_(i, i);
    if (d.real() < 0.0 || std::abs(d.imag()) > 1e-12 * std::max(1.0, std::abs(d))) {
      std::ostringstream os;
      os << "CoefficientTable: diagonal entry " << i + 1 << " = " << d
         << " is not real and non-negative";
      throw InvalidState(os.str());
    }
  }
}

double CoefficientTable::neglected_tail() const {
  return std::exp(-lambda_of(params_) * T_);
}

Complex CoefficientTable::at(int m, int n) const {
  if (m < 1 || n < 1 || m > n_max() || n > n_max()) {
    throw DomainError("CoefficientTable::at: index out of range");
  }
  return entries_(m - 1, n - 1);
}

double CoefficientTable::hermiticity_defect() const {
  return (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
}

fock::DensityMatrix CoefficientTable::apply(const fock::DensityMatrix& rho) const {
  const Eigen::Index dim = rho.dim();
  if (dim - 1 > n_max()) {
    throw DimensionMismatch("CoefficientTable::apply: rho exceeds table n_max");
  }
  CMatrix out = CMatrix::Zero(dim, dim);
  for (Eigen::Index m = 1; m < dim; ++m) {
    for (Eigen::Index n = 1; n < dim; ++n) {
      out(m - 1, n - 1) = rho(m, n) * std::sqrt(static_cast<double>(m * n)) *
                          entries_(m - 1, n - 1);
    }
  }
  return fock::DensityMatrix::unchecked(std::move(out));
}

CoefficientTable build_jc_table(const jc::JCParams& p, double T, int n_max,
                                TableOptions options) {
  CMatrix f = fill_table(n_max, options.diagonal_only,
                         [&](int m, int n) { return jc::fmn_jc(p, T, m, n).value; });
  return CoefficientTable(p, T, std::move(f), Provenance::quadrature);
}

CoefficientTable build_osc_table(const osc::OscParams& p, double T, int n_max,
                                 TableOptions options) {
  if (!options.diagonal_only && p.is_resonant() && p.regime() != osc::Regime::sub &&
      n_max > 1) {
    throw UnsupportedRegime(
        "off-diagonal oscillator coefficients are available for chi < 1 only");
  }
  CMatrix f = fill_table(n_max, options.diagonal_only, [&](int m, int n) {
    return osc::fnn_integral_osc(p, T, m, n).value;
  });
  return CoefficientTable(p, T, std::move(f), Provenance::quadrature);
}

PowerLawFit fit_power_law(std::span<const double> n, std::span<const double> f) {
  if (n.size() != f.size()) throw DimensionMismatch("fit_power_law: size mismatch");
  if (n.size() < 2) throw DomainError("fit_power_law: need at least two points");
  const auto count = static_cast<double>(n.size());
  double sx = 0.0, sy = 0.0;
  std::vector<double> x(n.size()), y(n.size());
  for (std::size_t i = 0; i < n.size(); ++i) {
    if (!(n[i] > 0.0) || !(f[i] > 0.0)) {
      std::ostringstream os;
      os << "fit_power_law: nonpositive entry at n = " << n[i] << " (f = " << f[i]
         << ")";
      throw DomainError(os.str());
    }
    x[i] = std::log(n[i]);
    y[i] = std::log(f[i]);
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / count;
  const double my = sy / count;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw DomainError("fit_power_law: abscissae are degenerate");
  PowerLawFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return fit;
}

PowerLawFit fit_power_law(const CoefficientTable& table, int n_lo, int n_hi) {
  if (n_lo < 1 || n_hi <= n_lo || n_hi > table.n_max()) {
    throw DomainError("fit_power_law: need 1 <= n_lo < n_hi <= n_max");
  }
  std::vector<double> n, f;
  for (int k = n_lo; k <= n_hi; ++k) {
    n.push_back(static_cast<double>(k));
    f.push_back(table.at(k, k).real());
  }
  return fit_power_law(n, f);
}

double implied_beta(double slope) { return -0.5 * slope; }

}  // namespace qjump
