#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qjump/coefficients.hpp"
#include "qjump/errors.hpp"

using namespace qjump;

TEST_CASE("model accessors") {
  const ModelParams jc = jc::JCParams::resonant(0.5, 1000.0, 2.0);
  const ModelParams os = osc::OscParams::resonant(0.25, 1000.0, 4.0);
  CHECK(model_of(jc) == ModelTag::jc);
  CHECK(model_of(os) == ModelTag::oscillator);
  CHECK(lambda_of(jc) == doctest::Approx(2.0));
  CHECK(lambda_of(os) == doctest::Approx(2.0));
  CHECK(abs_g_of(os) == doctest::Approx(4.0));
  CHECK(std::string(to_string(ModelTag::oscillator)) == "osc");
  CHECK(std::string(to_string(Provenance::steepest_descent)) == "steepest_descent");
}

TEST_CASE("JC table invariants") {
  const auto p = jc::JCParams::resonant(0.5, 1000.0);
  const double T = 15.0 / p.lambda();
  const auto table = build_jc_table(p, T, 6);
  CHECK(table.n_max() == 6);
  CHECK(table.model() == ModelTag::jc);
  CHECK(table.provenance() == Provenance::quadrature);
  CHECK(table.hermiticity_defect() < 1e-10);
  CHECK(table.neglected_tail() == doctest::Approx(std::exp(-15.0)));
  for (int n = 1; n <= 6; ++n) {
    CHECK(table.at(n, n).imag() == 0.0);
    CHECK(std::abs(T * n * table.at(n, n).real() - 1.0) < 0.01);
    CHECK(table.at(n, n) == jc::fmn_jc(p, T, n, n).value);
  }
  CHECK(std::abs(table.at(2, 4) - std::conj(table.at(4, 2))) < 1e-15);
  CHECK_THROWS_AS(table.at(0, 1), DomainError);
  CHECK_THROWS_AS(table.at(7, 1), DomainError);
}

TEST_CASE("diagonal-only tables") {
  const auto p = osc::OscParams::resonant(2.0, 1000.0);
  const double T = 15.0 / p.lambda();
  CHECK_THROWS_AS(build_osc_table(p, T, 4), UnsupportedRegime);
  const auto table = build_osc_table(p, T, 4, {.diagonal_only = true});
  for (int m = 1; m <= 4; ++m) {
    for (int n = 1; n <= 4; ++n) {
      if (m != n) CHECK(table.at(m, n) == Complex(0.0, 0.0));
    }
  }
  CHECK(table.diagonal()(0) > table.diagonal()(3));
}

TEST_CASE("table construction validates its entries") {
  const ModelParams p = jc::JCParams::resonant(0.5, 1000.0);
  CMatrix bad = CMatrix::Identity(3, 3);
  bad(0, 1) = 0.5;
  CHECK_THROWS_AS(CoefficientTable(p, 1.0, bad, Provenance::quadrature), InvalidState);
  CMatrix neg = CMatrix::Identity(3, 3);
  neg(2, 2) = -0.1;
  CHECK_THROWS_AS(CoefficientTable(p, 1.0, neg, Provenance::quadrature), InvalidState);
  CMatrix cplx = CMatrix::Identity(3, 3);
  cplx(1, 1) = Complex(1.0, 0.1);
  CHECK_THROWS_AS(CoefficientTable(p, 1.0, cplx, Provenance::quadrature), InvalidState);
}

TEST_CASE("apply matches the entrywise jump") {
  oracle::Sampler s(53);
  const ModelParams p = jc::JCParams::resonant(0.5, 1000.0);
  const int n_max = 5;
  CMatrix f = CMatrix::Zero(n_max, n_max);
  for (int m = 0; m < n_max; ++m) {
    f(m, m) = s.uniform(0.1, 1.0);
    for (int n = m + 1; n < n_max; ++n) {
      f(m, n) = 0.05 * s.phase();
      f(n, m) = std::conj(f(m, n));
    }
  }
  const CoefficientTable table(p, 1.0, f, Provenance::empirical);
  const auto rho = fock::DensityMatrix::checked(s.density(n_max + 1));
  const auto ops = fock::build_ladder_ops(n_max + 1);
  const CMatrix jumped = ops.a.matrix() * rho.matrix() * ops.a_dagger.matrix();
  const auto out = table.apply(rho);
  for (int m = 0; m < n_max; ++m) {
    for (int n = 0; n < n_max; ++n) {
      CHECK(std::abs(out(m, n) - jumped(m, n) * f(m, n)) < 1e-15);
    }
  }
  CHECK(std::abs(out(n_max, n_max)) == 0.0);
  CHECK_THROWS_AS(table.apply(fock::DensityMatrix::fock_projector(n_max + 2, 1)),
                  DimensionMismatch);
}

TEST_CASE("power-law fit is exact on synthetic data") {
  std::vector<double> n, f;
  for (int k = 10; k <= 100; ++k) {
    n.push_back(k);
    f.push_back(3.7 * std::pow(k, -1.25));
  }
  const auto fit = fit_power_law(n, f);
  CHECK(std::abs(fit.slope + 1.25) < 1e-12);
  CHECK(std::abs(fit.intercept - std::log(3.7)) < 1e-12);
  CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
  f[3] = 0.0;
  CHECK_THROWS_AS(fit_power_law(n, f), DomainError);
  CHECK_THROWS_AS(fit_power_law(std::span<const double>(n.data(), 1),
                                std::span<const double>(f.data(), 1)),
                  DomainError);
}

TEST_CASE("power-law fit on a table") {
  const ModelParams p = jc::JCParams::resonant(0.5, 1000.0);
  const int n_max = 40;
  CMatrix f = CMatrix::Zero(n_max, n_max);
  for (int k = 1; k <= n_max; ++k) f(k - 1, k - 1) = 1.0 / k;
  const CoefficientTable table(p, 1.0, f, Provenance::analytic_exact);
  const auto fit = fit_power_law(table, 5, 40);
  CHECK(std::abs(fit.slope + 1.0) < 1e-12);
  CHECK(std::abs(fit.intercept) < 1e-12);
  CHECK_THROWS_AS(fit_power_law(table, 5, 41), DomainError);
}

TEST_CASE("implied beta") {
  CHECK(implied_beta(-1.0) == 0.5);
  CHECK(implied_beta(-2.5) == 1.25);
  CHECK(implied_beta(-1.5) == 0.75);
}
