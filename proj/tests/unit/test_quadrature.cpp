#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "qjump/errors.hpp"
#include "qjump/quadrature.hpp"

using namespace qjump;
using quad::Complex;

TEST_CASE("elementary integrals") {
  const auto r = quad::integrate([](double z) { return Complex(std::sin(z), 0.0); }, 0.0, M_PI);
  CHECK(r.converged);
  CHECK(std::abs(r.value.real() - 2.0) < 1e-10);
  const auto e = quad::integrate([](double z) { return Complex(std::exp(-z), 0.0); }, 0.0, 40.0);
  CHECK(std::abs(e.value.real() - 1.0) < 1e-10);
}

TEST_CASE("damped oscillation against a dense trapezoid oracle") {
  auto f = [](double z) { return std::exp(-z) * std::pow(std::sin(3.0 * z), 2) / 9.0; };
  const double ref = oracle::trapezoid(f, 0.0, 10.0, 1'000'001);
  const auto r = quad::integrate([&](double z) { return Complex(f(z), 0.0); }, 0.0, 10.0);
  CHECK(std::abs(r.value.real() - ref) < 1e-9);
  // Closed form: (1/9) int e^{-z} (1 - cos 6z)/2 over [0, 10].
  const double closed = (1.0 / 18.0) * ((1.0 - std::exp(-10.0)) -
                                        (1.0 - std::exp(-10.0) * (std::cos(60.0) - 6.0 * std::sin(60.0))) / 37.0);
  CHECK(std::abs(r.value.real() - closed) < 1e-12);
}

TEST_CASE("oscillation hint splits the range into periods") {
  quad::QuadratureSpec spec;
  spec.oscillation_frequency_hint = 2.0 * M_PI;  // unit period
  const auto r = quad::integrate([](double x) { return std::exp(Complex(0.0, 40.0 * x)); },
                                 0.0, 25.0, spec);
  CHECK(r.subdivisions_used >= 25);
  const Complex exact = (std::exp(Complex(0.0, 1000.0)) - 1.0) / Complex(0.0, 40.0);
  CHECK(std::abs(r.value - exact) < 1e-11);
}

TEST_CASE("breakpoints are honoured") {
  const double cut = 0.3;
  const double bp[] = {cut};
  const auto r = quad::integrate([=](double x) { return Complex(std::abs(x - cut), 0.0); },
                                 0.0, 1.0, bp);
  CHECK(r.subdivisions_used == 2);
  CHECK(std::abs(r.value.real() - (0.5 * cut * cut + 0.5 * 0.7 * 0.7)) < 1e-15);
}

TEST_CASE("non-finite integrand reports the abscissa") {
  try {
    quad::integrate([](double x) { return Complex(1.0 / (x - 0.5) / 0.0, 0.0); }, 0.0, 1.0);
    FAIL("expected NonFiniteIntegrand");
  } catch (const NonFiniteIntegrand& e) {
    CHECK(e.abscissa() >= 0.0);
    CHECK(e.abscissa() <= 1.0);
  }
}

TEST_CASE("non-convergence is reported, not hidden") {
  quad::QuadratureSpec spec;
  spec.max_subdivisions = 8;
  spec.rel_tol = 1e-15;
  spec.abs_tol = 1e-300;
  const auto r = quad::integrate([](double x) { return Complex(std::sqrt(x), 0.0); }, 0.0, 1.0, spec);
  CHECK_FALSE(r.converged);
  CHECK(r.error_estimate > 0.0);
}

TEST_CASE("spec validation") {
  quad::QuadratureSpec spec;
  spec.rel_tol = 0.0;
  CHECK_THROWS_AS(spec.validate(), DomainError);
  spec = {};
  spec.max_subdivisions = 2;
  CHECK_THROWS_AS(spec.validate(), DomainError);
  CHECK_THROWS_AS(quad::integrate([](double) { return Complex(1.0, 0.0); }, 1.0, 0.0), DomainError);
  quad::QuadratureSpec dense;
  dense.oscillation_frequency_hint = 1e6;
  dense.max_subdivisions = 100;
  CHECK_THROWS_AS(quad::integrate([](double) { return Complex(1.0, 0.0); }, 0.0, 1.0, dense),
                  QuadratureError);
}

TEST_CASE("property: linearity within error estimates") {
  oracle::Sampler s(5);
  for (int trial = 0; trial < 30; ++trial) {
    const double a1 = s.uniform(0.5, 5), w1 = s.uniform(0, 10);
    const double a2 = s.uniform(0.5, 5), w2 = s.uniform(0, 10);
    const double alpha = s.uniform(-2, 2), beta = s.uniform(-2, 2);
    auto f = [=](double x) { return Complex(std::exp(-a1 * x) * std::cos(w1 * x), 0.0); };
    auto g = [=](double x) { return Complex(std::exp(-a2 * x) * std::sin(w2 * x), x); };
    const auto rf = quad::integrate(f, 0.0, 3.0);
    const auto rg = quad::integrate(g, 0.0, 3.0);
    const auto rs = quad::integrate([&](double x) { return alpha * f(x) + beta * g(x); }, 0.0, 3.0);
    const double bound = std::abs(alpha) * rf.error_estimate + std::abs(beta) * rg.error_estimate +
                         rs.error_estimate + 1e-13;
    CHECK(std::abs(rs.value - (alpha * rf.value + beta * rg.value)) <= bound);
  }
}

TEST_CASE("property: tightening rel_tol never worsens the answer") {
  // Oscillatory integrand of the reduced-coefficient type with a known value.
  const double xi = 0.4, wbar = 7.0;
  auto f = [=](double z) {
    return std::pow(std::sin(z), 2) * std::exp(Complex(-2.0 * xi * z, wbar * z));
  };
  // int_0^inf sin^2 z e^{-s z} dz = 2 / (s (s^2 + 4)), s = 2 xi - i wbar
  const Complex sv(2.0 * xi, -wbar);
  const double upper = 60.0;
  const Complex exact = 2.0 / (sv * (sv * sv + 4.0));
  double previous = 1e300;
  for (double tol : {1e-4, 5e-5, 2.5e-5, 1.25e-5, 6e-6, 3e-6}) {
    quad::QuadratureSpec spec;
    spec.rel_tol = tol;
    spec.abs_tol = 1e-300;
    const double err = std::abs(quad::integrate(f, 0.0, upper, spec).value - exact);
    CHECK(err <= previous * (1.0 + 1e-12));
    previous = err;
  }
}
