#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "qjump/errors.hpp"
#include "qjump/special_functions.hpp"

using namespace qjump;
using namespace qjump::special;

TEST_CASE("log_factorial") {
  CHECK(log_factorial(0) == 0.0);
  CHECK(log_factorial(1) == 0.0);
  CHECK(log_factorial(5) == doctest::Approx(std::log(120.0)).epsilon(1e-15));
  const double big = log_factorial(170);
  CHECK(std::isfinite(big));
  CHECK(std::abs(big - oracle::log_factorial_sum(170)) < 1e-13 * big);
  CHECK(std::abs(log_factorial(1000) - oracle::log_factorial_sum(1000)) <
        1e-13 * log_factorial(1000));
  CHECK_THROWS_AS(log_factorial(-1), DomainError);
}

TEST_CASE("property: log_factorial increments are ln n") {
  // ln(300!) ~ 1400, so double rounding alone is ~1e-13 absolute; the
  // tolerance is relative to the magnitude of the operands.
  for (int n = 1; n <= 300; ++n) {
    const double scale = std::max(1.0, log_factorial(n));
    CHECK(std::abs(log_factorial(n) - log_factorial(n - 1) - std::log(double(n))) <
          1e-13 * scale);
  }
}

TEST_CASE("Tricomi Psi(3; 2n+2; 2n)") {
  // n = 1: (1/2) int t^2 e^{-2t} = 1/8.
  CHECK(std::abs(tricomi_psi_3(1) - 0.125) < 1e-13);
  // n = 2 against a mapped trapezoid: t = u / (1 - u).
  auto mapped = [](double u) {
    if (u <= 0.0 || u >= 1.0) return 0.0;
    const double t = u / (1.0 - u);
    const double jac = 1.0 / ((1.0 - u) * (1.0 - u));
    return 0.5 * t * t * (1.0 + t) * (1.0 + t) * std::exp(-4.0 * t) * jac;
  };
  const double ref = oracle::trapezoid(mapped, 0.0, 1.0, 10'000'001);
  CHECK(std::abs(tricomi_psi_3(2) - ref) < 1e-9 * ref);
  // Exact for n = 2: (1/2) int t^2 (1+t)^2 e^{-4t} = (1/2)(2/64 + 2*6/256 + 24/1024).
  const double exact2 = 0.5 * (2.0 / 64.0 + 12.0 / 256.0 + 24.0 / 1024.0);
  CHECK(std::abs(tricomi_psi_3(2) - exact2) < 1e-13 * exact2);
  CHECK_THROWS_AS(tricomi_psi_3(0), DomainError);
}

TEST_CASE("Tricomi matches the y-integral bookkeeping") {
  const int n = 3;
  auto y_form = [](double y) {
    return 4.0 * y * y * std::pow(1.0 + y, 2 * n - 2) * std::exp(-2.0 * n * y);
  };
  const double ref = oracle::trapezoid(y_form, 0.0, 40.0, 4'000'001);
  CHECK(std::abs(8.0 * tricomi_psi_3(n) - ref) < 1e-9 * ref);
}

TEST_CASE("associated Laguerre polynomials") {
  CHECK(laguerre_assoc(0, 0.7, 3.1) == 1.0);
  CHECK(laguerre_assoc(1, 0.7, 3.1) == doctest::Approx(1.0 + 0.7 - 3.1));
  // L_2^{(a)}(x) = (x^2 - 2(a+2)x + (a+1)(a+2)) / 2
  const double a = -2.5, x = 1.3;
  CHECK(laguerre_assoc(2, a, x) ==
        doctest::Approx((x * x - 2 * (a + 2) * x + (a + 1) * (a + 2)) / 2).epsilon(1e-14));
  // Explicit sum: L_k^{(a)}(x) = sum_j (-1)^j C(k+a, k-j) x^j / j!
  for (int k : {3, 5, 8}) {
    double sum = 0.0;
    for (int j = 0; j <= k; ++j) {
      double binom = 1.0;  // C(k+a, k-j)
      for (int i = 1; i <= k - j; ++i) binom *= (k + a - (k - j) + i) / i;
      sum += (j % 2 ? -1.0 : 1.0) * binom * std::pow(x, j) / std::tgamma(j + 1.0);
    }
    CHECK(laguerre_assoc(k, a, x) == doctest::Approx(sum).epsilon(1e-12));
  }
  CHECK_THROWS_AS(laguerre_assoc(-1, 0.0, 1.0), DomainError);
}

TEST_CASE("Kummer-transformed Laguerre form of Psi") {
  for (int n : {1, 2, 3, 4, 10, 20}) {
    const double q = tricomi_psi_3(n);
    CHECK(std::abs(tricomi_psi_3_laguerre(n) - q) < 1e-8 * q);
  }
}
