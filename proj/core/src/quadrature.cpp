#include "qjump/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <vector>

#include "qjump/errors.hpp"

namespace qjump::quad {
namespace {

// Abscissae of the 15-point Kronrod rule on [-1, 1], positive half; the odd
// entries (1, 3, 5) together with 0 are the 7-point Gauss nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double lo;
  double hi;
  Complex value;
  double error;
};

struct ByError {
  bool operator()(const Panel& a, const Panel& b) const {
    return a.error < b.error;
  }
};

Complex checked_eval(const Integrand& f, double x) {
  const Complex v = f(x);
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
    throw NonFiniteIntegrand(x);
  }
  return v;
}

Panel make_panel(const Integrand& f, double lo, double hi) {
  double err = 0.0;
  const Complex v = kronrod_panel(f, lo, hi, &err);
  return {lo, hi, v, err};
}

std::vector<double> initial_grid(double lo, double hi,
                                 std::span<const double> breakpoints,
                                 const QuadratureSpec& spec) {
  std::vector<double> cuts{lo, hi};
  for (double b : breakpoints) {
    if (b > lo && b < hi) cuts.push_back(b);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  if (spec.oscillation_frequency_hint <= 0.0) return cuts;

  const double period =
      2.0 * std::numbers::pi / spec.oscillation_frequency_hint;
  std::vector<double> grid;
  grid.push_back(cuts.front());
  for (std::size_t i = 1; i < cuts.size(); ++i) {
    const double a = cuts[i - 1];
    const double b = cuts[i];
    const auto pieces =
        static_cast<long long>(std::ceil((b - a) / period - 1e-12));
    const long long k = std::max<long long>(1, pieces);
    for (long long j = 1; j < k; ++j) {
      grid.push_back(a + (b - a) * static_cast<double>(j) /
                             static_cast<double>(k));
    }
    grid.push_back(b);
  }
  return grid;
}

}  // namespace

void QuadratureSpec::validate() const {
  if (!(rel_tol > 0.0)) throw DomainError("QuadratureSpec: rel_tol must be > 0");
  if (!(abs_tol > 0.0)) throw DomainError("QuadratureSpec: abs_tol must be > 0");
  if (max_subdivisions < 8) {
    throw DomainError("QuadratureSpec: max_subdivisions must be >= 8");
  }
  if (!(oscillation_frequency_hint >= 0.0)) {
    throw DomainError("QuadratureSpec: oscillation hint must be >= 0");
  }
}

Complex kronrod_panel(const Integrand& f, double lo, double hi,
                      double* error) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);

  const Complex fc = checked_eval(f, center);
  Complex kronrod = fc * kWgk[7];
  Complex gauss = fc * kWg[3];
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const Complex f1 = checked_eval(f, center - dx);
    const Complex f2 = checked_eval(f, center + dx);
    kronrod += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
  }
  kronrod *= half;
  gauss *= half;
  if (error) *error = std::abs(kronrod - gauss);
  return kronrod;
}

QuadratureResult integrate(const Integrand& f, double lo, double hi,
                           const QuadratureSpec& spec) {
  return integrate(f, lo, hi, std::span<const double>{}, spec);
}

QuadratureResult integrate(const Integrand& f, double lo, double hi,
                           std::span<const double> breakpoints,
                           const QuadratureSpec& spec) {
  spec.validate();
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    throw DomainError("integrate: need finite lo < hi");
  }

  const std::vector<double> grid = initial_grid(lo, hi, breakpoints, spec);
  const auto initial_panels = static_cast<int>(grid.size() - 1);
  if (initial_panels > spec.max_subdivisions) {
    throw QuadratureError(
        "integrate: " + std::to_string(initial_panels) +
            " initial panels exceed max_subdivisions; raise the cap",
        std::numeric_limits<double>::infinity());
  }

  std::priority_queue<Panel, std::vector<Panel>, ByError> heap;
  Complex total{};
  double total_error = 0.0;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    Panel p = make_panel(f, grid[i - 1], grid[i]);
    total += p.value;
    total_error += p.error;
    heap.push(p);
  }

  auto target = [&] { return std::max(spec.rel_tol * std::abs(total), spec.abs_tol); };

  int panels = initial_panels;
  while (total_error > target() && panels < spec.max_subdivisions) {
    Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(mid > worst.lo && mid < worst.hi)) {
      // Panel cannot be split further in double precision.
      heap.push(worst);
      break;
    }
    Panel left = make_panel(f, worst.lo, mid);
    Panel right = make_panel(f, mid, worst.hi);
    total += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++panels;
  }

  // Re-sum from the final partition to drop incremental rounding drift.
  Complex value{};
  double error = 0.0;
  while (!heap.empty()) {
    value += heap.top().value;
    error += heap.top().error;
    heap.pop();
  }
  QuadratureResult result;
  result.value = value;
  result.error_estimate = error;
  result.subdivisions_used = panels;
  result.converged =
      error <= std::max(spec.rel_tol * std::abs(value), spec.abs_tol);
  return result;
}

}  // namespace qjump::quad
