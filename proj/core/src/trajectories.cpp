#include "qjump/trajectories.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qjump/diagnostics.hpp"
#include "qjump/errors.hpp"
#include "qjump/parallel.hpp"
#include "qjump/quadrature.hpp"

namespace qjump::traj {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double fock_density(const ModelParams& params, double t, int n) {
  if (const auto* jcp = std::get_if<jc::JCParams>(&params)) {
    return jc::waiting_density_fock_jc(*jcp, t, n);
  }
  return osc::waiting_density_fock_osc(std::get<osc::OscParams>(params), t, n);
}

}  // namespace

void TrajectoryConfig::validate() const {
  if (n_trajectories < 1) throw InvalidConfig("n_trajectories must be >= 1");
  if (!(T > 0.0) || !std::isfinite(T)) throw InvalidConfig("T must be finite and > 0");
  if (time_grid_points < 2) throw InvalidConfig("time_grid_points must be >= 2");
  if (const auto why = initial_state.invariant_violation(); !why.empty()) {
    throw InvalidConfig("initial_state: " + why);
  }
  const double n_max = static_cast<double>(initial_state.dim() - 1);
  const double dt = T / (time_grid_points - 1);
  const double limit = 2.0 * std::numbers::pi / (abs_g_of(params) * std::sqrt(n_max)) / 20.0;
  if (dt > limit) {
    std::ostringstream os;
    os << "time grid spacing " << dt << " exceeds 1/20 of the fastest Rabi period ("
       << limit << "); raise time_grid_points";
    throw InvalidConfig(os.str());
  }
}

double WaitingDensityTable::cdf(double time) const {
  if (t.empty()) return 0.0;
  if (time <= t.front()) return 0.0;
  if (time >= t.back()) return cumulative.back();
  const auto it = std::upper_bound(t.begin(), t.end(), time);
  const auto i = static_cast<std::size_t>(it - t.begin());
  const double w = (time - t[i - 1]) / (t[i] - t[i - 1]);
  return cumulative[i - 1] + w * (cumulative[i] - cumulative[i - 1]);
}

WaitingDensityTable waiting_density(const TrajectoryConfig& config) {
  config.validate();
  const Eigen::VectorXd pops = config.initial_state.populations();
  std::vector<std::pair<int, double>> weights;
  for (Eigen::Index n = 1; n < pops.size(); ++n) {
    if (pops[n] != 0.0) weights.emplace_back(static_cast<int>(n), pops[n]);
  }
  auto density = [&](double t) {
    double p = 0.0;
    for (const auto& [n, w] : weights) p += w * fock_density(config.params, t, n);
    return p;
  };

  const auto points = static_cast<std::size_t>(config.time_grid_points);
  WaitingDensityTable table;
  table.t.resize(points);
  table.p.resize(points);
  table.cumulative.assign(points, 0.0);
  for (std::size_t i = 0; i < points; ++i) {
    table.t[i] = config.T * static_cast<double>(i) / static_cast<double>(points - 1);
    table.p[i] = density(table.t[i]);
  }
  const quad::Integrand f = [&](double t) { return Complex(density(t), 0.0); };
  std::vector<double> cell(points - 1);
  parallel_for(points - 1, [&](std::size_t i) {
    cell[i] = quad::kronrod_panel(f, table.t[i], table.t[i + 1]).real();
  });
  for (std::size_t i = 1; i < points; ++i) {
    table.cumulative[i] = table.cumulative[i - 1] + std::max(0.0, cell[i - 1]);
  }
  return table;
}

double uniform_variate(std::uint64_t master_seed, std::uint64_t index,
                       std::uint64_t counter) {
  const std::uint64_t key =
      splitmix64(splitmix64(master_seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL) ^
                 (counter * 0x8cb92ba72f3d8dd7ULL));
  // 53 random bits mapped to the open interval (0, 1).
  return (static_cast<double>(key >> 11) + 0.5) * 0x1.0p-53;
}

TrajectoryEnsemble sample_first_jumps(const TrajectoryConfig& config) {
  return sample_first_jumps(config, waiting_density(config));
}

TrajectoryEnsemble sample_first_jumps(const TrajectoryConfig& config,
                                      const WaitingDensityTable& table) {
  config.validate();
  const auto count = static_cast<std::size_t>(config.n_trajectories);
  const double total = table.total();

  TrajectoryEnsemble ens;
  ens.first_jump_times.assign(count, no_jump);
  ens.reference_probability = total;

  parallel_for(count, [&](std::size_t i) {
    const double u = uniform_variate(config.master_seed, i, 0);
    if (!(u <= total)) return;
    const auto it = std::lower_bound(table.cumulative.begin(), table.cumulative.end(), u);
    auto k = static_cast<std::size_t>(it - table.cumulative.begin());
    k = std::clamp<std::size_t>(k, 1, table.t.size() - 1);
    const double lo = table.cumulative[k - 1];
    const double hi = table.cumulative[k];
    const double w = hi > lo ? (u - lo) / (hi - lo) : 1.0;
    ens.first_jump_times[i] = table.t[k - 1] + w * (table.t[k] - table.t[k - 1]);
  });

  const auto jumps = static_cast<double>(std::count_if(
      ens.first_jump_times.begin(), ens.first_jump_times.end(),
      [](double t) { return t != no_jump; }));
  ens.jump_fraction = jumps / static_cast<double>(count);

  if (const auto n = config.initial_state.fock_index()) ens.fock_n = static_cast<int>(*n);
  if (total == 0.0) {
    diagnostics::warn("degenerate ensemble: total jump probability over (0, T] is zero");
  } else if (ens.fock_n && *ens.fock_n > 0) {
    const double scale = 1.0 / (*ens.fock_n * config.T);
    const double q = ens.jump_fraction;
    ens.empirical_fnn = q * scale;
    ens.standard_error = std::sqrt(q * (1.0 - q) / static_cast<double>(count)) * scale;
  }

  ens.survival_t = table.t;
  ens.survival.resize(table.cumulative.size());
  for (std::size_t i = 0; i < table.cumulative.size(); ++i) {
    ens.survival[i] = 1.0 - table.cumulative[i];
  }
  return ens;
}

double ks_statistic(const TrajectoryEnsemble& ensemble,
                    const WaitingDensityTable& table) {
  std::vector<double> times;
  for (double t : ensemble.first_jump_times) {
    if (t != no_jump) times.push_back(t);
  }
  std::sort(times.begin(), times.end());
  const auto total = static_cast<double>(ensemble.first_jump_times.size());
  if (total == 0.0) return 0.0;
  double d = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double model = table.cdf(times[i]);
    d = std::max({d, std::abs(static_cast<double>(i + 1) / total - model),
                  std::abs(static_cast<double>(i) / total - model)});
  }
  // Mass beyond T: empirical no-jump fraction against 1 - total.
  d = std::max(d, std::abs(static_cast<double>(times.size()) / total - table.total()));
  return d;
}

double ks_critical_1pct(std::size_t samples) {
  return 1.628 / std::sqrt(static_cast<double>(samples));
}

}  // namespace qjump::traj
