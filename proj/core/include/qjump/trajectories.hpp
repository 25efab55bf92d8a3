#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "qjump/coefficients.hpp"
#include "qjump/fock.hpp"

namespace qjump::traj {

/// Sentinel first-jump time for trajectories with no emission in (0, T].
inline constexpr double no_jump = std::numeric_limits<double>::infinity();

struct TrajectoryConfig {
  ModelParams params;
  double T = 1.0;
  fock::DensityMatrix initial_state;
  int n_trajectories = 1;
  std::uint64_t master_seed = 0;
  int time_grid_points = 4096;

  ModelTag model() const { return model_of(params); }
  /// Throws InvalidConfig on a bad count, window or state, or when the grid
  /// spacing exceeds 1/20 of the fastest Rabi period 2 pi / (|g| sqrt(N_max)).
  void validate() const;
};

/// p(t) tabulated on a uniform grid over [0, T] with its running integral.
struct WaitingDensityTable {
  std::vector<double> t;
  std::vector<double> p;
  /// cumulative[i] = int_0^{t_i} p, integrated per grid cell with a
  /// 15-point Kronrod rule.
  std::vector<double> cumulative;

  double total() const { return cumulative.empty() ? 0.0 : cumulative.back(); }
  /// Linear interpolation of the cumulative at t (clamped to [0, T]).
  double cdf(double t) const;
};

/// p(t) = Tr[Xi(t) rho] = sum_n rho_nn 2 lambda |<n-1|Gamma(t)|n>|^2.
WaitingDensityTable waiting_density(const TrajectoryConfig& config);

struct TrajectoryEnsemble {
  /// One entry per trajectory, in trajectory-index order; no_jump when the
  /// trajectory did not emit in (0, T].
  std::vector<double> first_jump_times;
  double jump_fraction = 0.0;
  /// Fock index of the initial state, when it is a Fock projector.
  std::optional<int> fock_n;
  /// jump_fraction / (n T); zero for |0> or a degenerate ensemble.
  double empirical_fnn = 0.0;
  /// Binomial standard error of empirical_fnn.
  double standard_error = 0.0;
  /// Probability of a jump in (0, T] according to the tabulated density.
  double reference_probability = 0.0;
  std::vector<double> survival_t;
  /// S(t) = 1 - int_0^t p, nonincreasing with S(0) = 1.
  std::vector<double> survival;
};

/// Uniform variate in (0, 1) from the counter-based stream
/// (master_seed, trajectory index, draw counter).
double uniform_variate(std::uint64_t master_seed, std::uint64_t index,
                       std::uint64_t counter);

/// Inverse-CDF sampling of the first emission time for every trajectory.
/// Emits a degenerate-ensemble warning when int_0^T p = 0.
TrajectoryEnsemble sample_first_jumps(const TrajectoryConfig& config);
TrajectoryEnsemble sample_first_jumps(const TrajectoryConfig& config,
                                      const WaitingDensityTable& table);

/// Kolmogorov-Smirnov distance between the sampled first-jump times
/// (no_jump counted beyond T) and the tabulated cumulative.
double ks_statistic(const TrajectoryEnsemble& ensemble,
                    const WaitingDensityTable& table);

/// Asymptotic 1% critical value 1.628 / sqrt(samples).
double ks_critical_1pct(std::size_t samples);

}  // namespace qjump::traj
