#pragma once

#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "scalebench/core/rng.hpp"
#include "scalebench/core/time_series.hpp"

namespace scalebench {

/// dy/dt = f(t, y), written into `dydt` (same length as `y`).
using Derivative = std::function<void(double t, std::span<const double> y, std::span<double> dydt)>;

/// Classical four-stage Runge-Kutta step. Throws `numerical_blowup` if any
/// stage derivative is non-finite.
[[nodiscard]] std::vector<double> rk4_step(const Derivative& f, std::span<const double> state, double t, double dt);

struct AdaptiveOptions {
  double rel_tol = 1e-8;
  double abs_tol = 1e-10;
  double dt_min = 1e-12;
  double dt_max = std::numeric_limits<double>::infinity();
  /// Zero selects an automatic initial step.
  double dt_initial = 0.0;
  /// Times at which the trajectory is reported (dense interpolation). They
  /// must lie in [t0, t1] and be strictly increasing. Empty = report t0
  /// and every accepted step.
  std::vector<double> output_times;
  /// Optional early stop, evaluated after every accepted step. When it
  /// returns true the step end is appended (if not already the last
  /// sample) and integration ends.
  std::function<bool(double t, std::span<const double> y)> stop_when;
};

struct AdaptiveStats {
  long accepted = 0;
  long rejected = 0;
  long evaluations = 0;
  bool stopped_early = false;
};

/// Dormand-Prince 5(4) with step rejection and the method's 4th-order
/// continuous extension for output between accepted steps.
///
/// Throws `stiffness` (naming the time reached) when the controller asks
/// for a step below dt_min, and `numerical_blowup` on non-finite states.
TimeSeries integrate_adaptive(const Derivative& f, std::span<const double> y0, double t0, double t1,
                              const AdaptiveOptions& options, AdaptiveStats* stats = nullptr);

inline TimeSeries integrate_adaptive(const Derivative& f, std::span<const double> y0, double t0, double t1,
                                     double rel_tol, double abs_tol) {
  AdaptiveOptions options;
  options.rel_tol = rel_tol;
  options.abs_tol = abs_tol;
  return integrate_adaptive(f, y0, t0, t1, options);
}

/// state + drift(t, state) dt + noise_amp sqrt(dt) xi, one standard normal
/// per component drawn in component order.
[[nodiscard]] std::vector<double> euler_maruyama_step(const Derivative& drift, double noise_amp,
                                                      std::span<const double> state, double t, double dt,
                                                      RngStream& rng);

}  // namespace scalebench
