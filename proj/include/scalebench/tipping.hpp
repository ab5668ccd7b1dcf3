#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>

#include "scalebench/core/time_series.hpp"

/// Double-well Landau-Langevin dynamics on V(T, alpha).
///
/// Two potentials are offered:
///  - coupled: V = T^2 (T-1)^2 + alpha^2, a 2D gradient system in (T, alpha);
///  - tilted:  V = T^2 (T-1)^2 - alpha T, alpha an external control. The
///    low well at T=0 flattens out and vanishes once alpha passes
///    critical_alpha(); the high well only deepens.
namespace scalebench::tipping {

enum class Mode { coupled, tilted };
enum class Basin { low, high };

[[nodiscard]] std::string_view to_string(Mode mode) noexcept;
[[nodiscard]] std::string_view to_string(Basin basin) noexcept;
[[nodiscard]] Mode parse_mode(std::string_view text);

/// alpha(t): zero before t_change, then linear at ramp_rate, clamped to
/// [-alpha_max, alpha_max]. With return_rate set, after reaching the clamp
/// and holding for `hold`, alpha moves back linearly to 0 and stays there.
struct AlphaSchedule {
  double t_change = 0.0;
  double ramp_rate = 0.0;
  double alpha_max = 0.0;
  std::optional<double> return_rate;
  double hold = 0.0;

  void validate() const;
  [[nodiscard]] double alpha_at(double t) const;
  /// Time at which the clamp is reached (infinity when ramp_rate == 0).
  [[nodiscard]] double peak_time() const;
  /// Start/end of the return leg; infinity without return_rate.
  [[nodiscard]] double return_start() const;
  [[nodiscard]] double return_end() const;
};

struct TippingParams {
  Mode mode = Mode::tilted;
  double noise = 0.0;  // D
  double dt = 0.01;
  long steps = 0;
  AlphaSchedule schedule;
  std::uint64_t seed = 0;
  /// Record every n-th step in langevin_run (the final step is always kept).
  long record_interval = 1;

  void validate() const;
};

struct TippingState {
  double T = 0.0;
  double alpha = 0.0;
};

[[nodiscard]] double potential_value(double T, double alpha, Mode mode) noexcept;
/// (dV/dT, dV/dalpha).
[[nodiscard]] std::pair<double, double> gradient(double T, double alpha, Mode mode) noexcept;

/// Low iff T <= 0.5 (the threshold itself counts as Low).
[[nodiscard]] Basin basin_of(double T) noexcept;

struct FlowResult {
  TimeSeries path;  // components: T, alpha
  Basin terminal = Basin::low;
  bool diverged = false;  // |T| exceeded 10; path ends there
};

/// Explicit Euler descent along -grad V. In tilted mode alpha is held fixed
/// at start.alpha.
[[nodiscard]] FlowResult gradient_flow(TippingState start, double dt, long steps, Mode mode);

struct LangevinResult {
  TimeSeries series;  // components: T, alpha
  /// dt * max |dV/dT| over the visited states; step_sane iff < 0.5.
  double max_gradient_step = 0.0;
  bool step_sane = true;
};

/// Overdamped update T <- T - dV/dT dt + sqrt(2 D dt) xi, alpha from the
/// schedule. Throws `numerical_blowup` (with step index) if T leaves
/// |T| < 1e3 or becomes non-finite.
[[nodiscard]] LangevinResult langevin_run(const TippingParams& params, double T0);

/// First time T exceeds `threshold`; nullopt if it never does within the run.
[[nodiscard]] std::optional<double> first_passage_time(const TippingParams& params, double T0,
                                                       double threshold = 0.5);

/// Smallest alpha > 0 at which dV/dT has a double root in (0, 0.5). Tilted
/// mode only (the coupled potential has no such alpha).
[[nodiscard]] double critical_alpha(Mode mode = Mode::tilted);

struct HysteresisResult {
  double forward_fraction = 0.0;
  double return_fraction = 0.0;
  int seeds = 0;
};

/// Runs `n_seeds` trajectories from T0, seed i drawing from
/// RngStream::derive(params.seed, i). forward_fraction counts runs in the
/// High basin when the return leg starts; return_fraction counts runs back
/// in the Low basin at the final step. The schedule must ramp past
/// critical_alpha() and return to 0 before the run ends.
[[nodiscard]] HysteresisResult hysteresis_experiment(const TippingParams& params, int n_seeds, double T0 = 0.0);

/// The calibrated configuration shipped as the hysteresis default.
[[nodiscard]] TippingParams default_hysteresis_params();

}  // namespace scalebench::tipping
