#include "scalebench/tipping.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "scalebench/core/error.hpp"
#include "scalebench/core/rng.hpp"
#include "scalebench/core/roots.hpp"

namespace scalebench::tipping {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kFlowDivergence = 10.0;
constexpr double kLangevinBlowup = 1e3;

// dV/dT of the quartic double well alone: 2T(T-1)(2T-1) = 4T^3 - 6T^2 + 2T.
double well_slope(double T) noexcept { return 2.0 * T * (T - 1.0) * (2.0 * T - 1.0); }

struct Trajectory {
  double t = 0.0;
  double T = 0.0;
  double max_slope = 0.0;
};

// Shared stepping loop; `visit(step, t, T, alpha)` is called after every
// step and may return false to stop early.
template <typename Visit>
Trajectory run_overdamped(const TippingParams& p, double T0, RngStream& rng, Visit&& visit) {
  Trajectory tr;
  tr.T = T0;
  const double kick = std::sqrt(2.0 * p.noise * p.dt);
  for (long k = 0; k < p.steps; ++k) {
    const double alpha = p.schedule.alpha_at(tr.t);
    const double slope = gradient(tr.T, alpha, p.mode).first;
    tr.max_slope = std::max(tr.max_slope, std::abs(slope));
    tr.T += -slope * p.dt + kick * rng.normal();
    tr.t = static_cast<double>(k + 1) * p.dt;
    if (!std::isfinite(tr.T) || std::abs(tr.T) > kLangevinBlowup) {
      throw_numerical("numerical_blowup", "langevin_run: T left the finite region at step " + std::to_string(k + 1));
    }
    if (!visit(k + 1, tr.t, tr.T, p.schedule.alpha_at(tr.t))) break;
  }
  return tr;
}

}  // namespace

std::string_view to_string(Mode mode) noexcept { return mode == Mode::coupled ? "coupled" : "tilted"; }
std::string_view to_string(Basin basin) noexcept { return basin == Basin::low ? "low" : "high"; }

Mode parse_mode(std::string_view text) {
  if (text == "coupled") return Mode::coupled;
  if (text == "tilted") return Mode::tilted;
  throw_validation("invalid_mode", "unknown tipping mode '" + std::string(text) + "'");
}

void AlphaSchedule::validate() const {
  if (!(t_change >= 0.0)) throw_validation("invalid_schedule", "t_change must be >= 0");
  if (!(alpha_max >= 0.0)) throw_validation("invalid_schedule", "alpha_max must be >= 0");
  if (!std::isfinite(ramp_rate)) throw_validation("invalid_schedule", "ramp_rate must be finite");
  if (!(hold >= 0.0)) throw_validation("invalid_schedule", "hold must be >= 0");
  if (return_rate && !(*return_rate > 0.0)) throw_validation("invalid_schedule", "return_rate must be positive");
}

double AlphaSchedule::peak_time() const {
  if (ramp_rate == 0.0) return kInf;
  return t_change + alpha_max / std::abs(ramp_rate);
}

double AlphaSchedule::return_start() const {
  if (!return_rate || ramp_rate == 0.0) return kInf;
  return peak_time() + hold;
}

double AlphaSchedule::return_end() const {
  if (!return_rate || ramp_rate == 0.0) return kInf;
  return return_start() + alpha_max / *return_rate;
}

double AlphaSchedule::alpha_at(double t) const {
  if (t < t_change || ramp_rate == 0.0) return 0.0;
  const double sign = ramp_rate > 0.0 ? 1.0 : -1.0;
  if (t >= return_start()) {
    const double level = alpha_max - *return_rate * (t - return_start());
    return sign * std::max(level, 0.0);
  }
  return std::clamp(ramp_rate * (t - t_change), -alpha_max, alpha_max);
}

void TippingParams::validate() const {
  if (!(noise >= 0.0)) throw_validation("invalid_params", "noise amplitude D must be >= 0");
  if (!(dt > 0.0)) throw_validation("invalid_params", "dt must be > 0");
  if (steps < 0) throw_validation("invalid_params", "steps must be >= 0");
  if (record_interval < 1) throw_validation("invalid_params", "record_interval must be >= 1");
  schedule.validate();
}

double potential_value(double T, double alpha, Mode mode) noexcept {
  const double well = T * T * (T - 1.0) * (T - 1.0);
  return mode == Mode::coupled ? well + alpha * alpha : well - alpha * T;
}

std::pair<double, double> gradient(double T, double alpha, Mode mode) noexcept {
  if (mode == Mode::coupled) return {well_slope(T), 2.0 * alpha};
  return {well_slope(T) - alpha, 0.0};
}

Basin basin_of(double T) noexcept { return T > 0.5 ? Basin::high : Basin::low; }

FlowResult gradient_flow(TippingState start, double dt, long steps, Mode mode) {
  if (!(dt > 0.0)) throw_validation("invalid_params", "gradient_flow: dt must be > 0");
  FlowResult out{TimeSeries(2), Basin::low, false};
  out.path.reserve(static_cast<std::size_t>(steps) + 1);
  double T = start.T;
  double alpha = start.alpha;
  out.path.append(0.0, std::array{T, alpha});
  for (long k = 0; k < steps; ++k) {
    const auto [gT, ga] = gradient(T, alpha, mode);
    T -= gT * dt;
    alpha -= ga * dt;
    out.path.append(static_cast<double>(k + 1) * dt, std::array{T, alpha});
    if (!std::isfinite(T) || std::abs(T) > kFlowDivergence) {
      out.diverged = true;
      break;
    }
  }
  out.terminal = basin_of(T);
  return out;
}

LangevinResult langevin_run(const TippingParams& params, double T0) {
  params.validate();
  RngStream rng(params.seed);
  LangevinResult out{TimeSeries(2), 0.0, true};
  out.series.reserve(static_cast<std::size_t>(params.steps / params.record_interval) + 2);
  out.series.append(0.0, std::array{T0, params.schedule.alpha_at(0.0)});
  const auto tr = run_overdamped(params, T0, rng, [&](long step, double t, double T, double alpha) {
    if (step % params.record_interval == 0 || step == params.steps) out.series.append(t, std::array{T, alpha});
    return true;
  });
  out.max_gradient_step = params.dt * tr.max_slope;
  out.step_sane = out.max_gradient_step < 0.5;
  return out;
}

std::optional<double> first_passage_time(const TippingParams& params, double T0, double threshold) {
  params.validate();
  RngStream rng(params.seed);
  std::optional<double> hit;
  if (T0 > threshold) return 0.0;
  run_overdamped(params, T0, rng, [&](long, double t, double T, double) {
    if (T > threshold) {
      hit = t;
      return false;
    }
    return true;
  });
  return hit;
}

double critical_alpha(Mode mode) {
  if (mode != Mode::tilted) {
    throw_validation("invalid_mode", "critical_alpha is defined for the tilted potential only");
  }
  // The low well disappears where dV/dT = well_slope(T) - alpha has a double
  // root, i.e. at the local maximum of well_slope on (0, 0.5), where
  // well_slope'(T) = 12T^2 - 12T + 2 vanishes.
  const double t_star = find_root_bisect([](double T) { return 12.0 * T * T - 12.0 * T + 2.0; }, 0.0, 0.5, 1e-15);
  return well_slope(t_star);
}

HysteresisResult hysteresis_experiment(const TippingParams& params, int n_seeds, double T0) {
  params.validate();
  if (n_seeds < 1) throw_validation("invalid_params", "hysteresis_experiment: n_seeds must be >= 1");
  if (params.mode != Mode::tilted) {
    throw_validation("invalid_params", "hysteresis_experiment requires the tilted potential");
  }
  const auto& s = params.schedule;
  if (!s.return_rate || !(s.alpha_max > critical_alpha())) {
    throw_validation("invalid_schedule",
                     "hysteresis_experiment: schedule must ramp past critical_alpha and return to 0");
  }
  const double t_end = params.dt * static_cast<double>(params.steps);
  if (!(s.return_end() < t_end)) {
    throw_validation("invalid_schedule", "hysteresis_experiment: the run ends before alpha returns to 0");
  }

  // Forward verdict: basin at the last step before the return leg begins.
  const long forward_step = static_cast<long>(std::floor(s.return_start() / params.dt));

  int forward_high = 0;
  int returned_low = 0;
  for (int i = 0; i < n_seeds; ++i) {
    RngStream rng = RngStream::derive(params.seed, static_cast<std::uint64_t>(i));
    Basin at_forward = basin_of(T0);
    const auto tr = run_overdamped(params, T0, rng, [&](long step, double, double T, double) {
      if (step == forward_step) at_forward = basin_of(T);
      return true;
    });
    if (at_forward == Basin::high) ++forward_high;
    if (basin_of(tr.T) == Basin::low) ++returned_low;
  }
  return {static_cast<double>(forward_high) / n_seeds, static_cast<double>(returned_low) / n_seeds, n_seeds};
}

TippingParams default_hysteresis_params() {
  TippingParams p;
  p.mode = Mode::tilted;
  p.noise = 0.005;
  p.dt = 0.01;
  p.steps = 40000;
  p.seed = 20180101;
  p.schedule.t_change = 50.0;
  p.schedule.ramp_rate = 0.004;
  p.schedule.alpha_max = 0.3;
  p.schedule.hold = 50.0;
  p.schedule.return_rate = 0.004;
  return p;
}

}  // namespace scalebench::tipping
