#pragma once

#include <complex>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "scalebench/core/time_series.hpp"

// Multiplier-accelerator model of income:
//   Y_t = (c + nu) Y_{t-1} - nu Y_{t-2} + (1 + g)^t A.
namespace scalebench::cycles {

struct CycleParams {
  double c = 0.6;   // marginal propensity to consume
  double nu = 1.2;  // accelerator
  double A = 10.0;  // autonomous demand at t = 0
  double g = 0.0;   // growth rate of autonomous demand
  /// Y_0 and Y_1; unset means steady state plus one unit.
  std::optional<double> Y0;
  std::optional<double> Y1;

  void validate() const;
  [[nodiscard]] double s() const noexcept { return 1.0 - c; }
  [[nodiscard]] double initial0() const;
  [[nodiscard]] double initial1() const;
};

[[nodiscard]] double steady_state(double c, double A);

enum class Regime { damped_oscillatory, explosive_oscillatory, monotone, boundary };
[[nodiscard]] std::string_view to_string(Regime r) noexcept;

struct RootAnalysis {
  std::complex<double> lambda1;  // Im >= 0 (larger root when real)
  std::complex<double> lambda2;
  double discriminant = 0.0;  // (c + nu)^2 - 4 nu
  double modulus = 0.0;       // |lambda1|
  double theta = 0.0;         // arg lambda1
  double period = 0.0;        // 2 pi / theta; infinity for real roots
  Regime regime = Regime::monotone;
  bool stable = false;        // both |lambda| < 1
};

/// Roots of lambda^2 - (c + nu) lambda + nu. Complex pairs with modulus 1
/// (nu == 1) are tagged `boundary`.
[[nodiscard]] RootAnalysis characteristic_roots(double c, double nu);

struct IterateResult {
  TimeSeries Y;  // t = 0, 1, ..., one component
  /// Set when |Y_t| passed 1e15; the series stops before that value.
  bool explosive = false;
};

/// Exact recurrence from (Y_0, Y_1) up to t = steps.
[[nodiscard]] IterateResult iterate(const CycleParams& p, long steps);

/// Growth path (1 + g)^t (1 + g)^2 A / ((1 + g)(s + g) - nu g). Throws
/// `resonant_growth` when the denominator vanishes.
[[nodiscard]] double particular(const CycleParams& p, double t);

/// Amplitude and phase of the oscillatory part |lambda|^t delta cos(theta t - eps).
struct Phase {
  double delta = 0.0;    // >= 0
  double epsilon = 0.0;  // in (-pi, pi]; 0 when delta == 0
};

/// Complex regime only (`not_oscillatory` otherwise).
[[nodiscard]] Phase fit_initial(double Y0, double Y1, const CycleParams& p);

/// Closed-form solution through (Y_0, Y_1). In the real-root regime the
/// homogeneous part is a lambda1^t + b lambda2^t, or (a + b t) lambda^t for
/// a double root.
[[nodiscard]] double closed_form(const CycleParams& p, double t);

/// Recurrence with every Y_t (the initial pair included) clamped into
/// [floor_t, ceiling_t] before it enters the history. Paths are multipliers
/// of particular(p, t); a path of length 1 applies to every t, otherwise
/// it needs steps + 1 entries.
[[nodiscard]] TimeSeries restricted_iterate(const CycleParams& p, std::span<const double> floor_path,
                                            std::span<const double> ceiling_path, long steps);

struct Decomposition {
  std::vector<double> trend;
  std::vector<double> cycle;
  std::vector<double> residual;
};

/// Centred moving averages: trend over `long_window` points, cycle over
/// `short_window` points of (series - trend). Windows must be odd; near the
/// ends the window shrinks symmetrically. Needs more than 2 long_window
/// samples.
[[nodiscard]] Decomposition decompose(std::span<const double> series, int long_window = 41, int short_window = 5);

struct GreatRatios {
  std::vector<double> employment;  // L / L_supply
  std::vector<double> wage_share;  // W L / (p Y)
  /// Soft checks: e in (0, 1.2) and v in (0, 1) everywhere.
  bool employment_plausible = true;
  bool wage_share_plausible = true;
};

[[nodiscard]] GreatRatios great_ratios(std::span<const double> W, std::span<const double> L,
                                       std::span<const double> p, std::span<const double> Y,
                                       std::span<const double> L_supply);

}  // namespace scalebench::cycles
