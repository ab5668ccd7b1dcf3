#pragma once

#include <complex>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "scalebench/core/small_matrix.hpp"
#include "scalebench/core/time_series.hpp"

/// Toy greenhouse-gas models: global warming potentials, and small linear
/// compartment systems whose stability hinges on one feedback gain.
/// Time unit: years.
namespace scalebench::ghg {

inline constexpr double kMethaneHalfLife = 7.0;
inline constexpr double kMethanePotency = 84.0;
/// Clathrate phase data: stability limit near 13 C at 100 atm, and about
/// 23 C of warming needed to destabilise deposits at 4000 m depth.
inline constexpr double kClathratePhaseLimit100atm = 13.0;
inline constexpr double kClathrateWarming4000m = 23.0;
/// Atmosphere (10 m water equivalent) over ocean (4000 m) heat capacity.
inline constexpr double kHeatCapacityRatio = 1.0 / 400.0;

[[nodiscard]] double methane_decay(double m0, double t_years);
[[nodiscard]] double superposition_heating(double c, double m, double kappa, double potency = kMethanePotency);

/// Abundance C(t) = amount * 2^(-t / half_life), or constant when
/// half_life is unset.
struct Profile {
  std::optional<double> half_life;
  double amount = 1.0;

  [[nodiscard]] double at(double t) const;
  /// Closed-form integral over [0, TH].
  [[nodiscard]] double integral(double TH) const;
};

struct GwpSpec {
  double TH = 100.0;
  Profile gas{kMethaneHalfLife, 1.0};
  Profile reference{};
  double a_ratio = 1.0;  // a_i / a_r

  void validate() const;
};

/// Ratio of time-integrated forcings by adaptive quadrature.
[[nodiscard]] double gwp(const GwpSpec& spec);
/// The same ratio from Profile::integral.
[[nodiscard]] double gwp_closed_form(const GwpSpec& spec);

enum class Preset { clathrate, albedo };
[[nodiscard]] std::string_view to_string(Preset p) noexcept;
[[nodiscard]] Preset parse_preset(std::string_view text);

/// dx/dt = A x + u(t) b, plus, in threshold mode, the release term
/// beta_f (x[feedback_col] - threshold)_+ on row feedback_row in place of
/// the linear entry beta_f x[feedback_col].
struct LinearCompartmentModel {
  std::vector<std::string> names;
  SmallMatrix A;  // with the linear feedback entry
  std::vector<double> b;
  std::size_t feedback_row = 0;
  std::size_t feedback_col = 0;
  double beta_f = 0.0;
  std::optional<double> threshold;

  void validate() const;
  [[nodiscard]] std::size_t size() const noexcept { return names.size(); }
  /// A with the feedback entry replaced by `gain`.
  [[nodiscard]] SmallMatrix with_gain(double gain) const;
};

/// Named rates accepted as overrides (per year unless noted):
///   clathrate: kappa, potency, lambda_ox, lambda_other, co2_uptake,
///              out_radiation, stirring, heat_ratio, deep_uptake, beta_f,
///              threshold, emissions
///   albedo:    albedo_forcing, out_radiation, stirring, heat_ratio,
///              deep_uptake, beta_f, forcing
/// Unknown names throw `unknown_parameter`.
[[nodiscard]] LinearCompartmentModel build_interaction_model(Preset preset,
                                                             const std::map<std::string, double>& overrides = {});
/// Default value of every rate of a preset.
[[nodiscard]] std::map<std::string, double> preset_defaults(Preset preset);

struct Stability {
  std::vector<std::complex<double>> eigenvalues;  // descending real part
  double max_real_part = 0.0;
  bool stable = false;
};

[[nodiscard]] Stability stability(const SmallMatrix& A);

/// Gain where the largest real part of the spectrum of family(g) crosses
/// zero, by bisection to `tol`. Needs max_real_part(lo) <= 0 < max_real_part(hi)
/// (a real part within 1e-12 of zero counts as zero); otherwise throws
/// `no_crossing`.
[[nodiscard]] double critical_gain(const std::function<SmallMatrix(double)>& family, double lo, double hi,
                                   double tol = 1e-6);

enum class Outcome { bounded, runaway };
[[nodiscard]] std::string_view to_string(Outcome o) noexcept;

struct SimOptions {
  double horizon = 500.0;
  bool threshold_mode = false;
  /// Runaway once max |x_i| exceeds divergence_factor * max(|x0|_inf, scale_floor).
  double divergence_factor = 1e3;
  double scale_floor = 1.0;
  /// The input u(t) is 1 before input_stop and 0 after.
  double input_stop = std::numeric_limits<double>::infinity();
  double sample_interval = 1.0;
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
};

struct SimOutcome {
  TimeSeries trajectory;
  Outcome classification = Outcome::bounded;
  std::optional<double> divergence_time;
};

[[nodiscard]] SimOutcome simulate_compartments(const LinearCompartmentModel& model, std::span<const double> x0,
                                               const SimOptions& options = {});

/// Smallest beta_f in [lo, hi] classified as runaway by
/// simulate_compartments (threshold off, no input), by bisection to a
/// relative width of rel_tol. Throws `no_crossing` unless lo is bounded and
/// hi runs away.
[[nodiscard]] double divergence_onset(const LinearCompartmentModel& model, std::span<const double> x0, double lo,
                                      double hi, double horizon, double rel_tol = 1e-4);

}  // namespace scalebench::ghg
