#pragma once

#include <array>
#include <string_view>
#include <vector>

#include "scalebench/core/time_series.hpp"

/// Eight-pool kinetic model of insulin granule exocytosis. Pools N1..N4
/// carry 0..3 bound Ca ions, N5 and N6 form the resupply chain, NF counts
/// fused granules and NR released ones. Time is in seconds, concentrations
/// in uM; pool sizes are dimensionless.
namespace scalebench::exocytosis {

struct KineticParams {
  double k1 = 20.0;  // uM^-1 s^-1
  double k_1 = 100.0;
  double r1 = 0.6;
  double r_1 = 1.0;
  double r2_0 = 0.006;
  double r_2 = 0.001;
  double r3_0 = 1.205;
  double r_3 = 0.0001;
  double u1 = 2000.0;
  double u2 = 3.0;
  double u3 = 0.02;
  double Kp = 2.3;  // uM

  void validate() const;
};

inline constexpr std::size_t kPools = 8;
/// N1, N2, N3, N4, N5, N6, NF, NR.
using PoolState = std::array<double, kPools>;
inline constexpr std::array<std::string_view, kPools> kPoolNames{"N1", "N2", "N3", "N4", "N5", "N6", "NF", "NR"};

/// `paper_verbatim` keeps the equations exactly as usually printed,
/// including k1 where the unbinding steps need k_1 and r1 where the N1 -> N5
/// exchange needs r_1. `mass_action_corrected` fixes those three terms.
enum class Variant { paper_verbatim, mass_action_corrected };

[[nodiscard]] std::string_view to_string(Variant v) noexcept;
[[nodiscard]] Variant parse_variant(std::string_view text);

/// Microdomain Ca C_md(t); the cytosolic level follows as
/// C_i = C_i_basal + ratio_i_to_md * C_md.
struct CalciumProtocol {
  enum class Kind { step, pulse_train };
  Kind kind = Kind::step;
  double C_md_high = 10.0;
  double C_md_basal = 0.1;
  double C_i_basal = 0.05;
  double ratio_i_to_md = 0.01;
  double t_on = 60.0;
  int n_pulses = 5;
  double period = 120.0;
  double duty = 0.5;

  void validate() const;
  /// Right-continuous: the new level applies at the switching instant.
  [[nodiscard]] double C_md(double t) const;
  [[nodiscard]] double C_i(double t) const { return C_i_of(C_md(t)); }
  [[nodiscard]] double C_i_of(double c_md) const noexcept { return C_i_basal + ratio_i_to_md * c_md; }
  /// Switching times strictly inside (0, t_end).
  [[nodiscard]] std::vector<double> switch_times(double t_end) const;
};

[[nodiscard]] std::string_view to_string(CalciumProtocol::Kind k) noexcept;
[[nodiscard]] CalciumProtocol::Kind parse_protocol_kind(std::string_view text);

struct Rates {
  double r2 = 0.0;
  double r3 = 0.0;
};

/// Michaelis-type dependence of resupply and priming on C_i.
[[nodiscard]] Rates rates(double C_i, const KineticParams& p);

/// Throws `negative_input` for negative pools or concentrations.
[[nodiscard]] PoolState derivatives(const PoolState& state, double C_md, double C_i, const KineticParams& p,
                                    Variant variant);

/// r3 - r_3 N6 - u3 NR: what d/dt of the pool sum must equal in the
/// corrected variant.
[[nodiscard]] double net_source(const PoolState& state, double C_i, const KineticParams& p);

/// Fixed point at constant Ca, from the linear flux-balance system.
/// Throws `singular_matrix` on degenerate parameters and `negative_steady_state`
/// if the solution leaves the non-negative orthant.
[[nodiscard]] PoolState resting_state(double C_md, double C_i, const KineticParams& p, Variant variant);
[[nodiscard]] PoolState resting_state(const CalciumProtocol& protocol, const KineticParams& p, Variant variant);

struct ExoRun {
  /// N1..NR, SR, C_md, C_i.
  TimeSeries trajectory;
  /// SR = u2 NF.
  TimeSeries secretion;
  /// pool sum, integral of net_source, integral of SR, integral of u3 NR.
  TimeSeries balance;
};

/// Integrates from the resting state at the basal Ca level, restarting
/// the adaptive integrator at every Ca switch. Samples every
/// `sample_interval` seconds plus t_end.
[[nodiscard]] ExoRun simulate(const CalciumProtocol& protocol, const KineticParams& p, Variant variant, double t_end,
                              double sample_interval = 1.0, double rel_tol = 1e-8);

/// Largest |delta(pool sum) - delta(source integral)| / delta t between
/// consecutive samples.
[[nodiscard]] double mass_balance_residual(const ExoRun& run);
/// Same for NR against the release and decay integrals.
[[nodiscard]] double release_residual(const ExoRun& run);

struct PhaseMetrics {
  bool monophasic = false;  // no local maximum after onset
  double t_peak = 0.0;
  double SR_peak = 0.0;
  double t_nadir = 0.0;
  double SR_nadir = 0.0;
  double SR_plateau = 0.0;
  /// Least-squares slope over the final window relative to the plateau,
  /// per minute.
  double plateau_drift_per_min = 0.0;
};

/// Needs at least 30 minutes of data after the first sample. The plateau is
/// the mean over the last 10% of the horizon; the nadir is the minimum
/// strictly between the peak and that window.
[[nodiscard]] PhaseMetrics phase_metrics(const TimeSeries& secretion, double t_onset);
[[nodiscard]] inline PhaseMetrics phase_metrics(const TimeSeries& secretion) {
  return phase_metrics(secretion, secretion.empty() ? 0.0 : secretion.time(0));
}

/// Largest over smallest rate constant (Kp excluded).
[[nodiscard]] double stiffness_ratio(const KineticParams& p);

}  // namespace scalebench::exocytosis
