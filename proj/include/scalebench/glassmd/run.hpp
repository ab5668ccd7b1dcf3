#pragma once

#include <cstdint>
#include <functional>

#include "scalebench/core/time_series.hpp"
#include "scalebench/glassmd/configuration.hpp"
#include "scalebench/glassmd/simulation.hpp"

namespace scalebench::glassmd {

/// A complete run: lattice start, Langevin equilibration at `temperature`
/// for `equilibration_time`, momentum removal, then `steps` production
/// steps in the chosen ensemble.
struct MdConfig {
  int N = 1600;
  double fraction_A = 0.7;
  double density = 1.0;
  double temperature = 0.5;
  double dt = 0.002;
  double gamma = 1.0;
  double equilibration_time = 40.0;
  Ensemble ensemble = Ensemble::nve;
  long steps = 10000;
  long thermo_interval = 100;
  int msd_per_decade = 10;
  long msd_origin_interval = 0;  // 0: single origin
  double skin = 0.3;
  std::uint64_t seed = 1;

  void validate() const;
};

using Progress = std::function<void(long step, long total)>;

/// Lattice start followed by Langevin equilibration; total momentum is zero
/// on return and t is reset to 0.
[[nodiscard]] Configuration equilibrate(const MdConfig& cfg, const Progress& progress = {});

struct MdResult {
  TimeSeries thermo;  // potential, kinetic, total, temperature, px, py
  TimeSeries msd;     // total, A, B
  Configuration start;
  Configuration end;
};

[[nodiscard]] MdResult run_md(const MdConfig& cfg, const Progress& progress = {});
/// Production part only, from a given configuration.
[[nodiscard]] MdResult run_from(const Configuration& start, const MdConfig& cfg, const Progress& progress = {});

/// Reduced-unit MSD at the equilibrated base state and at its image at
/// `density2` (temperature scaled to keep rho^(n/d)/T fixed), both NVE with a
/// single origin, compared over reduced times up to `reduced_time_max`.
struct ScalingCheck {
  TimeSeries reference;  // reduced time -> reduced MSD
  TimeSeries scaled;
  double gamma_reference = 0.0;
  double gamma_scaled = 0.0;
  double max_relative_error = 0.0;
};

[[nodiscard]] ScalingCheck scaling_check(const MdConfig& base, double density2, double reduced_time_max,
                                         const Progress& progress = {});

}  // namespace scalebench::glassmd
