#pragma once

#include <array>
#include <span>
#include <vector>

#include "scalebench/core/time_series.hpp"
#include "scalebench/glassmd/configuration.hpp"

namespace scalebench::glassmd {

/// Distinct integer step counts, roughly log-spaced from 1 to max_lag.
[[nodiscard]] std::vector<long> log_spaced_lags(long max_lag, int per_decade);

/// Online mean squared displacement from unwrapped coordinates. Components
/// of the result: total, A, B (per-species means; NaN for an absent
/// species). Time of each sample is lag * dt.
class MsdSampler {
 public:
  /// origin_interval == 0: a single origin at the first observed step.
  /// Otherwise a new origin every origin_interval steps; each lag is then
  /// averaged over all origins that reached it.
  MsdSampler(std::vector<long> lags, long origin_interval = 0);

  /// Call once per step with a monotonically increasing step index,
  /// starting at the origin step.
  void observe(long step, const Configuration& c);
  [[nodiscard]] TimeSeries result(double dt) const;

 private:
  struct Origin {
    long step;
    std::vector<Vec2> position;
    std::size_t next = 0;
  };
  std::vector<long> lags_;
  long origin_interval_;
  long first_step_ = -1;
  std::vector<Origin> origins_;
  std::vector<std::array<double, 3>> sums_;
  std::vector<long> counts_;
  std::vector<Species> species_;
};

/// MSD of each sample relative to the first one.
[[nodiscard]] TimeSeries msd(std::span<const Configuration> samples);

/// Log-log slope between consecutive points of an MSD column.
[[nodiscard]] std::vector<double> local_slopes(const TimeSeries& curve, std::size_t component = 0);

struct DiffusionFit {
  bool converged = false;
  double D = 0.0;
  double loglog_slope = 0.0;  // over the fit window
  std::size_t points = 0;
};

/// Least-squares slope of R^2 against t over the final decade of lag
/// times, divided by 2d. Not converged when the window has fewer than three
/// points or its log-log slope is outside 1 +- 0.2.
[[nodiscard]] DiffusionFit diffusion_coefficient(const TimeSeries& curve, int d = 2, std::size_t component = 0);

struct DisplacementField {
  std::vector<Vec2> displacement;
  std::vector<double> magnitude;
  double mobile_fraction = 0.0;  // |dr| > threshold
};

[[nodiscard]] DisplacementField displacement_field(const Configuration& from, const Configuration& to,
                                                   double threshold = 0.5);

struct StatePoint {
  double density = 1.0;
  double temperature = 1.0;
  int dimension = 2;

  void validate() const;
};

/// 0.1 rho^(-1/d) sqrt(m / (d T)).
[[nodiscard]] double collision_time(const StatePoint& s, double mass = 1.0);

struct ReducedScaling {
  double gamma = 0.0;         // rho^(n/d) / T
  double time_scale = 0.0;    // rho^(-1/d) sqrt(m / T)
  double length_scale = 0.0;  // rho^(-1/d)
};

[[nodiscard]] ReducedScaling reduced_scaling(const StatePoint& s, int exponent = 18, double mass = 1.0);

}  // namespace scalebench::glassmd
