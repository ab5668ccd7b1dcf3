#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "scalebench/core/rng.hpp"
#include "scalebench/glassmd/configuration.hpp"
#include "scalebench/glassmd/neighbors.hpp"

namespace scalebench::glassmd {

enum class Ensemble { nve, langevin };

struct RunSpec {
  Ensemble ensemble = Ensemble::nve;
  double T_target = 1.0;
  double gamma = 1.0;
  double dt = 0.002;
  long steps = 0;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Observables at the start of a step, time t_n. Kinetic quantities use the
/// on-step velocity (v(t_n - dt/2) + v(t_n + dt/2)) / 2.
struct Thermo {
  double t = 0.0;
  double potential = 0.0;
  double kinetic = 0.0;
  double temperature = 0.0;
  Vec2 momentum;  // of the half-step velocities after the step

  [[nodiscard]] double total() const noexcept { return potential + kinetic; }
};

/// sum m |v|^2 / (d N - d), d = 2.
[[nodiscard]] double kinetic_temperature(std::span<const Vec2> velocity, double mass);

/// Owns a configuration together with its neighbor list and the forces at
/// the current positions.
class Simulation {
 public:
  explicit Simulation(Configuration config, const PotentialSpec& spec = {}, double skin = 0.3);

  [[nodiscard]] const Configuration& configuration() const noexcept { return config_; }
  [[nodiscard]] std::span<const Vec2> forces() const noexcept { return forces_; }
  [[nodiscard]] double potential_energy() const noexcept { return potential_; }
  [[nodiscard]] const NeighborList& neighbors() const noexcept { return list_; }
  [[nodiscard]] const PotentialSpec& potential() const noexcept { return spec_; }
  /// On-step velocities at the start of the most recent step.
  [[nodiscard]] std::span<const Vec2> onstep_velocities() const noexcept { return onstep_; }

  /// v += F dt / m; r += v dt.
  Thermo leapfrog_step(double dt);
  /// Leapfrog with the extra force -gamma v(t - dt/2) + sqrt(2 gamma T / dt) xi
  /// per component.
  Thermo langevin_step(double dt, double T_target, double gamma, RngStream& rng);
  Thermo step(const RunSpec& spec, RngStream& rng);

  /// Reverses the direction of time: afterwards leapfrog_step(dt) retraces
  /// the previous positions.
  void reverse_time(double dt);

  /// Subtracts the centre-of-mass velocity.
  void zero_momentum();

  /// Replaces the velocities (half-step convention) without touching positions.
  void set_velocities(std::span<const Vec2> velocity);

 private:
  Thermo advance(double dt, std::span<const Vec2> extra);
  void refresh_forces();

  PotentialSpec spec_;
  PairTable table_;
  Configuration config_;
  NeighborList list_;
  std::vector<Vec2> forces_;
  std::vector<Vec2> kick_;
  std::vector<Vec2> onstep_;
  double potential_ = 0.0;
  double max_step_;
};

}  // namespace scalebench::glassmd
