#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "scalebench/glassmd/potential.hpp"

namespace scalebench::glassmd {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }

/// Periodic square box of side L. `velocity` holds the half-step
/// velocities v(t - dt/2) of the leapfrog scheme.
struct Configuration {
  std::vector<Vec2> position;   // wrapped into [0, L)
  std::vector<Vec2> unwrapped;  // never wrapped; used for displacements
  std::vector<Vec2> velocity;
  std::vector<Species> species;
  double L = 0.0;
  double mass = 1.0;
  double t = 0.0;

  [[nodiscard]] std::size_t size() const noexcept { return position.size(); }
  [[nodiscard]] std::size_t count(Species s) const noexcept;
  [[nodiscard]] double density() const noexcept { return static_cast<double>(size()) / (L * L); }
  void validate() const;
};

[[nodiscard]] double wrap(double x, double L) noexcept;
[[nodiscard]] Vec2 minimum_image(Vec2 d, double L) noexcept;

/// Square-lattice start with round(fraction_A * N) A particles placed at
/// random sites and Maxwell-Boltzmann velocities rescaled to T_init exactly
/// (zero total momentum). N must be a perfect square.
[[nodiscard]] Configuration init_configuration(int N, double fraction_A, double density, double T_init,
                                               std::uint64_t seed, const PotentialSpec& spec = {},
                                               double mass = 1.0);

struct ScaledConfiguration {
  Configuration config;
  double time_factor = 1.0;  // multiply time steps and times by this
};

/// Image of `c` at another density under the inverse-power-law symmetry:
/// lengths scale by lambda = (rho_old / rho_new)^(1/d), velocities by
/// lambda^(-n/2), times by lambda^(1 + n/2) and temperatures by lambda^(-n).
/// Exact for a pure r^-n potential; the cutoff breaks it slightly.
[[nodiscard]] ScaledConfiguration scale_to_density(const Configuration& c, double density, int exponent = 18);

/// Plain-text snapshot: `N`, `L` and `t` header lines, then
/// `species x y ux uy vx vy` per particle at 17 significant digits.
void write_snapshot(std::ostream& out, const Configuration& c);
[[nodiscard]] Configuration read_snapshot(std::istream& in, double mass = 1.0);

}  // namespace scalebench::glassmd
