#pragma once

#include <array>

namespace scalebench::glassmd {

enum class Species : unsigned char { A = 0, B = 1 };

/// Binary inverse-power-law pair potential
///   u(r) = eps * (r^-18 - r_cut^-18)  for r < r_cut, 0 otherwise,
/// with r the pair distance in units of sigma * sigma_ij.
struct PotentialSpec {
  int exponent = 18;
  double r_cut = 1.5;
  double epsilon = 1.0;
  double sigma = 1.0;
  double sigma_AA = 1.1;
  double sigma_AB = 0.9;
  double sigma_BB = 0.9;

  void validate() const;
  [[nodiscard]] double sigma_ij(Species a, Species b) const noexcept;
  /// Absolute interaction range for a pair type, r_cut * sigma * sigma_ij.
  [[nodiscard]] double range(Species a, Species b) const noexcept;
  [[nodiscard]] double max_range() const noexcept;
  [[nodiscard]] double min_sigma_ij() const noexcept;
};

/// Energy at reduced distance r. Throws `overlap` for r <= 0.
[[nodiscard]] double pair_energy(double r_reduced, const PotentialSpec& spec);
/// Repulsive force magnitude n eps r^-(n+1) / (sigma sigma_ij); truncated
/// (not smoothed) at the cutoff.
[[nodiscard]] double pair_force_magnitude(double r_reduced, double sigma_ij, const PotentialSpec& spec);

/// Per-pair-type constants in absolute units, indexed by 2*a + b.
struct PairTable {
  struct Entry {
    double range2 = 0.0;  // (r_cut sigma sigma_ij)^2
    double scale2 = 0.0;  // (sigma sigma_ij)^2
    double shift = 0.0;   // eps r_cut^-n
    double fpref = 0.0;   // n eps / (sigma sigma_ij)^2
  };
  std::array<Entry, 4> entries{};
  int exponent = 18;
  double epsilon = 1.0;

  explicit PairTable(const PotentialSpec& spec);
  [[nodiscard]] const Entry& operator()(Species a, Species b) const noexcept {
    return entries[2 * static_cast<int>(a) + static_cast<int>(b)];
  }
};

}  // namespace scalebench::glassmd
