#include "scalebench/glassmd/potential.hpp"

#include <algorithm>
#include <cmath>

#include "scalebench/core/error.hpp"

namespace scalebench::glassmd {

void PotentialSpec::validate() const {
  if (exponent <= 0) throw_validation("invalid_potential", "exponent must be positive");
  if (!(r_cut > 1.0)) throw_validation("invalid_potential", "r_cut must exceed 1");
  if (!(epsilon > 0.0) || !(sigma > 0.0)) throw_validation("invalid_potential", "epsilon and sigma must be positive");
  if (!(sigma_AA > 0.0) || !(sigma_AB > 0.0) || !(sigma_BB > 0.0)) {
    throw_validation("invalid_potential", "pair diameters must be positive");
  }
}

double PotentialSpec::sigma_ij(Species a, Species b) const noexcept {
  if (a != b) return sigma_AB;
  return a == Species::A ? sigma_AA : sigma_BB;
}

double PotentialSpec::range(Species a, Species b) const noexcept { return r_cut * sigma * sigma_ij(a, b); }

double PotentialSpec::max_range() const noexcept { return r_cut * sigma * std::max({sigma_AA, sigma_AB, sigma_BB}); }

double PotentialSpec::min_sigma_ij() const noexcept { return std::min({sigma_AA, sigma_AB, sigma_BB}); }

double pair_energy(double r, const PotentialSpec& spec) {
  if (!(r > 0.0)) throw_validation("overlap", "pair distance must be positive");
  if (r >= spec.r_cut) return 0.0;
  return spec.epsilon * (std::pow(r, -spec.exponent) - std::pow(spec.r_cut, -spec.exponent));
}

double pair_force_magnitude(double r, double sigma_ij, const PotentialSpec& spec) {
  if (!(r > 0.0)) throw_validation("overlap", "pair distance must be positive");
  if (r >= spec.r_cut) return 0.0;
  return spec.exponent * spec.epsilon * std::pow(r, -spec.exponent - 1) / (spec.sigma * sigma_ij);
}

PairTable::PairTable(const PotentialSpec& spec) : exponent(spec.exponent), epsilon(spec.epsilon) {
  spec.validate();
  for (Species a : {Species::A, Species::B}) {
    for (Species b : {Species::A, Species::B}) {
      const double s = spec.sigma * spec.sigma_ij(a, b);
      Entry& e = entries[2 * static_cast<int>(a) + static_cast<int>(b)];
      e.range2 = spec.r_cut * spec.r_cut * s * s;
      e.scale2 = s * s;
      e.shift = spec.epsilon * std::pow(spec.r_cut, -spec.exponent);
      e.fpref = spec.exponent * spec.epsilon / (s * s);
    }
  }
}

}  // namespace scalebench::glassmd
