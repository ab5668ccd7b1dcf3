#include "scalebench/glassmd/neighbors.hpp"

#include <algorithm>
#include <cmath>

#include "scalebench/core/error.hpp"

namespace scalebench::glassmd {

namespace {

// Minimum image for differences of wrapped coordinates, |d| < L.
inline double fold(double d, double L, double half) {
  if (d > half) return d - L;
  if (d < -half) return d + L;
  return d;
}

inline double ipow(double x, int n) {
  double r = 1.0;
  while (n > 0) {
    if (n & 1) r *= x;
    x *= x;
    n >>= 1;
  }
  return r;
}

// Accumulates the (i, j) pair; returns the pair energy.
inline double pair_contribution(const Configuration& c, const PairTable& table, std::size_t i, std::size_t j,
                                std::vector<Vec2>& f) {
  const double half = 0.5 * c.L;
  const double dx = fold(c.position[i].x - c.position[j].x, c.L, half);
  const double dy = fold(c.position[i].y - c.position[j].y, c.L, half);
  const double r2 = dx * dx + dy * dy;
  const auto& e = table(c.species[i], c.species[j]);
  if (r2 >= e.range2) return 0.0;
  if (!(r2 > 0.0)) throw_numerical("overlap", "two particles coincide");
  const double inv2 = e.scale2 / r2;
  const double p = (table.exponent % 2 == 0) ? ipow(inv2, table.exponent / 2) : std::pow(inv2, 0.5 * table.exponent);
  const double fr = e.fpref * p * inv2;
  f[i].x += fr * dx;
  f[i].y += fr * dy;
  f[j].x -= fr * dx;
  f[j].y -= fr * dy;
  return table.epsilon * p - e.shift;
}

}  // namespace

NeighborList::NeighborList(const PotentialSpec& spec, double skin) : spec_(spec), skin_(skin) {
  spec.validate();
  if (!(skin >= 0.0)) throw_validation("invalid_skin", "neighbor skin must be >= 0");
}

void NeighborList::build(const Configuration& c) {
  const std::size_t n = c.size();
  const double half = 0.5 * c.L;
  if (!(c.L > 2.0 * spec_.max_range())) {
    throw_validation("box_too_small", "box side must exceed twice the interaction range");
  }
  std::array<double, 4> reach2{};
  for (Species a : {Species::A, Species::B}) {
    for (Species b : {Species::A, Species::B}) {
      const double r = spec_.range(a, b) + skin_;
      reach2[2 * static_cast<int>(a) + static_cast<int>(b)] = r * r;
    }
  }
  auto close = [&](std::size_t i, std::size_t j) {
    const double dx = fold(c.position[i].x - c.position[j].x, c.L, half);
    const double dy = fold(c.position[i].y - c.position[j].y, c.L, half);
    return dx * dx + dy * dy < reach2[2 * static_cast<int>(c.species[i]) + static_cast<int>(c.species[j])];
  };

  offsets_.assign(n + 1, 0);
  partners_.clear();
  const int ncell = static_cast<int>(std::floor(c.L / (spec_.max_range() + skin_)));
  used_cells_ = ncell >= 3;

  if (!used_cells_) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (close(i, j)) partners_.push_back(static_cast<int>(j));
      }
      offsets_[i + 1] = partners_.size();
    }
  } else {
    const double inv_edge = ncell / c.L;
    std::vector<int> cell_of(n);
    std::vector<std::size_t> start(static_cast<std::size_t>(ncell) * ncell + 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
      const int cx = std::min(static_cast<int>(c.position[i].x * inv_edge), ncell - 1);
      const int cy = std::min(static_cast<int>(c.position[i].y * inv_edge), ncell - 1);
      cell_of[i] = cy * ncell + cx;
      ++start[cell_of[i] + 1];
    }
    for (std::size_t k = 1; k < start.size(); ++k) start[k] += start[k - 1];
    std::vector<int> members(n);
    std::vector<std::size_t> fill(start.begin(), start.end() - 1);
    for (std::size_t i = 0; i < n; ++i) members[fill[cell_of[i]]++] = static_cast<int>(i);

    for (std::size_t i = 0; i < n; ++i) {
      const int cx = cell_of[i] % ncell;
      const int cy = cell_of[i] / ncell;
      const std::size_t row = partners_.size();
      for (int oy = -1; oy <= 1; ++oy) {
        for (int ox = -1; ox <= 1; ++ox) {
          const int nc = ((cy + oy + ncell) % ncell) * ncell + (cx + ox + ncell) % ncell;
          for (std::size_t k = start[nc]; k < start[nc + 1]; ++k) {
            const auto j = static_cast<std::size_t>(members[k]);
            if (j > i && close(i, j)) partners_.push_back(static_cast<int>(j));
          }
        }
      }
      std::sort(partners_.begin() + static_cast<std::ptrdiff_t>(row), partners_.end());
      offsets_[i + 1] = partners_.size();
    }
  }
  reference_ = c.unwrapped;
  ++builds_;
}

bool NeighborList::needs_rebuild(const Configuration& c) const {
  if (reference_.size() != c.size()) return true;
  const double limit2 = 0.25 * skin_ * skin_;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const Vec2 d = c.unwrapped[i] - reference_[i];
    if (dot(d, d) > limit2) return true;
  }
  return false;
}

double compute_forces(const Configuration& c, const PairTable& table, const NeighborList& list,
                      std::vector<Vec2>& forces) {
  forces.assign(c.size(), Vec2{});
  double u = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (int j : list.partners(i)) u += pair_contribution(c, table, i, static_cast<std::size_t>(j), forces);
  }
  return u;
}

double compute_forces_all_pairs(const Configuration& c, const PairTable& table, std::vector<Vec2>& forces) {
  forces.assign(c.size(), Vec2{});
  double u = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (std::size_t j = i + 1; j < c.size(); ++j) u += pair_contribution(c, table, i, j, forces);
  }
  return u;
}

}  // namespace scalebench::glassmd
