#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "scalebench/glassmd/configuration.hpp"

namespace scalebench::glassmd {

/// Half Verlet list (each pair stored once, j > i) built through a cell
/// list. Pairs are kept when closer than their interaction range plus
/// `skin`. Boxes with fewer than three cells per axis are scanned
/// all-pairs instead.
class NeighborList {
 public:
  NeighborList(const PotentialSpec& spec, double skin);

  void build(const Configuration& c);
  /// True when any particle moved more than skin/2 since the last build.
  [[nodiscard]] bool needs_rebuild(const Configuration& c) const;

  [[nodiscard]] std::span<const int> partners(std::size_t i) const {
    return {partners_.data() + offsets_[i], partners_.data() + offsets_[i + 1]};
  }
  [[nodiscard]] std::size_t pair_count() const noexcept { return partners_.size(); }
  [[nodiscard]] bool used_cells() const noexcept { return used_cells_; }
  [[nodiscard]] long builds() const noexcept { return builds_; }
  [[nodiscard]] double skin() const noexcept { return skin_; }

 private:
  PotentialSpec spec_;
  double skin_;
  std::vector<std::size_t> offsets_;
  std::vector<int> partners_;
  std::vector<Vec2> reference_;
  bool used_cells_ = false;
  long builds_ = 0;
};

/// Forces and potential energy via the neighbor list.
double compute_forces(const Configuration& c, const PairTable& table, const NeighborList& list,
                      std::vector<Vec2>& forces);
/// Brute-force reference over all N(N-1)/2 pairs.
double compute_forces_all_pairs(const Configuration& c, const PairTable& table, std::vector<Vec2>& forces);

}  // namespace scalebench::glassmd
