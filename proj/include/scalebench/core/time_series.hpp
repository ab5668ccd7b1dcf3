#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace scalebench {

/// Sampled trajectory: strictly increasing times, one fixed-width value
/// vector per sample. Values are stored row-major in a single buffer.
class TimeSeries {
 public:
  TimeSeries() = default;
  explicit TimeSeries(std::size_t dimension) : dimension_(dimension) {}

  /// Throws validation error if `t` does not exceed the last time or the
  /// value width differs from dimension().
  void append(double t, std::span<const double> value);

  [[nodiscard]] std::size_t size() const noexcept { return times_.size(); }
  [[nodiscard]] bool empty() const noexcept { return times_.empty(); }
  [[nodiscard]] std::size_t dimension() const noexcept { return dimension_; }

  [[nodiscard]] const std::vector<double>& times() const noexcept { return times_; }
  [[nodiscard]] double time(std::size_t i) const { return times_.at(i); }
  [[nodiscard]] std::span<const double> value(std::size_t i) const;
  [[nodiscard]] double at(std::size_t i, std::size_t component) const;
  [[nodiscard]] std::span<const double> back() const { return value(size() - 1); }

  /// Copy of one component over all samples.
  [[nodiscard]] std::vector<double> column(std::size_t component) const;

  void reserve(std::size_t samples);

 private:
  std::size_t dimension_ = 0;
  std::vector<double> times_;
  std::vector<double> values_;
};

}  // namespace scalebench
