#include "scalebench/core/time_series.hpp"

#include <string>

#include "scalebench/core/error.hpp"

namespace scalebench {

void TimeSeries::append(double t, std::span<const double> value) {
  if (value.size() != dimension_) {
    throw_validation("dimension_mismatch", "TimeSeries::append: expected " + std::to_string(dimension_) +
                                               " components, got " + std::to_string(value.size()));
  }
  if (!times_.empty() && !(t > times_.back())) {
    throw_validation("non_increasing_time",
                     "TimeSeries::append: time " + std::to_string(t) + " does not exceed " +
                         std::to_string(times_.back()));
  }
  times_.push_back(t);
  values_.insert(values_.end(), value.begin(), value.end());
}

std::span<const double> TimeSeries::value(std::size_t i) const {
  if (i >= times_.size()) {
    throw_validation("index_out_of_range", "TimeSeries::value: sample index out of range");
  }
  return {values_.data() + i * dimension_, dimension_};
}

double TimeSeries::at(std::size_t i, std::size_t component) const {
  if (component >= dimension_) {
    throw_validation("index_out_of_range", "TimeSeries::at: component index out of range");
  }
  return value(i)[component];
}

std::vector<double> TimeSeries::column(std::size_t component) const {
  if (component >= dimension_) {
    throw_validation("index_out_of_range", "TimeSeries::column: component index out of range");
  }
  std::vector<double> out;
  out.reserve(times_.size());
  for (std::size_t i = 0; i < times_.size(); ++i) out.push_back(values_[i * dimension_ + component]);
  return out;
}

void TimeSeries::reserve(std::size_t samples) {
  times_.reserve(samples);
  values_.reserve(samples * dimension_);
}

}  // namespace scalebench
