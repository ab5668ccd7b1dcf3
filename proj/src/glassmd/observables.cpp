#include "scalebench/glassmd/observables.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "scalebench/core/error.hpp"

namespace scalebench::glassmd {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Mean squared displacement per species class: total, A, B.
std::array<double, 3> species_means(std::span<const Vec2> from, std::span<const Vec2> to,
                                    std::span<const Species> species) {
  std::array<double, 3> sum{};
  std::array<std::size_t, 3> n{};
  for (std::size_t i = 0; i < from.size(); ++i) {
    const Vec2 d = to[i] - from[i];
    const double r2 = dot(d, d);
    const std::size_t k = species[i] == Species::A ? 1 : 2;
    sum[0] += r2;
    sum[k] += r2;
    ++n[0];
    ++n[k];
  }
  for (std::size_t k = 0; k < 3; ++k) sum[k] = n[k] ? sum[k] / static_cast<double>(n[k]) : kNaN;
  return sum;
}

}  // namespace

std::vector<long> log_spaced_lags(long max_lag, int per_decade) {
  if (max_lag < 1 || per_decade < 1) throw_validation("invalid_lags", "need max_lag >= 1 and per_decade >= 1");
  std::vector<long> lags;
  for (int k = 0;; ++k) {
    const long lag = std::lround(std::pow(10.0, static_cast<double>(k) / per_decade));
    if (lag > max_lag) break;
    if (lags.empty() || lag > lags.back()) lags.push_back(lag);
  }
  if (lags.back() != max_lag) lags.push_back(max_lag);
  return lags;
}

MsdSampler::MsdSampler(std::vector<long> lags, long origin_interval)
    : lags_(std::move(lags)), origin_interval_(origin_interval) {
  if (lags_.empty()) throw_validation("invalid_lags", "MsdSampler needs at least one lag");
  for (std::size_t i = 0; i < lags_.size(); ++i) {
    if (lags_[i] < 1 || (i > 0 && lags_[i] <= lags_[i - 1])) {
      throw_validation("invalid_lags", "lags must be positive and strictly increasing");
    }
  }
  if (origin_interval_ < 0) throw_validation("invalid_lags", "origin_interval must be >= 0");
  sums_.assign(lags_.size(), {0.0, 0.0, 0.0});
  counts_.assign(lags_.size(), 0);
}

void MsdSampler::observe(long step, const Configuration& c) {
  if (first_step_ < 0) {
    first_step_ = step;
    species_ = c.species;
  }
  if (origins_.empty() && step == first_step_) {
    origins_.push_back({step, c.unwrapped, 0});
    return;
  }
  for (Origin& o : origins_) {
    while (o.next < lags_.size() && o.step + lags_[o.next] < step) ++o.next;
    if (o.next < lags_.size() && o.step + lags_[o.next] == step) {
      const auto m = species_means(o.position, c.unwrapped, species_);
      for (std::size_t k = 0; k < 3; ++k) sums_[o.next][k] += m[k];
      ++counts_[o.next];
      ++o.next;
    }
  }
  std::erase_if(origins_, [&](const Origin& o) { return o.next >= lags_.size(); });
  if (origin_interval_ > 0 && (step - first_step_) % origin_interval_ == 0) {
    origins_.push_back({step, c.unwrapped, 0});
  }
}

TimeSeries MsdSampler::result(double dt) const {
  TimeSeries out(3);
  for (std::size_t i = 0; i < lags_.size(); ++i) {
    if (counts_[i] == 0) continue;
    const double n = static_cast<double>(counts_[i]);
    out.append(static_cast<double>(lags_[i]) * dt, std::array{sums_[i][0] / n, sums_[i][1] / n, sums_[i][2] / n});
  }
  return out;
}

TimeSeries msd(std::span<const Configuration> samples) {
  TimeSeries out(3);
  if (samples.empty()) return out;
  const Configuration& first = samples.front();
  for (std::size_t s = 1; s < samples.size(); ++s) {
    if (samples[s].size() != first.size()) throw_validation("invalid_samples", "particle count changed");
    out.append(samples[s].t - first.t, species_means(first.unwrapped, samples[s].unwrapped, first.species));
  }
  return out;
}

std::vector<double> local_slopes(const TimeSeries& curve, std::size_t component) {
  std::vector<double> s;
  for (std::size_t i = 0; i + 1 < curve.size(); ++i) {
    s.push_back(std::log(curve.at(i + 1, component) / curve.at(i, component)) /
                std::log(curve.time(i + 1) / curve.time(i)));
  }
  return s;
}

DiffusionFit diffusion_coefficient(const TimeSeries& curve, int d, std::size_t component) {
  if (d < 1) throw_validation("invalid_dimension", "dimension must be >= 1");
  DiffusionFit fit;
  if (curve.empty()) return fit;
  const double t_from = curve.times().back() / 10.0;
  double n = 0, st = 0, sy = 0, stt = 0, sty = 0;
  double lx = 0, ly = 0, lxx = 0, lxy = 0;
  for (std::size_t i = 0; i < curve.size(); ++i) {
    const double t = curve.time(i);
    const double y = curve.at(i, component);
    if (t < t_from || !(t > 0.0) || !(y > 0.0)) continue;
    n += 1;
    st += t;
    sy += y;
    stt += t * t;
    sty += t * y;
    const double a = std::log(t), b = std::log(y);
    lx += a;
    ly += b;
    lxx += a * a;
    lxy += a * b;
  }
  fit.points = static_cast<std::size_t>(n);
  if (fit.points < 3) return fit;
  fit.D = (n * sty - st * sy) / (n * stt - st * st) / (2.0 * d);
  fit.loglog_slope = (n * lxy - lx * ly) / (n * lxx - lx * lx);
  fit.converged = std::abs(fit.loglog_slope - 1.0) <= 0.2;
  return fit;
}

DisplacementField displacement_field(const Configuration& from, const Configuration& to, double threshold) {
  if (from.size() != to.size()) throw_validation("invalid_samples", "configurations differ in particle count");
  DisplacementField f;
  f.displacement.reserve(from.size());
  f.magnitude.reserve(from.size());
  std::size_t mobile = 0;
  for (std::size_t i = 0; i < from.size(); ++i) {
    const Vec2 d = to.unwrapped[i] - from.unwrapped[i];
    const double m = std::sqrt(dot(d, d));
    f.displacement.push_back(d);
    f.magnitude.push_back(m);
    mobile += (m > threshold);
  }
  f.mobile_fraction = from.size() ? static_cast<double>(mobile) / static_cast<double>(from.size()) : 0.0;
  return f;
}

void StatePoint::validate() const {
  if (!(density > 0.0) || !(temperature > 0.0)) throw_validation("invalid_state", "density and T must be positive");
  if (dimension < 1) throw_validation("invalid_state", "dimension must be >= 1");
}

double collision_time(const StatePoint& s, double mass) {
  s.validate();
  return 0.1 * std::pow(1.0 / s.density, 1.0 / s.dimension) * std::sqrt(mass / (s.dimension * s.temperature));
}

ReducedScaling reduced_scaling(const StatePoint& s, int exponent, double mass) {
  s.validate();
  ReducedScaling r;
  r.gamma = std::pow(s.density, static_cast<double>(exponent) / s.dimension) / s.temperature;
  r.length_scale = std::pow(s.density, -1.0 / s.dimension);
  r.time_scale = r.length_scale * std::sqrt(mass / s.temperature);
  return r;
}

}  // namespace scalebench::glassmd
