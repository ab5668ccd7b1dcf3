#include "scalebench/cycles.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "scalebench/core/error.hpp"

namespace scalebench::cycles {

namespace {

constexpr double kOverflowGuard = 1e15;

double path_at(std::span<const double> path, long t) {
  return path.size() == 1 ? path[0] : path[static_cast<std::size_t>(t)];
}

// Centred mean with the half-width reduced near the ends.
std::vector<double> centred_mean(std::span<const double> x, int window) {
  const long n = static_cast<long>(x.size());
  const long h = window / 2;
  std::vector<double> out(x.size());
  for (long i = 0; i < n; ++i) {
    const long w = std::min({h, i, n - 1 - i});
    double s = 0.0;
    for (long k = i - w; k <= i + w; ++k) s += x[static_cast<std::size_t>(k)];
    out[static_cast<std::size_t>(i)] = s / static_cast<double>(2 * w + 1);
  }
  return out;
}

}  // namespace

void CycleParams::validate() const {
  if (!(c > 0.0 && c < 1.0)) throw_validation("invalid_params", "c must lie in (0, 1)");
  if (!(nu >= 0.0) || !std::isfinite(nu)) throw_validation("invalid_params", "nu must be >= 0");
  if (!(A > 0.0) || !std::isfinite(A)) throw_validation("invalid_params", "A must be > 0");
  if (!(g >= 0.0) || !std::isfinite(g)) throw_validation("invalid_params", "g must be >= 0");
  if ((Y0 && !std::isfinite(*Y0)) || (Y1 && !std::isfinite(*Y1))) {
    throw_validation("invalid_params", "initial incomes must be finite");
  }
}

double CycleParams::initial0() const { return Y0 ? *Y0 : steady_state(c, A) + 1.0; }
double CycleParams::initial1() const { return Y1 ? *Y1 : steady_state(c, A) + 1.0; }

double steady_state(double c, double A) {
  if (!(c < 1.0)) throw_validation("invalid_params", "steady state needs c < 1");
  return A / (1.0 - c);
}

std::string_view to_string(Regime r) noexcept {
  switch (r) {
    case Regime::damped_oscillatory: return "damped_oscillatory";
    case Regime::explosive_oscillatory: return "explosive_oscillatory";
    case Regime::monotone: return "monotone";
    case Regime::boundary: return "boundary";
  }
  return "monotone";
}

RootAnalysis characteristic_roots(double c, double nu) {
  if (!(nu > 0.0) || !std::isfinite(nu) || !std::isfinite(c)) {
    throw_validation("invalid_params", "characteristic_roots needs nu > 0");
  }
  RootAnalysis r;
  const double b = c + nu;
  r.discriminant = b * b - 4.0 * nu;
  if (r.discriminant < 0.0) {
    const double im = 0.5 * std::sqrt(-r.discriminant);
    r.lambda1 = {0.5 * b, im};
    r.lambda2 = {0.5 * b, -im};
    r.modulus = std::abs(r.lambda1);
    r.theta = std::atan2(im, 0.5 * b);
    r.period = 2.0 * std::numbers::pi / r.theta;
    r.stable = nu < 1.0;
    r.regime = nu == 1.0 ? Regime::boundary : (nu < 1.0 ? Regime::damped_oscillatory : Regime::explosive_oscillatory);
    return r;
  }
  // Larger root first; the smaller one from the product avoids cancellation.
  const double big = 0.5 * (b + std::copysign(std::sqrt(r.discriminant), b));
  const double small = big == 0.0 ? 0.0 : nu / big;
  r.lambda1 = std::abs(big) >= std::abs(small) ? big : small;
  r.lambda2 = std::abs(big) >= std::abs(small) ? small : big;
  r.modulus = std::abs(r.lambda1);
  r.theta = r.lambda1.real() < 0.0 ? std::numbers::pi : 0.0;
  r.period = std::numeric_limits<double>::infinity();
  r.stable = r.modulus < 1.0;
  r.regime = Regime::monotone;
  return r;
}

IterateResult iterate(const CycleParams& p, long steps) {
  p.validate();
  if (steps < 2) throw_validation("invalid_steps", "iterate needs steps >= 2");
  IterateResult out{TimeSeries(1), false};
  out.Y.reserve(static_cast<std::size_t>(steps) + 1);
  double prev2 = p.initial0();
  double prev1 = p.initial1();
  out.Y.append(0.0, std::array{prev2});
  out.Y.append(1.0, std::array{prev1});
  for (long t = 2; t <= steps; ++t) {
    const double y = (p.c + p.nu) * prev1 - p.nu * prev2 + std::pow(1.0 + p.g, static_cast<double>(t)) * p.A;
    if (!(std::abs(y) <= kOverflowGuard)) {
      out.explosive = true;
      break;
    }
    out.Y.append(static_cast<double>(t), std::array{y});
    prev2 = prev1;
    prev1 = y;
  }
  return out;
}

double particular(const CycleParams& p, double t) {
  const double q = 1.0 + p.g;
  const double denom = q * (p.s() + p.g) - p.nu * p.g;
  if (std::abs(denom) < 1e-14) {
    throw_validation("resonant_growth", "growth rate resonates with the recurrence: (1+g)(s+g) - nu g = 0");
  }
  return std::pow(q, t) * q * q * p.A / denom;
}

Phase fit_initial(double Y0, double Y1, const CycleParams& p) {
  p.validate();
  const RootAnalysis r = characteristic_roots(p.c, p.nu);
  if (!(r.discriminant < 0.0)) throw_validation("not_oscillatory", "fit_initial needs complex roots");
  const double z0 = Y0 - particular(p, 0.0);
  const double z1 = Y1 - particular(p, 1.0);
  const double x = z0;                                                          // delta cos eps
  const double y = (z1 / r.modulus - z0 * std::cos(r.theta)) / std::sin(r.theta);  // delta sin eps
  Phase ph;
  ph.delta = std::hypot(x, y);
  if (ph.delta == 0.0) return ph;
  ph.epsilon = std::atan2(y, x);
  if (ph.epsilon <= -std::numbers::pi) ph.epsilon = std::numbers::pi;
  return ph;
}

double closed_form(const CycleParams& p, double t) {
  p.validate();
  const RootAnalysis r = characteristic_roots(p.c, p.nu);
  const double base = particular(p, t);
  if (r.discriminant < 0.0) {
    const Phase ph = fit_initial(p.initial0(), p.initial1(), p);
    return base + std::pow(r.modulus, t) * ph.delta * std::cos(r.theta * t - ph.epsilon);
  }
  const double z0 = p.initial0() - particular(p, 0.0);
  const double z1 = p.initial1() - particular(p, 1.0);
  const double l1 = r.lambda1.real();
  const double l2 = r.lambda2.real();
  if (r.discriminant == 0.0 || l1 == l2) {
    // Z_t = (a + b t) l^t with a = z0, (a + b) l = z1.
    const double b = z1 / l1 - z0;
    return base + (z0 + b * t) * std::pow(l1, t);
  }
  const double a = (z1 - l2 * z0) / (l1 - l2);
  const double b = z0 - a;
  return base + a * std::pow(l1, t) + b * std::pow(l2, t);
}

TimeSeries restricted_iterate(const CycleParams& p, std::span<const double> floor_path,
                              std::span<const double> ceiling_path, long steps) {
  p.validate();
  if (steps < 2) throw_validation("invalid_steps", "restricted_iterate needs steps >= 2");
  for (auto path : {floor_path, ceiling_path}) {
    if (path.size() != 1 && path.size() != static_cast<std::size_t>(steps) + 1) {
      throw_validation("invalid_bounds", "bound paths need 1 or steps + 1 entries");
    }
  }
  auto clamp_at = [&](long t, double y) {
    const double trend = particular(p, static_cast<double>(t));
    const double lo = path_at(floor_path, t) * trend;
    const double hi = path_at(ceiling_path, t) * trend;
    if (!(lo <= hi)) throw_validation("invalid_bounds", "floor exceeds ceiling at t=" + std::to_string(t));
    return std::min(std::max(y, lo), hi);
  };
  TimeSeries out(1);
  out.reserve(static_cast<std::size_t>(steps) + 1);
  double prev2 = clamp_at(0, p.initial0());
  double prev1 = clamp_at(1, p.initial1());
  out.append(0.0, std::array{prev2});
  out.append(1.0, std::array{prev1});
  for (long t = 2; t <= steps; ++t) {
    const double raw = (p.c + p.nu) * prev1 - p.nu * prev2 + std::pow(1.0 + p.g, static_cast<double>(t)) * p.A;
    const double y = clamp_at(t, raw);
    out.append(static_cast<double>(t), std::array{y});
    prev2 = prev1;
    prev1 = y;
  }
  return out;
}

Decomposition decompose(std::span<const double> series, int long_window, int short_window) {
  if (short_window < 1 || long_window <= short_window) {
    throw_validation("invalid_window", "need long_window > short_window >= 1");
  }
  if (long_window % 2 == 0 || short_window % 2 == 0) throw_validation("invalid_window", "windows must be odd");
  if (series.size() <= 2 * static_cast<std::size_t>(long_window)) {
    throw_validation("series_too_short", "decompose needs more than 2 * long_window samples");
  }
  Decomposition d;
  d.trend = centred_mean(series, long_window);
  std::vector<double> detrended(series.size());
  for (std::size_t i = 0; i < series.size(); ++i) detrended[i] = series[i] - d.trend[i];
  d.cycle = centred_mean(detrended, short_window);
  d.residual.resize(series.size());
  for (std::size_t i = 0; i < series.size(); ++i) d.residual[i] = detrended[i] - d.cycle[i];
  return d;
}

GreatRatios great_ratios(std::span<const double> W, std::span<const double> L, std::span<const double> p,
                         std::span<const double> Y, std::span<const double> L_supply) {
  const std::size_t n = W.size();
  if (L.size() != n || p.size() != n || Y.size() != n || L_supply.size() != n) {
    throw_validation("length_mismatch", "great_ratios inputs must have equal lengths");
  }
  GreatRatios r;
  r.employment.resize(n);
  r.wage_share.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (double x : {W[i], L[i], p[i], Y[i], L_supply[i]}) {
      if (!(x > 0.0) || !std::isfinite(x)) {
        throw_validation("invalid_input", "great_ratios inputs must be positive (row " + std::to_string(i) + ")");
      }
    }
    r.employment[i] = L[i] / L_supply[i];
    r.wage_share[i] = W[i] * L[i] / (p[i] * Y[i]);
    if (!(r.employment[i] > 0.0 && r.employment[i] < 1.2)) r.employment_plausible = false;
    if (!(r.wage_share[i] > 0.0 && r.wage_share[i] < 1.0)) r.wage_share_plausible = false;
  }
  return r;
}

}  // namespace scalebench::cycles
