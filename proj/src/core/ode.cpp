#include "scalebench/core/ode.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "scalebench/core/error.hpp"

namespace scalebench {

namespace {

bool all_finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

void require_finite_derivative(std::span<const double> d, double t) {
  if (!all_finite(d)) {
    std::ostringstream msg;
    msg << "non-finite derivative at t=" << t;
    throw_numerical("numerical_blowup", msg.str());
  }
}

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                 a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;
// Continuous extension (Hairer & Wanner, DOPRI5 dense output).
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

constexpr double kSafety = 0.9;
constexpr double kFacMin = 0.2;
constexpr double kFacMax = 5.0;
// PI step control damps the accept/reject cycling at the stability boundary.
constexpr double kBeta = 0.04;

}  // namespace

std::vector<double> rk4_step(const Derivative& f, std::span<const double> state, double t, double dt) {
  if (!(dt > 0.0)) throw_validation("invalid_step", "rk4_step: dt must be positive");
  const std::size_t n = state.size();
  std::vector<double> k1(n), k2(n), k3(n), k4(n), tmp(n);

  f(t, state, k1);
  require_finite_derivative(k1, t);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = state[i] + 0.5 * dt * k1[i];
  f(t + 0.5 * dt, tmp, k2);
  require_finite_derivative(k2, t + 0.5 * dt);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = state[i] + 0.5 * dt * k2[i];
  f(t + 0.5 * dt, tmp, k3);
  require_finite_derivative(k3, t + 0.5 * dt);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = state[i] + dt * k3[i];
  f(t + dt, tmp, k4);
  require_finite_derivative(k4, t + dt);

  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = state[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  return out;
}

TimeSeries integrate_adaptive(const Derivative& f, std::span<const double> y0, double t0, double t1,
                              const AdaptiveOptions& options, AdaptiveStats* stats) {
  if (!(t1 > t0)) throw_validation("invalid_interval", "integrate_adaptive: t1 must exceed t0");
  if (!(options.rel_tol > 0.0) || !(options.abs_tol > 0.0)) {
    throw_validation("invalid_tolerance", "integrate_adaptive: tolerances must be positive");
  }
  const auto& outs = options.output_times;
  for (std::size_t i = 0; i < outs.size(); ++i) {
    if (outs[i] < t0 || outs[i] > t1 || (i > 0 && !(outs[i] > outs[i - 1]))) {
      throw_validation("invalid_output_times", "integrate_adaptive: output times must increase within [t0, t1]");
    }
  }

  const std::size_t n = y0.size();
  AdaptiveStats local;
  AdaptiveStats& st = stats ? *stats : local;
  st = {};

  std::vector<double> y(y0.begin(), y0.end());
  std::vector<double> ynew(n), tmp(n), err(n);
  std::vector<double> k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n);
  std::vector<double> r2(n), r3(n), r4(n), r5(n);

  TimeSeries series(n);
  series.reserve(outs.empty() ? 1024 : outs.size());

  auto eval = [&](double t, std::span<const double> state, std::span<double> out) {
    f(t, state, out);
    ++st.evaluations;
  };

  double t = t0;
  eval(t, y, k1);
  require_finite_derivative(k1, t);

  std::size_t next_out = 0;
  if (outs.empty()) {
    series.append(t0, y);
  } else if (outs.front() == t0) {
    series.append(t0, y);
    next_out = 1;
  }

  auto weighted_norm = [&](std::span<const double> v, std::span<const double> ya, std::span<const double> yb) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double sc = options.abs_tol + options.rel_tol * std::max(std::abs(ya[i]), std::abs(yb[i]));
      const double r = v[i] / sc;
      s += r * r;
    }
    return n == 0 ? 0.0 : std::sqrt(s / static_cast<double>(n));
  };

  double h = options.dt_initial;
  if (!(h > 0.0)) {
    const double dn0 = weighted_norm(y, y, y);
    const double dn1 = weighted_norm(k1, y, y);
    double h0 = (dn0 < 1e-5 || dn1 < 1e-5) ? 1e-6 : 0.01 * dn0 / dn1;
    h0 = std::min(h0, t1 - t0);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h0 * k1[i];
    eval(t + h0, tmp, k2);
    for (std::size_t i = 0; i < n; ++i) err[i] = k2[i] - k1[i];
    const double dn2 = weighted_norm(err, y, y) / h0;
    const double big = std::max(dn1, dn2);
    const double h1 = big <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / big, 0.2);
    h = std::min(100.0 * h0, h1);
  }
  h = std::clamp(h, options.dt_min, std::min(options.dt_max, t1 - t0));

  bool last_rejected = false;
  double en_prev = 1e-4;
  while (t < t1) {
    const double remaining = t1 - t;
    bool final_step = false;
    if (h >= remaining * (1.0 - 1e-12)) {
      h = remaining;
      final_step = true;
    }

    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * a21 * k1[i];
    eval(t + c2 * h, tmp, k2);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    eval(t + c3 * h, tmp, k3);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    eval(t + c4 * h, tmp, k4);
    for (std::size_t i = 0; i < n; ++i)
      tmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    eval(t + c5 * h, tmp, k5);
    for (std::size_t i = 0; i < n; ++i)
      tmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    const double t_new = final_step ? t1 : t + h;
    if (!(t_new > t)) {
      std::ostringstream msg;
      msg << "step size " << h << " below time resolution at t=" << t;
      throw_numerical("stiffness", msg.str());
    }
    eval(t_new, tmp, k6);
    for (std::size_t i = 0; i < n; ++i)
      ynew[i] = y[i] + h * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
    eval(t_new, ynew, k7);
    for (std::size_t i = 0; i < n; ++i)
      err[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);

    double en = weighted_norm(err, y, ynew);
    if (!std::isfinite(en) || !all_finite(k7)) en = std::numeric_limits<double>::infinity();

    if (en <= 1.0) {
      ++st.accepted;
      const bool need_dense = !outs.empty() && next_out < outs.size() && outs[next_out] <= t_new;
      if (need_dense) {
        for (std::size_t i = 0; i < n; ++i) {
          const double ydiff = ynew[i] - y[i];
          const double bspl = h * k1[i] - ydiff;
          r2[i] = ydiff;
          r3[i] = bspl;
          r4[i] = ydiff - h * k7[i] - bspl;
          r5[i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] + d7 * k7[i]);
        }
        while (next_out < outs.size() && outs[next_out] <= t_new) {
          const double to = outs[next_out];
          if (to == t_new) {
            series.append(to, ynew);
          } else {
            const double th = (to - t) / h;
            const double th1 = 1.0 - th;
            for (std::size_t i = 0; i < n; ++i)
              tmp[i] = y[i] + th * (r2[i] + th1 * (r3[i] + th * (r4[i] + th1 * r5[i])));
            series.append(to, tmp);
          }
          ++next_out;
        }
      }
      t = t_new;
      y.swap(ynew);
      k1.swap(k7);
      if (outs.empty()) series.append(t, y);

      if (options.stop_when && options.stop_when(t, y)) {
        if (series.empty() || series.times().back() < t) series.append(t, y);
        st.stopped_early = true;
        break;
      }

      double fac = en == 0.0 ? kFacMax : kSafety * std::pow(en, -(0.2 - 0.75 * kBeta)) * std::pow(en_prev, kBeta);
      en_prev = std::max(en, 1e-4);
      fac = std::clamp(fac, kFacMin, last_rejected ? 1.0 : kFacMax);
      h = std::min(h * fac, options.dt_max);
      last_rejected = false;
    } else {
      ++st.rejected;
      const double fac = std::isfinite(en) ? std::max(kFacMin, kSafety * std::pow(en, -0.2)) : kFacMin;
      h *= fac;
      last_rejected = true;
      if (h < options.dt_min) {
        std::ostringstream msg;
        msg << "step size fell below dt_min=" << options.dt_min << " at t=" << t;
        throw_numerical("stiffness", msg.str());
      }
    }
  }
  return series;
}

std::vector<double> euler_maruyama_step(const Derivative& drift, double noise_amp, std::span<const double> state,
                                        double t, double dt, RngStream& rng) {
  if (!(dt > 0.0)) throw_validation("invalid_step", "euler_maruyama_step: dt must be positive");
  if (!(noise_amp >= 0.0)) throw_validation("invalid_noise", "euler_maruyama_step: noise_amp must be >= 0");
  const std::size_t n = state.size();
  std::vector<double> d(n);
  drift(t, state, d);
  const double kick = noise_amp * std::sqrt(dt);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = state[i] + d[i] * dt + kick * rng.normal();
  return out;
}

}  // namespace scalebench
