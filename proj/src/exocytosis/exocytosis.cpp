#include "scalebench/exocytosis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "scalebench/core/error.hpp"
#include "scalebench/core/ode.hpp"
#include "scalebench/core/small_matrix.hpp"

namespace scalebench::exocytosis {

namespace {

constexpr std::size_t kAccumulators = 3;  // source, release, decay

// Right-hand side without input checks; shared by derivatives() and the
// integrator, where tiny negative round-off values must pass through.
void rhs(const double* N, double C_md, double C_i, const KineticParams& p, Variant v, double* out) {
  const Rates r = rates(C_i, p);
  const double kc = p.k1 * C_md;
  const bool corrected = v == Variant::mass_action_corrected;
  const double unbind = corrected ? p.k_1 : p.k1;
  const double n1_to_n5 = corrected ? p.r_1 : p.r1;
  out[0] = -(3.0 * kc + p.r_1) * N[0] + unbind * N[1] + p.r1 * N[4];
  out[1] = 3.0 * kc * N[0] - (2.0 * kc + p.k_1) * N[1] + 2.0 * p.k_1 * N[2];
  out[2] = 2.0 * kc * N[1] - (kc + 2.0 * p.k_1) * N[2] + 3.0 * unbind * N[3];
  out[3] = kc * N[2] - (3.0 * p.k_1 + p.u1) * N[3];
  out[4] = n1_to_n5 * N[0] - (p.r1 + p.r_2) * N[4] + r.r2 * N[5];
  out[5] = r.r3 + p.r_2 * N[4] - (p.r_3 + r.r2) * N[5];
  out[6] = p.u1 * N[3] - p.u2 * N[6];
  out[7] = p.u2 * N[6] - p.u3 * N[7];
}

double source(const double* N, double C_i, const KineticParams& p) {
  return rates(C_i, p).r3 - p.r_3 * N[5] - p.u3 * N[7];
}

void require_non_negative(double x, const char* what) {
  if (!(x >= 0.0)) throw_validation("negative_input", std::string(what) + " must be >= 0");
}

// Largest |delta lhs - delta rhs| / delta t over consecutive samples.
template <class Lhs, class Rhs>
double max_gap(const TimeSeries& series, Lhs lhs, Rhs rhs) {
  double worst = 0.0;
  for (std::size_t i = 1; i < series.size(); ++i) {
    const double dt = series.time(i) - series.time(i - 1);
    worst = std::max(worst, std::abs((lhs(i) - lhs(i - 1)) - (rhs(i) - rhs(i - 1))) / dt);
  }
  return worst;
}

}  // namespace

void KineticParams::validate() const {
  for (double x : {k1, k_1, r1, r_1, r2_0, r_2, r3_0, r_3, u1, u2, u3, Kp}) {
    if (!(x > 0.0) || !std::isfinite(x)) throw_validation("invalid_params", "kinetic parameters must be positive");
  }
}

std::string_view to_string(Variant v) noexcept {
  return v == Variant::paper_verbatim ? "paper_verbatim" : "mass_action_corrected";
}

Variant parse_variant(std::string_view text) {
  if (text == "paper_verbatim") return Variant::paper_verbatim;
  if (text == "mass_action_corrected") return Variant::mass_action_corrected;
  throw_validation("invalid_variant", "unknown variant '" + std::string(text) + "'");
}

std::string_view to_string(CalciumProtocol::Kind k) noexcept {
  return k == CalciumProtocol::Kind::step ? "step" : "pulse_train";
}

CalciumProtocol::Kind parse_protocol_kind(std::string_view text) {
  if (text == "step") return CalciumProtocol::Kind::step;
  if (text == "pulse_train") return CalciumProtocol::Kind::pulse_train;
  throw_validation("invalid_protocol", "unknown protocol kind '" + std::string(text) + "'");
}

void CalciumProtocol::validate() const {
  if (!(C_md_high >= 0.0) || !(C_md_basal >= 0.0) || !(C_i_basal >= 0.0) || !(ratio_i_to_md >= 0.0)) {
    throw_validation("invalid_protocol", "concentrations and ratio must be >= 0");
  }
  if (!(t_on >= 0.0)) throw_validation("invalid_protocol", "t_on must be >= 0");
  if (kind == Kind::pulse_train) {
    if (n_pulses < 1) throw_validation("invalid_protocol", "n_pulses must be >= 1");
    if (!(period > 0.0)) throw_validation("invalid_protocol", "period must be > 0");
    if (!(duty > 0.0 && duty < 1.0)) throw_validation("invalid_protocol", "duty must lie in (0, 1)");
  }
}

double CalciumProtocol::C_md(double t) const {
  if (t < t_on) return C_md_basal;
  if (kind == Kind::step) return C_md_high;
  const double phase = (t - t_on) / period;
  const double k = std::floor(phase);
  if (k >= n_pulses) return C_md_basal;
  return phase - k < duty ? C_md_high : C_md_basal;
}

std::vector<double> CalciumProtocol::switch_times(double t_end) const {
  std::vector<double> out;
  auto add = [&](double t) {
    if (t > 0.0 && t < t_end) out.push_back(t);
  };
  add(t_on);
  if (kind == Kind::pulse_train) {
    for (int k = 0; k < n_pulses; ++k) {
      if (k > 0) add(t_on + k * period);
      add(t_on + (k + duty) * period);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Rates rates(double C_i, const KineticParams& p) {
  const double s = C_i / (C_i + p.Kp);
  return {p.r2_0 * s, p.r3_0 * s};
}

PoolState derivatives(const PoolState& state, double C_md, double C_i, const KineticParams& p, Variant variant) {
  for (double x : state) require_non_negative(x, "pool sizes");
  require_non_negative(C_md, "C_md");
  require_non_negative(C_i, "C_i");
  PoolState out{};
  rhs(state.data(), C_md, C_i, p, variant, out.data());
  return out;
}

double net_source(const PoolState& state, double C_i, const KineticParams& p) { return source(state.data(), C_i, p); }

PoolState resting_state(double C_md, double C_i, const KineticParams& p, Variant variant) {
  p.validate();
  require_non_negative(C_md, "C_md");
  require_non_negative(C_i, "C_i");
  // dN/dt = A N + b with b the constant priming input.
  std::array<double, kPools> zero{}, b{}, col{};
  rhs(zero.data(), C_md, C_i, p, variant, b.data());
  SmallMatrix a(kPools);
  for (std::size_t j = 0; j < kPools; ++j) {
    std::array<double, kPools> e{};
    e[j] = 1.0;
    rhs(e.data(), C_md, C_i, p, variant, col.data());
    for (std::size_t i = 0; i < kPools; ++i) a(i, j) = col[i] - b[i];
  }
  std::array<double, kPools> minus_b{};
  for (std::size_t i = 0; i < kPools; ++i) minus_b[i] = -b[i];
  std::vector<double> x = solve_linear(a, minus_b);

  // One refinement pass with the residual accumulated in long double.
  std::array<double, kPools> r{};
  for (std::size_t i = 0; i < kPools; ++i) {
    long double s = b[i];
    for (std::size_t j = 0; j < kPools; ++j) s += static_cast<long double>(a(i, j)) * x[j];
    r[i] = -static_cast<double>(s);
  }
  if (std::any_of(r.begin(), r.end(), [](double v) { return v != 0.0; })) {
    const std::vector<double> dx = solve_linear(a, r);
    for (std::size_t i = 0; i < kPools; ++i) x[i] += dx[i];
  }

  PoolState out{};
  double scale = 0.0;
  for (double v : x) scale = std::max(scale, std::abs(v));
  for (std::size_t i = 0; i < kPools; ++i) {
    if (x[i] < -1e-12 * scale) {
      throw_numerical("negative_steady_state", "steady state has negative pool " + std::string(kPoolNames[i]));
    }
    out[i] = std::max(0.0, x[i]);
  }
  return out;
}

PoolState resting_state(const CalciumProtocol& protocol, const KineticParams& p, Variant variant) {
  protocol.validate();
  return resting_state(protocol.C_md_basal, protocol.C_i_of(protocol.C_md_basal), p, variant);
}

ExoRun simulate(const CalciumProtocol& protocol, const KineticParams& p, Variant variant, double t_end,
                double sample_interval, double rel_tol) {
  protocol.validate();
  p.validate();
  if (!(t_end > 0.0) || !std::isfinite(t_end)) throw_validation("invalid_horizon", "t_end must be > 0");
  if (!(sample_interval > 0.0)) throw_validation("invalid_horizon", "sample_interval must be > 0");

  std::vector<double> grid;
  for (long k = 0;; ++k) {
    const double t = static_cast<double>(k) * sample_interval;
    if (t >= t_end) break;
    grid.push_back(t);
  }
  grid.push_back(t_end);

  std::vector<double> edges{0.0};
  for (double t : protocol.switch_times(t_end)) edges.push_back(t);
  edges.push_back(t_end);

  ExoRun run{TimeSeries(kPools + 3), TimeSeries(1), TimeSeries(4)};
  run.trajectory.reserve(grid.size());
  run.secretion.reserve(grid.size());
  run.balance.reserve(grid.size());

  std::vector<double> y(kPools + kAccumulators, 0.0);
  const PoolState rest = resting_state(protocol, p, variant);
  std::copy(rest.begin(), rest.end(), y.begin());

  auto record = [&](double t, std::span<const double> s) {
    const double c_md = protocol.C_md(t);
    const double sr = p.u2 * s[6];
    std::array<double, kPools + 3> row{};
    std::copy(s.begin(), s.begin() + kPools, row.begin());
    row[kPools] = sr;
    row[kPools + 1] = c_md;
    row[kPools + 2] = protocol.C_i_of(c_md);
    run.trajectory.append(t, row);
    run.secretion.append(t, std::array{sr});
    double total = 0.0;
    for (std::size_t i = 0; i < kPools; ++i) total += s[i];
    run.balance.append(t, std::array{total, s[kPools], s[kPools + 1], s[kPools + 2]});
  };
  record(0.0, y);

  std::size_t next = 1;
  for (std::size_t seg = 0; seg + 1 < edges.size(); ++seg) {
    const double a = edges[seg];
    const double b = edges[seg + 1];
    const double c_md = protocol.C_md(0.5 * (a + b));
    const double c_i = protocol.C_i_of(c_md);
    const Derivative f = [&](double, std::span<const double> s, std::span<double> d) {
      rhs(s.data(), c_md, c_i, p, variant, d.data());
      d[kPools] = source(s.data(), c_i, p);
      d[kPools + 1] = p.u2 * s[6];
      d[kPools + 2] = p.u3 * s[7];
    };
    AdaptiveOptions opt;
    opt.rel_tol = rel_tol;
    opt.abs_tol = 1e-10;
    const std::size_t first = next;
    while (next < grid.size() && grid[next] <= b) ++next;
    opt.output_times.assign(grid.begin() + static_cast<long>(first), grid.begin() + static_cast<long>(next));
    const bool end_on_grid = !opt.output_times.empty() && opt.output_times.back() == b;
    if (!end_on_grid) opt.output_times.push_back(b);
    const TimeSeries part = integrate_adaptive(f, y, a, b, opt);
    for (std::size_t i = 0; i < part.size(); ++i) {
      if (!end_on_grid && i + 1 == part.size()) break;
      record(part.time(i), part.value(i));
    }
    const auto last = part.back();
    y.assign(last.begin(), last.end());
  }
  return run;
}

double mass_balance_residual(const ExoRun& run) {
  const TimeSeries& b = run.balance;
  return max_gap(b, [&](std::size_t i) { return b.at(i, 0); }, [&](std::size_t i) { return b.at(i, 1); });
}

double release_residual(const ExoRun& run) {
  const TimeSeries& b = run.balance;
  return max_gap(
      b, [&](std::size_t i) { return run.trajectory.at(i, 7); },
      [&](std::size_t i) { return b.at(i, 2) - b.at(i, 3); });
}

PhaseMetrics phase_metrics(const TimeSeries& secretion, double t_onset) {
  if (secretion.dimension() != 1 || secretion.size() < 3) {
    throw_validation("invalid_series", "phase_metrics needs a one-column series with >= 3 samples");
  }
  const auto& t = secretion.times();
  const std::vector<double> sr = secretion.column(0);
  const std::size_t n = t.size();
  if (t.back() - t.front() < 1800.0) throw_validation("invalid_series", "phase_metrics needs >= 30 minutes of data");

  const double window_start = t.back() - 0.1 * (t.back() - t.front());
  std::size_t w = n - 1;
  while (w > 0 && t[w - 1] >= window_start) --w;

  PhaseMetrics m;
  double sum = 0.0;
  for (std::size_t i = w; i < n; ++i) sum += sr[i];
  m.SR_plateau = sum / static_cast<double>(n - w);

  // Least-squares slope over the window.
  if (n - w >= 2) {
    double tm = 0.0;
    for (std::size_t i = w; i < n; ++i) tm += t[i];
    tm /= static_cast<double>(n - w);
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = w; i < n; ++i) {
      sxy += (t[i] - tm) * (sr[i] - m.SR_plateau);
      sxx += (t[i] - tm) * (t[i] - tm);
    }
    if (sxx > 0.0 && m.SR_plateau != 0.0) m.plateau_drift_per_min = 60.0 * (sxy / sxx) / m.SR_plateau;
  }

  std::size_t i0 = 0;
  while (i0 < n && t[i0] < t_onset) ++i0;
  std::size_t peak = n;
  for (std::size_t i = i0; i + 1 < n; ++i) {
    const bool rising_in = i == i0 || sr[i] >= sr[i - 1];
    if (rising_in && sr[i] > sr[i + 1]) {
      peak = i;
      break;
    }
  }
  if (peak == n) {
    m.monophasic = true;
    return m;
  }
  m.t_peak = t[peak];
  m.SR_peak = sr[peak];
  std::size_t nadir = peak;
  for (std::size_t i = peak + 1; i < w; ++i) {
    if (nadir == peak || sr[i] < sr[nadir]) nadir = i;
  }
  m.t_nadir = t[nadir];
  m.SR_nadir = sr[nadir];
  return m;
}

double stiffness_ratio(const KineticParams& p) {
  p.validate();
  const std::array<double, 11> k{p.k1, p.k_1, p.r1, p.r_1, p.r2_0, p.r_2, p.r3_0, p.r_3, p.u1, p.u2, p.u3};
  return *std::max_element(k.begin(), k.end()) / *std::min_element(k.begin(), k.end());
}

}  // namespace scalebench::exocytosis
