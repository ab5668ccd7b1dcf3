#include "scalebench/ghg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "scalebench/core/error.hpp"
#include "scalebench/core/ode.hpp"

namespace scalebench::ghg {

namespace {

constexpr double kZeroRealPart = 1e-12;

double rate_of(double half_life) { return std::numbers::ln2 / half_life; }

std::map<std::string, double> merged(Preset preset, const std::map<std::string, double>& overrides) {
  std::map<std::string, double> v = preset_defaults(preset);
  for (const auto& [key, value] : overrides) {
    auto it = v.find(key);
    if (it == v.end()) throw_validation("unknown_parameter", "unknown " + std::string(to_string(preset)) + " rate '" + key + "'");
    if (!std::isfinite(value)) throw_validation("invalid_parameter", "rate '" + key + "' must be finite");
    it->second = value;
  }
  return v;
}

void require_non_negative(const std::map<std::string, double>& v) {
  for (const auto& [key, value] : v) {
    if (!(value >= 0.0)) throw_validation("invalid_parameter", "rate '" + key + "' must be >= 0");
  }
}

}  // namespace

double methane_decay(double m0, double t_years) {
  if (!(m0 >= 0.0)) throw_validation("invalid_input", "methane amount must be >= 0");
  return m0 * std::exp2(-t_years / kMethaneHalfLife);
}

double superposition_heating(double c, double m, double kappa, double potency) {
  return kappa * c + potency * kappa * m;
}

double Profile::at(double t) const { return half_life ? amount * std::exp2(-t / *half_life) : amount; }

double Profile::integral(double TH) const {
  if (!half_life) return amount * TH;
  const double k = rate_of(*half_life);
  return amount * -std::expm1(-k * TH) / k;
}

void GwpSpec::validate() const {
  if (!(TH > 0.0) || !std::isfinite(TH)) throw_validation("invalid_gwp", "TH must be > 0");
  for (const Profile* p : {&gas, &reference}) {
    if (p->half_life && !(*p->half_life > 0.0)) throw_validation("invalid_gwp", "half-lives must be > 0");
    if (!(p->amount >= 0.0)) throw_validation("invalid_gwp", "abundances must be >= 0");
  }
  if (!(a_ratio >= 0.0)) throw_validation("invalid_gwp", "a_ratio must be >= 0");
}

double gwp(const GwpSpec& spec) {
  spec.validate();
  // Both integrals as one two-component ODE y' = (C_i(t), C_r(t)).
  const Derivative f = [&](double t, std::span<const double>, std::span<double> d) {
    d[0] = spec.gas.at(t);
    d[1] = spec.reference.at(t);
  };
  AdaptiveOptions opt;
  opt.rel_tol = 1e-12;
  opt.abs_tol = 1e-14;
  opt.output_times = {spec.TH};
  const std::array<double, 2> zero{0.0, 0.0};
  const TimeSeries out = integrate_adaptive(f, zero, 0.0, spec.TH, opt);
  const double den = out.back()[1];
  if (!(den > 0.0)) throw_validation("zero_reference", "reference gas integral is zero");
  return spec.a_ratio * out.back()[0] / den;
}

double gwp_closed_form(const GwpSpec& spec) {
  spec.validate();
  const double den = spec.reference.integral(spec.TH);
  if (!(den > 0.0)) throw_validation("zero_reference", "reference gas integral is zero");
  return spec.a_ratio * spec.gas.integral(spec.TH) / den;
}

std::string_view to_string(Preset p) noexcept { return p == Preset::clathrate ? "clathrate" : "albedo"; }

Preset parse_preset(std::string_view text) {
  if (text == "clathrate") return Preset::clathrate;
  if (text == "albedo") return Preset::albedo;
  throw_validation("invalid_preset", "unknown preset '" + std::string(text) + "'");
}

std::string_view to_string(Outcome o) noexcept { return o == Outcome::bounded ? "bounded" : "runaway"; }

void LinearCompartmentModel::validate() const {
  const std::size_t n = names.size();
  if (n == 0 || n > SmallMatrix::kMaxOrder || A.order() != n || b.size() != n) {
    throw_validation("invalid_model", "model dimensions are inconsistent");
  }
  if (feedback_row >= n || feedback_col >= n) throw_validation("invalid_model", "feedback entry out of range");
  if (!A.all_finite() || !std::all_of(b.begin(), b.end(), [](double x) { return std::isfinite(x); })) {
    throw_validation("invalid_model", "model entries must be finite");
  }
  if (!(beta_f >= 0.0)) throw_validation("invalid_model", "beta_f must be >= 0");
}

SmallMatrix LinearCompartmentModel::with_gain(double gain) const {
  SmallMatrix m = A;
  m(feedback_row, feedback_col) = gain;
  return m;
}

std::map<std::string, double> preset_defaults(Preset preset) {
  const double methane = rate_of(kMethaneHalfLife);
  if (preset == Preset::clathrate) {
    return {{"kappa", 0.01},
            {"potency", kMethanePotency},
            {"lambda_ox", 0.9 * methane},
            {"lambda_other", 0.1 * methane},
            {"co2_uptake", 0.02},
            {"out_radiation", 0.5},
            {"stirring", 2.0},
            {"heat_ratio", kHeatCapacityRatio},
            {"deep_uptake", 0.01},
            {"beta_f", 0.0},
            {"threshold", 2.0},
            {"emissions", 1.0}};
  }
  return {{"albedo_forcing", 0.1}, {"out_radiation", 0.5}, {"stirring", 2.0}, {"heat_ratio", kHeatCapacityRatio},
          {"deep_uptake", 0.01},   {"beta_f", 0.0},       {"forcing", 0.5}};
}

LinearCompartmentModel build_interaction_model(Preset preset, const std::map<std::string, double>& overrides) {
  const std::map<std::string, double> v = merged(preset, overrides);
  require_non_negative(v);
  LinearCompartmentModel m;
  const double rho = v.at("out_radiation");
  const double sx = v.at("stirring");
  const double h = v.at("heat_ratio");
  const double deep = v.at("deep_uptake");
  m.beta_f = v.at("beta_f");
  if (preset == Preset::clathrate) {
    // c, m, T_at, T_oc
    const double kappa = v.at("kappa");
    const double lox = v.at("lambda_ox");
    m.names = {"c", "m", "T_at", "T_oc"};
    m.A = SmallMatrix(4);
    m.A(0, 0) = -v.at("co2_uptake");
    m.A(0, 1) = lox;
    m.A(1, 1) = -(lox + v.at("lambda_other"));
    m.A(1, 3) = m.beta_f;
    m.A(2, 0) = kappa;
    m.A(2, 1) = v.at("potency") * kappa;
    m.A(2, 2) = -(rho + sx);
    m.A(2, 3) = sx;
    m.A(3, 2) = h * sx;
    m.A(3, 3) = -h * sx - deep;
    m.b = {v.at("emissions"), 0.0, 0.0, 0.0};
    m.feedback_row = 1;
    m.feedback_col = 3;
    m.threshold = v.at("threshold");
  } else {
    // a, T_at, T_oc
    m.names = {"a", "T_at", "T_oc"};
    m.A = SmallMatrix(3);
    m.A(0, 2) = m.beta_f;
    m.A(1, 0) = v.at("albedo_forcing");
    m.A(1, 1) = -(rho + sx);
    m.A(1, 2) = sx;
    m.A(2, 1) = h * sx;
    m.A(2, 2) = -h * sx - deep;
    m.b = {0.0, v.at("forcing"), 0.0};
    m.feedback_row = 0;
    m.feedback_col = 2;
  }
  m.validate();
  return m;
}

Stability stability(const SmallMatrix& A) {
  Stability s;
  s.eigenvalues = eigenvalues_small(A);
  s.max_real_part = s.eigenvalues.front().real();
  s.stable = s.max_real_part < 0.0;
  return s;
}

double critical_gain(const std::function<SmallMatrix(double)>& family, double lo, double hi, double tol) {
  if (!(lo < hi) || !(tol > 0.0)) throw_validation("invalid_bracket", "critical_gain needs lo < hi and tol > 0");
  auto growth = [&](double g) {
    const double r = stability(family(g)).max_real_part;
    return std::abs(r) <= kZeroRealPart ? 0.0 : r;
  };
  if (growth(lo) > 0.0 || !(growth(hi) > 0.0)) {
    throw_numerical("no_crossing", "largest real part does not cross zero inside the bracket");
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (growth(mid) > 0.0 ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

SimOutcome simulate_compartments(const LinearCompartmentModel& model, std::span<const double> x0,
                                 const SimOptions& options) {
  model.validate();
  const std::size_t n = model.size();
  if (x0.size() != n) throw_validation("invalid_state", "initial state has the wrong size");
  if (!(options.horizon > 0.0) || !std::isfinite(options.horizon)) {
    throw_validation("invalid_horizon", "horizon must be > 0");
  }
  if (!(options.sample_interval > 0.0)) throw_validation("invalid_horizon", "sample_interval must be > 0");
  if (!(options.divergence_factor > 0.0) || !(options.scale_floor > 0.0)) {
    throw_validation("invalid_options", "divergence factor and scale floor must be > 0");
  }
  if (options.threshold_mode && !model.threshold) {
    throw_validation("invalid_options", "threshold mode needs a model threshold");
  }

  double scale = options.scale_floor;
  for (double x : x0) scale = std::max(scale, std::abs(x));
  const double bound = options.divergence_factor * scale;

  // Linear part without the feedback entry in threshold mode.
  const SmallMatrix A = options.threshold_mode ? model.with_gain(0.0) : model.A;
  const double thr = model.threshold.value_or(0.0);

  std::vector<double> grid;
  for (long k = 0;; ++k) {
    const double t = static_cast<double>(k) * options.sample_interval;
    if (t >= options.horizon) break;
    grid.push_back(t);
  }
  grid.push_back(options.horizon);
  std::vector<double> edges{0.0};
  if (options.input_stop > 0.0 && options.input_stop < options.horizon) edges.push_back(options.input_stop);
  edges.push_back(options.horizon);

  SimOutcome out{TimeSeries(n), Outcome::bounded, std::nullopt};
  out.trajectory.append(0.0, x0);
  std::vector<double> y(x0.begin(), x0.end());
  auto exceeded = [&](std::span<const double> s) {
    return std::any_of(s.begin(), s.end(), [&](double x) { return !(std::abs(x) <= bound); });
  };
  if (exceeded(y)) {
    out.classification = Outcome::runaway;
    out.divergence_time = 0.0;
    return out;
  }

  std::size_t next = 1;
  for (std::size_t seg = 0; seg + 1 < edges.size(); ++seg) {
    const double a = edges[seg];
    const double b = edges[seg + 1];
    const double u = a < options.input_stop ? 1.0 : 0.0;
    const Derivative f = [&](double, std::span<const double> s, std::span<double> d) {
      for (std::size_t i = 0; i < n; ++i) {
        double acc = u * model.b[i];
        for (std::size_t j = 0; j < n; ++j) acc += A(i, j) * s[j];
        d[i] = acc;
      }
      if (options.threshold_mode) d[model.feedback_row] += model.beta_f * std::max(0.0, s[model.feedback_col] - thr);
    };
    AdaptiveOptions opt;
    opt.rel_tol = options.rel_tol;
    opt.abs_tol = options.abs_tol;
    opt.stop_when = [&](double, std::span<const double> s) { return exceeded(s); };
    const std::size_t first = next;
    while (next < grid.size() && grid[next] <= b) ++next;
    opt.output_times.assign(grid.begin() + static_cast<long>(first), grid.begin() + static_cast<long>(next));
    const bool end_on_grid = !opt.output_times.empty() && opt.output_times.back() == b;
    if (!end_on_grid) opt.output_times.push_back(b);
    AdaptiveStats stats;
    const TimeSeries part = integrate_adaptive(f, y, a, b, opt, &stats);
    for (std::size_t i = 0; i < part.size(); ++i) {
      const bool last = i + 1 == part.size();
      if (last && !end_on_grid && !stats.stopped_early) break;
      out.trajectory.append(part.time(i), part.value(i));
    }
    if (stats.stopped_early) {
      out.classification = Outcome::runaway;
      out.divergence_time = part.times().back();
      return out;
    }
    const auto last = part.back();
    y.assign(last.begin(), last.end());
  }
  return out;
}

double divergence_onset(const LinearCompartmentModel& model, std::span<const double> x0, double lo, double hi,
                        double horizon, double rel_tol) {
  if (!(lo >= 0.0) || !(lo < hi) || !(rel_tol > 0.0)) {
    throw_validation("invalid_bracket", "divergence_onset needs 0 <= lo < hi and rel_tol > 0");
  }
  SimOptions opt;
  opt.horizon = horizon;
  opt.sample_interval = horizon;
  LinearCompartmentModel probe = model;
  std::fill(probe.b.begin(), probe.b.end(), 0.0);
  auto runs_away = [&](double gain) {
    probe.beta_f = gain;
    probe.A = model.with_gain(gain);
    return simulate_compartments(probe, x0, opt).classification == Outcome::runaway;
  };
  if (runs_away(lo) || !runs_away(hi)) {
    throw_numerical("no_crossing", "classification does not change inside the bracket");
  }
  while (hi - lo > rel_tol * hi) {
    const double mid = 0.5 * (lo + hi);
    (runs_away(mid) ? hi : lo) = mid;
  }
  return hi;
}

}  // namespace scalebench::ghg
