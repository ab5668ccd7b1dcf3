#include "scalebench/app/commands.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

#include "scalebench/core/error.hpp"
#include "scalebench/cycles.hpp"
#include "scalebench/exocytosis.hpp"
#include "scalebench/ghg.hpp"
#include "scalebench/glassmd/observables.hpp"
#include "scalebench/glassmd/run.hpp"
#include "scalebench/tipping.hpp"

namespace scalebench::app {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Param num(std::string name, double def, std::string help) {
  return {std::move(name), ParamKind::number, def, std::move(help), {}};
}
Param integer(std::string name, long def, std::string help) {
  return {std::move(name), ParamKind::integer, def, std::move(help), {}};
}
Param seed_param(std::uint64_t def) { return {"seed", ParamKind::integer, def, "RNG seed", {}}; }
Param flag(std::string name, bool def, std::string help) {
  return {std::move(name), ParamKind::boolean, def, std::move(help), {}};
}
Param choice(std::string name, std::string def, std::vector<std::string> choices, std::string help) {
  return {std::move(name), ParamKind::text, def, std::move(help), std::move(choices)};
}
Param text(std::string name, std::string def, std::string help) {
  return {std::move(name), ParamKind::text, def, std::move(help), {}};
}
Param opt_num(std::string name, std::optional<double> def, std::string help) {
  return {std::move(name), ParamKind::optional_number, def ? Json(*def) : Json(nullptr), std::move(help), {}};
}

double get(const Json& c, const char* key) { return c.at(key).get<double>(); }
long get_long(const Json& c, const char* key) { return c.at(key).get<long>(); }
std::optional<double> get_opt(const Json& c, const char* key) {
  const Json& v = c.at(key);
  return v.is_null() ? std::nullopt : std::optional<double>(v.get<double>());
}
std::uint64_t get_seed(const Json& c) {
  const Json& v = c.at("seed");
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.get<long long>() < 0) throw_validation("invalid_config", "'seed' must be >= 0");
  return static_cast<std::uint64_t>(v.get<long long>());
}

Schema concat(Schema a, const Schema& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

// ---- tipping ---------------------------------------------------------------

Schema tipping_schema() {
  const tipping::TippingParams d = tipping::default_hysteresis_params();
  return {choice("mode", "tilted", {"tilted", "coupled"}, "potential family"),
          num("noise", d.noise, "noise strength D"),
          num("dt", d.dt, "time step"),
          integer("steps", d.steps, "number of steps"),
          num("t_change", d.schedule.t_change, "time the alpha ramp starts"),
          num("ramp_rate", d.schedule.ramp_rate, "d alpha / dt on the way up"),
          num("alpha_max", d.schedule.alpha_max, "clamp of alpha"),
          num("hold", d.schedule.hold, "time held at alpha_max"),
          opt_num("return_rate", d.schedule.return_rate, "d alpha / dt on the way back (null: no return)"),
          num("T0", 0.0, "initial state"),
          integer("record_interval", 10, "record every n-th step"),
          seed_param(d.seed)};
}

tipping::TippingParams tipping_params(const Json& c) {
  tipping::TippingParams p;
  p.mode = tipping::parse_mode(c.at("mode").get<std::string>());
  p.noise = get(c, "noise");
  p.dt = get(c, "dt");
  p.steps = get_long(c, "steps");
  p.schedule.t_change = get(c, "t_change");
  p.schedule.ramp_rate = get(c, "ramp_rate");
  p.schedule.alpha_max = get(c, "alpha_max");
  p.schedule.hold = get(c, "hold");
  p.schedule.return_rate = get_opt(c, "return_rate");
  p.record_interval = get_long(c, "record_interval");
  p.seed = get_seed(c);
  p.validate();
  return p;
}

Report tipping_run(const Json& c, const Context&) {
  const tipping::TippingParams p = tipping_params(c);
  const auto res = tipping::langevin_run(p, get(c, "T0"));
  Table t;
  t.name = "trajectory";
  t.columns = {"t", "T", "alpha", "basin"};
  for (std::size_t i = 0; i < res.series.size(); ++i) {
    const double T = res.series.at(i, 0);
    t.rows.push_back({res.series.time(i), T, res.series.at(i, 1), std::string(tipping::to_string(tipping::basin_of(T)))});
  }
  Report r;
  r.tables.push_back(std::move(t));
  r.summary["final_basin"] = tipping::to_string(tipping::basin_of(res.series.back()[0]));
  r.summary["max_gradient_step"] = res.max_gradient_step;
  r.summary["step_sane"] = res.step_sane;
  return r;
}

Report tipping_hysteresis(const Json& c, const Context&) {
  const tipping::TippingParams p = tipping_params(c);
  const auto h = tipping::hysteresis_experiment(p, static_cast<int>(get_long(c, "n_seeds")), get(c, "T0"));
  Report r;
  r.summary_name = "hysteresis";
  r.summary["forward_fraction"] = h.forward_fraction;
  r.summary["return_fraction"] = h.return_fraction;
  r.summary["seeds"] = h.seeds;
  return r;
}

Report tipping_critical_alpha(const Json& c, const Context&) {
  Report r;
  r.summary_name = "critical_alpha";
  r.summary["critical_alpha"] = tipping::critical_alpha(tipping::parse_mode(c.at("mode").get<std::string>()));
  return r;
}

// ---- glass -----------------------------------------------------------------

Schema glass_schema(double temperature) {
  const glassmd::MdConfig d;
  return {integer("N", d.N, "particle count (perfect square)"),
          num("fraction_A", d.fraction_A, "share of large particles"),
          num("density", d.density, "number density"),
          num("temperature", temperature, "target temperature"),
          num("dt", d.dt, "time step"),
          num("gamma", d.gamma, "Langevin friction"),
          num("equilibration_time", d.equilibration_time, "Langevin equilibration time"),
          choice("ensemble", "nve", {"nve", "langevin"}, "production ensemble"),
          integer("steps", d.steps, "production steps"),
          integer("thermo_interval", d.thermo_interval, "steps between thermo samples"),
          integer("msd_per_decade", d.msd_per_decade, "MSD lags per decade"),
          integer("msd_origin_interval", d.msd_origin_interval, "steps between MSD origins (0: one origin)"),
          num("skin", d.skin, "neighbour list skin"),
          seed_param(d.seed)};
}

glassmd::MdConfig md_config(const Json& c) {
  glassmd::MdConfig m;
  m.N = static_cast<int>(get_long(c, "N"));
  m.fraction_A = get(c, "fraction_A");
  m.density = get(c, "density");
  m.temperature = get(c, "temperature");
  m.dt = get(c, "dt");
  m.gamma = get(c, "gamma");
  m.equilibration_time = get(c, "equilibration_time");
  m.ensemble = c.at("ensemble") == "langevin" ? glassmd::Ensemble::langevin : glassmd::Ensemble::nve;
  m.steps = get_long(c, "steps");
  m.thermo_interval = get_long(c, "thermo_interval");
  m.msd_per_decade = static_cast<int>(get_long(c, "msd_per_decade"));
  m.msd_origin_interval = get_long(c, "msd_origin_interval");
  m.skin = get(c, "skin");
  m.seed = get_seed(c);
  m.validate();
  return m;
}

glassmd::Progress progress_for(const Context& ctx, const char* phase) {
  if (ctx.quiet || !ctx.log) return {};
  return [log = ctx.log, phase](long step, long total) { *log << phase << " step " << step << "/" << total << "\n"; };
}

Table msd_table(const TimeSeries& msd) {
  return Table::from_series("msd", msd, "lag_time", {"msd_total", "msd_A", "msd_B"});
}

Report glass_run(const Json& c, const Context& ctx) {
  const glassmd::MdConfig cfg = md_config(c);
  const auto res = glassmd::run_md(cfg, progress_for(ctx, "md"));
  Report r;
  r.tables.push_back(Table::from_series("thermo", res.thermo, "t",
                                        {"potential", "kinetic", "total", "temperature", "px", "py"}));
  const auto field = glassmd::displacement_field(res.start, res.end, get(c, "displacement_threshold"));
  Table d;
  d.name = "displacement";
  d.series = false;
  d.columns = {"id", "species", "dx", "dy", "magnitude"};
  for (std::size_t i = 0; i < field.displacement.size(); ++i) {
    d.rows.push_back({static_cast<long>(i), std::string(res.start.species[i] == glassmd::Species::A ? "A" : "B"),
                      field.displacement[i].x, field.displacement[i].y, field.magnitude[i]});
  }
  r.tables.push_back(std::move(d));
  double t_sum = 0.0;
  for (std::size_t i = 0; i < res.thermo.size(); ++i) t_sum += res.thermo.at(i, 3);
  const double e0 = res.thermo.at(0, 2);
  const double e1 = res.thermo.back()[2];
  r.summary["mean_temperature"] = t_sum / static_cast<double>(res.thermo.size());
  r.summary["relative_energy_drift"] = std::abs(e1 - e0) / std::abs(e0);
  r.summary["mobile_fraction"] = field.mobile_fraction;
  return r;
}

Report glass_msd(const Json& c, const Context& ctx) {
  const glassmd::MdConfig cfg = md_config(c);
  const auto res = glassmd::run_md(cfg, progress_for(ctx, "md"));
  Report r;
  r.tables.push_back(msd_table(res.msd));
  const auto fit = glassmd::diffusion_coefficient(res.msd);
  r.summary["diffusion_converged"] = fit.converged;
  r.summary["D"] = fit.D;
  r.summary["final_decade_slope"] = fit.loglog_slope;
  return r;
}

Report glass_scaling_check(const Json& c, const Context& ctx) {
  const glassmd::MdConfig cfg = md_config(c);
  const auto s = glassmd::scaling_check(cfg, get(c, "density2"), get(c, "reduced_time_max"), progress_for(ctx, "equilibrate"));
  Table t;
  t.name = "scaling";
  t.columns = {"reduced_time", "msd_reference", "msd_scaled"};
  for (std::size_t i = 0; i < s.reference.size(); ++i) {
    t.rows.push_back({s.reference.time(i), s.reference.at(i, 0), s.scaled.at(i, 0)});
  }
  Report r;
  r.tables.push_back(std::move(t));
  r.summary["gamma_reference"] = s.gamma_reference;
  r.summary["gamma_scaled"] = s.gamma_scaled;
  r.summary["max_relative_error"] = s.max_relative_error;
  return r;
}

// ---- exocytosis ------------------------------------------------------------

Schema kinetic_schema() {
  const exocytosis::KineticParams k;
  return {num("k1", k.k1, "Ca binding rate"),         num("k_1", k.k_1, "Ca unbinding rate"),
          num("r1", k.r1, "N5 -> N1 rate"),           num("r_1", k.r_1, "N1 -> N5 rate"),
          num("r2_0", k.r2_0, "maximal resupply rate"), num("r_2", k.r_2, "N5 -> N6 rate"),
          num("r3_0", k.r3_0, "maximal priming rate"), num("r_3", k.r_3, "N6 loss rate"),
          num("u1", k.u1, "fusion rate"),             num("u2", k.u2, "release rate"),
          num("u3", k.u3, "NR clearance rate"),        num("Kp", k.Kp, "half-saturation C_i")};
}

Schema protocol_schema() {
  const exocytosis::CalciumProtocol d;
  return {choice("protocol", "step", {"step", "pulse_train"}, "stimulus shape"),
          num("C_md_high", d.C_md_high, "stimulated microdomain Ca"),
          num("C_md_basal", d.C_md_basal, "basal microdomain Ca"),
          num("C_i_basal", d.C_i_basal, "basal cytosolic Ca"),
          num("ratio_i_to_md", d.ratio_i_to_md, "C_i increment per unit C_md"),
          num("t_on", d.t_on, "stimulus onset (s)"),
          integer("n_pulses", d.n_pulses, "pulses in a train"),
          num("period", d.period, "pulse period (s)"),
          num("duty", d.duty, "fraction of a period at the high level"),
          choice("variant", "mass_action_corrected", {"mass_action_corrected", "paper_verbatim"}, "equation variant"),
          num("t_end", 3600.0, "simulated time (s)"),
          num("sample_interval", 1.0, "output spacing (s)"),
          num("rel_tol", 1e-8, "integrator relative tolerance")};
}

exocytosis::KineticParams kinetic_params(const Json& c) {
  exocytosis::KineticParams k;
  k.k1 = get(c, "k1");
  k.k_1 = get(c, "k_1");
  k.r1 = get(c, "r1");
  k.r_1 = get(c, "r_1");
  k.r2_0 = get(c, "r2_0");
  k.r_2 = get(c, "r_2");
  k.r3_0 = get(c, "r3_0");
  k.r_3 = get(c, "r_3");
  k.u1 = get(c, "u1");
  k.u2 = get(c, "u2");
  k.u3 = get(c, "u3");
  k.Kp = get(c, "Kp");
  k.validate();
  return k;
}

exocytosis::CalciumProtocol protocol(const Json& c) {
  exocytosis::CalciumProtocol p;
  p.kind = exocytosis::parse_protocol_kind(c.at("protocol").get<std::string>());
  p.C_md_high = get(c, "C_md_high");
  p.C_md_basal = get(c, "C_md_basal");
  p.C_i_basal = get(c, "C_i_basal");
  p.ratio_i_to_md = get(c, "ratio_i_to_md");
  p.t_on = get(c, "t_on");
  p.n_pulses = static_cast<int>(get_long(c, "n_pulses"));
  p.period = get(c, "period");
  p.duty = get(c, "duty");
  p.validate();
  return p;
}

exocytosis::ExoRun exo_simulate(const Json& c) {
  return exocytosis::simulate(protocol(c), kinetic_params(c),
                              exocytosis::parse_variant(c.at("variant").get<std::string>()), get(c, "t_end"),
                              get(c, "sample_interval"), get(c, "rel_tol"));
}

Report exo_run(const Json& c, const Context&) {
  const auto run = exo_simulate(c);
  Report r;
  r.tables.push_back(Table::from_series("trajectory", run.trajectory, "t",
                                        {"N1", "N2", "N3", "N4", "N5", "N6", "NF", "NR", "SR", "C_md", "C_i"}));
  r.summary["mass_balance_residual"] = exocytosis::mass_balance_residual(run);
  r.summary["release_residual"] = exocytosis::release_residual(run);
  return r;
}

Report exo_metrics(const Json& c, const Context&) {
  const auto run = exo_simulate(c);
  const auto m = exocytosis::phase_metrics(run.secretion, get(c, "t_on"));
  Report r;
  r.summary_name = "metrics";
  if (m.monophasic) {
    r.summary["t_peak"] = nullptr;
    r.summary["SR_peak"] = nullptr;
    r.summary["t_nadir"] = nullptr;
    r.summary["SR_nadir"] = nullptr;
  } else {
    r.summary["t_peak"] = m.t_peak;
    r.summary["SR_peak"] = m.SR_peak;
    r.summary["t_nadir"] = m.t_nadir;
    r.summary["SR_nadir"] = m.SR_nadir;
  }
  r.summary["SR_plateau"] = m.SR_plateau;
  r.summary["variant"] = c.at("variant");
  return r;
}

Report exo_resting(const Json& c, const Context&) {
  const auto k = kinetic_params(c);
  const double c_md = get(c, "C_md");
  exocytosis::CalciumProtocol p;
  p.C_i_basal = get(c, "C_i_basal");
  p.ratio_i_to_md = get(c, "ratio_i_to_md");
  const double c_i = get_opt(c, "C_i").value_or(p.C_i_of(c_md));
  const auto variant = exocytosis::parse_variant(c.at("variant").get<std::string>());
  const auto s = exocytosis::resting_state(c_md, c_i, k, variant);
  Report r;
  r.summary_name = "resting";
  r.summary["C_md"] = c_md;
  r.summary["C_i"] = c_i;
  for (std::size_t i = 0; i < exocytosis::kPools; ++i) r.summary[std::string(exocytosis::kPoolNames[i])] = s[i];
  r.summary["SR"] = k.u2 * s[6];
  double worst = 0.0;
  for (double d : exocytosis::derivatives(s, c_md, c_i, k, variant)) worst = std::max(worst, std::abs(d));
  r.summary["residual"] = worst;
  r.summary["variant"] = c.at("variant");
  return r;
}

// ---- cycles ----------------------------------------------------------------

Schema cycle_schema() {
  const cycles::CycleParams d;
  return {num("c", d.c, "marginal propensity to consume"),
          num("nu", d.nu, "accelerator"),
          num("A", d.A, "autonomous demand at t = 0"),
          num("g", d.g, "growth rate of autonomous demand"),
          opt_num("Y0", std::nullopt, "Y_0 (null: steady state + 1)"),
          opt_num("Y1", std::nullopt, "Y_1 (null: steady state + 1)"),
          integer("steps", 200, "last period")};
}

cycles::CycleParams cycle_params(const Json& c) {
  cycles::CycleParams p;
  p.c = get(c, "c");
  p.nu = get(c, "nu");
  p.A = get(c, "A");
  p.g = get(c, "g");
  p.Y0 = get_opt(c, "Y0");
  p.Y1 = get_opt(c, "Y1");
  p.validate();
  return p;
}

Table decomposition_table(std::span<const double> t, std::span<const double> y, int long_window, int short_window) {
  const auto d = cycles::decompose(y, long_window, short_window);
  Table out;
  out.name = "cycles";
  out.columns = {"t", "Y", "trend", "cycle", "residual"};
  for (std::size_t i = 0; i < y.size(); ++i) out.rows.push_back({t[i], y[i], d.trend[i], d.cycle[i], d.residual[i]});
  return out;
}

Report cycles_run(const Json& c, const Context&) {
  const auto p = cycle_params(c);
  const long steps = get_long(c, "steps");
  const auto floor = get_opt(c, "floor");
  const auto ceiling = get_opt(c, "ceiling");
  TimeSeries Y;
  bool explosive = false;
  if (floor || ceiling) {
    const std::array<double, 1> lo{floor.value_or(-kInf)};
    const std::array<double, 1> hi{ceiling.value_or(kInf)};
    Y = cycles::restricted_iterate(p, lo, hi, steps);
  } else {
    auto it = cycles::iterate(p, steps);
    Y = std::move(it.Y);
    explosive = it.explosive;
  }
  const auto y = Y.column(0);
  Report r;
  r.tables.push_back(decomposition_table(Y.times(), y, static_cast<int>(get_long(c, "long_window")),
                                         static_cast<int>(get_long(c, "short_window"))));
  r.summary["regime"] = cycles::to_string(cycles::characteristic_roots(p.c, p.nu).regime);
  r.summary["explosive_stop"] = explosive;
  r.summary["last_t"] = Y.times().back();
  return r;
}

Report cycles_classify(const Json& c, const Context&) {
  const auto roots = cycles::characteristic_roots(get(c, "c"), get(c, "nu"));
  Report r;
  r.summary_name = "roots";
  r.summary["lambda_re"] = roots.lambda1.real();
  r.summary["lambda_im"] = roots.lambda1.imag();
  r.summary["modulus"] = roots.modulus;
  r.summary["theta"] = roots.theta;
  r.summary["period"] = std::isfinite(roots.period) ? Json(roots.period) : Json(nullptr);
  r.summary["regime"] = cycles::to_string(roots.regime);
  return r;
}

Report cycles_closed_form(const Json& c, const Context&) {
  const auto p = cycle_params(c);
  const auto it = cycles::iterate(p, get_long(c, "steps"));
  Table t;
  t.name = "closed_form";
  t.columns = {"t", "closed_form", "iterate"};
  double worst = 0.0;
  for (std::size_t i = 0; i < it.Y.size(); ++i) {
    const double cf = cycles::closed_form(p, it.Y.time(i));
    const double y = it.Y.at(i, 0);
    worst = std::max(worst, std::abs(cf - y) / std::max(1.0, std::abs(y)));
    t.rows.push_back({it.Y.time(i), cf, y});
  }
  Report r;
  r.tables.push_back(std::move(t));
  r.summary["max_relative_error"] = worst;
  return r;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
    while (!cell.empty() && cell.front() == ' ') cell.erase(cell.begin());
    out.push_back(cell);
  }
  return out;
}

Report cycles_decompose(const Json& c, const Context&) {
  const std::string path = c.at("input").get<std::string>();
  if (path.empty()) throw_validation("missing_input", "decompose needs --input <csv>");
  std::ifstream in(path);
  if (!in) throw_validation("input_not_found", "cannot open " + path);
  std::string line;
  std::getline(in, line);
  const auto header = split_csv_line(line);
  const bool ratios = header == std::vector<std::string>{"t", "W", "L", "p", "Y", "Ls"};
  if (!ratios && header != std::vector<std::string>{"t", "value"}) {
    throw_validation("invalid_input", "input header must be t,value or t,W,L,p,Y,Ls");
  }
  std::vector<std::vector<double>> cols(header.size());
  long row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() || line == "\r") continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != header.size()) throw_validation("invalid_input", "row " + std::to_string(row) + " has the wrong width");
    for (std::size_t j = 0; j < cells.size(); ++j) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(cells[j], &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != cells[j].size() || cells[j].empty()) {
        throw_validation("invalid_input", "row " + std::to_string(row) + ": '" + cells[j] + "' is not a number");
      }
      cols[j].push_back(v);
    }
  }
  const std::vector<double>& y = ratios ? cols[4] : cols[1];
  Report r;
  r.tables.push_back(decomposition_table(cols[0], y, static_cast<int>(get_long(c, "long_window")),
                                         static_cast<int>(get_long(c, "short_window"))));
  if (ratios) {
    const auto g = cycles::great_ratios(cols[1], cols[2], cols[3], cols[4], cols[5]);
    Table t;
    t.name = "ratios";
    t.columns = {"t", "employment", "wage_share"};
    for (std::size_t i = 0; i < y.size(); ++i) t.rows.push_back({cols[0][i], g.employment[i], g.wage_share[i]});
    r.tables.push_back(std::move(t));
    r.summary["employment_plausible"] = g.employment_plausible;
    r.summary["wage_share_plausible"] = g.wage_share_plausible;
  }
  r.summary["samples"] = y.size();
  return r;
}

// ---- ghg -------------------------------------------------------------------

Schema model_schema() {
  return {choice("preset", "clathrate", {"clathrate", "albedo"}, "model preset"),
          {"rates", ParamKind::rate_map, Json::object(), "rate overrides, e.g. {\"kappa\":0.02}", {}}};
}

ghg::LinearCompartmentModel model_of(const Json& c) {
  std::map<std::string, double> ov;
  for (const auto& [k, v] : c.at("rates").items()) ov[k] = v.get<double>();
  return ghg::build_interaction_model(ghg::parse_preset(c.at("preset").get<std::string>()), ov);
}

std::optional<double> try_critical_gain(const ghg::LinearCompartmentModel& m, double lo, double hi, double tol) {
  try {
    return ghg::critical_gain([&](double g) { return m.with_gain(g); }, lo, hi, tol);
  } catch (const Error& e) {
    if (e.code() != "no_crossing") throw;
    return std::nullopt;
  }
}

Report ghg_gwp(const Json& c, const Context&) {
  ghg::GwpSpec s;
  s.TH = get(c, "horizon");
  s.gas = {get_opt(c, "half_life"), get(c, "amount")};
  s.reference = {get_opt(c, "reference_half_life"), get(c, "reference_amount")};
  s.a_ratio = get(c, "a_ratio");
  Report r;
  r.summary_name = "gwp";
  r.summary["gwp"] = ghg::gwp(s);
  r.summary["closed_form"] = ghg::gwp_closed_form(s);
  return r;
}

Report ghg_stability(const Json& c, const Context&) {
  const auto m = model_of(c);
  const auto s = ghg::stability(m.A);
  Report r;
  r.summary_name = "stability";
  Json eigs = Json::array();
  for (const auto& e : s.eigenvalues) eigs.push_back({e.real(), e.imag()});
  r.summary["eigs"] = std::move(eigs);
  r.summary["stable"] = s.stable;
  const auto gc = try_critical_gain(m, 0.0, get(c, "gain_max"), 1e-9);
  r.summary["g_crit"] = gc ? Json(*gc) : Json(nullptr);
  return r;
}

Report ghg_critical_gain(const Json& c, const Context&) {
  const auto m = model_of(c);
  const double gc = ghg::critical_gain([&](double g) { return m.with_gain(g); }, get(c, "lo"), get(c, "hi"), get(c, "tol"));
  Report r;
  r.summary_name = "critical_gain";
  r.summary["g_crit"] = gc;
  if (const auto h = get_opt(c, "onset_horizon")) {
    const auto& x0j = c.at("x0");
    std::vector<double> x0(m.size(), 0.0);
    if (x0j.is_null()) {
      x0[m.feedback_row] = 1.0;
    } else {
      x0 = x0j.get<std::vector<double>>();
    }
    const double onset = ghg::divergence_onset(m, x0, 0.5 * gc, get(c, "hi"), *h);
    r.summary["simulated_onset"] = onset;
    r.summary["onset_relative_error"] = onset / gc - 1.0;
  }
  return r;
}

Report ghg_simulate(const Json& c, const Context&) {
  auto m = model_of(c);
  std::vector<double> x0(m.size(), 0.0);
  if (!c.at("x0").is_null()) x0 = c.at("x0").get<std::vector<double>>();
  ghg::SimOptions o;
  o.horizon = get(c, "horizon");
  o.threshold_mode = c.at("threshold_mode").get<bool>();
  o.divergence_factor = get(c, "divergence_factor");
  o.input_stop = get_opt(c, "input_stop").value_or(kInf);
  o.sample_interval = get(c, "sample_interval");
  const auto out = ghg::simulate_compartments(m, x0, o);
  Report r;
  r.tables.push_back(Table::from_series("trajectory", out.trajectory, "t", m.names));
  r.summary["classification"] = ghg::to_string(out.classification);
  r.summary["divergence_time"] = out.divergence_time ? Json(*out.divergence_time) : Json(nullptr);
  return r;
}

std::vector<Command> build() {
  std::vector<Command> v;
  const Schema tip = tipping_schema();
  v.push_back({"tipping", "run", "one Langevin trajectory under the alpha schedule", tip, tipping_run});
  v.push_back({"tipping", "hysteresis", "forward/return tipping fractions over seeds",
               concat(tip, {integer("n_seeds", 100, "number of seeds")}), tipping_hysteresis});
  v.push_back({"tipping", "critical-alpha", "alpha at which the low well vanishes",
               {choice("mode", "tilted", {"tilted", "coupled"}, "potential family")}, tipping_critical_alpha});

  v.push_back({"glass", "run", "equilibrate and run MD; thermo and displacement tables",
               concat(glass_schema(0.5), {num("displacement_threshold", 0.5, "mobile particle cutoff")}), glass_run});
  v.push_back({"glass", "msd", "mean squared displacement of a production run", glass_schema(0.5), glass_msd});
  v.push_back({"glass", "scaling-check", "reduced MSD at a state point and its isomorph image",
               concat(glass_schema(0.4), {num("density2", 1.05, "density of the image state"),
                                          num("reduced_time_max", 2.0, "longest reduced time compared")}),
               glass_scaling_check});

  const Schema exo = concat(protocol_schema(), kinetic_schema());
  v.push_back({"exo", "run", "pool trajectories under a Ca protocol", exo, exo_run});
  v.push_back({"exo", "resting", "steady state at constant Ca",
               concat({num("C_md", 0.1, "microdomain Ca"), opt_num("C_i", std::nullopt, "cytosolic Ca (null: from C_md)"),
                       num("C_i_basal", 0.05, "basal cytosolic Ca"), num("ratio_i_to_md", 0.01, "C_i increment per unit C_md"),
                       choice("variant", "mass_action_corrected", {"mass_action_corrected", "paper_verbatim"}, "equation variant")},
                      kinetic_schema()),
               exo_resting});
  v.push_back({"exo", "metrics", "peak, nadir and plateau of the secretion rate", exo, exo_metrics});

  const Schema windows{integer("long_window", 41, "trend window (odd)"), integer("short_window", 5, "cycle window (odd)")};
  v.push_back({"cycles", "run", "iterate the recurrence and decompose the path",
               concat(concat(cycle_schema(), windows), {opt_num("floor", std::nullopt, "floor as a multiple of the growth path"),
                                                        opt_num("ceiling", std::nullopt, "ceiling as a multiple of the growth path")}),
               cycles_run});
  v.push_back({"cycles", "classify", "characteristic roots and regime",
               {num("c", 0.6, "marginal propensity to consume"), num("nu", 1.2, "accelerator")}, cycles_classify});
  v.push_back({"cycles", "closed-form", "closed-form path against the recurrence", cycle_schema(), cycles_closed_form});
  v.push_back({"cycles", "decompose", "trend/cycle split of an input series",
               concat({text("input", "", "CSV with t,value or t,W,L,p,Y,Ls")}, windows), cycles_decompose});

  v.push_back({"ghg", "gwp", "global warming potential of a decaying gas",
               {num("horizon", 100.0, "time horizon TH (years)"), opt_num("half_life", ghg::kMethaneHalfLife, "gas half-life (null: constant)"),
                num("amount", 1.0, "gas abundance"), opt_num("reference_half_life", std::nullopt, "reference half-life (null: constant)"),
                num("reference_amount", 1.0, "reference abundance"), num("a_ratio", 1.0, "radiative efficiency ratio")},
               ghg_gwp});
  v.push_back({"ghg", "stability", "eigenvalues of a preset and its critical gain",
               concat(model_schema(), {num("gain_max", 10.0, "upper end of the gain search")}), ghg_stability});
  v.push_back({"ghg", "critical-gain", "feedback gain where the preset loses stability",
               concat(model_schema(), {num("lo", 0.0, "bracket low"), num("hi", 10.0, "bracket high"), num("tol", 1e-6, "bisection tolerance"),
                                       opt_num("onset_horizon", std::nullopt, "also bisect the simulated onset over this horizon"),
                                       {"x0", ParamKind::number_list, nullptr, "initial state for the onset (null: unit pulse on the feedback row)", {}}}),
               ghg_critical_gain});
  v.push_back({"ghg", "simulate", "integrate a preset",
               concat(model_schema(), {{"x0", ParamKind::number_list, nullptr, "initial state (null: zeros)", {}},
                                       num("horizon", 500.0, "years"), flag("threshold_mode", false, "release only above the threshold"),
                                       opt_num("input_stop", std::nullopt, "time the input switches off (null: never)"),
                                       num("sample_interval", 1.0, "output spacing (years)"),
                                       num("divergence_factor", 1e3, "runaway bound relative to the initial scale")}),
               ghg_simulate});
  return v;
}

}  // namespace

const std::vector<Command>& commands() {
  static const std::vector<Command> all = build();
  return all;
}

}  // namespace scalebench::app
