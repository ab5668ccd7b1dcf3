#include "scalebench/glassmd/run.hpp"

#include <algorithm>
#include <cmath>

#include "scalebench/core/error.hpp"
#include "scalebench/core/rng.hpp"
#include "scalebench/glassmd/observables.hpp"

namespace scalebench::glassmd {

void MdConfig::validate() const {
  if (!(temperature > 0.0)) throw_validation("invalid_run", "temperature must be > 0");
  if (!(equilibration_time >= 0.0)) throw_validation("invalid_run", "equilibration_time must be >= 0");
  if (steps < 1) throw_validation("invalid_run", "steps must be >= 1");
  if (thermo_interval < 1) throw_validation("invalid_run", "thermo_interval must be >= 1");
  if (msd_per_decade < 1) throw_validation("invalid_run", "msd_per_decade must be >= 1");
  if (msd_origin_interval < 0) throw_validation("invalid_run", "msd_origin_interval must be >= 0");
  RunSpec{ensemble, temperature, gamma, dt, steps, seed}.validate();
  if (!(gamma > 0.0)) throw_validation("invalid_run", "gamma must be > 0");
}

Configuration equilibrate(const MdConfig& cfg, const Progress& progress) {
  cfg.validate();
  Simulation sim(init_configuration(cfg.N, cfg.fraction_A, cfg.density, cfg.temperature, cfg.seed), {}, cfg.skin);
  RngStream rng = RngStream::derive(cfg.seed, 1);
  const long n = std::lround(cfg.equilibration_time / cfg.dt);
  for (long k = 1; k <= n; ++k) {
    sim.langevin_step(cfg.dt, cfg.temperature, cfg.gamma, rng);
    if (progress && k % 10000 == 0) progress(k, n);
  }
  sim.zero_momentum();
  Configuration c = sim.configuration();
  c.t = 0.0;
  return c;
}

MdResult run_from(const Configuration& start, const MdConfig& cfg, const Progress& progress) {
  cfg.validate();
  Simulation sim(start, {}, cfg.skin);
  RngStream rng = RngStream::derive(cfg.seed, 2);
  const RunSpec spec{cfg.ensemble, cfg.temperature, cfg.gamma, cfg.dt, cfg.steps, cfg.seed};
  MdResult out{TimeSeries(6), TimeSeries(3), start, {}};
  MsdSampler sampler(log_spaced_lags(cfg.steps, cfg.msd_per_decade), cfg.msd_origin_interval);
  sampler.observe(0, sim.configuration());
  for (long k = 1; k <= cfg.steps; ++k) {
    const Thermo th = sim.step(spec, rng);
    if ((k - 1) % cfg.thermo_interval == 0) {
      out.thermo.append(th.t, std::array{th.potential, th.kinetic, th.total(), th.temperature, th.momentum.x,
                                         th.momentum.y});
    }
    sampler.observe(k, sim.configuration());
    if (progress && k % 10000 == 0) progress(k, cfg.steps);
  }
  out.msd = sampler.result(cfg.dt);
  out.end = sim.configuration();
  return out;
}

MdResult run_md(const MdConfig& cfg, const Progress& progress) { return run_from(equilibrate(cfg, progress), cfg, progress); }

namespace {

TimeSeries reduced_msd(const Configuration& start, double dt, long steps, const ReducedScaling& s, double skin) {
  Simulation sim(start, {}, skin);
  MsdSampler sampler(log_spaced_lags(steps, 10), 0);
  sampler.observe(0, sim.configuration());
  for (long k = 1; k <= steps; ++k) {
    sim.leapfrog_step(dt);
    sampler.observe(k, sim.configuration());
  }
  const TimeSeries raw = sampler.result(dt);
  TimeSeries out(1);
  for (std::size_t i = 0; i < raw.size(); ++i) {
    out.append(raw.time(i) / s.time_scale, std::array{raw.at(i, 0) / (s.length_scale * s.length_scale)});
  }
  return out;
}

}  // namespace

ScalingCheck scaling_check(const MdConfig& base, double density2, double reduced_time_max, const Progress& progress) {
  base.validate();
  if (!(density2 > 0.0) || !(reduced_time_max > 0.0)) {
    throw_validation("invalid_run", "scaling check needs density2 > 0 and reduced_time_max > 0");
  }
  const PotentialSpec pot;
  const Configuration c1 = equilibrate(base, progress);
  const ScaledConfiguration c2 = scale_to_density(c1, density2, pot.exponent);

  const StatePoint s1{base.density, base.temperature, 2};
  const double ratio = c1.density() / density2;  // lambda^2
  const StatePoint s2{density2, base.temperature * std::pow(ratio, -0.5 * pot.exponent), 2};
  const ReducedScaling r1 = reduced_scaling(s1, pot.exponent);
  const ReducedScaling r2 = reduced_scaling(s2, pot.exponent);

  const long steps = std::max(1L, std::lround(std::ceil(reduced_time_max * r1.time_scale / base.dt)));
  ScalingCheck out;
  out.reference = reduced_msd(c1, base.dt, steps, r1, base.skin);
  out.scaled = reduced_msd(c2.config, base.dt * c2.time_factor, steps, r2, base.skin);
  out.gamma_reference = r1.gamma;
  out.gamma_scaled = r2.gamma;
  for (std::size_t i = 0; i < out.reference.size(); ++i) {
    const double a = out.reference.at(i, 0);
    out.max_relative_error = std::max(out.max_relative_error, std::abs(out.scaled.at(i, 0) - a) / a);
  }
  return out;
}

}  // namespace scalebench::glassmd
