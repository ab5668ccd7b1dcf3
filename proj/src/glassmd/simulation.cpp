#include "scalebench/glassmd/simulation.hpp"

#include <cmath>
#include <string>

#include "scalebench/core/error.hpp"

namespace scalebench::glassmd {

void RunSpec::validate() const {
  if (!(dt > 0.0)) throw_validation("invalid_run", "dt must be > 0");
  if (steps < 0) throw_validation("invalid_run", "steps must be >= 0");
  if (ensemble == Ensemble::langevin && (!(gamma > 0.0) || !(T_target > 0.0))) {
    throw_validation("invalid_run", "Langevin runs need gamma > 0 and T_target > 0");
  }
}

double kinetic_temperature(std::span<const Vec2> velocity, double mass) {
  const std::size_t n = velocity.size();
  if (n < 2) throw_validation("invalid_configuration", "kinetic temperature needs N >= 2");
  double s = 0.0;
  for (const Vec2& v : velocity) s += dot(v, v);
  return mass * s / (2.0 * static_cast<double>(n) - 2.0);
}

Simulation::Simulation(Configuration config, const PotentialSpec& spec, double skin)
    : spec_(spec),
      table_(spec),
      config_(std::move(config)),
      list_(spec, skin),
      max_step_(0.5 * spec.r_cut * spec.sigma * spec.min_sigma_ij()) {
  config_.validate();
  list_.build(config_);
  refresh_forces();
}

void Simulation::refresh_forces() { potential_ = compute_forces(config_, table_, list_, forces_); }

Thermo Simulation::advance(double dt, std::span<const Vec2> extra) {
  const std::size_t n = config_.size();
  const double inv_m = 1.0 / config_.mass;
  onstep_.resize(n);
  Thermo th;
  th.t = config_.t;
  th.potential = potential_;
  double twice_k = 0.0;
  Vec2 p{};
  for (std::size_t i = 0; i < n; ++i) {
    Vec2 a = forces_[i];
    if (!extra.empty()) a = a + extra[i];
    const Vec2 v_new = config_.velocity[i] + (dt * inv_m) * a;
    const Vec2 v_on = 0.5 * (config_.velocity[i] + v_new);
    twice_k += dot(v_on, v_on);
    onstep_[i] = v_on;
    const double step = std::sqrt(dot(v_new, v_new)) * dt;
    if (!(step <= max_step_)) {
      throw_numerical("numerical_blowup", "particle " + std::to_string(i) + " moved " + std::to_string(step) +
                                              " in one step at t=" + std::to_string(config_.t));
    }
    config_.velocity[i] = v_new;
    config_.unwrapped[i] = config_.unwrapped[i] + dt * v_new;
    config_.position[i] = {wrap(config_.position[i].x + dt * v_new.x, config_.L),
                           wrap(config_.position[i].y + dt * v_new.y, config_.L)};
    p = p + v_new;
  }
  th.kinetic = 0.5 * config_.mass * twice_k;
  th.temperature = kinetic_temperature(onstep_, config_.mass);
  th.momentum = config_.mass * p;
  config_.t += dt;
  if (list_.needs_rebuild(config_)) list_.build(config_);
  refresh_forces();
  return th;
}

Thermo Simulation::leapfrog_step(double dt) {
  if (!(dt > 0.0)) throw_validation("invalid_run", "dt must be > 0");
  return advance(dt, {});
}

Thermo Simulation::langevin_step(double dt, double T_target, double gamma, RngStream& rng) {
  if (!(dt > 0.0) || !(gamma > 0.0) || !(T_target >= 0.0)) {
    throw_validation("invalid_run", "Langevin step needs dt > 0, gamma > 0, T_target >= 0");
  }
  const double noise = std::sqrt(2.0 * gamma * T_target / dt);
  kick_.resize(config_.size());
  for (std::size_t i = 0; i < config_.size(); ++i) {
    const Vec2& v = config_.velocity[i];
    const double xi_x = rng.normal();
    const double xi_y = rng.normal();
    kick_[i] = {-gamma * v.x + noise * xi_x, -gamma * v.y + noise * xi_y};
  }
  return advance(dt, kick_);
}

Thermo Simulation::step(const RunSpec& spec, RngStream& rng) {
  if (spec.ensemble == Ensemble::langevin) return langevin_step(spec.dt, spec.T_target, spec.gamma, rng);
  return leapfrog_step(spec.dt);
}

void Simulation::reverse_time(double dt) {
  const double s = dt / config_.mass;
  for (std::size_t i = 0; i < config_.size(); ++i) {
    config_.velocity[i] = -1.0 * (config_.velocity[i] + s * forces_[i]);
  }
}

void Simulation::zero_momentum() {
  Vec2 p{};
  for (const Vec2& v : config_.velocity) p = p + v;
  const Vec2 mean = (1.0 / static_cast<double>(config_.size())) * p;
  for (Vec2& v : config_.velocity) v = v - mean;
}

void Simulation::set_velocities(std::span<const Vec2> velocity) {
  if (velocity.size() != config_.size()) throw_validation("invalid_configuration", "velocity count mismatch");
  config_.velocity.assign(velocity.begin(), velocity.end());
}

}  // namespace scalebench::glassmd
