#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "scalebench/core/error.hpp"
#include "scalebench/core/rng.hpp"
#include "scalebench/glassmd/configuration.hpp"
#include "scalebench/glassmd/neighbors.hpp"
#include "scalebench/glassmd/observables.hpp"
#include "scalebench/glassmd/run.hpp"
#include "scalebench/glassmd/simulation.hpp"

using namespace scalebench;
using namespace scalebench::glassmd;

namespace {

// Random packing without hard overlaps: sequential insertion with a minimum
// separation, so forces stay finite.
Configuration random_packing(int N, double L, std::uint64_t seed, double min_sep = 0.75) {
  RngStream rng(seed);
  Configuration c;
  c.L = L;
  while (static_cast<int>(c.size()) < N) {
    const Vec2 p{L * rng.uniform(), L * rng.uniform()};
    bool ok = true;
    for (const Vec2& q : c.position) {
      const Vec2 d = minimum_image(p - q, L);
      if (dot(d, d) < min_sep * min_sep) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    c.position.push_back(p);
    c.unwrapped.push_back(p);
    c.velocity.push_back({rng.normal(), rng.normal()});
    c.species.push_back(rng.uniform() < 0.7 ? Species::A : Species::B);
  }
  return c;
}

// Non-interacting particles: spacing far beyond the interaction range.
Configuration dilute_gas(int side, double spacing, double T, std::uint64_t seed) {
  Configuration c;
  c.L = side * spacing;
  RngStream rng(seed);
  for (int i = 0; i < side * side; ++i) {
    const Vec2 p{(0.5 + i % side) * spacing, (0.5 + i / side) * spacing};
    c.position.push_back(p);
    c.unwrapped.push_back(p);
    c.velocity.push_back({std::sqrt(T) * rng.normal(), std::sqrt(T) * rng.normal()});
    c.species.push_back(Species::A);
  }
  return c;
}

// One particle per row, rows 2.5 apart, moving along x only: the pairs never
// come within interaction range.
Configuration row_gas(int n, double T, std::uint64_t seed) {
  Configuration c;
  c.L = 2.5 * n;
  RngStream rng(seed);
  for (int i = 0; i < n; ++i) {
    const Vec2 p{c.L * rng.uniform(), 2.5 * (i + 0.5)};
    c.position.push_back(p);
    c.unwrapped.push_back(p);
    c.velocity.push_back({std::sqrt(T) * rng.normal(), 0.0});
    c.species.push_back(i % 2 ? Species::A : Species::B);
  }
  return c;
}

Configuration liquid(int N, double T, long steps, std::uint64_t seed) {
  Simulation sim(init_configuration(N, 0.7, 1.0, T, seed));
  RngStream rng(seed + 1);
  for (long k = 0; k < steps; ++k) sim.langevin_step(0.002, T, 1.0, rng);
  sim.zero_momentum();
  return sim.configuration();
}

}  // namespace

TEST_CASE("pair_energy examples") {
  const PotentialSpec p;
  CHECK(pair_energy(1.5, p) == 0.0);
  CHECK(pair_energy(2.0, p) == 0.0);
  CHECK(pair_energy(1.0, p) == doctest::Approx(1.0 - std::pow(1.5, -18)).epsilon(1e-15));
  CHECK(pair_energy(1.0, p) == doctest::Approx(0.999323).epsilon(1e-6));
  CHECK_THROWS_AS((void)pair_energy(0.0, p), Error);
  CHECK_THROWS_AS((void)pair_energy(-1.0, p), Error);
}

TEST_CASE("pair_force_magnitude examples") {
  const PotentialSpec p;
  CHECK(pair_force_magnitude(1.0, 1.0, p) == doctest::Approx(18.0));
  CHECK(pair_force_magnitude(1.5, 1.0, p) == 0.0);
  CHECK(pair_force_magnitude(1.7, 0.9, p) == 0.0);
  // Central difference of the energy in absolute distance r * sigma_ij.
  for (double sij : {1.0, 0.9, 1.1}) {
    const double r = 1.2, h = 1e-6;
    const double fd = -(pair_energy(r + h, p) - pair_energy(r - h, p)) / (2 * h) / sij;
    CHECK(std::abs(pair_force_magnitude(r, sij, p) - fd) / fd < 1e-8);
  }
  CHECK_THROWS_AS((void)pair_force_magnitude(0.0, 1.0, p), Error);
}

TEST_CASE("init_configuration") {
  const auto c = init_configuration(1600, 0.7, 1.0, 0.5, 3);
  CHECK(c.L == doctest::Approx(40.0).epsilon(1e-15));
  CHECK(c.count(Species::A) == 1120);
  CHECK(c.count(Species::B) == 480);
  Vec2 p{};
  for (const Vec2& v : c.velocity) p = p + v;
  CHECK(std::abs(p.x) < 1e-12);
  CHECK(std::abs(p.y) < 1e-12);
  CHECK(kinetic_temperature(c.velocity, c.mass) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK_NOTHROW(c.validate());

  const auto cold = init_configuration(400, 0.7, 1.0, 0.0, 3);
  CHECK(kinetic_temperature(cold.velocity, cold.mass) == 0.0);

  CHECK_THROWS_AS((void)init_configuration(1599, 0.7, 1.0, 0.5, 3), Error);
  CHECK_THROWS_AS((void)init_configuration(400, 0.7, 5.0, 0.5, 3), Error);
  CHECK_THROWS_AS((void)init_configuration(400, 1.0, 1.0, 0.5, 3), Error);
}

TEST_CASE("kinetic_temperature uses dN - d degrees of freedom") {
  std::vector<Vec2> v(1600, Vec2{1.0, 0.0});
  CHECK(kinetic_temperature(v, 1.0) == doctest::Approx(1600.0 / 3198.0).epsilon(1e-15));
  std::vector<Vec2> zero(10);
  CHECK(kinetic_temperature(zero, 1.0) == 0.0);
  CHECK_THROWS_AS((void)kinetic_temperature(std::vector<Vec2>(1), 1.0), Error);
}

TEST_CASE("wrap and minimum image") {
  CHECK(wrap(-0.5, 10.0) == doctest::Approx(9.5));
  CHECK(wrap(10.0, 10.0) == 0.0);
  CHECK(wrap(23.0, 10.0) == doctest::Approx(3.0));
  CHECK(wrap(-1e-18, 10.0) < 10.0);
  const Vec2 d = minimum_image({9.0, -6.0}, 10.0);
  CHECK(d.x == doctest::Approx(-1.0));
  CHECK(d.y == doctest::Approx(4.0));
}

TEST_CASE("snapshot round trip is bit exact") {
  Simulation sim(init_configuration(100, 0.7, 1.0, 0.7, 9));
  for (int k = 0; k < 50; ++k) sim.leapfrog_step(0.002);
  const Configuration& c = sim.configuration();
  std::stringstream ss;
  write_snapshot(ss, c);
  const std::string text = ss.str();
  CHECK(text.rfind("N 100\nL 10\nt ", 0) == 0);
  const Configuration back = read_snapshot(ss);
  REQUIRE(back.size() == c.size());
  CHECK(back.L == c.L);
  CHECK(back.t == c.t);
  for (std::size_t i = 0; i < c.size(); ++i) {
    CHECK(back.species[i] == c.species[i]);
    CHECK(back.position[i].x == c.position[i].x);
    CHECK(back.position[i].y == c.position[i].y);
    CHECK(back.unwrapped[i].x == c.unwrapped[i].x);
    CHECK(back.velocity[i].y == c.velocity[i].y);
  }
  std::stringstream bad("N 2\nL 5\nt 0\nA 1 1 1 1 0 0\n");
  CHECK_THROWS_AS((void)read_snapshot(bad), Error);
}

TEST_CASE("neighbor list: two particles") {
  Configuration c;
  c.L = 10.0;
  c.position = {{1.0, 1.0}, {2.2, 1.0}};
  c.unwrapped = c.position;
  c.velocity = {{0, 0}, {0, 0}};
  c.species = {Species::A, Species::A};
  NeighborList list(PotentialSpec{}, 0.3);
  list.build(c);
  CHECK(list.pair_count() == 1);
  CHECK(list.partners(0).size() == 1);
  CHECK(list.partners(0)[0] == 1);

  c.position[1] = {5.0, 5.0};
  list.build(c);
  CHECK(list.pair_count() == 0);
}

TEST_CASE("neighbor-list forces match all pairs on random packings") {
  const PotentialSpec spec;
  const PairTable table(spec);
  for (int trial = 0; trial < 20; ++trial) {
    const int N = 20 + 9 * trial;  // 20..191
    const double L = std::sqrt(N / 0.8);
    const Configuration c = random_packing(N, L, 100 + trial);
    NeighborList list(spec, 0.3);
    list.build(c);
    std::vector<Vec2> f1, f2;
    const double u1 = compute_forces(c, table, list, f1);
    const double u2 = compute_forces_all_pairs(c, table, f2);
    double scale = 1.0;
    for (const Vec2& f : f2) scale = std::max(scale, std::sqrt(dot(f, f)));
    double worst = 0.0;
    for (int i = 0; i < N; ++i) worst = std::max({worst, std::abs(f1[i].x - f2[i].x), std::abs(f1[i].y - f2[i].y)});
    CHECK(worst <= 1e-12 * scale);
    CHECK(std::abs(u1 - u2) <= 1e-12 * std::max(1.0, std::abs(u2)));
    if (L < 3 * (spec.max_range() + 0.3)) {
      CHECK_FALSE(list.used_cells());
    } else {
      CHECK(list.used_cells());
    }
  }
}

TEST_CASE("neighbor list is rebuilt after skin/2 motion") {
  Configuration c = dilute_gas(4, 5.0, 0.0, 1);
  NeighborList list(PotentialSpec{}, 0.3);
  list.build(c);
  CHECK_FALSE(list.needs_rebuild(c));
  c.unwrapped[2].x += 0.14;
  CHECK_FALSE(list.needs_rebuild(c));
  c.unwrapped[2].x += 0.02;
  CHECK(list.needs_rebuild(c));
}

TEST_CASE("boxes too small for a single image are refused") {
  Configuration c = dilute_gas(2, 1.5, 0.0, 1);
  NeighborList list(PotentialSpec{}, 0.3);
  CHECK_THROWS_AS(list.build(c), Error);
}

TEST_CASE("leapfrog: free flight is uniform motion") {
  Simulation sim(row_gas(12, 1.0, 4));
  const Configuration start = sim.configuration();
  const double dt = 0.01;
  const int steps = 1000;
  for (int k = 0; k < steps; ++k) sim.leapfrog_step(dt);
  const Configuration& c = sim.configuration();
  for (std::size_t i = 0; i < c.size(); ++i) {
    const Vec2 d = c.unwrapped[i] - start.unwrapped[i];
    CHECK(std::abs(d.x - start.velocity[i].x * dt * steps) < 1e-10);
    CHECK(std::abs(d.y - start.velocity[i].y * dt * steps) < 1e-10);
    const Vec2 img = c.unwrapped[i] - c.position[i];
    CHECK(std::abs(img.x / c.L - std::round(img.x / c.L)) < 1e-12);
    CHECK(std::abs(img.y / c.L - std::round(img.y / c.L)) < 1e-12);
  }
  CHECK(c.t == doctest::Approx(10.0));
}

TEST_CASE("leapfrog: NVE energy and momentum") {
  Simulation sim(liquid(400, 0.5, 10000, 21));
  double E0 = 0.0, worst = 0.0;
  Vec2 p0{};
  double dp = 0.0;
  for (int k = 0; k < 5000; ++k) {
    const Thermo th = sim.leapfrog_step(0.002);
    if (k == 0) {
      E0 = th.total();
      p0 = th.momentum;
    }
    worst = std::max(worst, std::abs(th.total() - E0) / std::abs(E0));
    dp = std::max({dp, std::abs(th.momentum.x - p0.x), std::abs(th.momentum.y - p0.y)});
  }
  CHECK(worst < 1e-3);
  CHECK(dp < 1e-10);
}

TEST_CASE("leapfrog: time reversal retraces positions") {
  Simulation sim(liquid(400, 0.5, 5000, 5));
  const Configuration start = sim.configuration();
  const double dt = 0.002;
  for (int k = 0; k < 1000; ++k) sim.leapfrog_step(dt);
  sim.reverse_time(dt);
  for (int k = 0; k < 1000; ++k) sim.leapfrog_step(dt);
  double worst = 0.0;
  for (std::size_t i = 0; i < start.size(); ++i) {
    const Vec2 d = sim.configuration().unwrapped[i] - start.unwrapped[i];
    worst = std::max({worst, std::abs(d.x), std::abs(d.y)});
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("leapfrog: runaway step is a numerical error") {
  Configuration c = dilute_gas(3, 6.0, 0.0, 1);
  c.velocity[0] = {1000.0, 0.0};
  Simulation sim(c);
  CHECK_THROWS_AS(sim.leapfrog_step(0.01), Error);
}

TEST_CASE("langevin: on-step velocities are Maxwell-Boltzmann (chi-square)") {
  const double T = 1.5;
  Simulation sim(dilute_gas(20, 4.0, 0.0, 2));
  RngStream rng(31);
  const double dt = 0.01, gamma = 10.0;
  for (int k = 0; k < 500; ++k) sim.langevin_step(dt, T, gamma, rng);
  // 13 edges at -3..3 (sigma units) -> 14 bins.
  std::vector<double> edges;
  for (int k = 0; k <= 12; ++k) edges.push_back(-3.0 + 0.5 * k);
  std::vector<long> counts(edges.size() + 1, 0);
  long samples = 0;
  while (samples < 100000) {
    for (int k = 0; k < 50; ++k) sim.langevin_step(dt, T, gamma, rng);
    for (const Vec2& v : sim.onstep_velocities()) {
      for (double z : {v.x / std::sqrt(T), v.y / std::sqrt(T)}) {
        ++counts[std::upper_bound(edges.begin(), edges.end(), z) - edges.begin()];
        ++samples;
      }
    }
  }
  auto cdf = [](double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); };
  double chi2 = 0.0;
  for (std::size_t b = 0; b < counts.size(); ++b) {
    const double lo = b == 0 ? 0.0 : cdf(edges[b - 1]);
    const double hi = b == edges.size() ? 1.0 : cdf(edges[b]);
    const double expected = samples * (hi - lo);
    chi2 += (counts[b] - expected) * (counts[b] - expected) / expected;
  }
  CHECK(chi2 < 27.69);  // chi-square, 13 dof, 1% level
}

TEST_CASE("langevin: ideal gas equipartition") {
  Simulation sim(dilute_gas(20, 4.0, 0.0, 3));
  RngStream rng(8);
  double sum = 0.0;
  const int burn = 2000, steps = 20000;
  for (int k = 0; k < burn + steps; ++k) {
    const Thermo th = sim.langevin_step(0.005, 1.0, 1.0, rng);
    if (k >= burn) sum += th.temperature;
  }
  CHECK(sum / steps == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("langevin: stationary at the current temperature") {
  Simulation sim(liquid(400, 1.0, 10000, 13));
  RngStream rng(4);
  double sum = 0.0;
  for (int k = 0; k < 5000; ++k) sum += sim.langevin_step(0.002, 1.0, 1.0, rng).temperature;
  CHECK(sum / 5000 == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("langevin: fixed seed gives an identical trajectory") {
  const Configuration start = init_configuration(100, 0.7, 1.0, 1.0, 2);
  auto run = [&] {
    Simulation sim(start);
    RngStream rng(77);
    for (int k = 0; k < 300; ++k) sim.langevin_step(0.002, 1.0, 1.0, rng);
    return sim.configuration();
  };
  const Configuration a = run(), b = run();
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a.unwrapped[i].x == b.unwrapped[i].x);
    CHECK(a.velocity[i].y == b.velocity[i].y);
  }
}

TEST_CASE("log_spaced_lags") {
  const auto lags = log_spaced_lags(1000, 10);
  CHECK(lags.front() == 1);
  CHECK(lags.back() == 1000);
  CHECK(std::is_sorted(lags.begin(), lags.end()));
  CHECK(std::adjacent_find(lags.begin(), lags.end()) == lags.end());
  CHECK(log_spaced_lags(1, 5) == std::vector<long>{1});
  CHECK_THROWS_AS((void)log_spaced_lags(0, 5), Error);
}

TEST_CASE("msd: species columns") {
  Configuration c = dilute_gas(4, 5.0, 1.0, 2);
  MsdSampler sampler({1, 2});
  Simulation sim(c);
  sampler.observe(0, sim.configuration());
  sim.leapfrog_step(0.01);
  sampler.observe(1, sim.configuration());
  sim.leapfrog_step(0.01);
  sampler.observe(2, sim.configuration());
  const TimeSeries m = sampler.result(0.01);
  REQUIRE(m.size() == 2);
  CHECK(m.at(0, 1) == doctest::Approx(m.at(0, 0)).epsilon(1e-12));
  CHECK(std::isnan(m.at(0, 2)));
}

TEST_CASE("msd: free flight is ballistic") {
  Simulation sim(row_gas(16, 1.0, 6));
  double v2 = 0.0;
  for (const Vec2& v : sim.configuration().velocity) v2 += dot(v, v);
  v2 /= static_cast<double>(sim.configuration().size());
  const double dt = 0.01;
  MsdSampler sampler(log_spaced_lags(400, 5), 50);
  std::vector<Configuration> samples{sim.configuration()};
  sampler.observe(0, sim.configuration());
  for (long k = 1; k <= 400; ++k) {
    sim.leapfrog_step(dt);
    sampler.observe(k, sim.configuration());
    if (k % 100 == 0) samples.push_back(sim.configuration());
  }
  const TimeSeries a = sampler.result(dt);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a.at(i, 0) == doctest::Approx(v2 * a.time(i) * a.time(i)).epsilon(1e-9));
    CHECK(std::isfinite(a.at(i, 1)));
    CHECK(std::isfinite(a.at(i, 2)));
  }
  const TimeSeries b = msd(samples);
  REQUIRE(b.size() == 4);
  for (std::size_t i = 0; i < b.size(); ++i) {
    CHECK(b.at(i, 0) == doctest::Approx(v2 * b.time(i) * b.time(i)).epsilon(1e-9));
  }
}

TEST_CASE("msd: ballistic limit in a liquid") {
  const double T = 1.0;
  Simulation sim(liquid(400, T, 5000, 17));
  const double dt = 0.0005;
  const double t0 = collision_time({1.0, T, 2});
  const long max_lag = static_cast<long>(0.1 * t0 / dt);
  MsdSampler sampler(log_spaced_lags(max_lag, 10), 20);
  sampler.observe(0, sim.configuration());
  for (long k = 1; k <= 4000; ++k) {
    sim.leapfrog_step(dt);
    sampler.observe(k, sim.configuration());
  }
  const TimeSeries m = sampler.result(dt);
  for (std::size_t i = 0; i < m.size(); ++i) {
    CHECK(m.at(i, 0) / (m.time(i) * m.time(i)) == doctest::Approx(2.0 * T).epsilon(0.1));
  }
}

TEST_CASE("diffusion_coefficient") {
  TimeSeries pure(3), plateau(3), ballistic(3);
  for (int k = 0; k <= 40; ++k) {
    const double t = std::pow(10.0, -2.0 + k / 10.0);
    pure.append(t, std::array{4.0 * t, 4.0 * t, 4.0 * t});
    const double y = t < 1.0 ? 0.05 : 4.0 * t;
    plateau.append(t, std::array{y, y, y});
    ballistic.append(t, std::array{t * t, t * t, t * t});
  }
  auto a = diffusion_coefficient(pure, 2);
  CHECK(a.converged);
  CHECK(a.D == doctest::Approx(1.0).epsilon(1e-12));
  auto b = diffusion_coefficient(plateau, 2);
  CHECK(b.converged);
  CHECK(b.D == doctest::Approx(1.0).epsilon(1e-12));
  auto c = diffusion_coefficient(ballistic, 2);
  CHECK_FALSE(c.converged);
  CHECK(c.loglog_slope == doctest::Approx(2.0));
  CHECK_FALSE(diffusion_coefficient(TimeSeries(3), 2).converged);
}

TEST_CASE("displacement_field") {
  const Configuration a = init_configuration(100, 0.7, 1.0, 1.0, 1);
  auto same = displacement_field(a, a);
  for (double m : same.magnitude) CHECK(m == 0.0);
  CHECK(same.mobile_fraction == 0.0);
  Configuration b = a;
  for (Vec2& u : b.unwrapped) u.x += 1.0;
  auto shifted = displacement_field(a, b);
  for (const Vec2& d : shifted.displacement) {
    CHECK(d.x == doctest::Approx(1.0));
    CHECK(d.y == 0.0);
  }
  CHECK(shifted.mobile_fraction == 1.0);
  Configuration fewer = a;
  fewer.unwrapped.pop_back();
  fewer.position.pop_back();
  CHECK_THROWS_AS((void)displacement_field(a, fewer), Error);
}

TEST_CASE("collision_time") {
  CHECK(collision_time({1.0, 1.0, 2}) == doctest::Approx(0.1 / std::sqrt(2.0)));
  CHECK(collision_time({1.0, 1.0, 2}) == doctest::Approx(0.0707).epsilon(1e-3));
  CHECK(collision_time({1.0, 4.0, 2}) == doctest::Approx(0.5 * collision_time({1.0, 1.0, 2})));
  CHECK(collision_time({1.0, 1.0, 3}) == doctest::Approx(0.0577).epsilon(1e-3));
  CHECK_THROWS_AS((void)collision_time({0.0, 1.0, 2}), Error);
}

TEST_CASE("reduced_scaling") {
  CHECK(reduced_scaling({1.0, 0.5, 2}).gamma == doctest::Approx(2.0));
  const double g1 = reduced_scaling({1.0, 0.4, 2}).gamma;
  const double g2 = reduced_scaling({1.05, 0.4 * std::pow(1.05, 9), 2}).gamma;
  CHECK(g2 == doctest::Approx(g1).epsilon(1e-14));
  CHECK(0.4 * std::pow(1.05, 9) == doctest::Approx(0.6205).epsilon(1e-4));
  // d = 3: rho^6 / T.
  CHECK(reduced_scaling({2.0, 1.0, 3}).gamma == doctest::Approx(64.0));
  const auto r = reduced_scaling({4.0, 0.25, 2});
  CHECK(r.length_scale == doctest::Approx(0.5));
  CHECK(r.time_scale == doctest::Approx(1.0));
}

TEST_CASE("scale_to_density maps forces by lambda^-(n+1)") {
  const Configuration c = liquid(400, 0.4, 2000, 3);
  const auto s = scale_to_density(c, 1.05);
  const double lambda = std::sqrt(1.0 / 1.05);
  CHECK(s.config.density() == doctest::Approx(1.05).epsilon(1e-14));
  CHECK(s.time_factor == doctest::Approx(std::pow(lambda, 10)).epsilon(1e-14));
  Simulation a(c), b(s.config);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const Vec2 d = b.forces()[i] - std::pow(lambda, -19) * a.forces()[i];
    num += dot(d, d);
    den += dot(a.forces()[i], a.forces()[i]) * std::pow(lambda, -38);
  }
  // Only pairs pulled inside the fixed cutoff differ.
  CHECK(std::sqrt(num / den) < 1e-3);
}

TEST_CASE("per-particle cost stays flat as N grows") {
  auto cost = [](int N) {
    Simulation sim(init_configuration(N, 0.7, 1.0, 1.0, 5));
    for (int k = 0; k < 200; ++k) sim.leapfrog_step(0.002);
    double best = 1e300;
    for (int rep = 0; rep < 3; ++rep) {
      const auto t0 = std::chrono::steady_clock::now();
      for (int k = 0; k < 200; ++k) sim.leapfrog_step(0.002);
      const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      best = std::min(best, s / (200.0 * N));
    }
    return best;
  };
  const double c400 = cost(400), c784 = cost(784), c1600 = cost(1600);
  MESSAGE("seconds per particle-step: " << c400 << " " << c784 << " " << c1600);
  CHECK(c784 <= 1.5 * c400);
  CHECK(c1600 <= 1.5 * c784);
}

TEST_CASE("run_md is deterministic and records thermo and MSD") {
  MdConfig cfg;
  cfg.N = 100;
  cfg.temperature = 1.0;
  cfg.equilibration_time = 1.0;
  cfg.steps = 500;
  cfg.thermo_interval = 50;
  cfg.seed = 12;
  const MdResult a = run_md(cfg);
  const MdResult b = run_md(cfg);
  CHECK(a.thermo.size() == 10);
  CHECK(a.msd.times().back() == doctest::Approx(1.0));
  for (std::size_t i = 0; i < a.thermo.size(); ++i) CHECK(a.thermo.at(i, 2) == b.thermo.at(i, 2));
  for (std::size_t i = 0; i < a.msd.size(); ++i) CHECK(a.msd.at(i, 0) == b.msd.at(i, 0));
  cfg.steps = 0;
  CHECK_THROWS_AS((void)run_md(cfg), Error);
}
