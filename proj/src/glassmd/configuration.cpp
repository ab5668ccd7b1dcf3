#include "scalebench/glassmd/configuration.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <utility>

#include "scalebench/core/error.hpp"
#include "scalebench/core/rng.hpp"

namespace scalebench::glassmd {

std::size_t Configuration::count(Species s) const noexcept {
  std::size_t n = 0;
  for (Species x : species) n += (x == s);
  return n;
}

void Configuration::validate() const {
  const std::size_t n = position.size();
  if (unwrapped.size() != n || velocity.size() != n || species.size() != n) {
    throw_validation("invalid_configuration", "per-particle arrays differ in length");
  }
  if (!(L > 0.0) || !(mass > 0.0)) throw_validation("invalid_configuration", "box side and mass must be positive");
  for (const Vec2& p : position) {
    if (!(p.x >= 0.0 && p.x < L && p.y >= 0.0 && p.y < L)) {
      throw_validation("invalid_configuration", "wrapped position outside [0, L)");
    }
  }
}

double wrap(double x, double L) noexcept {
  double w = x - L * std::floor(x / L);
  if (w >= L) w -= L;
  if (w < 0.0) w = 0.0;
  return w;
}

Vec2 minimum_image(Vec2 d, double L) noexcept {
  return {d.x - L * std::nearbyint(d.x / L), d.y - L * std::nearbyint(d.y / L)};
}

Configuration init_configuration(int N, double fraction_A, double density, double T_init, std::uint64_t seed,
                                 const PotentialSpec& spec, double mass) {
  spec.validate();
  if (N < 2) throw_validation("invalid_configuration", "need at least two particles");
  const int side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(N))));
  if (side * side != N) throw_validation("invalid_configuration", "N must be a perfect square");
  if (!(fraction_A > 0.0 && fraction_A < 1.0)) throw_validation("invalid_configuration", "fraction_A must lie in (0, 1)");
  if (!(density > 0.0)) throw_validation("invalid_configuration", "density must be positive");
  if (!(T_init >= 0.0)) throw_validation("invalid_configuration", "T_init must be >= 0");
  if (!(mass > 0.0)) throw_validation("invalid_configuration", "mass must be positive");

  Configuration c;
  c.L = std::sqrt(static_cast<double>(N) / density);
  c.mass = mass;
  const double a = c.L / side;
  if (a < 0.5 * spec.sigma * spec.sigma_BB) {
    throw_validation("density_too_high", "lattice spacing below half the BB diameter");
  }

  c.position.resize(N);
  for (int i = 0; i < N; ++i) c.position[i] = {(0.5 + i % side) * a, (0.5 + i / side) * a};
  c.unwrapped = c.position;

  RngStream rng(seed);
  const int n_A = static_cast<int>(std::lround(fraction_A * N));
  c.species.assign(N, Species::B);
  std::fill_n(c.species.begin(), n_A, Species::A);
  for (int i = N - 1; i > 0; --i) {
    const auto j = static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(i + 1));
    std::swap(c.species[i], c.species[j]);
  }

  c.velocity.resize(N);
  if (T_init > 0.0) {
    Vec2 p{};
    for (Vec2& v : c.velocity) {
      v = {rng.normal(), rng.normal()};
      p = p + v;
    }
    const Vec2 mean = (1.0 / N) * p;
    double sum2 = 0.0;
    for (Vec2& v : c.velocity) {
      v = v - mean;
      sum2 += dot(v, v);
    }
    const double scale = std::sqrt(T_init * (2.0 * N - 2.0) / (mass * sum2));
    for (Vec2& v : c.velocity) v = scale * v;
  }
  return c;
}

ScaledConfiguration scale_to_density(const Configuration& c, double density, int exponent) {
  if (!(density > 0.0)) throw_validation("invalid_configuration", "density must be positive");
  const double lambda = std::sqrt(c.density() / density);
  const double vscale = std::pow(lambda, -0.5 * exponent);
  ScaledConfiguration out{c, std::pow(lambda, 1.0 + 0.5 * exponent)};
  Configuration& s = out.config;
  s.L = lambda * c.L;
  for (std::size_t i = 0; i < c.size(); ++i) {
    s.position[i] = {wrap(lambda * c.position[i].x, s.L), wrap(lambda * c.position[i].y, s.L)};
    s.unwrapped[i] = lambda * c.unwrapped[i];
    s.velocity[i] = vscale * c.velocity[i];
  }
  s.t = out.time_factor * c.t;
  return out;
}

namespace {

void put(std::ostream& out, double x) {
  char buf[32];
  auto r = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  out.write(buf, r.ptr - buf);
}

double parse_double(const std::string& tok) {
  double v = 0.0;
  auto r = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (r.ec != std::errc() || r.ptr != tok.data() + tok.size()) {
    throw_validation("invalid_snapshot", "cannot parse number '" + tok + "'");
  }
  return v;
}

std::string header_value(std::istream& in, const char* key) {
  std::string line;
  if (!std::getline(in, line)) throw_validation("invalid_snapshot", std::string("missing header ") + key);
  std::istringstream ls(line);
  std::string k, v;
  ls >> k >> v;
  if (k != key || v.empty()) throw_validation("invalid_snapshot", std::string("expected header ") + key);
  return v;
}

}  // namespace

void write_snapshot(std::ostream& out, const Configuration& c) {
  out << "N " << c.size() << '\n';
  out << "L ";
  put(out, c.L);
  out << "\nt ";
  put(out, c.t);
  out << '\n';
  for (std::size_t i = 0; i < c.size(); ++i) {
    out << (c.species[i] == Species::A ? 'A' : 'B');
    for (double x : {c.position[i].x, c.position[i].y, c.unwrapped[i].x, c.unwrapped[i].y, c.velocity[i].x,
                     c.velocity[i].y}) {
      out << ' ';
      put(out, x);
    }
    out << '\n';
  }
}

Configuration read_snapshot(std::istream& in, double mass) {
  Configuration c;
  c.mass = mass;
  const std::string n_text = header_value(in, "N");
  std::size_t n = 0;
  auto r = std::from_chars(n_text.data(), n_text.data() + n_text.size(), n);
  if (r.ec != std::errc() || n < 1) throw_validation("invalid_snapshot", "bad particle count");
  c.L = parse_double(header_value(in, "L"));
  c.t = parse_double(header_value(in, "t"));
  c.position.reserve(n);
  std::string line, tok;
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::getline(in, line)) throw_validation("invalid_snapshot", "truncated particle list");
    std::istringstream ls(line);
    std::string s;
    ls >> s;
    if (s != "A" && s != "B") throw_validation("invalid_snapshot", "species must be A or B");
    double v[6];
    for (double& x : v) {
      if (!(ls >> tok)) throw_validation("invalid_snapshot", "particle line needs 7 fields");
      x = parse_double(tok);
    }
    c.species.push_back(s == "A" ? Species::A : Species::B);
    c.position.push_back({v[0], v[1]});
    c.unwrapped.push_back({v[2], v[3]});
    c.velocity.push_back({v[4], v[5]});
  }
  c.validate();
  return c;
}

}  // namespace scalebench::glassmd
