#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "scalebench/core/error.hpp"
#include "scalebench/core/ode.hpp"
#include "scalebench/core/rng.hpp"
#include "scalebench/core/roots.hpp"
#include "scalebench/core/small_matrix.hpp"
#include "scalebench/core/time_series.hpp"

using namespace scalebench;

namespace {

Derivative linear(double lambda) {
  return [lambda](double, std::span<const double> y, std::span<double> d) { d[0] = lambda * y[0]; };
}

// Truncated exponential series: the exact RK4 amplification factor for y' = lambda y.
double taylor4(double z) { return 1.0 + z + z * z / 2.0 + z * z * z / 6.0 + z * z * z * z / 24.0; }

}  // namespace

TEST_CASE("TimeSeries enforces increasing times and fixed width") {
  TimeSeries s(2);
  const double v[2] = {1.0, 2.0};
  s.append(0.0, v);
  s.append(0.5, v);
  CHECK(s.size() == 2);
  CHECK(s.at(1, 1) == 2.0);
  CHECK_THROWS_AS(s.append(0.5, v), Error);
  const double w[3] = {1.0, 2.0, 3.0};
  CHECK_THROWS_AS(s.append(1.0, w), Error);
}

TEST_CASE("rng: identical seeds give identical streams") {
  RngStream a(42), b(42), c(43);
  bool differs = false;
  for (int i = 0; i < 1000; ++i) {
    const double x = a.normal();
    CHECK(x == b.normal());
    differs = differs || x != c.normal();
    const double u = a.uniform();
    CHECK(u == b.uniform());
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    c.uniform();
  }
  CHECK(differs);
}

TEST_CASE("rng: gaussian moments") {
  RngStream r(7);
  const int n = 200000;
  double s = 0.0, s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = r.normal();
    s += x;
    s2 += x * x;
  }
  CHECK(std::abs(s / n) < 0.01);
  CHECK(std::abs(s2 / n - 1.0) < 0.01);
}

TEST_CASE("rk4_step examples") {
  const std::vector<double> one{1.0};
  auto grown = rk4_step(linear(1.0), one, 0.0, 0.1);
  CHECK(grown[0] == doctest::Approx(taylor4(0.1)).epsilon(1e-14));
  CHECK(grown[0] == doctest::Approx(1.10517083).epsilon(1e-8));
  CHECK(std::abs(grown[0] - std::exp(0.1)) < 1e-7);

  const std::vector<double> five{5.0};
  CHECK(rk4_step(linear(0.0), five, 0.0, 0.3)[0] == 5.0);

  std::vector<double> y{1.0};
  for (int i = 0; i < 100; ++i) y = rk4_step(linear(-1.0), y, 0.01 * i, 0.01);
  CHECK(std::abs(y[0] - std::exp(-1.0)) < 1e-8);
}

TEST_CASE("rk4_step local error bound on linear problems") {
  for (double z : {-0.5, -0.3, -0.1, 0.05, 0.2, 0.5}) {
    const double dt = 0.1;
    const std::vector<double> one{1.0};
    const double got = rk4_step(linear(z / dt), one, 0.0, dt)[0];
    CHECK(std::abs(got - std::exp(z)) / std::exp(z) <= std::pow(std::abs(z), 5));
  }
}

TEST_CASE("rk4_step reports non-finite derivatives") {
  Derivative bad = [](double, std::span<const double>, std::span<double> d) { d[0] = std::nan(""); };
  const std::vector<double> one{1.0};
  try {
    (void)rk4_step(bad, one, 0.0, 0.1);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == "numerical_blowup");
    CHECK(e.kind() == ErrorKind::numerical);
  }
}

TEST_CASE("integrate_adaptive: stiff relaxation to 1") {
  Derivative f = [](double, std::span<const double> y, std::span<double> d) { d[0] = -1000.0 * y[0] + 1000.0; };
  const std::vector<double> y0{0.0};
  const double tol = 1e-8;
  auto series = integrate_adaptive(f, y0, 0.0, 1.0, tol, 1e-12);
  const double exact = 1.0 - std::exp(-1000.0);
  CHECK(std::abs(series.back()[0] - exact) <= tol * exact);
}

TEST_CASE("integrate_adaptive: constant solution") {
  Derivative f = [](double, std::span<const double>, std::span<double> d) { d[0] = 0.0; };
  const std::vector<double> y0{3.5};
  AdaptiveOptions opt;
  opt.output_times = {0.0, 0.5, 1.0, 2.0};
  auto s = integrate_adaptive(f, y0, 0.0, 2.0, opt);
  REQUIRE(s.size() == 4);
  for (std::size_t i = 0; i < s.size(); ++i) CHECK(s.at(i, 0) == 3.5);
}

TEST_CASE("integrate_adaptive: two-compartment decay vs matrix exponential") {
  // A = [[-1, 0.5], [0.3, -2]] has distinct real eigenvalues; the oracle uses
  // Sylvester's formula exp(At) = (e^{l1 t}(A - l2 I) - e^{l2 t}(A - l1 I)) / (l1 - l2).
  const double a11 = -1.0, a12 = 0.5, a21 = 0.3, a22 = -2.0;
  const double tr = a11 + a22, det = a11 * a22 - a12 * a21;
  const double disc = std::sqrt(tr * tr / 4.0 - det);
  const double l1 = tr / 2.0 + disc, l2 = tr / 2.0 - disc;
  auto exact = [&](double t, double x0, double y0) {
    const double e1 = std::exp(l1 * t), e2 = std::exp(l2 * t);
    const double m11 = (e1 * (a11 - l2) - e2 * (a11 - l1)) / (l1 - l2);
    const double m12 = (e1 * a12 - e2 * a12) / (l1 - l2);
    const double m21 = (e1 * a21 - e2 * a21) / (l1 - l2);
    const double m22 = (e1 * (a22 - l2) - e2 * (a22 - l1)) / (l1 - l2);
    return std::pair{m11 * x0 + m12 * y0, m21 * x0 + m22 * y0};
  };
  Derivative f = [&](double, std::span<const double> y, std::span<double> d) {
    d[0] = a11 * y[0] + a12 * y[1];
    d[1] = a21 * y[0] + a22 * y[1];
  };
  AdaptiveOptions opt;
  opt.rel_tol = 1e-9;
  opt.abs_tol = 1e-14;
  for (int i = 0; i <= 40; ++i) opt.output_times.push_back(0.25 * i);
  const std::vector<double> y0{1.0, 2.0};
  auto s = integrate_adaptive(f, y0, 0.0, 10.0, opt);
  REQUIRE(s.size() == opt.output_times.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    auto [x, y] = exact(s.time(i), 1.0, 2.0);
    CHECK(std::abs(s.at(i, 0) - x) <= 1e-8 * std::abs(x) + 1e-13);
    CHECK(std::abs(s.at(i, 1) - y) <= 1e-8 * std::abs(y) + 1e-13);
  }
}

TEST_CASE("integrate_adaptive: dense output between accepted steps") {
  const std::vector<double> y0{1.0};
  AdaptiveOptions opt;
  opt.rel_tol = 1e-10;
  opt.abs_tol = 1e-14;
  for (int i = 0; i <= 100; ++i) opt.output_times.push_back(0.05 * i);
  auto s = integrate_adaptive(linear(-0.7), y0, 0.0, 5.0, opt);
  for (std::size_t i = 0; i < s.size(); ++i) CHECK(std::abs(s.at(i, 0) - std::exp(-0.7 * s.time(i))) < 1e-9);
}

TEST_CASE("integrate_adaptive: step underflow is a stiffness error") {
  // Finite-time blowup at t = 1 forces the step size to collapse.
  Derivative f = [](double, std::span<const double> y, std::span<double> d) { d[0] = y[0] * y[0]; };
  const std::vector<double> y0{1.0};
  try {
    (void)integrate_adaptive(f, y0, 0.0, 2.0, 1e-8, 1e-10);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::numerical);
    CHECK((e.code() == "stiffness" || e.code() == "numerical_blowup"));
    CHECK(std::string(e.what()).find("t=") != std::string::npos);
  }
}

TEST_CASE("integrate_adaptive: early stop predicate") {
  const std::vector<double> y0{1.0};
  AdaptiveOptions opt;
  opt.stop_when = [](double, std::span<const double> y) { return y[0] > 100.0; };
  AdaptiveStats stats;
  auto s = integrate_adaptive(linear(1.0), y0, 0.0, 50.0, opt, &stats);
  CHECK(stats.stopped_early);
  CHECK(s.back()[0] > 100.0);
  CHECK(s.times().back() < 10.0);
}

TEST_CASE("euler_maruyama_step") {
  Derivative drift = [](double, std::span<const double> y, std::span<double> d) { d[0] = -2.0 * y[0]; };
  RngStream rng(1);
  const std::vector<double> y{1.5};
  SUBCASE("zero noise is explicit Euler") {
    auto out = euler_maruyama_step(drift, 0.0, y, 0.0, 0.01, rng);
    CHECK(out[0] == doctest::Approx(1.5 - 2.0 * 1.5 * 0.01).epsilon(1e-15));
  }
  SUBCASE("fixed seed is bit-identical") {
    RngStream a(99), b(99);
    auto p = euler_maruyama_step(drift, 0.3, y, 0.0, 0.01, a);
    auto q = euler_maruyama_step(drift, 0.3, y, 0.0, 0.01, b);
    CHECK(p[0] == q[0]);
  }
  SUBCASE("increment variance equals noise^2 dt") {
    Derivative zero = [](double, std::span<const double>, std::span<double> d) { d[0] = 0.0; };
    const double amp = 0.7, dt = 0.01;
    RngStream r(2024);
    std::vector<double> state{0.0};
    double s = 0.0, s2 = 0.0;
    const int n = 1000000;
    for (int i = 0; i < n; ++i) {
      auto next = euler_maruyama_step(zero, amp, state, 0.0, dt, r);
      const double inc = next[0] - state[0];
      s += inc;
      s2 += inc * inc;
      state = next;
    }
    const double mean = s / n;
    const double var = s2 / n - mean * mean;
    CHECK(std::abs(var / (amp * amp * dt) - 1.0) < 0.01);
  }
}

TEST_CASE("solve_linear") {
  SUBCASE("identity") {
    const std::vector<double> b{1.0, -2.0, 3.0};
    auto x = solve_linear(SmallMatrix::identity(3), b);
    CHECK(x == b);
  }
  SUBCASE("diagonal") {
    const std::vector<double> b{2.0, 4.0};
    auto x = solve_linear(SmallMatrix{{2.0, 0.0}, {0.0, 4.0}}, b);
    CHECK(x[0] == 1.0);
    CHECK(x[1] == 1.0);
  }
  SUBCASE("random well-conditioned 5x5 residual") {
    RngStream r(5);
    for (int trial = 0; trial < 50; ++trial) {
      SmallMatrix a(5);
      std::vector<double> b(5);
      for (std::size_t i = 0; i < 5; ++i) {
        for (std::size_t j = 0; j < 5; ++j) a(i, j) = 2.0 * r.uniform() - 1.0;
        a(i, i) += 6.0;
        b[i] = 10.0 * r.uniform() - 5.0;
      }
      auto x = solve_linear(a, b);
      auto ax = a.multiply(x);
      double res = 0.0, bn = 0.0;
      for (std::size_t i = 0; i < 5; ++i) {
        res = std::max(res, std::abs(ax[i] - b[i]));
        bn = std::max(bn, std::abs(b[i]));
      }
      CHECK(res <= 1e-10 * bn);
    }
  }
  SUBCASE("singular") {
    const std::vector<double> b{1.0, 1.0};
    try {
      (void)solve_linear(SmallMatrix{{1.0, 2.0}, {2.0, 4.0}}, b);
      FAIL("expected throw");
    } catch (const Error& e) {
      CHECK(e.code() == "singular_matrix");
    }
  }
}

TEST_CASE("eigenvalues_small examples") {
  SUBCASE("zero matrix") {
    for (auto l : eigenvalues_small(SmallMatrix(4))) CHECK(std::abs(l) == 0.0);
  }
  SUBCASE("multiplier-accelerator companion matrix") {
    const double c = 0.6, nu = 1.2;
    auto l = eigenvalues_small(SmallMatrix{{c + nu, -nu}, {1.0, 0.0}});
    // Quadratic formula: (c+nu)/2 +- i sqrt(nu - (c+nu)^2/4).
    const double re = (c + nu) / 2.0;
    const double im = std::sqrt(nu - re * re);
    CHECK(l[0].real() == doctest::Approx(re).epsilon(1e-12));
    CHECK(l[0].imag() == doctest::Approx(im).epsilon(1e-12));
    CHECK(l[1].imag() == doctest::Approx(-im).epsilon(1e-12));
    CHECK(re == doctest::Approx(0.9));
    CHECK(im == doctest::Approx(0.6245).epsilon(1e-4));
  }
  SUBCASE("diagonal") {
    const std::vector<double> d{-1.0, -2.0, -3.0};
    auto l = eigenvalues_small(SmallMatrix::diagonal(d));
    CHECK(l[0].real() == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(l[1].real() == doctest::Approx(-2.0).epsilon(1e-12));
    CHECK(l[2].real() == doctest::Approx(-3.0).epsilon(1e-12));
    for (auto x : l) CHECK(x.imag() == 0.0);
  }
  SUBCASE("repeated eigenvalue") {
    auto l = eigenvalues_small(SmallMatrix::identity(3));
    for (auto x : l) CHECK(std::abs(x - 1.0) < 1e-4);
  }
}

TEST_CASE("eigenvalues_small: companion-matrix roots satisfy the polynomial bound") {
  RngStream r(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + trial % 7;
    std::vector<double> coeff(n + 1);
    coeff[n] = 1.0;
    double max_coeff = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      coeff[k] = 4.0 * r.uniform() - 2.0;
      max_coeff = std::max(max_coeff, std::abs(coeff[k]));
    }
    // Companion matrix with first row -c_{n-1} ... -c_0.
    SmallMatrix a(n);
    for (std::size_t j = 0; j < n; ++j) a(0, j) = -coeff[n - 1 - j];
    for (std::size_t i = 1; i < n; ++i) a(i, i - 1) = 1.0;
    auto roots = eigenvalues_small(a);
    REQUIRE(roots.size() == n);
    const double bound = 1e-8 * std::pow(1.0 + max_coeff, static_cast<double>(n));
    for (auto z : roots) {
      std::complex<double> p = coeff[n];
      for (std::size_t k = n; k-- > 0;) p = p * z + coeff[k];
      CHECK(std::abs(p) <= bound);
    }
  }
}

TEST_CASE("eigenvalues_small: trace, determinant and residual on random matrices") {
  RngStream r(3);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 8;
    SmallMatrix a(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a(i, j) = 2.0 * r.uniform() - 1.0;
    auto l = eigenvalues_small(a);
    std::complex<double> sum = 0.0, prod = 1.0;
    for (auto x : l) {
      sum += x;
      prod *= x;
      CHECK(std::abs(shifted_determinant(a, x)) <= 1e-8 * std::pow(a.norm_inf(), static_cast<double>(n)));
    }
    double trace = 0.0;
    for (std::size_t i = 0; i < n; ++i) trace += a(i, i);
    CHECK(std::abs(sum - trace) < 1e-9);
    CHECK(std::abs(prod - shifted_determinant(a, 0.0)) < 1e-9);
  }
}

TEST_CASE("find_root_bisect") {
  const double tol = 1e-12;
  CHECK(find_root_bisect([](double x) { return x - 1.0; }, 0.0, 2.0, tol) == doctest::Approx(1.0));
  CHECK(std::abs(find_root_bisect([](double x) { return x * x - 2.0; }, 0.0, 2.0, tol) - std::sqrt(2.0)) <= tol);
  CHECK(std::abs(find_root_bisect([](double x) { return std::cos(x); }, 0.0, 2.0, tol) - std::numbers::pi / 2) <=
        tol);
  try {
    (void)find_root_bisect([](double x) { return x * x + 1.0; }, -1.0, 1.0, tol);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == "bracket");
  }
}
