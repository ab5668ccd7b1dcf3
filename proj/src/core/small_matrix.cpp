#include "scalebench/core/small_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "scalebench/core/error.hpp"

namespace scalebench {

namespace {

constexpr double kPivotFloor = 1e-14;
constexpr double kResidualFactor = 1e-10;
constexpr int kRootIterationCap = 10000;
constexpr double kEigenResidualFactor = 1e-8;

void check_order(std::size_t n) {
  if (n == 0 || n > SmallMatrix::kMaxOrder) {
    throw_validation("invalid_order", "SmallMatrix order must be in [1, 8], got " + std::to_string(n));
  }
}

std::complex<double> horner(std::span<const double> c, std::complex<double> z) {
  std::complex<double> acc = c.back();
  for (std::size_t k = c.size() - 1; k-- > 0;) acc = acc * z + c[k];
  return acc;
}

}  // namespace

SmallMatrix::SmallMatrix(std::size_t n) : n_(n) { check_order(n); }

SmallMatrix::SmallMatrix(std::initializer_list<std::initializer_list<double>> rows) : n_(rows.size()) {
  check_order(n_);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != n_) throw_validation("not_square", "SmallMatrix rows must all have length n");
    std::size_t j = 0;
    for (double v : row) (*this)(i, j++) = v;
    ++i;
  }
}

SmallMatrix SmallMatrix::identity(std::size_t n) {
  SmallMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

SmallMatrix SmallMatrix::diagonal(std::span<const double> entries) {
  SmallMatrix m(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

double SmallMatrix::norm_inf() const {
  double best = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n_; ++j) row += std::abs((*this)(i, j));
    best = std::max(best, row);
  }
  return best;
}

bool SmallMatrix::all_finite() const {
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      if (!std::isfinite((*this)(i, j))) return false;
  return true;
}

std::vector<double> SmallMatrix::multiply(std::span<const double> x) const {
  if (x.size() != n_) throw_validation("dimension_mismatch", "SmallMatrix::multiply: vector size mismatch");
  std::vector<double> y(n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) y[i] += (*this)(i, j) * x[j];
  return y;
}

std::vector<double> solve_linear(const SmallMatrix& a, std::span<const double> b) {
  const std::size_t n = a.order();
  if (b.size() != n) throw_validation("dimension_mismatch", "solve_linear: rhs size does not match matrix order");
  if (!a.all_finite()) throw_validation("non_finite", "solve_linear: matrix has non-finite entries");

  SmallMatrix lu = a;
  std::vector<double> x(b.begin(), b.end());
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, std::abs(a(i, j)));
  const double floor = kPivotFloor * std::max(scale, 1e-300);

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(lu(i, k)) > std::abs(lu(p, k))) p = i;
    if (std::abs(lu(p, k)) < floor) {
      throw_numerical("singular_matrix", "solve_linear: pivot below 1e-14 at column " + std::to_string(k));
    }
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu(k, j), lu(p, j));
      std::swap(x[k], x[p]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = lu(i, k) / lu(k, k);
      if (f == 0.0) continue;
      for (std::size_t j = k; j < n; ++j) lu(i, j) -= f * lu(k, j);
      x[i] -= f * x[k];
    }
  }
  for (std::size_t k = n; k-- > 0;) {
    double s = x[k];
    for (std::size_t j = k + 1; j < n; ++j) s -= lu(k, j) * x[j];
    x[k] = s / lu(k, k);
  }

  const auto ax = a.multiply(x);
  double res = 0.0;
  double bnorm = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    res = std::max(res, std::abs(ax[i] - b[i]));
    bnorm = std::max(bnorm, std::abs(b[i]));
  }
  if (!(res <= kResidualFactor * bnorm)) {
    throw_numerical("residual_bound", "solve_linear: residual " + std::to_string(res) + " exceeds 1e-10*||b||");
  }
  return x;
}

std::vector<double> characteristic_polynomial(const SmallMatrix& a) {
  const std::size_t n = a.order();
  std::vector<double> c(n + 1, 0.0);
  c[n] = 1.0;
  SmallMatrix m(n);  // M_0 = 0
  for (std::size_t k = 1; k <= n; ++k) {
    // M_k = A M_{k-1} + c_{n-k+1} I
    SmallMatrix next(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t l = 0; l < n; ++l) s += a(i, l) * m(l, j);
        next(i, j) = s;
      }
    for (std::size_t i = 0; i < n; ++i) next(i, i) += c[n - k + 1];
    m = next;
    double trace = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l) trace += a(i, l) * m(l, i);
    c[n - k] = -trace / static_cast<double>(k);
  }
  return c;
}

std::vector<std::complex<double>> polynomial_roots(std::span<const double> coeffs) {
  if (coeffs.size() < 2) throw_validation("invalid_polynomial", "polynomial_roots: degree must be >= 1");
  const double lead = coeffs.back();
  if (lead == 0.0) throw_validation("invalid_polynomial", "polynomial_roots: leading coefficient is zero");
  const std::size_t n = coeffs.size() - 1;

  std::vector<double> c(coeffs.begin(), coeffs.end());
  for (double& v : c) v /= lead;

  // Fujiwara bound on root magnitudes sets the radius of the starting circle.
  double radius = 1e-3;
  for (std::size_t k = 1; k <= n; ++k) {
    radius = std::max(radius, 2.0 * std::pow(std::abs(c[n - k]), 1.0 / static_cast<double>(k)));
  }

  std::vector<std::complex<double>> z(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n) + 0.4;
    z[k] = std::polar(radius, angle);
  }

  auto magnitude_sum = [&](std::complex<double> w) {
    double s = 0.0;
    double p = 1.0;
    for (std::size_t k = 0; k <= n; ++k) {
      s += std::abs(c[k]) * p;
      p *= std::abs(w);
    }
    return s;
  };

  bool converged = false;
  for (int iter = 0; iter < kRootIterationCap && !converged; ++iter) {
    double max_step = 0.0;
    bool at_roundoff = true;
    for (std::size_t k = 0; k < n; ++k) {
      const auto pk = horner(c, z[k]);
      std::complex<double> denom = 1.0;
      for (std::size_t j = 0; j < n; ++j)
        if (j != k) denom *= (z[k] - z[j]);
      if (std::abs(denom) == 0.0) denom = 1e-300;
      const auto step = pk / denom;
      z[k] -= step;
      max_step = std::max(max_step, std::abs(step) / std::max(1.0, std::abs(z[k])));
      if (std::abs(pk) > 4.0 * std::numeric_limits<double>::epsilon() * magnitude_sum(z[k])) at_roundoff = false;
    }
    converged = max_step < 1e-15 || at_roundoff;
  }
  if (!converged) {
    throw_numerical("no_convergence", "polynomial_roots: Durand-Kerner iteration cap reached");
  }
  return z;
}

std::complex<double> shifted_determinant(const SmallMatrix& a, std::complex<double> lambda) {
  const std::size_t n = a.order();
  std::array<std::complex<double>, SmallMatrix::kMaxOrder * SmallMatrix::kMaxOrder> m{};
  auto at = [&](std::size_t i, std::size_t j) -> std::complex<double>& { return m[i * SmallMatrix::kMaxOrder + j]; };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) at(i, j) = a(i, j) - (i == j ? lambda : 0.0);
  std::complex<double> det = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(at(i, k)) > std::abs(at(p, k))) p = i;
    if (std::abs(at(p, k)) == 0.0) return 0.0;
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(at(k, j), at(p, j));
      det = -det;
    }
    det *= at(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const auto f = at(i, k) / at(k, k);
      for (std::size_t j = k; j < n; ++j) at(i, j) -= f * at(k, j);
    }
  }
  return det;
}

std::vector<std::complex<double>> eigenvalues_small(const SmallMatrix& a) {
  const std::size_t n = a.order();
  if (n == 0) throw_validation("invalid_order", "eigenvalues_small: empty matrix");
  if (!a.all_finite()) throw_validation("non_finite", "eigenvalues_small: matrix has non-finite entries");

  const double scale = a.norm_inf();
  if (scale == 0.0) return std::vector<std::complex<double>>(n, 0.0);

  SmallMatrix scaled(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) scaled(i, j) = a(i, j) / scale;

  auto roots = polynomial_roots(characteristic_polynomial(scaled));

  for (auto& r : roots) {
    // det(A - lambda I) = scale^n det(Â - (lambda/scale) I); the bound
    // 1e-8 ||A||^n therefore reads 1e-8 in scaled units.
    if (std::abs(shifted_determinant(scaled, r)) > kEigenResidualFactor) {
      throw_numerical("no_convergence", "eigenvalues_small: eigenvalue residual above 1e-8 ||A||^n");
    }
    if (std::abs(r.imag()) <= 1e-12 * std::max(1.0, std::abs(r))) r.imag(0.0);
    r *= scale;
  }
  std::sort(roots.begin(), roots.end(), [](const auto& x, const auto& y) {
    if (x.real() != y.real()) return x.real() > y.real();
    return x.imag() > y.imag();
  });
  return roots;
}

}  // namespace scalebench
