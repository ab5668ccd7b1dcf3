#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace scalebench {

/// Dense square matrix of order n <= 8, stored inline.
class SmallMatrix {
 public:
  static constexpr std::size_t kMaxOrder = 8;

  SmallMatrix() = default;
  /// Zero matrix of order n.
  explicit SmallMatrix(std::size_t n);
  /// Row-wise construction; every row must have rows.size() entries.
  SmallMatrix(std::initializer_list<std::initializer_list<double>> rows);

  [[nodiscard]] static SmallMatrix identity(std::size_t n);
  [[nodiscard]] static SmallMatrix diagonal(std::span<const double> entries);

  [[nodiscard]] std::size_t order() const noexcept { return n_; }

  double& operator()(std::size_t i, std::size_t j) { return a_[i * kMaxOrder + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * kMaxOrder + j]; }

  /// Max absolute row sum.
  [[nodiscard]] double norm_inf() const;
  [[nodiscard]] bool all_finite() const;

  [[nodiscard]] std::vector<double> multiply(std::span<const double> x) const;

 private:
  std::size_t n_ = 0;
  std::array<double, kMaxOrder * kMaxOrder> a_{};
};

/// Gaussian elimination with partial pivoting. Throws `singular_matrix`
/// when a pivot falls below 1e-14 (relative to the matrix scale) and
/// `residual_bound` if ||Ax - b||_inf > 1e-10 ||b||_inf after solving.
[[nodiscard]] std::vector<double> solve_linear(const SmallMatrix& a, std::span<const double> b);

/// Coefficients c[0..n] of det(lambda*I - A) = sum c[k] lambda^k, with
/// c[n] = 1 (Faddeev-LeVerrier recursion).
[[nodiscard]] std::vector<double> characteristic_polynomial(const SmallMatrix& a);

/// All roots of a real polynomial given low-to-high coefficients, by
/// Durand-Kerner (Weierstrass) simultaneous iteration. The leading
/// coefficient must be non-zero. Throws `no_convergence` after 1e4 sweeps.
[[nodiscard]] std::vector<std::complex<double>> polynomial_roots(std::span<const double> coeffs);

/// Eigenvalues (with multiplicity) via the characteristic polynomial of the
/// norm-scaled matrix and polynomial_roots. Each returned value satisfies
/// |det(A - lambda I)| <= 1e-8 ||A||^n or `no_convergence` is thrown.
/// Sorted by descending real part, then descending imaginary part.
[[nodiscard]] std::vector<std::complex<double>> eigenvalues_small(const SmallMatrix& a);

/// det(A - lambda I) via complex LU; used for eigenvalue verification.
[[nodiscard]] std::complex<double> shifted_determinant(const SmallMatrix& a, std::complex<double> lambda);

}  // namespace scalebench
