#pragma once

#include <functional>

namespace scalebench {

/// Bisection on a sign-changing bracket [a, b]. Returns the midpoint of the
/// final bracket, whose width is <= tol (or an exact zero if one is hit).
/// Throws `bracket` if g(a) and g(b) share a sign.
[[nodiscard]] double find_root_bisect(const std::function<double(double)>& g, double a, double b, double tol);

}  // namespace scalebench
