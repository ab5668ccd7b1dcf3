#include "scalebench/core/roots.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "scalebench/core/error.hpp"

namespace scalebench {

double find_root_bisect(const std::function<double(double)>& g, double a, double b, double tol) {
  if (!(tol > 0.0)) throw_validation("invalid_tolerance", "find_root_bisect: tol must be positive");
  if (a > b) std::swap(a, b);
  double ga = g(a);
  const double gb = g(b);
  if (ga == 0.0) return a;
  if (gb == 0.0) return b;
  if (!std::isfinite(ga) || !std::isfinite(gb) || std::signbit(ga) == std::signbit(gb)) {
    throw_validation("bracket", "find_root_bisect: no sign change on [" + std::to_string(a) + ", " +
                                    std::to_string(b) + "]");
  }
  while (b - a > tol) {
    const double mid = 0.5 * (a + b);
    if (mid <= a || mid >= b) break;  // bracket at floating-point resolution
    const double gm = g(mid);
    if (gm == 0.0) return mid;
    if (std::signbit(gm) == std::signbit(ga)) {
      a = mid;
      ga = gm;
    } else {
      b = mid;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace scalebench
