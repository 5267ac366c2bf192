#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

namespace dipole::numerics {

/// Real roots of c[0] x^3 + c[1] x^2 + c[2] x + c[3], ascending, repeated roots reported once.
/// Trigonometric form for three real roots, Cardano otherwise, then Newton polish on the
/// undepressed polynomial.
std::vector<double> cubic_real_roots(const std::array<double, 4>& c);

double evaluate_polynomial(const std::array<double, 4>& c, double x);

struct ScanOptions {
  std::size_t points = 4000;
  double relative_tolerance = 1e-12;
  /// Subdivisions used when a local minimum of |f| hides a close pair of roots.
  std::size_t refine_points = 64;
  int refine_depth = 3;
};

/// All sign-change roots of f on [lo, hi] (0 < lo < hi) found on a logarithmic grid,
/// each refined by bisection to |hi - lo| <= relative_tolerance * |x|. Ascending.
std::vector<double> scan_roots_log(const std::function<double(double)>& f, double lo, double hi,
                                   const ScanOptions& opts = {});

/// Bisection on a bracket with f(lo), f(hi) of opposite sign (or one of them zero).
double bisect(const std::function<double(double)>& f, double lo, double hi, double f_lo,
              double relative_tolerance);

}  // namespace dipole::numerics
