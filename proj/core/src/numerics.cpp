#include "dipole/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "dipole/error.hpp"

namespace dipole::numerics {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Newton on the monic cubic x^3 + a x^2 + b x + c.
double polish(double x, double a, double b, double c) {
  for (int it = 0; it < 60; ++it) {
    const double f = ((x + a) * x + b) * x + c;
    const double df = (3.0 * x + 2.0 * a) * x + b;
    if (f == 0.0 || df == 0.0) break;
    const double step = f / df;
    const double next = x - step;
    if (!std::isfinite(next)) break;
    // Accept only steps that do not increase the residual.
    const double fn = ((next + a) * next + b) * next + c;
    if (std::abs(fn) > std::abs(f)) break;
    x = next;
    if (std::abs(step) <= 2.0 * kEps * std::abs(x)) break;
  }
  return x;
}

void quadratic_roots(double a, double b, std::vector<double>& out) {
  // x^2 + a x + b
  const double disc = a * a - 4.0 * b;
  if (disc < 0.0) return;
  if (disc == 0.0) {
    out.push_back(-a / 2.0);
    return;
  }
  const double q = -0.5 * (a + std::copysign(std::sqrt(disc), a));
  if (q != 0.0) {
    out.push_back(q);
    out.push_back(b / q);
  } else {
    out.push_back(0.0);
  }
}

}  // namespace

double evaluate_polynomial(const std::array<double, 4>& c, double x) {
  return ((c[0] * x + c[1]) * x + c[2]) * x + c[3];
}

std::vector<double> cubic_real_roots(const std::array<double, 4>& coeff) {
  std::vector<double> roots;
  if (coeff[0] == 0.0) {
    if (coeff[1] != 0.0) {
      quadratic_roots(coeff[2] / coeff[1], coeff[3] / coeff[1], roots);
    } else if (coeff[2] != 0.0) {
      roots.push_back(-coeff[3] / coeff[2]);
    }
    std::sort(roots.begin(), roots.end());
    return roots;
  }
  const double a = coeff[1] / coeff[0];
  const double b = coeff[2] / coeff[0];
  const double c = coeff[3] / coeff[0];

  if (c == 0.0) {
    roots.push_back(0.0);
    quadratic_roots(a, b, roots);
  } else {
    const double shift = a / 3.0;
    const double p = b - a * a / 3.0;
    const double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
    const double disc = q * q / 4.0 + p * p * p / 27.0;

    double dominant;
    bool three_real = false;
    if (p == 0.0 && q == 0.0) {
      dominant = -shift;
    } else if (disc > 0.0) {
      const double u = std::cbrt(-q / 2.0 - std::copysign(std::sqrt(disc), q));
      dominant = (u != 0.0 ? u - p / (3.0 * u) : 0.0) - shift;
    } else {
      three_real = true;
      const double r = 2.0 * std::sqrt(-p / 3.0);
      const double arg = std::clamp(3.0 * q / (p * r), -1.0, 1.0);
      const double phi = std::acos(arg) / 3.0;
      double best = 0.0;
      for (int k = 0; k < 3; ++k) {
        const double t = r * std::cos(phi - 2.0 * std::numbers::pi * k / 3.0) - shift;
        if (std::abs(t) > std::abs(best)) best = t;
      }
      dominant = best;
    }
    dominant = polish(dominant, a, b, c);
    roots.push_back(dominant);
    if (three_real && dominant != 0.0) {
      // Deflate: the remaining pair has sum -a - x and product -c / x.
      std::vector<double> pair;
      quadratic_roots(a + dominant, -c / dominant, pair);
      for (double x : pair) roots.push_back(x);
    }
  }

  for (double& x : roots) x = polish(x, a, b, c);
  std::sort(roots.begin(), roots.end());
  std::vector<double> unique;
  for (double x : roots) {
    if (!unique.empty() &&
        std::abs(x - unique.back()) <= 1e-12 * std::max(std::abs(x), 1e-300)) {
      continue;
    }
    unique.push_back(x);
  }
  return unique;
}

double bisect(const std::function<double(double)>& f, double lo, double hi, double f_lo,
              double relative_tolerance) {
  if (f_lo == 0.0) return lo;
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (hi - lo <= relative_tolerance * std::abs(mid)) break;
    const double f_mid = f(mid);
    if (f_mid == 0.0) return mid;
    if (std::signbit(f_mid) == std::signbit(f_lo)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

namespace {

void scan_interval(const std::function<double(double)>& f, double lo, double hi,
                   std::size_t points, const ScanOptions& opts, int depth,
                   std::vector<double>& roots) {
  const double log_lo = std::log(lo);
  const double step = (std::log(hi) - log_lo) / static_cast<double>(points - 1);
  std::vector<double> xs(points);
  std::vector<double> fs(points);
  for (std::size_t i = 0; i < points; ++i) {
    xs[i] = i + 1 == points ? hi : std::exp(log_lo + step * static_cast<double>(i));
    if (i == 0) xs[i] = lo;
    fs[i] = f(xs[i]);
  }
  for (std::size_t i = 0; i + 1 < points; ++i) {
    if (fs[i] == 0.0) {
      roots.push_back(xs[i]);
      continue;
    }
    if (std::isfinite(fs[i]) && std::isfinite(fs[i + 1]) && fs[i + 1] != 0.0 &&
        std::signbit(fs[i]) != std::signbit(fs[i + 1])) {
      roots.push_back(bisect(f, xs[i], xs[i + 1], fs[i], opts.relative_tolerance));
    }
  }
  if (fs.back() == 0.0) roots.push_back(xs.back());

  if (depth >= opts.refine_depth) return;
  for (std::size_t i = 1; i + 1 < points; ++i) {
    const double left = std::abs(fs[i - 1]);
    const double mid = std::abs(fs[i]);
    const double right = std::abs(fs[i + 1]);
    const bool same_sign = std::signbit(fs[i - 1]) == std::signbit(fs[i]) &&
                           std::signbit(fs[i]) == std::signbit(fs[i + 1]);
    if (same_sign && mid != 0.0 && mid < left && mid < right) {
      scan_interval(f, xs[i - 1], xs[i + 1], opts.refine_points, opts, depth + 1, roots);
    }
  }
}

}  // namespace

std::vector<double> scan_roots_log(const std::function<double(double)>& f, double lo, double hi,
                                   const ScanOptions& opts) {
  if (!(lo > 0.0) || !(hi > lo) || opts.points < 2) {
    throw Error(ErrorCode::InvalidArgument, "scan needs 0 < lo < hi and at least two points");
  }
  std::vector<double> roots;
  scan_interval(f, lo, hi, opts.points, opts, 0, roots);
  std::sort(roots.begin(), roots.end());
  std::vector<double> unique;
  for (double x : roots) {
    if (!unique.empty() && std::abs(x - unique.back()) <= 4.0 * opts.relative_tolerance * x) {
      continue;
    }
    unique.push_back(x);
  }
  return unique;
}

}  // namespace dipole::numerics
