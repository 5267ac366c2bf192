#include "dipole/heun.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dipole/error.hpp"

namespace dipole {

namespace {

// Constant pieces of the recurrence, read once from HeunParams.
//
// Matching powers of y after substituting sum b_i y^i:
//   b_1 (2|tau|+1) = [theta (2|tau|+1)/2 - mu] b_0
//   b_{i+2} (i+2)(i+2+2|tau|) = [theta (i+1) + theta (2|tau|+1)/2 - mu] b_{i+1}
//                               + [2i - (chi + theta^2/4 - 2|tau| - 2)] b_i
struct Recurrence {
  double tau2;   // 2|tau|
  double theta;
  double mu;
  double drift;  // theta (2|tau|+1)/2 - mu
  double level;  // chi + theta^2/4 - 2|tau| - 2

  explicit Recurrence(const HeunParams& hp)
      : tau2(hp.alpha),
        theta(hp.beta),
        mu(hp.mu()),
        drift(hp.beta * (hp.alpha + 1.0) / 2.0 - hp.mu()),
        level(hp.gamma - hp.alpha - 2.0) {}

  double first() const { return theta / 2.0 - mu / (tau2 + 1.0); }

  double next(std::size_t i, double bi, double bi1) const {
    const double di = static_cast<double>(i);
    const double denom = (di + 2.0) * (di + 2.0 + tau2);
    return ((theta * (di + 1.0) + drift) * bi1 + (2.0 * di - level) * bi) / denom;
  }
};

void require_level(int n) {
  if (n < 1) {
    throw Error(ErrorCode::UnsupportedLevel,
                "polynomial degree must be >= 1, got " + std::to_string(n));
  }
}

}  // namespace

HeunParams HeunParams::from_scales(const DerivedScales& scales, double chi) {
  HeunParams hp;
  hp.alpha = 2.0 * scales.tau;
  hp.beta = scales.theta;
  hp.gamma = chi + scales.theta * scales.theta / 4.0;
  hp.delta = -2.0 * scales.mu;
  return hp;
}

std::vector<double> series_coefficients(const HeunParams& hp, std::size_t count) {
  if (count < 2) throw Error(ErrorCode::InvalidArgument, "need at least two coefficients");
  const Recurrence rec(hp);
  std::vector<double> b(count);
  b[0] = 1.0;
  b[1] = rec.first() * b[0];
  for (std::size_t i = 0; i + 2 < count; ++i) b[i + 2] = rec.next(i, b[i], b[i + 1]);
  return b;
}

HeunParams truncated_params(const SystemParams& p, int l, Frame frame, int n, double omega) {
  require_level(n);
  const DerivedScales s = heun_scales(p, l, frame, omega);
  HeunParams hp;
  hp.alpha = 2.0 * s.tau;
  hp.beta = s.theta;
  hp.gamma = 2.0 * n + hp.alpha + 2.0;
  hp.delta = -2.0 * s.mu;
  return hp;
}

std::vector<double> truncation_coefficients(const SystemParams& p, int l, Frame frame, int n,
                                            double omega) {
  return series_coefficients(truncated_params(p, l, frame, n, omega),
                             static_cast<std::size_t>(n) + 2);
}

double truncation_residual(const SystemParams& p, int l, Frame frame, int n, double omega) {
  return truncation_coefficients(p, l, frame, n, omega).back();
}

double evaluate_series(const HeunSeries& hs, double y, const FreeSeriesOptions& opts) {
  if (!(y >= 0.0)) throw Error(ErrorCode::InvalidArgument, "series argument must be >= 0");
  const auto& b = hs.coefficients;
  if (hs.polynomial) {
    double acc = 0.0;
    for (auto it = b.rbegin(); it != b.rend(); ++it) acc = acc * y + *it;
    return acc;
  }

  const Recurrence rec(hs.params);
  double prev = 1.0;
  double curr = rec.first();
  double sum = 1.0;
  double comp = 0.0;
  double power = 1.0;
  int quiet = 0;
  auto add = [&](double term) {
    const double t = sum + term;
    comp += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
    sum = t;
  };
  for (std::size_t i = 1; i < opts.max_terms; ++i) {
    power *= y;
    const double term = curr * power;
    add(term);
    const double total = sum + comp;
    quiet = std::abs(term) <= opts.tail_tolerance * std::abs(total) ? quiet + 1 : 0;
    if (quiet >= 2) return total;
    const double next = rec.next(i - 1, prev, curr);
    prev = curr;
    curr = next;
  }
  throw Error(ErrorCode::SeriesNotConverged,
              "free Heun series did not converge at y = " + std::to_string(y));
}

RadialSolution make_radial_solution(const SystemParams& p, int l, Frame frame, int n,
                                    double omega) {
  require_level(n);
  RadialSolution rs;
  rs.scales = heun_scales(p, l, frame, omega);
  rs.series.params = truncated_params(p, l, frame, n, omega);
  rs.scales.chi = rs.series.params.chi();
  auto b = series_coefficients(rs.series.params, static_cast<std::size_t>(n) + 1);
  rs.series.coefficients = std::move(b);
  rs.series.polynomial = true;
  rs.degree = n;
  return rs;
}

namespace {

struct PolyJet {
  double h = 0.0, dh = 0.0, d2h = 0.0;
};

PolyJet polynomial_jet(const std::vector<double>& b, double y) {
  PolyJet j;
  for (auto it = b.rbegin(); it != b.rend(); ++it) {
    j.d2h = j.d2h * y + 2.0 * j.dh;
    j.dh = j.dh * y + j.h;
    j.h = j.h * y + *it;
  }
  return j;
}

double series_value(const RadialSolution& rs, double y) {
  return evaluate_series(rs.series, y);
}

}  // namespace

double radial_wavefunction(const RadialSolution& rs, double y) {
  if (!(y >= 0.0)) throw Error(ErrorCode::InvalidArgument, "radial coordinate must be >= 0");
  const double tau = rs.scales.tau;
  const double theta = rs.scales.theta;
  if (y == 0.0) return tau == 0.0 ? series_value(rs, 0.0) : 0.0;
  const double envelope = std::exp(tau * std::log(y) - y * y / 2.0 - theta * y / 2.0);
  return envelope * series_value(rs, y);
}

WavefunctionJet radial_wavefunction_jet(const RadialSolution& rs, double y) {
  if (!(y > 0.0)) throw Error(ErrorCode::InvalidArgument, "jet needs y > 0");
  if (!rs.series.polynomial) {
    throw Error(ErrorCode::InvalidArgument, "jet requires a polynomial solution");
  }
  const double tau = rs.scales.tau;
  const double theta = rs.scales.theta;
  const double envelope = std::exp(tau * std::log(y) - y * y / 2.0 - theta * y / 2.0);
  const PolyJet pj = polynomial_jet(rs.series.coefficients, y);

  // d/dy log of the Gaussian factor and of the power factor.
  const double g1 = -y - theta / 2.0;
  const double p1 = tau / y;
  const double gauss2 = g1 * g1 - 1.0;            // E''/E
  const double power2 = tau * (tau - 1.0) / (y * y);  // P''/P

  WavefunctionJet j;
  j.value = envelope * pj.h;
  j.first = envelope * ((g1 + p1) * pj.h + pj.dh);
  j.second = envelope * ((gauss2 + power2 + 2.0 * g1 * p1) * pj.h +
                         2.0 * (g1 + p1) * pj.dh + pj.d2h);
  return j;
}

std::vector<double> normalize_samples(std::span<const double> r, std::span<const double> f) {
  if (r.size() != f.size()) throw Error(ErrorCode::InvalidArgument, "size mismatch");
  double norm = 0.0;
  for (std::size_t i = 1; i < r.size(); ++i) {
    const double left = f[i - 1] * f[i - 1] * r[i - 1];
    const double right = f[i] * f[i] * r[i];
    norm += 0.5 * (r[i] - r[i - 1]) * (left + right);
  }
  std::vector<double> out(f.begin(), f.end());
  if (norm > 0.0) {
    const double scale = 1.0 / std::sqrt(norm);
    for (double& v : out) v *= scale;
  }
  return out;
}

}  // namespace dipole
