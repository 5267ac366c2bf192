#include "dipole/oracle.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <string>

#include "dipole/error.hpp"
#include "dipole/heun.hpp"

namespace dipole {

void RadialGrid::validate() const {
  if (!(r_min > 0.0) || !(r_max > r_min) || points < 3) {
    throw Error(ErrorCode::InvalidArgument, "radial grid needs 0 < r_min < r_max, points >= 3");
  }
}

RadialGrid RadialGrid::refined(std::size_t factor) const {
  RadialGrid g = *this;
  g.points = points * factor;
  g.values.clear();
  return g;
}

std::vector<double> linspace(double lo, double hi, std::size_t count) {
  std::vector<double> out(count);
  if (count == 1) {
    out[0] = lo;
    return out;
  }
  const double step = (hi - lo) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) out[i] = lo + step * static_cast<double>(i);
  out.back() = hi;
  return out;
}

double effective_potential(const SystemParams& p, int l, double omega, Frame frame, double r) {
  const double varpi = effective_frequency(p, frame, omega);
  const double m = p.mass;
  const double tau = effective_angular(p, l);
  const double ell = static_cast<double>(l);
  double v = tau * tau / (2.0 * m * r * r) - 2.0 * p.kratzer_depth * p.kratzer_length / r +
             p.linear * r + m * varpi * varpi / 8.0 * r * r;
  v += -0.5 * omega * ell + p.axial_wavenumber * p.axial_wavenumber / (2.0 * m);
  if (frame == Frame::Rotating) v -= p.angular_velocity * ell;
  return v;
}

namespace {

// log(tau y) - y^2/2 - theta y/2, the log-amplitude of the Gaussian-power envelope.
double envelope_log(double tau, double theta, double y) {
  return (tau > 0.0 ? tau * std::log(y) : 0.0) - y * y / 2.0 - theta * y / 2.0;
}

double solve_increasing(auto f, double lo, double hi) {
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

RadialGrid default_grid(const SystemParams& p, int l, double omega, Frame frame,
                        std::size_t count, std::size_t points) {
  const DerivedScales s = heun_scales(p, l, frame, omega);
  const double scale = s.radial_scale(p.mass);
  const double tau = s.tau;
  const double theta = s.theta;
  const double mu = s.mu;

  const double peak = (-theta / 2.0 + std::sqrt(theta * theta / 4.0 + 4.0 * tau)) / 2.0;
  const double peak_log = envelope_log(tau, theta, std::max(peak, 1e-300));
  const double drop = 60.0 + 4.0 * static_cast<double>(count);
  double y_hi = solve_increasing(
      [&](double y) { return peak_log - envelope_log(tau, theta, y) - drop; }, peak,
      peak + 10.0 + std::sqrt(2.0 * drop) + 2.0 * std::sqrt(static_cast<double>(count)));
  y_hi = std::max(y_hi, peak + 3.0);

  // Coulomb-like length where the Kratzer attraction dominates the oscillator.
  const double coulomb = mu > 0.0 ? (tau + 1.0) * (2.0 * tau + 1.0) / mu : INFINITY;

  double y_lo = 0.0;
  if (tau >= 8.0) {
    const double ref = std::min(peak, coulomb);
    const double kappa = mu / (2.0 * tau + 1.0);
    const double budget = 92.0 + ref * ref / 2.0 + (theta / 2.0 + kappa) * ref;
    y_lo = ref * std::exp(-budget / tau);
  }

  const double y_scale = std::min(1.0, coulomb);
  const double wanted = std::ceil((y_hi - y_lo) / (y_scale / 40.0));
  const auto cells = static_cast<std::size_t>(
      std::clamp(wanted, static_cast<double>(points), 50000.0));

  RadialGrid g;
  g.points = cells;
  g.r_max = y_hi / scale;
  g.r_min = y_lo > 0.0 ? y_lo / scale : g.r_max / (static_cast<double>(cells) * 1e3);
  return g;
}

namespace {

struct Tridiagonal {
  std::vector<double> diag;
  std::vector<double> off;
};

// 1 - t^k for t = a/b in [0, 1), from log t.
double one_minus_power(double log_t, double k) {
  return -std::expm1(k * log_t);
}

// Flux-form operator -(1/2m) r^-w (r^w g')' + V_rest g with w = 2|tau|+1, on cells with
// cell-averaged weight, symmetrised by sqrt(cell weight): the unknowns are u = sqrt(r) F
// up to the cell quadrature. The inner face carries no flux (regular solution; the weight
// r^w vanishes at the origin), the outer face is a Dirichlet ghost.
Tridiagonal assemble(const SystemParams& p, int l, double omega, Frame frame,
                     const RadialGrid& grid) {
  const std::size_t n = grid.points;
  const double h = grid.spacing();
  const double m = p.mass;
  const double varpi = effective_frequency(p, frame, omega);
  const double tau = effective_angular(p, l);
  const double w = 2.0 * tau + 1.0;
  const double ell = static_cast<double>(l);
  double constant = -0.5 * omega * ell + p.axial_wavenumber * p.axial_wavenumber / (2.0 * m);
  if (frame == Frame::Rotating) constant -= p.angular_velocity * ell;
  const double coulomb = -2.0 * p.kratzer_depth * p.kratzer_length;
  const double quadratic = m * varpi * varpi / 8.0;
  const double kinetic = 1.0 / (2.0 * m * h * h);

  std::vector<double> log_face(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    log_face[i] = std::log(grid.r_min + static_cast<double>(i) * h);
  }
  std::vector<double> log_mass(n);
  Tridiagonal t;
  t.diag.resize(n);
  t.off.resize(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    const double right = grid.r_min + static_cast<double>(i + 1) * h;
    const double log_t = std::log1p(-h / right);
    const double base = one_minus_power(log_t, w + 1.0);
    log_mass[i] = (w + 1.0) * log_face[i + 1] + std::log(base) - std::log((w + 1.0) * h);
    // Weighted cell averages of r^q relative to r^0.
    auto average = [&](double q) {
      return std::pow(right, q) * (w + 1.0) / (w + q + 1.0) *
             one_minus_power(log_t, w + q + 1.0) / base;
    };
    const double potential =
        coulomb * average(-1.0) + p.linear * average(1.0) + quadratic * average(2.0) + constant;
    const double left_weight = i == 0 ? 0.0 : std::exp(w * log_face[i] - log_mass[i]);
    const double right_weight =
        (i + 1 == n ? 2.0 : 1.0) * std::exp(w * log_face[i + 1] - log_mass[i]);
    t.diag[i] = kinetic * (left_weight + right_weight) + potential;
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    t.off[i] =
        -kinetic * std::exp(w * log_face[i + 1] - 0.5 * log_mass[i] - 0.5 * log_mass[i + 1]);
  }
  return t;
}

std::vector<double> lowest_eigenvalues(Tridiagonal t, std::size_t count) {
  const auto n = static_cast<lapack_int>(t.diag.size());
  std::vector<double> w(t.diag.size());
  std::vector<lapack_int> iblock(t.diag.size());
  std::vector<lapack_int> isplit(t.diag.size());
  lapack_int found = 0;
  lapack_int nsplit = 0;
  const double abstol = 2.0 * LAPACKE_dlamch('S');
  const lapack_int info = LAPACKE_dstebz('I', 'E', n, 0.0, 0.0, 1,
                                         static_cast<lapack_int>(count), abstol,
                                         t.diag.data(), t.off.data(), &found, &nsplit, w.data(),
                                         iblock.data(), isplit.data());
  if (info != 0 || found < static_cast<lapack_int>(count)) {
    throw Error(ErrorCode::GridTooCoarse,
                "tridiagonal eigenvalue bisection failed (info " + std::to_string(info) + ")");
  }
  w.resize(count);
  return w;
}

}  // namespace

std::vector<double> fd_eigenvalues(const SystemParams& p, int l, double omega, Frame frame,
                                   const RadialGrid& grid, std::size_t count) {
  grid.validate();
  if (count == 0 || count > grid.points / 4) {
    throw Error(ErrorCode::InvalidArgument, "eigenvalue count must be in [1, points/4]");
  }
  return lowest_eigenvalues(assemble(p, l, omega, frame, grid), count);
}

EigenReport fd_eigensolve(const SystemParams& p, int l, double omega, Frame frame,
                          const RadialGrid& grid, std::size_t count, const EigenOptions& opts) {
  const auto coarse = fd_eigenvalues(p, l, omega, frame, grid, count);
  const auto middle = fd_eigenvalues(p, l, omega, frame, grid.refined(2), count);
  const auto fine = fd_eigenvalues(p, l, omega, frame, grid.refined(4), count);
  const double quantum = 0.5 * effective_frequency(p, frame, omega);

  EigenReport report;
  report.grid = grid;
  for (std::size_t i = 0; i < count; ++i) {
    const double first = middle[i] + (middle[i] - coarse[i]) / 3.0;
    const double second = fine[i] + (fine[i] - middle[i]) / 3.0;
    const double err = std::abs(second - first);
    report.eigenvalues.push_back(second);
    report.error_estimate.push_back(err);
    report.converged.push_back(err <= opts.tolerance * std::max(std::abs(second), quantum));
  }
  if (opts.strict &&
      std::find(report.converged.begin(), report.converged.end(), false) !=
          report.converged.end()) {
    throw Error(ErrorCode::GridTooCoarse, "eigenvalues not converged under grid refinement");
  }
  return report;
}

double ode_residual_unchecked(const SystemParams& p, int l, Frame frame, int n, double omega,
                              std::span<const double> samples) {
  const RadialSolution rs = make_radial_solution(p, l, frame, n, omega);
  const double tau = rs.scales.tau;
  const double mu = rs.scales.mu;
  const double theta = rs.scales.theta;
  const double chi_value = *rs.scales.chi;
  double worst = 0.0;
  double largest = 0.0;
  for (double y : samples) {
    const WavefunctionJet j = radial_wavefunction_jet(rs, y);
    const double lhs = j.second + j.first / y - tau * tau / (y * y) * j.value -
                       y * y * j.value + mu / y * j.value - theta * y * j.value +
                       chi_value * j.value;
    worst = std::max(worst, std::abs(lhs));
    largest = std::max(largest, std::abs(j.value));
  }
  return largest > 0.0 ? worst / largest : worst;
}

double ode_residual(const SystemParams& p, int l, Frame frame, int n, double omega,
                    std::span<const double> samples) {
  const auto b = truncation_coefficients(p, l, frame, n, omega);
  double scale = 1.0;
  for (std::size_t i = 0; i + 1 < b.size(); ++i) scale = std::max(scale, std::abs(b[i]));
  if (std::abs(b.back()) > 1e-8 * scale) {
    throw Error(ErrorCode::NotQuantized, "omega is not an allowed frequency for this level");
  }
  return ode_residual_unchecked(p, l, frame, n, omega, samples);
}

}  // namespace dipole
