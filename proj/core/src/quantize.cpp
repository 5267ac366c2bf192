#include "dipole/quantize.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dipole/heun.hpp"

namespace dipole {

std::string_view to_string(EntryStatus status) noexcept {
  switch (status) {
    case EntryStatus::Ok: return "ok";
    case EntryStatus::Degenerate: return "degenerate";
    case EntryStatus::NoRoot: return "no_root";
  }
  return "unknown";
}

namespace {

void require_level(int n) {
  if (n < 1) {
    throw Error(ErrorCode::UnsupportedLevel,
                "polynomial degree must be >= 1, got " + std::to_string(n));
  }
}

void require_constraint(const SystemParams& p) {
  if (!p.linear_active() && !p.kratzer_active()) {
    throw Error(ErrorCode::DegenerateConstraint,
                "b = 0 and D a = 0: the truncation condition does not depend on omega");
  }
}

double to_omega(double u, const SystemParams& p, Frame frame) {
  return frame == Frame::Static ? u : cyclotron_from_effective(u, p.angular_velocity);
}

}  // namespace

double energy_from_effective(const SystemParams& p, int n, int l, double omega, double varpi,
                             Frame frame) {
  require_level(n);
  if (!(omega > 0.0) || !(varpi > 0.0)) {
    throw Error(ErrorCode::NonPositiveFrequency, "frequencies must be positive");
  }
  const double m = p.mass;
  const double tau = effective_angular(p, l);
  const double ell = static_cast<double>(l);
  const double b = p.linear;
  const double k = p.axial_wavenumber;
  double energy = 0.5 * varpi * (n + tau + 1.0) - 2.0 * b * b / (m * varpi * varpi) +
                  k * k / (2.0 * m);
  energy -= 0.5 * omega * ell;
  if (frame == Frame::Rotating) energy -= p.angular_velocity * ell;
  return energy;
}

double energy_level(const SystemParams& p, int n, int l, double omega, Frame frame) {
  return energy_from_effective(p, n, l, omega, effective_frequency(p, frame, omega), frame);
}

FrequencyConstraint frequency_constraint_n1(const SystemParams& p, int l, Frame frame) {
  const double m = p.mass;
  const double b = p.linear;
  const double da = p.kratzer_depth * p.kratzer_length;
  const double tau = effective_angular(p, l);
  const double odd = 2.0 * tau + 1.0;
  FrequencyConstraint fc;
  fc.n = 1;
  fc.l = l;
  fc.frame = frame;
  fc.coefficients = {1.0, -16.0 * m * da * da / odd, 32.0 * b * da * (tau + 1.0) / odd,
                     -4.0 * b * b * (2.0 * tau + 3.0) / m};
  return fc;
}

std::vector<double> allowed_frequencies_n1(const SystemParams& p, int l, Frame frame) {
  require_constraint(p);
  const auto fc = frequency_constraint_n1(p, l, frame);
  std::vector<double> out;
  for (double u : numerics::cubic_real_roots(fc.coefficients)) {
    if (!(u > 0.0)) continue;
    const double omega = to_omega(u, p, frame);
    if (omega > 0.0) out.push_back(omega);
  }
  if (out.empty()) {
    throw Error(ErrorCode::NoPositiveRoot, "degree-1 constraint has no positive root");
  }
  std::sort(out.begin(), out.end());
  return out;
}

Bracket default_bracket(const SystemParams& p, int l, Frame frame) {
  require_constraint(p);
  const double m = p.mass;
  const double tau = effective_angular(p, l);
  const double da = p.kratzer_depth * p.kratzer_length;
  double small = INFINITY;
  double large = 0.0;
  auto consider = [&](double s) {
    small = std::min(small, s);
    large = std::max(large, s);
  };
  if (p.linear_active()) {
    consider(std::cbrt(4.0 * p.linear * p.linear * (2.0 * tau + 3.0) / m));
  }
  if (p.kratzer_active()) consider(16.0 * m * da * da / (2.0 * tau + 1.0));
  return {to_omega(1e-3 * small, p, frame), to_omega(1e3 * large, p, frame)};
}

std::vector<double> allowed_frequencies(const SystemParams& p, int n, int l, Frame frame,
                                        Bracket bracket, const numerics::ScanOptions& opts) {
  require_level(n);
  require_constraint(p);
  if (!(bracket.lo > 0.0) || !(bracket.hi > bracket.lo)) {
    throw Error(ErrorCode::InvalidArgument, "bracket must satisfy 0 < lo < hi");
  }
  auto residual = [&](double omega) { return truncation_residual(p, l, frame, n, omega); };
  auto roots = numerics::scan_roots_log(residual, bracket.lo, bracket.hi, opts);
  if (roots.empty()) {
    throw Error(ErrorCode::EmptyBracket, "no sign change of b_" + std::to_string(n + 1) +
                                             " in the omega bracket");
  }
  return roots;
}

std::vector<SpectrumEntry> spectrum(const SystemParams& p, IntRange n_range, IntRange l_range,
                                    Frame frame, const SpectrumOptions& opts) {
  if (!n_range.valid() || !l_range.valid() || n_range.first < 1) {
    throw Error(ErrorCode::InvalidArgument, "invalid quantum number range");
  }
  std::vector<SpectrumEntry> out;
  for (int n = n_range.first; n <= n_range.last; ++n) {
    for (int l = l_range.first; l <= l_range.last; ++l) {
      SpectrumEntry cell;
      cell.n = n;
      cell.l = l;
      cell.frame = frame;
      cell.tau = effective_angular(p, l);
      try {
        std::vector<double> roots;
        if (n == 1) {
          roots = allowed_frequencies_n1(p, l, frame);
          if (opts.omega_cap) {
            std::erase_if(roots, [&](double w) { return w > *opts.omega_cap; });
            if (roots.empty()) {
              throw Error(ErrorCode::NoPositiveRoot, "all roots above the omega cap");
            }
          }
        } else {
          Bracket br = default_bracket(p, l, frame);
          if (opts.omega_cap) br.hi = std::min(br.hi, *opts.omega_cap);
          if (!(br.hi > br.lo)) throw Error(ErrorCode::EmptyBracket, "omega cap below bracket");
          roots = allowed_frequencies(p, n, l, frame, br, opts.scan);
        }
        for (double omega : roots) {
          SpectrumEntry e = cell;
          e.omega = omega;
          e.varpi = effective_frequency(p, frame, omega);
          e.energy = energy_level(p, n, l, omega, frame);
          out.push_back(std::move(e));
        }
      } catch (const Error& err) {
        switch (err.code()) {
          case ErrorCode::DegenerateConstraint: cell.status = EntryStatus::Degenerate; break;
          case ErrorCode::NoPositiveRoot:
          case ErrorCode::EmptyBracket: cell.status = EntryStatus::NoRoot; break;
          default: throw;
        }
        cell.detail = err.what();
        out.push_back(std::move(cell));
      }
    }
  }
  return out;
}

}  // namespace dipole
