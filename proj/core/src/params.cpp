#include "dipole/params.hpp"

#include <cmath>
#include <string>

#include "dipole/error.hpp"

namespace dipole {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid_argument";
    case ErrorCode::NonPositiveFrequency: return "non_positive_frequency";
    case ErrorCode::UnsupportedLevel: return "unsupported_level";
    case ErrorCode::SeriesNotConverged: return "series_not_converged";
    case ErrorCode::DegenerateConstraint: return "degenerate";
    case ErrorCode::NoPositiveRoot: return "no_positive_root";
    case ErrorCode::EmptyBracket: return "empty_bracket";
    case ErrorCode::NotQuantized: return "not_quantized";
    case ErrorCode::GridTooCoarse: return "grid_too_coarse";
  }
  return "unknown";
}

std::string_view to_string(Frame frame) noexcept {
  return frame == Frame::Static ? "static" : "rotating";
}

std::optional<Frame> parse_frame(std::string_view text) noexcept {
  if (text == "static") return Frame::Static;
  if (text == "rotating") return Frame::Rotating;
  return std::nullopt;
}

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::InvalidArgument, what);
}

void require_frequency(double omega) {
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw Error(ErrorCode::NonPositiveFrequency,
                "cyclotron frequency must be positive and finite, got " +
                    std::to_string(omega));
  }
}

}  // namespace

void SystemParams::validate() const {
  require(std::isfinite(mass) && mass > 0.0, "mass must be positive");
  require(std::isfinite(polarizability) && std::isfinite(charge_density) &&
              std::isfinite(magnetic_field) && std::isfinite(axial_wavenumber),
          "field parameters must be finite");
  require(std::isfinite(linear) && linear >= 0.0, "linear coefficient b must be >= 0");
  require(std::isfinite(kratzer_depth) && kratzer_depth >= 0.0, "Kratzer depth D must be >= 0");
  require(std::isfinite(kratzer_length) && kratzer_length >= 0.0,
          "Kratzer length a must be >= 0");
  require(std::isfinite(angular_velocity) && angular_velocity >= 0.0,
          "angular velocity must be >= 0");
}

SystemParams SystemParams::with_cyclotron_frequency(double omega) const {
  require_frequency(omega);
  const double coupling = polarizability * charge_density;
  require(coupling != 0.0, "alpha * lambda must be nonzero to retune B0");
  SystemParams out = *this;
  out.magnetic_field = mass * omega / coupling;
  return out;
}

double DerivedScales::radial_scale(double mass) const {
  return std::sqrt(mass * varpi / 2.0);
}

double cyclotron_frequency(const SystemParams& p) {
  const double omega = p.polarizability * p.charge_density * p.magnetic_field / p.mass;
  require_frequency(omega);
  return omega;
}

double effective_frequency(const SystemParams& p, Frame frame) {
  return effective_frequency(p, frame, cyclotron_frequency(p));
}

double effective_frequency(const SystemParams& p, Frame frame, double omega) {
  require_frequency(omega);
  if (frame == Frame::Static) return omega;
  return std::sqrt(omega * (omega + 4.0 * p.angular_velocity));
}

double cyclotron_from_effective(double varpi, double angular_velocity) {
  // w = -2 Omega + sqrt(4 Omega^2 + varpi^2), rationalised against cancellation.
  if (angular_velocity == 0.0) return varpi;  // keeps the Omega = 0 frame limit exact
  const double two_omega = 2.0 * angular_velocity;
  return varpi * varpi / (two_omega + std::hypot(two_omega, varpi));
}

double effective_angular(const SystemParams& p, int l) {
  const double ell = static_cast<double>(l);
  return std::sqrt(ell * ell +
                   2.0 * p.mass * p.kratzer_depth * p.kratzer_length * p.kratzer_length);
}

DerivedScales heun_scales(const SystemParams& p, int l, Frame frame) {
  return heun_scales(p, l, frame, cyclotron_frequency(p));
}

DerivedScales heun_scales(const SystemParams& p, int l, Frame frame, double omega) {
  DerivedScales s;
  s.omega = omega;
  s.varpi = effective_frequency(p, frame, omega);
  s.tau = effective_angular(p, l);
  const double half = p.mass * s.varpi / 2.0;
  const double root = std::sqrt(half);
  s.mu = 4.0 * p.mass * p.kratzer_depth * p.kratzer_length / root;
  s.theta = 2.0 * p.mass * p.linear / (half * root);
  return s;
}

double chi(const SystemParams& p, int l, Frame frame, double energy) {
  return chi(p, l, frame, energy, cyclotron_frequency(p));
}

double chi(const SystemParams& p, int l, Frame frame, double energy, double omega) {
  const double varpi = effective_frequency(p, frame, omega);
  const double m = p.mass;
  const double ell = static_cast<double>(l);
  const double k = p.axial_wavenumber;
  double bracket = 2.0 * m * energy - k * k + m * omega * ell;
  if (frame == Frame::Rotating) bracket += 2.0 * m * ell * p.angular_velocity;
  return 2.0 / (m * varpi) * bracket;
}

}  // namespace dipole
