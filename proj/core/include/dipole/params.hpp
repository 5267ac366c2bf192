#pragma once

#include <optional>
#include <string_view>

namespace dipole {

/// Physical inputs in natural units (hbar = c = 1).
///
/// The induced-dipole particle sees the crossed fields B_z = B0, E_r = lambda r / 2,
/// a Kratzer potential -2Da/r + Da^2/r^2 and a linear potential b r. The frame
/// rotates with angular velocity Omega about z (Omega = 0 for the lab frame).
struct SystemParams {
  double mass = 1.0;            // m > 0
  double polarizability = 1.0;  // alpha
  double charge_density = 1.0;  // lambda
  double magnetic_field = 1.0;  // B0
  double linear = 0.0;          // b >= 0; also plays the role of eta in the rotating spectrum
  double kratzer_depth = 0.0;   // D >= 0
  double kratzer_length = 0.0;  // a >= 0
  double axial_wavenumber = 0.0;  // k
  double angular_velocity = 0.0;  // Omega >= 0

  /// Throws InvalidArgument if a field is out of its domain.
  void validate() const;

  /// Copy with B0 retuned so that alpha lambda B0 / m == omega.
  SystemParams with_cyclotron_frequency(double omega) const;

  bool kratzer_active() const { return kratzer_depth * kratzer_length != 0.0; }
  bool linear_active() const { return linear != 0.0; }

  friend bool operator==(const SystemParams&, const SystemParams&) = default;
};

enum class Frame { Static, Rotating };

std::string_view to_string(Frame frame) noexcept;
std::optional<Frame> parse_frame(std::string_view text) noexcept;

/// Scales entering the radial equation for one (l, frame, omega).
///
/// In the static frame varpi == omega and (mu, theta) are evaluated with omega;
/// in the rotating frame they are the barred quantities evaluated with varpi.
struct DerivedScales {
  double omega = 0.0;
  double varpi = 0.0;
  double tau = 0.0;  // |tau| = sqrt(l^2 + 2 m D a^2)
  double mu = 0.0;
  double theta = 0.0;
  std::optional<double> chi;  // energy dependent, unset until an energy is chosen

  /// Length scale converting r to the dimensionless radial coordinate: y = r * radial_scale.
  double radial_scale(double mass) const;
};

/// omega = alpha lambda B0 / m. Throws NonPositiveFrequency when alpha lambda B0 <= 0.
double cyclotron_frequency(const SystemParams& p);

/// varpi = omega in the static frame, sqrt(omega^2 + 4 Omega omega) in the rotating one.
double effective_frequency(const SystemParams& p, Frame frame);
double effective_frequency(const SystemParams& p, Frame frame, double omega);

/// Positive root of w^2 + 4 Omega w = varpi^2, i.e. the omega giving a prescribed varpi.
double cyclotron_from_effective(double varpi, double angular_velocity);

/// |tau| = sqrt(l^2 + 2 m D a^2). Frame independent.
double effective_angular(const SystemParams& p, int l);

DerivedScales heun_scales(const SystemParams& p, int l, Frame frame);
DerivedScales heun_scales(const SystemParams& p, int l, Frame frame, double omega);

/// Spectral parameter chi (static) or chi-bar (rotating) for a trial energy.
double chi(const SystemParams& p, int l, Frame frame, double energy);
double chi(const SystemParams& p, int l, Frame frame, double energy, double omega);

}  // namespace dipole
