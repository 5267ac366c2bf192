#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dipole/params.hpp"

namespace dipole {

/// Uniform radial grid on [r_min, r_max] split into `points` cells.
struct RadialGrid {
  double r_min = 0.0;
  double r_max = 0.0;
  std::size_t points = 0;
  std::vector<double> values;  // optional samples on the cell centres

  double spacing() const { return (r_max - r_min) / static_cast<double>(points); }
  double centre(std::size_t i) const {
    return r_min + (static_cast<double>(i) + 0.5) * spacing();
  }
  RadialGrid refined(std::size_t factor) const;
  /// Throws InvalidArgument unless 0 < r_min < r_max and points >= 3.
  void validate() const;
};

struct EigenReport {
  std::vector<double> eigenvalues;  // ascending, Richardson-extrapolated
  std::vector<bool> converged;
  std::vector<double> error_estimate;
  RadialGrid grid;  // coarsest level; levels are grid, 2x and 4x refined
};

struct EigenOptions {
  double tolerance = 1e-6;  // relative, on the difference of successive extrapolations
  bool strict = false;      // throw GridTooCoarse instead of flagging
};

/// Radial potential, constants included:
///   tau^2/(2 m r^2) - 2Da/r + b r + (m varpi^2/8) r^2 - (omega/2) l + k^2/(2m) [- Omega l]
double effective_potential(const SystemParams& p, int l, double omega, Frame frame, double r);

/// Grid sized for the lowest `count` states at this omega; `points` is the coarse cell count.
RadialGrid default_grid(const SystemParams& p, int l, double omega, Frame frame,
                        std::size_t count, std::size_t points = 2000);

/// Lowest `count` eigenvalues of the discretised radial operator on one grid level.
std::vector<double> fd_eigenvalues(const SystemParams& p, int l, double omega, Frame frame,
                                   const RadialGrid& grid, std::size_t count);

/// Lowest `count` eigenvalues with grid refinement (N, 2N, 4N) and Richardson extrapolation.
/// Requires count <= points / 4.
EigenReport fd_eigensolve(const SystemParams& p, int l, double omega, Frame frame,
                          const RadialGrid& grid, std::size_t count,
                          const EigenOptions& opts = {});

/// Max over samples y of |LHS of the dimensionless radial equation| / max |F| for the
/// degree-n polynomial solution at omega. Throws NotQuantized unless omega is allowed.
double ode_residual(const SystemParams& p, int l, Frame frame, int n, double omega,
                    std::span<const double> samples);

/// Same measurement without the quantisation check (for perturbation probes).
double ode_residual_unchecked(const SystemParams& p, int l, Frame frame, int n, double omega,
                              std::span<const double> samples);

/// `count` evenly spaced samples on [lo, hi].
std::vector<double> linspace(double lo, double hi, std::size_t count);

}  // namespace dipole
