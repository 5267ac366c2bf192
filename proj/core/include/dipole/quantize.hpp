#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "dipole/error.hpp"
#include "dipole/numerics.hpp"
#include "dipole/params.hpp"

namespace dipole {

struct IntRange {
  int first = 0;
  int last = 0;  // inclusive

  bool valid() const { return first <= last; }

  friend bool operator==(const IntRange&, const IntRange&) = default;
};

enum class EntryStatus { Ok, Degenerate, NoRoot };

std::string_view to_string(EntryStatus status) noexcept;

/// One bound state (n, l) at a constrained cyclotron frequency, or a flagged cell.
struct SpectrumEntry {
  int n = 1;
  int l = 0;
  Frame frame = Frame::Static;
  EntryStatus status = EntryStatus::Ok;
  double tau = 0.0;
  std::optional<double> omega;
  std::optional<double> varpi;
  std::optional<double> energy;
  std::string detail;  // diagnostic for flagged cells

  friend bool operator==(const SpectrumEntry&, const SpectrumEntry&) = default;
};

/// Closed-form level from the degree-n condition.
///   static:   E = (omega/2)(n + |tau| - l + 1) - 2 b^2/(m omega^2) + k^2/(2m)
///   rotating: E = (varpi/2)(n + |tau| + 1) - (omega/2) l - 2 b^2/(m varpi^2) + k^2/(2m) - Omega l
double energy_level(const SystemParams& p, int n, int l, double omega, Frame frame);

/// The same expression with varpi supplied by the caller instead of computed from omega.
/// The static frame ignores Omega and uses varpi where omega appears outside the l term.
double energy_from_effective(const SystemParams& p, int n, int l, double omega, double varpi,
                             Frame frame);

/// Monic cubic in u (u = omega static, u = varpi rotating) whose positive roots are the
/// degree-1 allowed frequencies:
///   u^3 - 16 m D^2 a^2/(2|tau|+1) u^2 + 32 b D a (|tau|+1)/(2|tau|+1) u - 4 b^2 (2|tau|+3)/m
struct FrequencyConstraint {
  int n = 1;
  int l = 0;
  Frame frame = Frame::Static;
  std::array<double, 4> coefficients{};
};

FrequencyConstraint frequency_constraint_n1(const SystemParams& p, int l, Frame frame);

/// Positive roots of the degree-1 constraint, mapped back to omega, ascending.
/// Throws DegenerateConstraint when b = 0 and D a = 0, NoPositiveRoot if nothing admissible.
std::vector<double> allowed_frequencies_n1(const SystemParams& p, int l, Frame frame);

struct Bracket {
  double lo = 0.0;
  double hi = 0.0;
};

/// Default omega bracket for the scan: three decades either side of the natural scales.
Bracket default_bracket(const SystemParams& p, int l, Frame frame);

/// All roots of omega -> truncation_residual(p, l, frame, n, omega) in the bracket.
/// Throws DegenerateConstraint (b = 0 and D a = 0) or EmptyBracket (no sign change).
std::vector<double> allowed_frequencies(const SystemParams& p, int n, int l, Frame frame,
                                        Bracket bracket, const numerics::ScanOptions& opts = {});

struct SpectrumOptions {
  std::optional<double> omega_cap;  // upper end of the scan bracket for n >= 2
  numerics::ScanOptions scan;
};

/// One entry per allowed (n, l, omega); degree 1 uses the cubic, higher degrees the scan.
/// Failing cells are kept with their status. Ordered by (n, l, omega).
std::vector<SpectrumEntry> spectrum(const SystemParams& p, IntRange n_range, IntRange l_range,
                                    Frame frame, const SpectrumOptions& opts = {});

}  // namespace dipole
