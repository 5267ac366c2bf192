#pragma once

#include <string>
#include <string_view>

#include "config.hpp"

namespace dipole::cli {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int config = 1;
inline constexpr int degenerate = 2;  // also: no admissible root
inline constexpr int validation = 3;
}  // namespace exit_code

struct CommandResult {
  int exit_code = exit_code::ok;
  std::string output;      // document for --out / stdout
  std::string diagnostic;  // for stderr, may be empty
};

/// Rows (n, l, frame, omega, varpi, tau, energy, status) ordered by (n, l, omega).
CommandResult cmd_spectrum(const RunConfig& cfg);

/// Allowed omega per (n, l) with method tag (cubic for n = 1, bisection for all n) and |b_{n+1}|.
CommandResult cmd_frequencies(const RunConfig& cfg);

/// F sampled on [0, y_max] at the root `root_index` of level (n.first, l.first).
CommandResult cmd_wavefunction(const RunConfig& cfg);

/// Oracle checks against the spectrum; exit 3 if any enabled check fails.
CommandResult cmd_validate(const RunConfig& cfg);

/// cmd_spectrum repeated over sweep.values of sweep.parameter.
CommandResult cmd_sweep(const RunConfig& cfg);

/// Dispatch by name, mapping dipole::Error to the exit-code contract.
CommandResult run_command(std::string_view name, const RunConfig& cfg);

}  // namespace dipole::cli
