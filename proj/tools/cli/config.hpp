#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dipole/params.hpp"
#include "dipole/quantize.hpp"

#include "json.hpp"

namespace dipole::cli {

enum class Format { Json, Csv };

std::string_view to_string(Format f) noexcept;
std::optional<Format> parse_format(std::string_view text) noexcept;

/// Which oracle checks `validate` runs.
struct OracleToggles {
  bool identity = true;
  bool cubic = true;
  bool frame = true;
  bool page_werner = true;
  bool ode = true;
  bool eigen = true;

  friend bool operator==(const OracleToggles&, const OracleToggles&) = default;
};

/// Pass thresholds for `validate` plus the root-scan tolerance.
struct Tolerances {
  double identity = 1e-10;     // absolute, on chi + theta^2/4 - 2|tau| - 2 - 2n
  double cubic = 1e-10;        // relative, cubic roots vs scan roots
  double frame = 1e-13;        // relative, rotating at Omega = 0 vs static
  double page_werner = 1e-13;  // absolute
  double ode = 1e-8;           // normalized residual at allowed omega
  double sensitivity = 1e-3;   // residual must exceed this after a 1% omega shift
  double eigen = 1e-4;         // relative match to an FD eigenvalue
  double eigen_floor = 1e-6;   // absolute floor for the same match
  double root = 1e-12;         // bisection relative tolerance

  friend bool operator==(const Tolerances&, const Tolerances&) = default;
};

struct WavefunctionSpec {
  std::optional<double> y_max;  // default: past the envelope peak, at least 8
  std::size_t samples = 201;
  bool normalize = false;

  friend bool operator==(const WavefunctionSpec&, const WavefunctionSpec&) = default;
};

struct SweepSpec {
  std::string parameter = "Omega";  // one of the params keys
  std::vector<double> values;

  friend bool operator==(const SweepSpec&, const SweepSpec&) = default;
};

struct RunConfig {
  SystemParams params = default_params();
  Frame frame = Frame::Static;
  IntRange n{1, 1};
  IntRange l{-1, 1};
  Format format = Format::Json;
  std::string out;  // empty: stdout
  OracleToggles oracles;
  Tolerances tolerances;
  int root_index = 0;
  std::size_t grid_points = 2000;
  std::optional<double> omega_cap;
  WavefunctionSpec wavefunction;
  SweepSpec sweep;

  static SystemParams default_params();

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Parse a config document. Unknown keys and out-of-domain values throw
/// dipole::Error(InvalidArgument); missing keys keep their defaults.
RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::string& path);

/// Full document, every key present. parse_config(to_json(c)) == c.
nlohmann::json to_json(const RunConfig& cfg);

/// "3" or "1:4" (inclusive).
IntRange parse_int_range(std::string_view text);

/// "name=value" with name a Tolerances field.
void apply_tolerance(Tolerances& tol, std::string_view assignment);

/// Sets one SystemParams field by its config key (m, alpha, lambda, B0, b, D, a, k, Omega).
void set_param(SystemParams& p, std::string_view key, double value);

}  // namespace dipole::cli
