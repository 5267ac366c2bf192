#include "commands.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "dipole/error.hpp"
#include "dipole/heun.hpp"
#include "dipole/oracle.hpp"
#include "dipole/quantize.hpp"
#include "output.hpp"

namespace dipole::cli {

namespace {

SpectrumOptions spectrum_options(const RunConfig& cfg) {
  SpectrumOptions opts;
  opts.omega_cap = cfg.omega_cap;
  opts.scan.relative_tolerance = cfg.tolerances.root;
  return opts;
}

bool all_ok(const std::vector<SpectrumEntry>& entries) {
  return std::all_of(entries.begin(), entries.end(),
                     [](const SpectrumEntry& e) { return e.status == EntryStatus::Ok; });
}

std::string spectrum_csv(const std::vector<SpectrumEntry>& entries, std::string_view prefix = {}) {
  std::string out;
  for (const auto& e : entries) {
    out += prefix;
    out += csv_row(e);
    out += '\n';
  }
  return out;
}

// Roots for (n, l) the same way spectrum() finds them. Throws on degenerate / empty.
std::vector<double> level_roots(const RunConfig& cfg, int n, int l) {
  const SystemParams& p = cfg.params;
  std::vector<double> roots;
  if (n == 1) {
    roots = allowed_frequencies_n1(p, l, cfg.frame);
    if (cfg.omega_cap) std::erase_if(roots, [&](double w) { return w > *cfg.omega_cap; });
    if (roots.empty()) throw Error(ErrorCode::NoPositiveRoot, "all roots above the omega cap");
    return roots;
  }
  Bracket br = default_bracket(p, l, cfg.frame);
  if (cfg.omega_cap) br.hi = std::min(br.hi, *cfg.omega_cap);
  if (!(br.hi > br.lo)) throw Error(ErrorCode::EmptyBracket, "omega cap below bracket");
  numerics::ScanOptions scan;
  scan.relative_tolerance = cfg.tolerances.root;
  return allowed_frequencies(p, n, l, cfg.frame, br, scan);
}

// ---- frequencies ----

struct FrequencyRow {
  int n = 1;
  int l = 0;
  std::string method;
  int index = 0;
  std::optional<double> omega;
  std::optional<double> varpi;
  std::optional<double> residual;
  std::string status = "ok";
  std::string detail;
};

void frequency_rows(const RunConfig& cfg, int n, int l, const std::string& method,
                    std::vector<FrequencyRow>& rows) {
  const SystemParams& p = cfg.params;
  FrequencyRow base;
  base.n = n;
  base.l = l;
  base.method = method;
  try {
    std::vector<double> roots;
    if (method == "cubic") {
      roots = level_roots(cfg, n, l);
    } else {
      Bracket br = default_bracket(p, l, cfg.frame);
      if (cfg.omega_cap) br.hi = std::min(br.hi, *cfg.omega_cap);
      if (!(br.hi > br.lo)) throw Error(ErrorCode::EmptyBracket, "omega cap below bracket");
      numerics::ScanOptions scan;
      scan.relative_tolerance = cfg.tolerances.root;
      roots = allowed_frequencies(p, n, l, cfg.frame, br, scan);
    }
    int index = 0;
    for (double w : roots) {
      FrequencyRow row = base;
      row.index = index++;
      row.omega = w;
      row.varpi = effective_frequency(p, cfg.frame, w);
      row.residual = std::abs(truncation_residual(p, l, cfg.frame, n, w));
      rows.push_back(std::move(row));
    }
  } catch (const Error& err) {
    if (err.code() == ErrorCode::DegenerateConstraint) {
      base.status = "degenerate";
    } else if (err.code() == ErrorCode::NoPositiveRoot || err.code() == ErrorCode::EmptyBracket) {
      base.status = "no_root";
    } else {
      throw;
    }
    base.detail = err.what();
    rows.push_back(std::move(base));
  }
}

// ---- validate ----

struct Check {
  std::string name;
  std::string status;
  double measured = 0.0;
  double tolerance = 0.0;
  std::size_t cases = 0;
  std::string note;
};

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string verdict(bool ok) { return ok ? "pass" : "fail"; }

// Shared bookkeeping for a check whose cases all need an allowed omega.
Check constrained_check(std::string name, double tolerance, bool enabled, bool degenerate,
                        std::size_t ok_entries) {
  Check c;
  c.name = std::move(name);
  c.tolerance = tolerance;
  if (!enabled) {
    c.status = "disabled";
  } else if (degenerate) {
    c.status = "skipped_degenerate";
    c.note = "b = 0 and D a = 0: no frequency constraint";
  } else if (ok_entries == 0) {
    c.status = "skipped_no_root";
    c.note = "no allowed frequencies in range";
  }
  return c;
}

struct Case {
  int n;
  int l;
  double omega;
};

}  // namespace

CommandResult cmd_spectrum(const RunConfig& cfg) {
  const auto entries = spectrum(cfg.params, cfg.n, cfg.l, cfg.frame, spectrum_options(cfg));
  CommandResult res;
  if (cfg.format == Format::Csv) {
    res.output = std::string(kSpectrumCsvHeader) + "\n" + spectrum_csv(entries);
  } else {
    JsonWriter w;
    w.begin_object();
    w.key("command").value("spectrum");
    w.key("frame").value(to_string(cfg.frame));
    w.key("entries").begin_array();
    for (const auto& e : entries) write_entry(w, e);
    w.end_array();
    w.end_object();
    res.output = w.str();
  }
  if (!all_ok(entries)) {
    res.exit_code = exit_code::degenerate;
    res.diagnostic = "some (n, l) cells have no allowed frequency";
  }
  return res;
}

CommandResult cmd_frequencies(const RunConfig& cfg) {
  std::vector<FrequencyRow> rows;
  for (int n = cfg.n.first; n <= cfg.n.last; ++n) {
    for (int l = cfg.l.first; l <= cfg.l.last; ++l) {
      if (n == 1) frequency_rows(cfg, n, l, "cubic", rows);
      frequency_rows(cfg, n, l, "bisection", rows);
    }
  }
  CommandResult res;
  if (cfg.format == Format::Csv) {
    res.output = "n,l,frame,method,index,omega,varpi,residual,status\n";
    for (const auto& r : rows) {
      res.output += fmt::format("{},{},{},{},{},{},{},{},{}\n", r.n, r.l, to_string(cfg.frame),
                                r.method, r.index, csv_number(r.omega), csv_number(r.varpi),
                                csv_number(r.residual), r.status);
    }
  } else {
    JsonWriter w;
    w.begin_object();
    w.key("command").value("frequencies");
    w.key("frame").value(to_string(cfg.frame));
    w.key("rows").begin_array();
    for (const auto& r : rows) {
      w.begin_object(true);
      w.key("n").value(r.n);
      w.key("l").value(r.l);
      w.key("method").value(r.method);
      w.key("index").value(r.index);
      w.key("omega").value(r.omega);
      w.key("varpi").value(r.varpi);
      w.key("residual").value(r.residual);
      w.key("status").value(r.status);
      w.key("detail").value(r.detail);
      w.end_object();
    }
    w.end_array();
    w.end_object();
    res.output = w.str();
  }
  if (std::any_of(rows.begin(), rows.end(), [](const auto& r) { return r.status != "ok"; })) {
    res.exit_code = exit_code::degenerate;
    res.diagnostic = "some (n, l) cells have no allowed frequency";
  }
  return res;
}

CommandResult cmd_wavefunction(const RunConfig& cfg) {
  const SystemParams& p = cfg.params;
  const int n = cfg.n.first;
  const int l = cfg.l.first;
  CommandResult res;
  std::vector<double> roots;
  try {
    roots = level_roots(cfg, n, l);
  } catch (const Error& err) {
    if (err.code() != ErrorCode::DegenerateConstraint && err.code() != ErrorCode::NoPositiveRoot &&
        err.code() != ErrorCode::EmptyBracket) {
      throw;
    }
    res.exit_code = exit_code::degenerate;
    res.diagnostic = err.what();
    return res;
  }
  if (cfg.root_index >= static_cast<int>(roots.size())) {
    res.exit_code = exit_code::config;
    res.diagnostic = fmt::format("root index {} out of range: level (n={}, l={}) has {} root(s)",
                                 cfg.root_index, n, l, roots.size());
    return res;
  }
  const double omega = roots[static_cast<std::size_t>(cfg.root_index)];
  const RadialSolution rs = make_radial_solution(p, l, cfg.frame, n, omega);
  const double scale = rs.scales.radial_scale(p.mass);
  const double tau = rs.scales.tau;
  const double theta = rs.scales.theta;
  const double peak = (-theta / 2.0 + std::sqrt(theta * theta / 4.0 + 4.0 * tau)) / 2.0;
  const double y_max = cfg.wavefunction.y_max.value_or(std::max(8.0, peak + 6.0));

  const auto ys = linspace(0.0, y_max, cfg.wavefunction.samples);
  std::vector<double> rs_phys(ys.size());
  std::vector<double> fs(ys.size());
  for (std::size_t i = 0; i < ys.size(); ++i) {
    rs_phys[i] = ys[i] / scale;
    fs[i] = radial_wavefunction(rs, ys[i]);
  }
  std::vector<double> normalized;
  if (cfg.wavefunction.normalize) normalized = normalize_samples(rs_phys, fs);

  if (cfg.format == Format::Csv) {
    res.output = cfg.wavefunction.normalize ? "y,r,F,F_normalized\n" : "y,r,F\n";
    for (std::size_t i = 0; i < ys.size(); ++i) {
      res.output += fmt::format("{},{},{}", format_number(ys[i]), format_number(rs_phys[i]),
                                format_number(fs[i]));
      if (cfg.wavefunction.normalize) res.output += "," + format_number(normalized[i]);
      res.output += '\n';
    }
  } else {
    JsonWriter w;
    w.begin_object();
    w.key("command").value("wavefunction");
    w.key("n").value(n);
    w.key("l").value(l);
    w.key("frame").value(to_string(cfg.frame));
    w.key("root_index").value(cfg.root_index);
    w.key("omega").value(omega);
    w.key("varpi").value(rs.scales.varpi);
    w.key("energy").value(energy_level(p, n, l, omega, cfg.frame));
    w.key("tau").value(tau);
    w.key("mu").value(rs.scales.mu);
    w.key("theta").value(theta);
    w.key("radial_scale").value(scale);
    w.key("samples").begin_array();
    for (std::size_t i = 0; i < ys.size(); ++i) {
      w.begin_object(true);
      w.key("y").value(ys[i]);
      w.key("r").value(rs_phys[i]);
      w.key("F").value(fs[i]);
      if (cfg.wavefunction.normalize) w.key("F_normalized").value(normalized[i]);
      w.end_object();
    }
    w.end_array();
    w.end_object();
    res.output = w.str();
  }
  return res;
}

CommandResult cmd_validate(const RunConfig& cfg) {
  const SystemParams& p = cfg.params;
  const Tolerances& tol = cfg.tolerances;
  const Frame frame = cfg.frame;
  const auto entries = spectrum(p, cfg.n, cfg.l, frame, spectrum_options(cfg));
  const bool degenerate = !p.linear_active() && !p.kratzer_active();

  std::vector<Case> allowed;
  for (const auto& e : entries) {
    if (e.status == EntryStatus::Ok) allowed.push_back({e.n, e.l, *e.omega});
  }
  // Frame checks do not need a constrained omega; add the configured cyclotron frequency.
  std::vector<Case> any_omega = allowed;
  if (p.polarizability * p.charge_density * p.magnetic_field > 0.0) {
    const double w = cyclotron_frequency(p);
    for (int n = cfg.n.first; n <= cfg.n.last; ++n) {
      for (int l = cfg.l.first; l <= cfg.l.last; ++l) any_omega.push_back({n, l, w});
    }
  }

  std::vector<Check> checks;

  {
    Check c = constrained_check("identity", tol.identity, cfg.oracles.identity, degenerate,
                                allowed.size());
    if (c.status.empty()) {
      for (const auto& e : entries) {
        if (e.status != EntryStatus::Ok) continue;
        const DerivedScales s = heun_scales(p, e.l, frame, *e.omega);
        const double x = chi(p, e.l, frame, *e.energy, *e.omega);
        const double err = std::abs(x + s.theta * s.theta / 4.0 - 2.0 * s.tau - 2.0 - 2.0 * e.n);
        c.measured = std::max(c.measured, err);
        ++c.cases;
      }
      c.status = verdict(c.measured < c.tolerance);
    }
    checks.push_back(std::move(c));
  }

  {
    const bool has_n1 = cfg.n.first <= 1 && 1 <= cfg.n.last;
    Check c = constrained_check("cubic", tol.cubic, cfg.oracles.cubic, degenerate, 1);
    if (c.status.empty() && !has_n1) {
      c.status = "not_applicable";
      c.note = "n range excludes 1";
    }
    if (c.status.empty()) {
      numerics::ScanOptions scan;
      scan.relative_tolerance = tol.root;
      for (int l = cfg.l.first; l <= cfg.l.last; ++l) {
        std::vector<double> cubic;
        std::vector<double> scanned;
        try {
          cubic = allowed_frequencies_n1(p, l, frame);
        } catch (const Error& err) {
          if (err.code() != ErrorCode::NoPositiveRoot) throw;
        }
        try {
          scanned = allowed_frequencies(p, 1, l, frame, default_bracket(p, l, frame), scan);
        } catch (const Error& err) {
          if (err.code() != ErrorCode::EmptyBracket) throw;
        }
        ++c.cases;
        if (cubic.size() != scanned.size()) {
          c.measured = kInf;
          c.note = fmt::format("l={}: cubic gives {} root(s), scan gives {}", l, cubic.size(),
                               scanned.size());
          continue;
        }
        for (std::size_t i = 0; i < cubic.size(); ++i) {
          c.measured = std::max(c.measured, std::abs(cubic[i] - scanned[i]) / cubic[i]);
        }
      }
      c.status = verdict(c.measured < c.tolerance);
    }
    checks.push_back(std::move(c));
  }

  {
    Check c;
    c.name = "frame";
    c.tolerance = tol.frame;
    c.note = "rotating energies at Omega = 0 against static";
    if (!cfg.oracles.frame) {
      c.status = "disabled";
    } else {
      SystemParams still = p;
      still.angular_velocity = 0.0;
      for (const auto& k : any_omega) {
        const double rot = energy_level(still, k.n, k.l, k.omega, Frame::Rotating);
        const double st = energy_level(still, k.n, k.l, k.omega, Frame::Static);
        const double scale = std::max(std::abs(st), std::numeric_limits<double>::min());
        c.measured = std::max(c.measured, std::abs(rot - st) / scale);
        ++c.cases;
      }
      c.status = c.cases == 0 ? "skipped_no_root" : verdict(c.measured < c.tolerance);
    }
    checks.push_back(std::move(c));
  }

  {
    Check c;
    c.name = "page_werner";
    c.tolerance = tol.page_werner;
    c.note = "rotating energy with varpi frozen at omega, minus static, plus Omega l";
    if (!cfg.oracles.page_werner) {
      c.status = "disabled";
    } else {
      for (const auto& k : any_omega) {
        const double frozen = energy_from_effective(p, k.n, k.l, k.omega, k.omega, Frame::Rotating);
        const double st = energy_level(p, k.n, k.l, k.omega, Frame::Static);
        c.measured = std::max(c.measured,
                              std::abs(frozen - st + p.angular_velocity * static_cast<double>(k.l)));
        ++c.cases;
      }
      c.status = c.cases == 0 ? "skipped_no_root" : verdict(c.measured < c.tolerance);
    }
    checks.push_back(std::move(c));
  }

  {
    const auto samples = linspace(0.01, 10.0, 500);
    Check ode = constrained_check("ode", tol.ode, cfg.oracles.ode, degenerate, allowed.size());
    Check sens = constrained_check("sensitivity", tol.sensitivity, cfg.oracles.ode, degenerate,
                                   allowed.size());
    if (ode.status.empty()) {
      sens.measured = kInf;
      sens.note = "residual after a 1% omega shift must exceed the tolerance";
      for (const auto& k : allowed) {
        double r = kInf;
        try {
          r = ode_residual(p, k.l, frame, k.n, k.omega, samples);
        } catch (const Error& err) {
          if (err.code() != ErrorCode::NotQuantized) throw;
          ode.note = fmt::format("n={} l={}: truncation residual too large", k.n, k.l);
        }
        ode.measured = std::max(ode.measured, r);
        sens.measured = std::min(
            sens.measured, ode_residual_unchecked(p, k.l, frame, k.n, 1.01 * k.omega, samples));
        ++ode.cases;
        ++sens.cases;
      }
      ode.status = verdict(ode.measured < ode.tolerance);
      sens.status = verdict(sens.measured > sens.tolerance);
    }
    checks.push_back(std::move(ode));
    checks.push_back(std::move(sens));
  }

  {
    Check c = constrained_check("eigen", tol.eigen, cfg.oracles.eigen, degenerate, allowed.size());
    if (c.status.empty()) {
      c.note = "worst relative distance to the nearest FD eigenvalue; absolute floor eigen_floor";
      bool ok = true;
      for (const auto& e : entries) {
        if (e.status != EntryStatus::Ok) continue;
        const std::size_t count = static_cast<std::size_t>(e.n) + 2;
        const RadialGrid grid = default_grid(p, e.l, *e.omega, frame, count, cfg.grid_points);
        const EigenReport rep = fd_eigensolve(p, e.l, *e.omega, frame, grid, count);
        double dist = kInf;
        for (double lam : rep.eigenvalues) dist = std::min(dist, std::abs(lam - *e.energy));
        const double allowed_gap = std::max(tol.eigen * std::abs(*e.energy), tol.eigen_floor);
        ok = ok && dist < allowed_gap;
        c.measured = std::max(c.measured, dist / std::max(std::abs(*e.energy), 1e-300));
        ++c.cases;
      }
      c.status = verdict(ok);
    }
    checks.push_back(std::move(c));
  }

  const bool passed =
      std::none_of(checks.begin(), checks.end(), [](const Check& c) { return c.status == "fail"; });

  JsonWriter w;
  w.begin_object();
  w.key("command").value("validate");
  w.key("frame").value(to_string(frame));
  w.key("passed").value(passed);
  w.key("checks").begin_array();
  for (const auto& c : checks) {
    w.begin_object(true);
    w.key("name").value(c.name);
    w.key("status").value(c.status);
    w.key("measured").value(c.measured);
    w.key("tolerance").value(c.tolerance);
    w.key("cases").value(c.cases);
    w.key("note").value(c.note);
    w.end_object();
  }
  w.end_array();
  w.key("entries").begin_array();
  for (const auto& e : entries) write_entry(w, e);
  w.end_array();
  w.end_object();

  CommandResult res;
  res.output = w.str();
  if (!passed) {
    res.exit_code = exit_code::validation;
    std::string failed;
    for (const auto& c : checks) {
      if (c.status == "fail") failed += (failed.empty() ? "" : ", ") + c.name;
    }
    res.diagnostic = "validation failed: " + failed;
  }
  return res;
}

CommandResult cmd_sweep(const RunConfig& cfg) {
  if (cfg.sweep.values.empty()) {
    throw Error(ErrorCode::InvalidArgument, "sweep.values is empty");
  }
  CommandResult res;
  JsonWriter w;
  if (cfg.format == Format::Csv) {
    res.output = fmt::format("{},{}\n", cfg.sweep.parameter, kSpectrumCsvHeader);
  } else {
    w.begin_object();
    w.key("command").value("sweep");
    w.key("frame").value(to_string(cfg.frame));
    w.key("parameter").value(cfg.sweep.parameter);
    w.key("cells").begin_array();
  }
  bool ok = true;
  for (double v : cfg.sweep.values) {
    SystemParams p = cfg.params;
    set_param(p, cfg.sweep.parameter, v);
    p.validate();
    const auto entries = spectrum(p, cfg.n, cfg.l, cfg.frame, spectrum_options(cfg));
    ok = ok && all_ok(entries);
    if (cfg.format == Format::Csv) {
      res.output += spectrum_csv(entries, format_number(v) + ",");
    } else {
      w.begin_object();
      w.key("value").value(v);
      w.key("entries").begin_array();
      for (const auto& e : entries) write_entry(w, e);
      w.end_array();
      w.end_object();
    }
  }
  if (cfg.format == Format::Json) {
    w.end_array();
    w.end_object();
    res.output = w.str();
  }
  if (!ok) {
    res.exit_code = exit_code::degenerate;
    res.diagnostic = "some (n, l) cells have no allowed frequency";
  }
  return res;
}

CommandResult run_command(std::string_view name, const RunConfig& cfg) {
  try {
    if (name == "spectrum") return cmd_spectrum(cfg);
    if (name == "frequencies") return cmd_frequencies(cfg);
    if (name == "wavefunction") return cmd_wavefunction(cfg);
    if (name == "validate") return cmd_validate(cfg);
    if (name == "sweep") return cmd_sweep(cfg);
    return {exit_code::config, {}, "unknown command '" + std::string(name) + "'"};
  } catch (const Error& err) {
    CommandResult res;
    res.diagnostic = fmt::format("{}: {}", to_string(err.code()), err.what());
    switch (err.code()) {
      case ErrorCode::InvalidArgument:
      case ErrorCode::UnsupportedLevel:
      case ErrorCode::NonPositiveFrequency: res.exit_code = exit_code::config; break;
      case ErrorCode::DegenerateConstraint:
      case ErrorCode::NoPositiveRoot:
      case ErrorCode::EmptyBracket: res.exit_code = exit_code::degenerate; break;
      default: res.exit_code = exit_code::validation; break;
    }
    return res;
  }
}

}  // namespace dipole::cli
