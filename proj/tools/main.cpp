#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "cli/commands.hpp"
#include "cli/config.hpp"
#include "dipole/error.hpp"

namespace {

struct Flags {
  std::string config;
  std::string frame;
  std::optional<double> omega_cap;
  std::string format;
  std::string out;
  std::string n;
  std::string l;
  std::optional<int> root_index;
  std::optional<int> grid_points;
  std::vector<std::string> tolerances;
};

// flags > file > defaults
dipole::cli::RunConfig resolve(const Flags& f) {
  using namespace dipole;
  cli::RunConfig cfg = f.config.empty() ? cli::RunConfig{} : cli::load_config(f.config);
  if (!f.frame.empty()) {
    const auto frame = parse_frame(f.frame);
    if (!frame) throw Error(ErrorCode::InvalidArgument, "--frame must be static or rotating");
    cfg.frame = *frame;
  }
  if (f.omega_cap) {
    if (!(*f.omega_cap > 0.0)) throw Error(ErrorCode::InvalidArgument, "--omega-cap must be > 0");
    cfg.omega_cap = *f.omega_cap;
  }
  if (!f.format.empty()) {
    const auto fmt = cli::parse_format(f.format);
    if (!fmt) throw Error(ErrorCode::InvalidArgument, "--format must be json or csv");
    cfg.format = *fmt;
  }
  if (!f.out.empty()) cfg.out = f.out;
  if (!f.n.empty()) {
    cfg.n = cli::parse_int_range(f.n);
    if (cfg.n.first < 1) throw Error(ErrorCode::InvalidArgument, "--n must be >= 1");
  }
  if (!f.l.empty()) cfg.l = cli::parse_int_range(f.l);
  if (f.root_index) {
    if (*f.root_index < 0) throw Error(ErrorCode::InvalidArgument, "--root-index must be >= 0");
    cfg.root_index = *f.root_index;
  }
  if (f.grid_points) {
    if (*f.grid_points < 16) throw Error(ErrorCode::InvalidArgument, "--grid-points must be >= 16");
    cfg.grid_points = static_cast<std::size_t>(*f.grid_points);
  }
  for (const auto& t : f.tolerances) cli::apply_tolerance(cfg.tolerances, t);
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectra, allowed frequencies and radial wavefunctions of an induced dipole in "
               "crossed fields with Kratzer and linear potentials"};
  app.require_subcommand(1, 1);

  Flags f;
  app.add_option("--config", f.config, "JSON config file")->check(CLI::ExistingFile);
  app.add_option("--frame", f.frame, "static | rotating");
  app.add_option("--omega-cap", f.omega_cap, "upper limit for allowed omega");
  app.add_option("--format", f.format, "json | csv");
  app.add_option("--out", f.out, "output path (default stdout)");
  app.add_option("--n", f.n, "radial degree or range first:last");
  app.add_option("--l", f.l, "angular number or range first:last");
  app.add_option("--root-index", f.root_index, "which allowed omega (wavefunction)");
  app.add_option("--grid-points", f.grid_points, "coarse FD cell count (validate)");
  app.add_option("--tolerance", f.tolerances, "override a check tolerance, name=value");

  for (const char* name : {"spectrum", "frequencies", "wavefunction", "validate", "sweep"}) {
    app.add_subcommand(name)->fallthrough();
  }
  app.get_subcommand("spectrum")->description("energy levels at the allowed frequencies");
  app.get_subcommand("frequencies")->description("allowed omega per (n, l), cubic and bisection");
  app.get_subcommand("wavefunction")->description("sampled radial function F(y)");
  app.get_subcommand("validate")->description("oracle checks, JSON report");
  app.get_subcommand("sweep")->description("spectrum over sweep.values of one parameter");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return dipole::cli::exit_code::config;
  }

  dipole::cli::RunConfig cfg;
  try {
    cfg = resolve(f);
  } catch (const dipole::Error& e) {
    std::cerr << "dipole: " << e.what() << "\n";
    return dipole::cli::exit_code::config;
  }

  const auto result = dipole::cli::run_command(app.get_subcommands().front()->get_name(), cfg);
  if (!result.diagnostic.empty()) std::cerr << "dipole: " << result.diagnostic << "\n";

  if (cfg.out.empty()) {
    std::fwrite(result.output.data(), 1, result.output.size(), stdout);
  } else {
    std::ofstream out(cfg.out, std::ios::binary);
    if (!out) {
      std::cerr << "dipole: cannot write '" << cfg.out << "'\n";
      return dipole::cli::exit_code::config;
    }
    out << result.output;
  }
  return result.exit_code;
}
