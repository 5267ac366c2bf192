#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

#include "cli/commands.hpp"
#include "cli/config.hpp"
#include "cli/output.hpp"
#include "dipole/error.hpp"
#include "dipole/heun.hpp"
#include "dipole/oracle.hpp"
#include "dipole/quantize.hpp"

using namespace dipole;
using namespace dipole::cli;
using nlohmann::json;
using doctest::Approx;

namespace {

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  for (std::string cell; std::getline(in, cell, ',');) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("config round trip") {
  RunConfig cfg;
  CHECK(parse_config(to_json(cfg)) == cfg);

  cfg.params.mass = 0.1 + 0.2;
  cfg.params.angular_velocity = 1.0 / 3.0;
  cfg.frame = Frame::Rotating;
  cfg.n = {1, 3};
  cfg.l = {-4, 2};
  cfg.format = Format::Csv;
  cfg.out = "table.csv";
  cfg.oracles.eigen = false;
  cfg.tolerances.ode = 3e-9;
  cfg.root_index = 2;
  cfg.grid_points = 900;
  cfg.omega_cap = 55.5;
  cfg.wavefunction.y_max = 12.0;
  cfg.wavefunction.samples = 31;
  cfg.wavefunction.normalize = true;
  cfg.sweep = {"D", {0.5, 1.0, 2.0}};
  const json doc = to_json(cfg);
  CHECK(parse_config(doc) == cfg);
  CHECK(parse_config(json::parse(doc.dump())) == cfg);
}

TEST_CASE("config parsing rejects bad input") {
  CHECK_THROWS_AS(parse_config(json::parse(R"({"parms": {}})")), Error);
  CHECK_THROWS_AS(parse_config(json::parse(R"({"params": {"m": -1}})")), Error);
  CHECK_THROWS_AS(parse_config(json::parse(R"({"params": {"q": 1}})")), Error);
  CHECK_THROWS_AS(parse_config(json::parse(R"({"frame": "lab"})")), Error);
  CHECK_THROWS_AS(parse_config(json::parse(R"({"n": 0})")), Error);
  CHECK_THROWS_AS(parse_config(json::parse(R"({"l": [2, 1]})")), Error);
  CHECK_THROWS_AS(parse_config(json::parse(R"({"sweep": {"parameter": "zeta"}})")), Error);
  CHECK_THROWS_AS(parse_config(json::parse(R"({"tolerances": {"ode": -1}})")), Error);

  const auto cfg = parse_config(json::parse(R"({"n": "2:4", "l": -1, "params": {"b": 0.5}})"));
  CHECK(cfg.n == IntRange{2, 4});
  CHECK(cfg.l == IntRange{-1, -1});
  CHECK(cfg.params.linear == 0.5);
  CHECK(cfg.params.kratzer_depth == 1.0);  // default kept
}

TEST_CASE("flag helpers") {
  CHECK(parse_int_range("3") == IntRange{3, 3});
  CHECK(parse_int_range("-2:5") == IntRange{-2, 5});
  CHECK_THROWS_AS(parse_int_range("5:1"), Error);
  CHECK_THROWS_AS(parse_int_range("x"), Error);

  Tolerances t;
  apply_tolerance(t, "eigen=2.5e-3");
  CHECK(t.eigen == 2.5e-3);
  apply_tolerance(t, "identity=0");
  CHECK(t.identity == 0.0);
  CHECK_THROWS_AS(apply_tolerance(t, "nope=1"), Error);
  CHECK_THROWS_AS(apply_tolerance(t, "ode"), Error);
  CHECK_THROWS_AS(apply_tolerance(t, "ode=abc"), Error);
}

TEST_CASE("number formatting") {
  CHECK(format_number(0.1) == "0.10000000000000001");
  CHECK(format_number(2.0) == "2");
  CHECK(format_number(-1.5e-300) == "-1.5000000000000001e-300");
  CHECK(std::stod(format_number(1.0 / 3.0)) == 1.0 / 3.0);
  CHECK(quote("a\"b\\c\n") == R"("a\"b\\c\n")");
}

TEST_CASE("spectrum json re-parses into equal entries") {
  RunConfig cfg;
  cfg.n = {1, 2};
  cfg.l = {-2, 2};
  cfg.frame = Frame::Rotating;
  cfg.params.angular_velocity = 0.3;
  const auto res = cmd_spectrum(cfg);
  CHECK(res.exit_code == 0);
  const auto parsed = spectrum_from_json(json::parse(res.output));
  const auto direct = spectrum(cfg.params, cfg.n, cfg.l, cfg.frame);
  CHECK(parsed == direct);

  // Flagged cells survive too.
  cfg.params.linear = 0.0;
  cfg.params.kratzer_depth = 0.0;
  const auto flagged = cmd_spectrum(cfg);
  CHECK(spectrum_from_json(json::parse(flagged.output)) ==
        spectrum(cfg.params, cfg.n, cfg.l, cfg.frame));
}

TEST_CASE("rotating at Omega = 0 prints the static numbers") {
  RunConfig cfg;
  cfg.format = Format::Csv;
  cfg.n = {1, 2};
  cfg.l = {-2, 2};
  const auto st = lines(cmd_spectrum(cfg).output);
  cfg.frame = Frame::Rotating;
  const auto rot = lines(cmd_spectrum(cfg).output);
  REQUIRE(st.size() == rot.size());
  CHECK(st.size() > 10);
  for (std::size_t i = 1; i < st.size(); ++i) {
    auto a = split(st[i]);
    auto b = split(rot[i]);
    CHECK(a[2] == "static");
    CHECK(b[2] == "rotating");
    a.erase(a.begin() + 2);
    b.erase(b.begin() + 2);
    CHECK(a == b);
  }
}

TEST_CASE("degenerate configuration") {
  RunConfig cfg;
  cfg.params.linear = 0.0;
  cfg.params.kratzer_depth = 0.0;
  cfg.format = Format::Csv;
  const auto res = cmd_spectrum(cfg);
  CHECK(res.exit_code == exit_code::degenerate);
  const auto rows = lines(res.output);
  REQUIRE(rows.size() == 4);
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(split(rows[i]).back() == "degenerate");

  CHECK(cmd_frequencies(cfg).exit_code == exit_code::degenerate);
  CHECK(cmd_wavefunction(cfg).exit_code == exit_code::degenerate);

  const auto report = json::parse(cmd_validate(cfg).output);
  CHECK(report["passed"] == true);
  for (const auto& c : report["checks"]) {
    const std::string name = c["name"];
    if (name == "frame" || name == "page_werner") {
      CHECK(c["status"] == "pass");
    } else {
      CHECK(c["status"] == "skipped_degenerate");
    }
  }
}

TEST_CASE("frequencies: cubic and bisection agree") {
  RunConfig cfg;
  cfg.l = {-3, 3};
  const auto doc = json::parse(cmd_frequencies(cfg).output);
  std::vector<double> cubic, bisection;
  for (const auto& r : doc["rows"]) {
    CHECK(r["status"] == "ok");
    (r["method"] == "cubic" ? cubic : bisection).push_back(r["omega"].get<double>());
    CHECK(r["residual"].get<double>() < 1e-10);
  }
  REQUIRE(cubic.size() == bisection.size());
  REQUIRE(!cubic.empty());
  for (std::size_t i = 0; i < cubic.size(); ++i) CHECK(cubic[i] == Approx(bisection[i]).epsilon(1e-10));
}

TEST_CASE("frequencies: Kratzer only") {
  RunConfig cfg;
  cfg.params.linear = 0.0;
  cfg.params.mass = 1.3;
  cfg.params.kratzer_depth = 0.8;
  cfg.params.kratzer_length = 1.1;
  cfg.l = {1, 1};
  const auto doc = json::parse(cmd_frequencies(cfg).output);
  const double tau = effective_angular(cfg.params, 1);
  const double expect = 16.0 * 1.3 * std::pow(0.8 * 1.1, 2) / (2 * tau + 1);
  for (const auto& r : doc["rows"]) {
    CHECK(r["index"] == 0);
    CHECK(r["omega"].get<double>() == Approx(expect).epsilon(1e-11));
  }
}

TEST_CASE("sweep over Omega keeps varpi fixed") {
  RunConfig cfg;
  cfg.frame = Frame::Rotating;
  cfg.l = {2, 2};
  cfg.sweep = {"Omega", {0.0, 0.5, 1.0, 4.0}};
  const auto res = cmd_sweep(cfg);
  CHECK(res.exit_code == 0);
  const auto doc = json::parse(res.output);
  REQUIRE(doc["cells"].size() == 4);
  const double varpi0 = doc["cells"][0]["entries"][0]["varpi"];
  double last_omega = INFINITY;
  for (const auto& cell : doc["cells"]) {
    const auto& e = cell["entries"][0];
    CHECK(e["varpi"].get<double>() == Approx(varpi0).epsilon(1e-12));
    CHECK(e["omega"].get<double>() < last_omega);
    last_omega = e["omega"];
  }

  cfg.sweep.values.clear();
  CHECK(run_command("sweep", cfg).exit_code == exit_code::config);
  cfg.sweep = {"m", {-1.0}};
  CHECK(run_command("sweep", cfg).exit_code == exit_code::config);
}

TEST_CASE("wavefunction table") {
  RunConfig cfg;
  cfg.l = {1, 1};
  cfg.format = Format::Csv;
  cfg.wavefunction.normalize = true;
  const auto res = cmd_wavefunction(cfg);
  REQUIRE(res.exit_code == 0);
  const auto rows = lines(res.output);
  CHECK(rows[0] == "y,r,F,F_normalized");
  REQUIRE(rows.size() == cfg.wavefunction.samples + 1);

  std::vector<double> ys, fs;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto c = split(rows[i]);
    ys.push_back(std::stod(c[0]));
    fs.push_back(std::stod(c[2]));
  }
  CHECK(ys.front() == 0.0);
  CHECK(fs.front() == 0.0);
  CHECK(ys.back() == 8.0);
  double peak = 0.0;
  for (double f : fs) peak = std::max(peak, std::abs(f));
  CHECK(std::abs(fs.back()) < 1e-10 * peak);

  const double omega = allowed_frequencies_n1(cfg.params, 1, Frame::Static).front();
  const std::vector<double> inner(ys.begin() + 1, ys.end());
  CHECK(ode_residual(cfg.params, 1, Frame::Static, 1, omega, inner) < 1e-8);

  cfg.root_index = 5;
  CHECK(cmd_wavefunction(cfg).exit_code == exit_code::config);
}

TEST_CASE("validate") {
  RunConfig cfg;
  const auto ok = cmd_validate(cfg);
  CHECK(ok.exit_code == 0);
  const auto report = json::parse(ok.output);
  CHECK(report["passed"] == true);
  CHECK(report["checks"].size() == 7);
  for (const auto& c : report["checks"]) CHECK(c["status"] == "pass");

  for (const char* name : {"identity", "cubic", "frame", "page_werner", "ode", "eigen"}) {
    apply_tolerance(cfg.tolerances, std::string(name) + "=0");
  }
  cfg.tolerances.eigen_floor = 0.0;
  const auto bad = cmd_validate(cfg);
  CHECK(bad.exit_code == exit_code::validation);
  const auto failed = json::parse(bad.output);
  CHECK(failed["passed"] == false);
  for (const auto& c : failed["checks"]) {
    if (c["name"] == "sensitivity") continue;
    CHECK(c["status"] == "fail");
    CHECK(c["measured"].is_number());
  }

  RunConfig off;
  off.oracles.eigen = false;
  const auto r = json::parse(cmd_validate(off).output);
  CHECK(r["checks"][6]["status"] == "disabled");
}

TEST_CASE("exit code mapping") {
  RunConfig cfg;
  CHECK(run_command("nonsense", cfg).exit_code == exit_code::config);
  cfg.n = {1, 1};
  cfg.l = {0, 0};
  cfg.omega_cap = 1e-6;
  CHECK(run_command("spectrum", cfg).exit_code == exit_code::degenerate);
  CHECK(run_command("wavefunction", cfg).exit_code == exit_code::degenerate);
}

}
