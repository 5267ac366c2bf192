#include "config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <utility>

#include "dipole/error.hpp"

namespace dipole::cli {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& what) {
  throw Error(ErrorCode::InvalidArgument, what);
}

struct ParamKey {
  const char* name;
  double SystemParams::*field;
};

constexpr ParamKey kParamKeys[] = {
    {"m", &SystemParams::mass},
    {"alpha", &SystemParams::polarizability},
    {"lambda", &SystemParams::charge_density},
    {"B0", &SystemParams::magnetic_field},
    {"b", &SystemParams::linear},
    {"D", &SystemParams::kratzer_depth},
    {"a", &SystemParams::kratzer_length},
    {"k", &SystemParams::axial_wavenumber},
    {"Omega", &SystemParams::angular_velocity},
};

struct TolKey {
  const char* name;
  double Tolerances::*field;
};

constexpr TolKey kTolKeys[] = {
    {"identity", &Tolerances::identity},
    {"cubic", &Tolerances::cubic},
    {"frame", &Tolerances::frame},
    {"page_werner", &Tolerances::page_werner},
    {"ode", &Tolerances::ode},
    {"sensitivity", &Tolerances::sensitivity},
    {"eigen", &Tolerances::eigen},
    {"eigen_floor", &Tolerances::eigen_floor},
    {"root", &Tolerances::root},
};

struct ToggleKey {
  const char* name;
  bool OracleToggles::*field;
};

constexpr ToggleKey kToggleKeys[] = {
    {"identity", &OracleToggles::identity},
    {"cubic", &OracleToggles::cubic},
    {"frame", &OracleToggles::frame},
    {"page_werner", &OracleToggles::page_werner},
    {"ode", &OracleToggles::ode},
    {"eigen", &OracleToggles::eigen},
};

void only_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) bad(where + " must be an object");
  for (const auto& [k, v] : obj.items()) {
    if (!allowed.contains(k)) bad("unknown key '" + k + "' in " + where);
  }
}

double number(const json& v, const std::string& name) {
  if (!v.is_number()) bad(name + " must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) bad(name + " must be finite");
  return x;
}

int integer(const json& v, const std::string& name) {
  if (!v.is_number_integer()) bad(name + " must be an integer");
  return v.get<int>();
}

IntRange range_from(const json& v, const std::string& name) {
  if (v.is_number_integer()) {
    const int x = v.get<int>();
    return {x, x};
  }
  if (v.is_array() && v.size() == 2) {
    IntRange r{integer(v[0], name), integer(v[1], name)};
    if (!r.valid()) bad(name + " range is empty");
    return r;
  }
  if (v.is_string()) return parse_int_range(v.get<std::string>());
  bad(name + " must be an integer, [first, last] or \"first:last\"");
}

int parse_int(std::string_view text, std::string_view what) {
  int value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) bad("bad integer '" + std::string(text) + "' in " + std::string(what));
  return value;
}

}  // namespace

std::string_view to_string(Format f) noexcept {
  return f == Format::Json ? "json" : "csv";
}

std::optional<Format> parse_format(std::string_view text) noexcept {
  if (text == "json") return Format::Json;
  if (text == "csv") return Format::Csv;
  return std::nullopt;
}

SystemParams RunConfig::default_params() {
  SystemParams p;
  p.linear = 1.0;
  p.kratzer_depth = 1.0;
  p.kratzer_length = 1.0;
  return p;
}

IntRange parse_int_range(std::string_view text) {
  const auto colon = text.find(':');
  IntRange r;
  if (colon == std::string_view::npos) {
    r.first = r.last = parse_int(text, "range");
  } else {
    r.first = parse_int(text.substr(0, colon), "range");
    r.last = parse_int(text.substr(colon + 1), "range");
  }
  if (!r.valid()) bad("range '" + std::string(text) + "' is empty");
  return r;
}

void apply_tolerance(Tolerances& tol, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) bad("tolerance override must be name=value");
  const std::string name(assignment.substr(0, eq));
  const std::string text(assignment.substr(eq + 1));
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value) ||
      value < 0.0) {
    bad("tolerance '" + name + "' needs a finite value >= 0");
  }
  for (const auto& k : kTolKeys) {
    if (name == k.name) {
      tol.*k.field = value;
      return;
    }
  }
  bad("unknown tolerance '" + name + "'");
}

void set_param(SystemParams& p, std::string_view key, double value) {
  for (const auto& k : kParamKeys) {
    if (key == k.name) {
      p.*k.field = value;
      return;
    }
  }
  bad("unknown parameter '" + std::string(key) + "'");
}

RunConfig parse_config(const json& doc) {
  only_keys(doc,
            {"params", "frame", "n", "l", "format", "out", "oracles", "tolerances", "root_index",
             "grid_points", "omega_cap", "wavefunction", "sweep"},
            "config");
  RunConfig cfg;

  if (doc.contains("params")) {
    const json& p = doc["params"];
    std::set<std::string> names;
    for (const auto& k : kParamKeys) names.insert(k.name);
    only_keys(p, names, "params");
    for (const auto& k : kParamKeys) {
      if (p.contains(k.name)) cfg.params.*k.field = number(p[k.name], k.name);
    }
  }
  cfg.params.validate();

  if (doc.contains("frame")) {
    const auto f = doc["frame"].is_string() ? parse_frame(doc["frame"].get<std::string>())
                                            : std::nullopt;
    if (!f) bad("frame must be \"static\" or \"rotating\"");
    cfg.frame = *f;
  }
  if (doc.contains("n")) cfg.n = range_from(doc["n"], "n");
  if (cfg.n.first < 1) bad("n must be >= 1");
  if (doc.contains("l")) cfg.l = range_from(doc["l"], "l");

  if (doc.contains("format")) {
    const auto f = doc["format"].is_string() ? parse_format(doc["format"].get<std::string>())
                                             : std::nullopt;
    if (!f) bad("format must be \"json\" or \"csv\"");
    cfg.format = *f;
  }
  if (doc.contains("out")) {
    const json& o = doc["out"];
    if (o.is_null()) {
      cfg.out.clear();
    } else if (o.is_string()) {
      cfg.out = o.get<std::string>();
    } else {
      bad("out must be a path string or null");
    }
  }

  if (doc.contains("oracles")) {
    const json& o = doc["oracles"];
    std::set<std::string> names;
    for (const auto& k : kToggleKeys) names.insert(k.name);
    only_keys(o, names, "oracles");
    for (const auto& k : kToggleKeys) {
      if (!o.contains(k.name)) continue;
      if (!o[k.name].is_boolean()) bad(std::string("oracles.") + k.name + " must be a boolean");
      cfg.oracles.*k.field = o[k.name].get<bool>();
    }
  }
  if (doc.contains("tolerances")) {
    const json& t = doc["tolerances"];
    std::set<std::string> names;
    for (const auto& k : kTolKeys) names.insert(k.name);
    only_keys(t, names, "tolerances");
    for (const auto& k : kTolKeys) {
      if (!t.contains(k.name)) continue;
      const double v = number(t[k.name], std::string("tolerances.") + k.name);
      if (v < 0.0) bad(std::string("tolerances.") + k.name + " must be >= 0");
      cfg.tolerances.*k.field = v;
    }
  }

  if (doc.contains("root_index")) {
    cfg.root_index = integer(doc["root_index"], "root_index");
    if (cfg.root_index < 0) bad("root_index must be >= 0");
  }
  if (doc.contains("grid_points")) {
    const int g = integer(doc["grid_points"], "grid_points");
    if (g < 16) bad("grid_points must be >= 16");
    cfg.grid_points = static_cast<std::size_t>(g);
  }
  if (doc.contains("omega_cap") && !doc["omega_cap"].is_null()) {
    const double cap = number(doc["omega_cap"], "omega_cap");
    if (!(cap > 0.0)) bad("omega_cap must be positive");
    cfg.omega_cap = cap;
  }

  if (doc.contains("wavefunction")) {
    const json& w = doc["wavefunction"];
    only_keys(w, {"y_max", "samples", "normalize"}, "wavefunction");
    if (w.contains("y_max") && !w["y_max"].is_null()) {
      const double y = number(w["y_max"], "wavefunction.y_max");
      if (!(y > 0.0)) bad("wavefunction.y_max must be positive");
      cfg.wavefunction.y_max = y;
    }
    if (w.contains("samples")) {
      const int s = integer(w["samples"], "wavefunction.samples");
      if (s < 2) bad("wavefunction.samples must be >= 2");
      cfg.wavefunction.samples = static_cast<std::size_t>(s);
    }
    if (w.contains("normalize")) {
      if (!w["normalize"].is_boolean()) bad("wavefunction.normalize must be a boolean");
      cfg.wavefunction.normalize = w["normalize"].get<bool>();
    }
  }

  if (doc.contains("sweep")) {
    const json& s = doc["sweep"];
    only_keys(s, {"parameter", "values"}, "sweep");
    if (s.contains("parameter")) {
      if (!s["parameter"].is_string()) bad("sweep.parameter must be a string");
      cfg.sweep.parameter = s["parameter"].get<std::string>();
      SystemParams probe;
      set_param(probe, cfg.sweep.parameter, 0.0);  // rejects unknown names
    }
    if (s.contains("values")) {
      if (!s["values"].is_array()) bad("sweep.values must be an array");
      for (const auto& v : s["values"]) cfg.sweep.values.push_back(number(v, "sweep.values"));
    }
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open config '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    bad("config '" + path + "' is not valid JSON: " + e.what());
  }
  return parse_config(doc);
}

json to_json(const RunConfig& cfg) {
  json doc = json::object();
  json params = json::object();
  for (const auto& k : kParamKeys) params[k.name] = cfg.params.*k.field;
  doc["params"] = std::move(params);
  doc["frame"] = std::string(to_string(cfg.frame));
  doc["n"] = json::array({cfg.n.first, cfg.n.last});
  doc["l"] = json::array({cfg.l.first, cfg.l.last});
  doc["format"] = std::string(to_string(cfg.format));
  doc["out"] = cfg.out.empty() ? json(nullptr) : json(cfg.out);
  json oracles = json::object();
  for (const auto& k : kToggleKeys) oracles[k.name] = cfg.oracles.*k.field;
  doc["oracles"] = std::move(oracles);
  json tol = json::object();
  for (const auto& k : kTolKeys) tol[k.name] = cfg.tolerances.*k.field;
  doc["tolerances"] = std::move(tol);
  doc["root_index"] = cfg.root_index;
  doc["grid_points"] = cfg.grid_points;
  doc["omega_cap"] = cfg.omega_cap ? json(*cfg.omega_cap) : json(nullptr);
  doc["wavefunction"] = {
      {"y_max", cfg.wavefunction.y_max ? json(*cfg.wavefunction.y_max) : json(nullptr)},
      {"samples", cfg.wavefunction.samples},
      {"normalize", cfg.wavefunction.normalize}};
  doc["sweep"] = {{"parameter", cfg.sweep.parameter}, {"values", cfg.sweep.values}};
  return doc;
}

}  // namespace dipole::cli
