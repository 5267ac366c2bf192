#include "output.hpp"

#include <fmt/format.h>

#include <cmath>

#include "dipole/error.hpp"

namespace dipole::cli {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return fmt::format("{:.17g}", x);
}

std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          out += fmt::format("\\u{:04x}", static_cast<int>(c));
        } else {
          out += c;
        }
    }
  }
  out += '"';
  return out;
}

void JsonWriter::raw(std::string_view text) { out_.append(text); }

void JsonWriter::separator() {
  if (after_key_) {
    after_key_ = false;
    return;
  }
  if (stack_.empty()) return;
  Level& top = stack_.back();
  if (!top.empty) raw(",");
  top.empty = false;
  if (top.single_line) {
    if (out_.back() != '[' && out_.back() != '{') raw(" ");
  } else {
    raw("\n");
    raw(std::string(2 * stack_.size(), ' '));
  }
}

JsonWriter& JsonWriter::begin_object(bool single_line) {
  separator();
  raw("{");
  const bool parent_single = !stack_.empty() && stack_.back().single_line;
  stack_.push_back({single_line || parent_single});
  return *this;
}

JsonWriter& JsonWriter::end_object() {
  const Level top = stack_.back();
  stack_.pop_back();
  if (!top.single_line && !top.empty) {
    raw("\n");
    raw(std::string(2 * stack_.size(), ' '));
  }
  raw("}");
  return *this;
}

JsonWriter& JsonWriter::begin_array(bool single_line) {
  separator();
  raw("[");
  const bool parent_single = !stack_.empty() && stack_.back().single_line;
  stack_.push_back({single_line || parent_single});
  return *this;
}

JsonWriter& JsonWriter::end_array() {
  const Level top = stack_.back();
  stack_.pop_back();
  if (!top.single_line && !top.empty) {
    raw("\n");
    raw(std::string(2 * stack_.size(), ' '));
  }
  raw("]");
  return *this;
}

JsonWriter& JsonWriter::key(std::string_view k) {
  separator();
  raw(quote(k));
  raw(": ");
  after_key_ = true;
  return *this;
}

JsonWriter& JsonWriter::value(double x) {
  separator();
  // JSON has no nan/inf; they become null.
  raw(std::isfinite(x) ? format_number(x) : "null");
  return *this;
}

JsonWriter& JsonWriter::value(int x) {
  separator();
  raw(fmt::format("{}", x));
  return *this;
}

JsonWriter& JsonWriter::value(std::size_t x) {
  separator();
  raw(fmt::format("{}", x));
  return *this;
}

JsonWriter& JsonWriter::value(bool x) {
  separator();
  raw(x ? "true" : "false");
  return *this;
}

JsonWriter& JsonWriter::value(std::string_view s) {
  separator();
  raw(quote(s));
  return *this;
}

JsonWriter& JsonWriter::value(const std::optional<double>& x) {
  return x ? value(*x) : null();
}

JsonWriter& JsonWriter::null() {
  separator();
  raw("null");
  return *this;
}

std::string csv_number(const std::optional<double>& x) {
  return x ? format_number(*x) : std::string();
}

void write_entry(JsonWriter& w, const SpectrumEntry& e) {
  w.begin_object(true);
  w.key("n").value(e.n);
  w.key("l").value(e.l);
  w.key("frame").value(to_string(e.frame));
  w.key("omega").value(e.omega);
  w.key("varpi").value(e.varpi);
  w.key("tau").value(e.tau);
  w.key("energy").value(e.energy);
  w.key("status").value(to_string(e.status));
  w.key("detail").value(e.detail);
  w.end_object();
}

std::string csv_row(const SpectrumEntry& e) {
  return fmt::format("{},{},{},{},{},{},{},{}", e.n, e.l, to_string(e.frame), csv_number(e.omega),
                     csv_number(e.varpi), format_number(e.tau), csv_number(e.energy),
                     to_string(e.status));
}

SpectrumEntry entry_from_json(const nlohmann::json& j) {
  auto optional_number = [&](const char* k) -> std::optional<double> {
    if (!j.contains(k) || j[k].is_null()) return std::nullopt;
    return j[k].get<double>();
  };
  SpectrumEntry e;
  e.n = j.at("n").get<int>();
  e.l = j.at("l").get<int>();
  const auto frame = parse_frame(j.at("frame").get<std::string>());
  if (!frame) throw Error(ErrorCode::InvalidArgument, "bad frame in spectrum entry");
  e.frame = *frame;
  e.omega = optional_number("omega");
  e.varpi = optional_number("varpi");
  e.tau = j.at("tau").get<double>();
  e.energy = optional_number("energy");
  const auto status = j.at("status").get<std::string>();
  if (status == "ok") {
    e.status = EntryStatus::Ok;
  } else if (status == "degenerate") {
    e.status = EntryStatus::Degenerate;
  } else if (status == "no_root") {
    e.status = EntryStatus::NoRoot;
  } else {
    throw Error(ErrorCode::InvalidArgument, "bad status '" + status + "' in spectrum entry");
  }
  e.detail = j.value("detail", std::string());
  return e;
}

std::vector<SpectrumEntry> spectrum_from_json(const nlohmann::json& doc) {
  std::vector<SpectrumEntry> out;
  for (const auto& j : doc.at("entries")) out.push_back(entry_from_json(j));
  return out;
}

}  // namespace dipole::cli
