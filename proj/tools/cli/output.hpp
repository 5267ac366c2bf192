#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dipole/quantize.hpp"

#include "json.hpp"

namespace dipole::cli {

/// 17 significant digits, '.' decimal point, no locale.
std::string format_number(double x);

/// Ordered JSON emitter. Containers opened with single_line = true (and everything inside
/// them) stay on one line. Numbers go through format_number.
class JsonWriter {
 public:
  JsonWriter& begin_object(bool single_line = false);
  JsonWriter& end_object();
  JsonWriter& begin_array(bool single_line = false);
  JsonWriter& end_array();
  JsonWriter& key(std::string_view k);

  JsonWriter& value(double x);
  JsonWriter& value(int x);
  JsonWriter& value(std::size_t x);
  JsonWriter& value(bool x);
  JsonWriter& value(std::string_view s);
  JsonWriter& value(const char* s) { return value(std::string_view(s)); }
  JsonWriter& value(const std::optional<double>& x);
  JsonWriter& null();

  /// Document text with a trailing newline.
  std::string str() const { return out_ + "\n"; }

 private:
  struct Level {
    bool single_line;
    bool empty = true;
  };
  void separator();
  void raw(std::string_view text);

  std::string out_;
  std::vector<Level> stack_;
  bool after_key_ = false;
};

std::string quote(std::string_view s);

/// CSV cell text for an optional number (empty when unset).
std::string csv_number(const std::optional<double>& x);

/// Writes one spectrum entry as a JSON object (single line).
void write_entry(JsonWriter& w, const SpectrumEntry& e);

constexpr std::string_view kSpectrumCsvHeader = "n,l,frame,omega,varpi,tau,energy,status";
std::string csv_row(const SpectrumEntry& e);

/// Inverse of write_entry.
SpectrumEntry entry_from_json(const nlohmann::json& j);

/// Entries of a `spectrum` JSON document.
std::vector<SpectrumEntry> spectrum_from_json(const nlohmann::json& doc);

}  // namespace dipole::cli
