#pragma once

#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

namespace crystalkit {

// Machine- and human-facing result of one command or certificate run.
//
//   status   "ok" | "violation" | "error"
//   notes    short human-oriented summary lines, printed first
//   payload  the structured result
//   provenance  one entry per computed quantity: what the number means and
//               how it is defined, independent of any caller context
//   witness  required exactly when status is "violation": the concrete
//            object or identity that failed
//
// Serialization is deterministic: ordered fields, insertion-ordered JSON.
// Floating-point payload values are emitted together with their truncation
// metadata by the helpers below, so no numeric leaf appears bare.
struct Report {
  std::string status = "ok";
  std::vector<std::string> notes;
  nlohmann::ordered_json payload = nlohmann::ordered_json::object();
  nlohmann::ordered_json provenance = nlohmann::ordered_json::object();
  std::optional<std::string> witness;

  // Throws Error(Invalid) when the witness rule is broken or the status
  // string is unknown.
  nlohmann::ordered_json to_json() const;
  std::string to_text() const;
  int exit_code() const;  // ok -> 0, violation -> 1, error -> 2
};

Report ok_report();
Report violation_report(std::string witness);
Report error_report(const std::string& message);

// {"value": v, "tail_bound": t, "rigorous": r} — a float together with the
// bound on its truncation error. Omit the bound for values that are exact up
// to rounding ({"value": v, "exact": true}).
nlohmann::ordered_json numeric_with_tail(double value, double tail_bound,
                                         bool rigorous);
nlohmann::ordered_json numeric_exact(double value);

// Writes to_json() to `path` with a trailing newline; byte-identical for
// identical reports. Throws Error(Parse) when the file cannot be written.
void write_report_file(const Report& report, const std::string& path);

}  // namespace crystalkit
