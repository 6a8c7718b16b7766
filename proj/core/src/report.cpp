#include "crystalkit/report.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "crystalkit/error.hpp"

namespace crystalkit {

namespace {

using OrderedJson = nlohmann::ordered_json;

void render(std::ostream& os, const OrderedJson& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (it->is_object() || (it->is_array() && !it->empty() &&
                              (it->front().is_object() || it->front().is_array()))) {
        os << pad << it.key() << ":\n";
        render(os, *it, indent + 1);
      } else {
        os << pad << it.key() << ": " << it->dump() << "\n";
      }
    }
  } else if (j.is_array()) {
    for (const auto& item : j) {
      const bool nested =
          item.is_object() ||
          (item.is_array() &&
           std::any_of(item.begin(), item.end(), [](const OrderedJson& x) {
             return x.is_object() || x.is_array();
           }));
      if (nested) {
        os << pad << "-\n";
        render(os, item, indent + 1);
      } else {
        os << pad << "- " << item.dump() << "\n";
      }
    }
  } else {
    os << pad << j.dump() << "\n";
  }
}

void check_shape(const Report& r) {
  if (r.status != "ok" && r.status != "violation" && r.status != "error")
    fail(ErrorCode::Invalid, "unknown report status \"" + r.status + "\"");
  if (r.status == "violation" && (!r.witness || r.witness->empty()))
    fail(ErrorCode::Invalid, "a violation report requires a witness");
}

}  // namespace

nlohmann::ordered_json Report::to_json() const {
  check_shape(*this);
  OrderedJson out;
  out["status"] = status;
  if (!notes.empty()) out["notes"] = notes;
  out["payload"] = payload;
  if (witness) out["witness"] = *witness;
  out["provenance"] = provenance;
  return out;
}

std::string Report::to_text() const {
  check_shape(*this);
  std::ostringstream os;
  os << "status: " << status << "\n";
  for (const auto& line : notes) os << line << "\n";
  if (witness) os << "witness: " << *witness << "\n";
  if (!payload.empty()) render(os, payload, 0);
  return os.str();
}

int Report::exit_code() const {
  check_shape(*this);
  if (status == "ok") return 0;
  if (status == "violation") return 1;
  return 2;
}

Report ok_report() { return Report{}; }

Report violation_report(std::string witness) {
  Report r;
  r.status = "violation";
  r.witness = std::move(witness);
  return r;
}

Report error_report(const std::string& message) {
  Report r;
  r.status = "error";
  r.notes.push_back(message);
  r.payload["message"] = message;
  return r;
}

nlohmann::ordered_json numeric_with_tail(double value, double tail_bound,
                                         bool rigorous) {
  OrderedJson out;
  out["value"] = value;
  out["tail_bound"] = tail_bound;
  out["rigorous"] = rigorous;
  return out;
}

nlohmann::ordered_json numeric_exact(double value) {
  OrderedJson out;
  out["value"] = value;
  out["exact"] = true;
  return out;
}

void write_report_file(const Report& report, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::Parse, "cannot write file: " + path);
  out << report.to_json().dump(2) << "\n";
  if (!out) fail(ErrorCode::Parse, "failed writing file: " + path);
}

}  // namespace crystalkit
