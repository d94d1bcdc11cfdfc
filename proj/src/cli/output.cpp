#include "parqq/cli/output.hpp"

#include <cmath>
#include <fmt/format.h>
#include <map>
#include <set>
#include <vector>

namespace parqq::cli {

namespace {

void write_json(const nlohmann::json& v, int indent, std::string& out) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  if (v.is_object()) {
    if (v.empty()) {
      out += "{}";
      return;
    }
    out += "{\n";
    bool first = true;
    for (const auto& [key, item] : v.items()) {
      if (!first) out += ",\n";
      first = false;
      out += inner + nlohmann::json(key).dump() + ": ";
      write_json(item, indent + 1, out);
    }
    out += "\n" + pad + "}";
  } else if (v.is_array()) {
    if (v.empty()) {
      out += "[]";
      return;
    }
    out += "[\n";
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) out += ",\n";
      out += inner;
      write_json(v[i], indent + 1, out);
    }
    out += "\n" + pad + "]";
  } else if (v.is_number_float()) {
    const double d = v.get<double>();
    out += std::isfinite(d) ? format_number(d) : "\"" + format_number(d) + "\"";
  } else {
    out += v.dump();
  }
}

std::string cell(const nlohmann::json& v) {
  if (v.is_number_float()) return format_number(v.get<double>());
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char c : s) quoted += c == '"' ? std::string("\"\"") : std::string(1, c);
    return quoted + "\"";
  }
  if (v.is_null()) return "";
  if (v.is_structured()) return cell(nlohmann::json(v.dump()));
  return v.dump();
}

void flatten(const nlohmann::json& v, const std::string& prefix, std::map<std::string, nlohmann::json>& out) {
  if (v.is_object()) {
    for (const auto& [key, item] : v.items()) flatten(item, prefix.empty() ? key : prefix + "." + key, out);
  } else {
    out[prefix] = v;
  }
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";
  return fmt::format("{:.12g}", v);
}

std::string to_json(const nlohmann::json& value) {
  std::string out;
  write_json(value, 0, out);
  out += "\n";
  return out;
}

std::string to_csv(const nlohmann::json& value) {
  std::vector<std::map<std::string, nlohmann::json>> rows;
  if (value.is_object() && value.contains("rows") && value["rows"].is_array()) {
    for (const auto& r : value["rows"]) {
      std::map<std::string, nlohmann::json> flat;
      flatten(r, "", flat);
      rows.push_back(std::move(flat));
    }
  } else {
    std::map<std::string, nlohmann::json> flat;
    flatten(value, "", flat);
    rows.push_back(std::move(flat));
  }
  std::set<std::string> keys;
  for (const auto& r : rows) {
    for (const auto& [k, v] : r) keys.insert(k);
  }
  std::string out;
  bool first = true;
  for (const auto& k : keys) {
    out += (first ? "" : ",") + k;
    first = false;
  }
  out += "\n";
  for (const auto& r : rows) {
    first = true;
    for (const auto& k : keys) {
      auto it = r.find(k);
      out += (first ? "" : ",") + (it == r.end() ? std::string() : cell(it->second));
      first = false;
    }
    out += "\n";
  }
  return out;
}

}  // namespace parqq::cli
