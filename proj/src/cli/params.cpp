#include "params.hpp"

#include <charconv>

#include "parqq/errors.hpp"

namespace parqq::cli {

namespace {

[[noreturn]] void bad(const std::string& key, const std::string& what) {
  throw ParameterError("parameter '" + key + "' " + what);
}

}  // namespace

Params::Params(const nlohmann::json& j) : j_(j) {
  if (!j_.is_object()) throw ParameterError("parameters must be a JSON object");
}

void Params::only(const std::set<std::string>& allowed) const {
  for (const auto& [key, value] : j_.items()) {
    if (!allowed.contains(key)) bad(key, "is not accepted by this command");
  }
}

int Params::get_int(const std::string& key) const {
  if (!has(key)) bad(key, "is required");
  const auto& v = j_[key];
  if (v.is_number_integer()) return v.get<int>();
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (d != static_cast<int>(d)) bad(key, "must be an integer");
    return static_cast<int>(d);
  }
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    int out = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (ec != std::errc() || ptr != s.data() + s.size()) bad(key, "must be an integer, got '" + s + "'");
    return out;
  }
  bad(key, "must be an integer");
}

int Params::get_int(const std::string& key, int fallback) const { return has(key) ? get_int(key) : fallback; }

double Params::get_double(const std::string& key) const {
  if (!has(key)) bad(key, "is required");
  const auto& v = j_[key];
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    try {
      std::size_t used = 0;
      const double d = std::stod(s, &used);
      if (used == s.size()) return d;
    } catch (const std::exception&) {
    }
    bad(key, "must be a number, got '" + s + "'");
  }
  bad(key, "must be a number");
}

double Params::get_double(const std::string& key, double fallback) const {
  return has(key) ? get_double(key) : fallback;
}

std::string Params::get_string(const std::string& key) const {
  if (!has(key)) bad(key, "is required");
  const auto& v = j_[key];
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  bad(key, "must be a string");
}

std::string Params::get_string(const std::string& key, const std::string& fallback) const {
  return has(key) ? get_string(key) : fallback;
}

bool Params::get_flag(const std::string& key) const {
  if (!has(key)) return false;
  const auto& v = j_[key];
  if (v.is_boolean()) return v.get<bool>();
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "true" || s == "1") return true;
    if (s == "false" || s == "0") return false;
  }
  if (v.is_number_integer()) return v.get<int>() != 0;
  bad(key, "must be true or false");
}

std::vector<int> Params::get_int_list(const std::string& key) const {
  if (!has(key)) bad(key, "is required");
  const auto& v = j_[key];
  std::vector<int> out;
  if (v.is_array()) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      nlohmann::json one = {{key, v[i]}};
      out.push_back(Params(one).get_int(key));
    }
    return out;
  }
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    std::size_t start = 0;
    while (start <= s.size()) {
      const auto stop = std::min(s.find(',', start), s.size());
      nlohmann::json one = {{key, s.substr(start, stop - start)}};
      out.push_back(Params(one).get_int(key));
      start = stop + 1;
    }
    return out;
  }
  out.push_back(get_int(key));
  return out;
}

}  // namespace parqq::cli
