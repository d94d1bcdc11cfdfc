#pragma once

#include <json.hpp>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace parqq::cli {

/// Typed view of a parameter object whose values may be JSON numbers or strings from flags.
class Params {
 public:
  explicit Params(const nlohmann::json& j);

  /// Throws ParameterError for any key outside allowed.
  void only(const std::set<std::string>& allowed) const;

  bool has(const std::string& key) const { return j_.contains(key) && !j_[key].is_null(); }
  const nlohmann::json& raw(const std::string& key) const { return j_.at(key); }

  int get_int(const std::string& key) const;
  int get_int(const std::string& key, int fallback) const;
  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  std::string get_string(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  bool get_flag(const std::string& key) const;
  std::vector<int> get_int_list(const std::string& key) const;

 private:
  const nlohmann::json& j_;
};

}  // namespace parqq::cli
