#pragma once

#include <json.hpp>
#include <string>

namespace parqq::cli {

/// %.12g; non-finite values become "inf", "-inf" or "nan" strings.
std::string format_number(double v);

/// Sorted keys, two-space indent, numbers through format_number.
std::string to_json(const nlohmann::json& value);

/// A "rows" array of objects becomes one line per row with the union of keys as header;
/// any other object is flattened with dotted keys into a single row.
std::string to_csv(const nlohmann::json& value);

}  // namespace parqq::cli
