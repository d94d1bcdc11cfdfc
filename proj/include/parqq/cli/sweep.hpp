#pragma once

#include <json.hpp>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "parqq/cli/jobs.hpp"

namespace parqq::cli {

inline constexpr std::size_t kMaxSweepCells = 100000;

struct SweepAxis {
  std::string name;
  std::vector<nlohmann::json> values;
};

/// "a,b,c", "lo:hi:xF" (geometric) or "lo:hi:+S" (arithmetic).
SweepAxis parse_axis(const std::string& text);

struct SweepFit {
  std::string metric;  // dotted path into each cell's result
  std::string axis;    // parameter name, or "a/b" for a ratio of two parameters
};

struct SweepCell {
  nlohmann::json params;
  std::optional<double> value;
  std::string error;
  int exit_code = kSuccess;
};

struct SweepResult {
  std::vector<SweepCell> cells;  // grid order, last axis fastest
  std::optional<SweepFit> fit_spec;
  nlohmann::json fit;            // slope, intercept, slope_stderr, ci95 bounds, points
  int exit_code = kSuccess;

  nlohmann::json to_json() const;
};

SweepResult sweep(const std::string& base, const nlohmann::json& fixed, const std::vector<SweepAxis>& axes,
                  std::optional<SweepFit> fit, std::uint64_t seed, int jobs);

/// The sweep command's parameters: base, set, axis / axes, fit.
Outcome sweep_command(const nlohmann::json& params, std::uint64_t seed, int jobs);

}  // namespace parqq::cli
