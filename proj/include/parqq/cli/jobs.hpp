#pragma once

#include <cstdint>
#include <json.hpp>
#include <string>
#include <vector>

namespace parqq::cli {

enum ExitCode : int { kSuccess = 0, kValidationError = 2, kPropertyFailure = 3 };

struct JobSpec {
  std::string command;
  nlohmann::json params = nlohmann::json::object();
  std::string format = "json";  // json | csv
  std::string out;              // empty writes to stdout
  std::uint64_t seed = 0;
  int jobs = 1;
};

/// Result of one command. Checks that fail are reported in value and set property_ok = false.
struct Outcome {
  nlohmann::json value = nlohmann::json::object();
  bool property_ok = true;
};

struct JobResult {
  int exit_code = kSuccess;
  std::string output;
  std::string error;
  nlohmann::json value;
};

const std::vector<std::string>& command_names();

/// Dispatches to the owning module. Throws ParameterError, ResourceLimitError or PropertyFailure.
Outcome execute(const std::string& command, const nlohmann::json& params, std::uint64_t seed, int jobs);

/// Validates, executes and formats; writes to spec.out when set.
JobResult run(const JobSpec& spec);

/// Config values first, then every key present in flags replaces them.
nlohmann::json merge_params(const nlohmann::json& config, const nlohmann::json& flags);

}  // namespace parqq::cli
