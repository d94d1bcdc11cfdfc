#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <map>
#include <string>
#include <vector>

#include "parqq/cli/jobs.hpp"

namespace {

using nlohmann::json;

struct OptionSpec {
  std::string name;
  std::string help;
  bool flag = false;
  bool repeated = false;
};

struct CommandSpec {
  std::string name;
  std::string help;
  std::vector<OptionSpec> options;
  std::string positional;  // name of a leading positional parameter, if any
};

const std::vector<CommandSpec>& commands() {
  static const std::vector<CommandSpec> specs = {
      {"bounds",
       "block sensitivity, certificate complexity and parallel query bounds of a Boolean function",
       {{"fn", "built-in function: or:n, and:n, parity:n, random:n:seed"},
        {"hex", "truth table as hex, most significant digit first (needs --n)"},
        {"n", "arity for --hex"},
        {"p", "parallelism"},
        {"c", "exponent c for the polynomial relation check"}}},
      {"dual-verify",
       "check a learning-graph dual against every edge with |J| <= p",
       {{"problem", "ed or ksum"},
        {"n", "ground set size"},
        {"p", "parallelism"},
        {"k", "block size for ksum"},
        {"stage-cap", "largest |S| checked (default: last nonzero stage)"},
        {"mode", "auto, grouped or naive"}}},
      {"lgc-solve",
       "solve the learning-graph primal at small n and certify it",
       {{"problem", "ed or ksum"},
        {"n", "ground set size (<= 8)"},
        {"p", "parallelism"},
        {"k", "block size for ksum"},
        {"max-rounds", "iteration cap"},
        {"tolerance", "relative stopping tolerance"}}},
      {"walk-cost",
       "MNRS cost of the p-parallel Johnson walk",
       {{"problem", "ed or ksum"},
        {"n", "input length"},
        {"p", "parallelism"},
        {"k", "k for ksum"},
        {"r", "subset size, or auto"}}},
      {"spectra",
       "Johnson graph spectrum of p independent copies",
       {{"n", "ground set size"},
        {"r", "subset size"},
        {"p", "copies"},
        {"lazy", "use the lazy walk (I + P) / 2", true},
        {"explicit", "cross-check against an explicit eigendecomposition", true}}},
      {"simulate",
       "state-vector simulation: interrogate or grover",
       {{"n", "input length"},
        {"p", "parallelism"},
        {"eps", "interrogation error"},
        {"x", "bit string or random:SEED"},
        {"T", "interrogation weight threshold"},
        {"marked", "marked index for grover (1-based)"},
        {"iterations", "grover iterations (default: optimal)"}},
       "mode"},
      {"sweep",
       "run a command over a parameter grid, optionally fitting a log-log slope",
       {{"base", "command to run per cell"},
        {"set", "fixed parameter name=value", false, true},
        {"axis", "axis name=a,b,c | name=lo:hi:xF | name=lo:hi:+S", false, true},
        {"fit", "metric:axis, axis may be a ratio such as n/p"}}},
      {"fact-check",
       "numerical checks: fact1, appendix-c, or-example, lifting",
       {{"n", "arity"},
        {"q", "alphabet size"},
        {"p", "parallelism"},
        {"trials", "random trials"},
        {"max-n", "largest n for fact1"},
        {"max-q", "largest q for fact1"},
        {"matrix-out", "write the restricted adversary matrix (.csv or PQQM binary)"}},
       "fact"},
  };
  return specs;
}

std::string param_key(const std::string& option) {
  std::string key = option;
  for (auto& c : key) {
    if (c == '-') c = '_';
  }
  return key;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"parallel quantum query complexity toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "json";
  std::string out;
  std::uint64_t seed = 0;
  int jobs = 1;
  std::string config;
  app.add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", out, "output path (default stdout)");
  app.add_option("--seed", seed, "random seed");
  app.add_option("--jobs", jobs, "worker threads for sweeps")->check(CLI::PositiveNumber);
  app.add_option("--config", config, "JSON file of parameters; flags win on conflict")->check(CLI::ExistingFile);

  std::map<std::string, std::map<std::string, std::string>> values;
  std::map<std::string, std::map<std::string, std::vector<std::string>>> lists;
  std::map<std::string, std::map<std::string, bool>> flags;
  std::map<std::string, std::string> positionals;
  std::map<std::string, CLI::App*> subs;
  for (const auto& spec : commands()) {
    auto* sub = app.add_subcommand(spec.name, spec.help);
    subs[spec.name] = sub;
    if (!spec.positional.empty()) sub->add_option(spec.positional, positionals[spec.name], spec.positional);
    for (const auto& o : spec.options) {
      const std::string flag = "--" + o.name;
      if (o.flag) {
        sub->add_flag(flag, flags[spec.name][o.name], o.help);
      } else if (o.repeated) {
        sub->add_option(flag, lists[spec.name][o.name], o.help);
      } else {
        sub->add_option(flag, values[spec.name][o.name], o.help);
      }
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return parqq::cli::kValidationError;
  }

  parqq::cli::JobSpec job;
  job.format = format;
  job.out = out;
  job.seed = seed;
  job.jobs = jobs;
  for (const auto& spec : commands()) {
    const auto& name = spec.name;
    auto* sub = subs[name];
    if (!sub->parsed()) continue;
    job.command = name;
    json given = json::object();
    for (const auto& o : spec.options) {
      if (sub->count("--" + o.name) == 0) continue;
      const auto key = param_key(o.name);
      if (o.flag) {
        given[key] = flags[name][o.name];
      } else if (o.repeated) {
        given[key] = lists[name][o.name];
      } else {
        given[key] = values[name][o.name];
      }
    }
    if (!spec.positional.empty() && sub->count(spec.positional) > 0) given[spec.positional] = positionals[name];

    json file = json::object();
    if (!config.empty()) {
      try {
        std::ifstream in(config);
        file = json::parse(in);
      } catch (const json::exception& e) {
        std::cerr << "error: cannot parse " << config << ": " << e.what() << "\n";
        return parqq::cli::kValidationError;
      }
      if (!file.is_object()) {
        std::cerr << "error: config must be a JSON object\n";
        return parqq::cli::kValidationError;
      }
    }
    job.params = parqq::cli::merge_params(file, given);
  }

  const auto result = parqq::cli::run(job);
  if (job.out.empty()) std::cout << result.output;
  if (!result.error.empty()) std::cerr << "error: " << result.error << "\n";
  return result.exit_code;
}
