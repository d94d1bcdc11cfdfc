#include "parqq/cli/jobs.hpp"

#include <cmath>
#include <fmt/format.h>
#include <fstream>
#include <random>

#include "params.hpp"
#include "parqq/adversary.hpp"
#include "parqq/boolfn.hpp"
#include "parqq/certstruct.hpp"
#include "parqq/cli/output.hpp"
#include "parqq/cli/sweep.hpp"
#include "parqq/errors.hpp"
#include "parqq/learngraph.hpp"
#include "parqq/linalg.hpp"
#include "parqq/matrix_io.hpp"
#include "parqq/qsim.hpp"
#include "parqq/walks.hpp"

namespace parqq::cli {

using nlohmann::json;

namespace {

std::string edge_key(const Edge& e) { return format_subset(e.source) + "|" + format_subset(e.step); }

int problem_k(const Params& params, const std::string& problem) {
  if (problem == "ed") {
    if (params.has("k") && params.get_int("k") != 2) throw ParameterError("parameter 'k' must be 2 for problem ed");
    return 2;
  }
  if (problem == "ksum") return params.get_int("k", 3);
  throw ParameterError("parameter 'problem' must be ed or ksum");
}

DualSolution problem_dual(const Params& params, const std::string& problem, int n, int k, int p) {
  if (params.has("alpha")) {
    const auto& a = params.raw("alpha");
    if (!a.is_array()) throw ParameterError("parameter 'alpha' must be an array [alpha_0, ..., alpha_n]");
    std::vector<double> stages;
    for (const auto& v : a) {
      if (!v.is_number()) throw ParameterError("parameter 'alpha' must hold numbers");
      stages.push_back(v.get<double>());
    }
    if (stages.size() > static_cast<std::size_t>(n) + 1) throw ParameterError("parameter 'alpha' has more than n+1 stages");
    return DualSolution::symmetric(n, k, std::move(stages));
  }
  return problem == "ed" ? ed_dual_certificate(n, p) : ksum_dual_certificate(n, k, p);
}

double closed_form_objective(int n, int k, int p) {
  const double alpha0 = std::pow(static_cast<double>(n) / p, static_cast<double>(k) / (k + 1)) /
                        (2.0 * std::pow(static_cast<double>(n), k / 2.0));
  return std::sqrt(binomial_real(n, k)) * alpha0;
}

Outcome bounds(const Params& params) {
  params.only({"fn", "hex", "n", "p", "c"});
  const auto f = [&] {
    if (params.has("hex")) return BooleanFunction::from_hex(params.get_int("n"), params.get_string("hex"));
    return BooleanFunction::from_name(params.get_string("fn"));
  }();
  const int p = params.get_int("p", 1);
  const auto report = complexity_report(f, p);
  Outcome out;
  out.value = {{"n", f.arity()},
               {"hex", f.to_hex()},
               {"p", report.p},
               {"bs", report.bs},
               {"C", report.c},
               {"C0", report.c0},
               {"C1", report.c1},
               {"dpar_upper", report.dpar_upper},
               {"dpar_used_negation", report.dpar_used_negation},
               {"q_lower", report.q_lower}};
  if (params.has("c")) {
    const auto rel = polynomial_relation_check(f, p, params.get_double("c"));
    out.value["relation"] = {{"c", rel.c},
                             {"precondition_holds", rel.precondition_holds},
                             {"bs_root", rel.bs_root},
                             {"cubic_term", rel.cubic_term},
                             {"observed_constant", rel.observed_constant},
                             {"exponent", rel.exponent}};
  }
  out.property_ok = report.bs <= report.c && report.c <= report.bs * report.bs;
  return out;
}

Outcome dual_verify(const Params& params) {
  params.only({"problem", "n", "p", "k", "stage_cap", "mode", "alpha"});
  const auto problem = params.get_string("problem", "ed");
  const int n = params.get_int("n");
  const int p = params.get_int("p");
  const int k = problem_k(params, problem);
  if (n < 2 || n > 4096) throw ParameterError("parameter 'n' must be in [2, 4096]");
  if (p < 1 || p > n) throw ParameterError("parameter 'p' must satisfy 1 <= p <= n");
  const auto dual = problem_dual(params, problem, n, k, p);
  const int cap = params.get_int("stage_cap", dual.support_stage());
  const auto mode = params.get_string("mode", "auto");
  if (mode != "auto" && mode != "grouped" && mode != "naive") throw ParameterError("parameter 'mode' must be auto, grouped or naive");

  FeasibilityReport report;
  if (mode == "naive") {
    if (n > kMaxGroundSet) throw ParameterError("naive verification requires n <= 30");
    const auto structure = make_uniform_structure(n, k);
    report = verify_dual_feasibility(dual, EdgeSet::build(n, p, cap), structure, FeasibilityMode::naive);
  } else {
    report = verify_symmetric_dual(dual, p, cap);
  }
  Outcome out;
  out.value = {{"problem", problem},
               {"n", n},
               {"p", p},
               {"k", k},
               {"stage_cap", cap},
               {"feasible", report.feasible},
               {"maxL", report.max_violation},
               {"objective", dual.objective()},
               {"worst_stage", report.worst_stage},
               {"worst_step", report.worst_step},
               {"edges_checked", report.edges_checked},
               {"grouped", report.grouped}};
  if (n <= kMaxGroundSet) out.value["worst_edge"] = edge_key(report.worst_edge);
  if (!params.has("alpha")) out.value["closed_form_objective"] = closed_form_objective(n, k, p);
  out.property_ok = report.feasible;
  return out;
}

Outcome lgc_solve(const Params& params) {
  params.only({"problem", "n", "p", "k", "max_rounds", "tolerance"});
  const auto problem = params.get_string("problem", "ed");
  const int n = params.get_int("n");
  const int p = params.get_int("p");
  const int k = problem_k(params, problem);
  if (n < k || n > kMaxPrimalArity) throw ParameterError("parameter 'n' must be in [k, 8]");
  PrimalOptions options;
  options.max_rounds = params.get_int("max_rounds", options.max_rounds);
  options.relative_tolerance = params.get_double("tolerance", options.relative_tolerance);
  const auto structure = make_uniform_structure(n, k);
  const auto solution = solve_primal(structure, p, options);
  const auto cert = certify_primal(solution, structure);
  const double dual = (problem == "ed" ? ed_dual_certificate(n, p) : ksum_dual_certificate(n, k, p)).objective();

  json weights = json::object();
  for (std::size_t e = 0; e < solution.edges.size(); ++e) {
    if (solution.weights[e] > 0.0) weights[edge_key(solution.edges.edges()[e])] = solution.weights[e];
  }
  Outcome out;
  out.value = {{"problem", problem},
               {"n", n},
               {"p", p},
               {"k", k},
               {"objective", solution.objective},
               {"dual_objective", dual},
               {"weak_duality", solution.objective >= dual - 1e-6},
               {"rounds", solution.rounds},
               {"converged", solution.converged},
               {"certificate",
                {{"feasible", cert.feasible},
                 {"max_energy", cert.max_energy},
                 {"max_conservation_residual", cert.max_conservation_residual},
                 {"max_source_deviation", cert.max_source_deviation}}},
               {"weights", weights}};
  out.property_ok = cert.feasible && solution.objective >= dual - 1e-6;
  return out;
}

json walk_cost_json(const WalkCost& c) {
  return {{"n", c.n},          {"p", c.p},
          {"r", c.r},          {"S", c.setup},
          {"U", c.update},     {"C", c.check},
          {"eps", c.epsilon},  {"delta", c.delta},
          {"total", c.total},  {"eps_exact", c.epsilon_exact},
          {"delta_lazy", c.delta_lazy}, {"total_exact", c.total_exact}};
}

Outcome walk_cost_command(const Params& params) {
  params.only({"problem", "n", "p", "k", "r"});
  const auto name = params.get_string("problem", "ed");
  const int k = problem_k(params, name);
  const auto problem = name == "ed" ? WalkProblem::ed() : WalkProblem::ksum(k);
  const int n = params.get_int("n");
  const int p = params.get_int("p");
  Outcome out;
  if (params.get_string("r", "auto") == "auto") {
    const auto opt = optimize_r(problem, n, p);
    out.value = walk_cost_json(opt.best);
    out.value["closed_form_r"] = opt.closed_form_r;
    out.value["cost_ceiling"] = opt.cost_ceiling;
    out.value["r_within_factor_two"] = opt.r_within_factor_two;
    out.value["cost_within_ceiling"] = opt.cost_within_ceiling;
    out.property_ok = opt.r_within_factor_two && opt.cost_within_ceiling;
  } else {
    out.value = walk_cost_json(walk_cost(problem, n, p, params.get_int("r")));
  }
  out.value["problem"] = name;
  out.value["k"] = k;
  return out;
}

Outcome spectra(const Params& params) {
  params.only({"n", "r", "p", "lazy", "explicit"});
  const JohnsonWalk walk{params.get_int("n"), params.get_int("r"), params.get_flag("lazy")};
  const int p = params.get_int("p", 1);
  const auto product = product_spectrum(walk, p);
  Outcome out;
  json rows = json::array();
  for (const auto& e : product.values) rows.push_back({{"eigenvalue", e.value}, {"multiplicity", e.multiplicity}});
  out.value = {{"n", walk.n},
               {"r", walk.r},
               {"p", p},
               {"lazy", walk.lazy},
               {"second_largest", product.second_largest},
               {"gap", product.gap},
               {"single_copy_gap", johnson_gap(walk)},
               {"rows", rows}};
  if (params.get_flag("explicit")) {
    const auto numeric = explicit_product_spectrum(walk, p);
    const auto closed = expand_spectrum(product.values);
    double err = numeric.size() == closed.size() ? 0.0 : std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < numeric.size() && i < closed.size(); ++i) err = std::max(err, std::abs(numeric[i] - closed[i]));
    out.value["explicit_max_error"] = err;
    out.property_ok = err <= 1e-9;
  }
  return out;
}

std::vector<int> parse_bits(const std::string& text, int n, std::uint64_t seed) {
  std::vector<int> x;
  if (text == "random" || text.starts_with("random:")) {
    std::uint64_t s = seed;
    if (text.size() > 7) {
      try {
        s = std::stoull(text.substr(7));
      } catch (const std::exception&) {
        throw ParameterError("parameter 'x' must be a bit string or random:SEED");
      }
    }
    std::mt19937_64 rng(s);
    for (int i = 0; i < n; ++i) x.push_back(static_cast<int>(rng() & 1U));
    return x;
  }
  for (char c : text) {
    if (c != '0' && c != '1') throw ParameterError("parameter 'x' must be a bit string or random:SEED");
    x.push_back(c - '0');
  }
  if (static_cast<int>(x.size()) != n) throw ParameterError("parameter 'x' must have n bits");
  return x;
}

json log_summary(const ParallelQueryLog& log) {
  return {{"total_rounds", log.total_rounds()},
          {"total_queries", log.total_queries()},
          {"max_batch", log.max_batch()},
          {"p", log.p()},
          {"notes", log.notes()}};
}

Outcome simulate(const Params& params, std::uint64_t seed) {
  const auto mode = params.get_string("mode");
  Outcome out;
  if (mode == "interrogate") {
    params.only({"mode", "n", "p", "eps", "x", "T"});
    const int n = params.get_int("n");
    if (n < 1 || n > kMaxSimulatedQubits) throw ParameterError("parameter 'n' must be in [1, 24]");
    const auto x = parse_bits(params.get_string("x", "random"), n, seed);
    std::optional<int> t;
    if (params.has("T")) t = params.get_int("T");
    const auto r = interrogate(x, params.get_int("p", 1), params.get_double("eps", 0.1), t);
    std::string bits;
    for (int b : x) bits += static_cast<char>('0' + b);
    const bool match = std::abs(r.success - r.closed_form) <= 1e-12;
    out.value = {{"mode", mode},      {"n", n},
                 {"x", bits},         {"T", r.threshold},
                 {"rounds", r.rounds}, {"success", r.success},
                 {"closed_form", r.closed_form}, {"closed_form_match", match},
                 {"norm_error", r.norm_error}, {"log", log_summary(r.log)}};
    out.property_ok = match && r.log.max_batch() <= r.log.p();
  } else if (mode == "grover") {
    params.only({"mode", "n", "p", "marked", "iterations"});
    std::optional<int> t;
    if (params.has("iterations")) t = params.get_int("iterations");
    const int n = params.get_int("n");
    const auto r = grover_parallel(n, params.get_int("p"), params.get_int("marked"), t);
    const bool match = std::abs(r.success - r.closed_form) <= 1e-9;
    out.value = {{"mode", mode},
                 {"n", n},
                 {"block_size", r.block_size},
                 {"iterations", r.iterations},
                 {"rounds", r.rounds},
                 {"success", r.success},
                 {"closed_form", r.closed_form},
                 {"closed_form_match", match},
                 {"candidate", r.candidate},
                 {"norm_error", r.norm_error},
                 {"log", log_summary(r.log)}};
    out.property_ok = match && r.rounds == r.iterations + 1;
  } else {
    throw ParameterError("parameter 'mode' must be interrogate or grover");
  }
  return out;
}

void export_matrix(const std::string& path, const Eigen::MatrixXd& m) {
  if (path.ends_with(".csv")) {
    write_matrix_csv(path, m);
  } else {
    write_matrix_binary(path, m);
  }
}

Outcome appendix_c_check(const Params& params) {
  params.only({"fact", "n", "q", "p", "matrix_out"});
  const int n = params.get_int("n", 3);
  const int q = params.get_int("q", 6);
  const int p = params.get_int("p", 1);
  const auto f = make_ed_function(n, q);
  const auto dual = ed_dual_certificate(n, p);
  const auto gt = build_gamma_tilde(dual, f);
  if (params.has("matrix_out")) export_matrix(params.get_string("matrix_out"), gt.restricted);

  // Projector algebra
  const ProjectorFamily family(q, n);
  const auto dim = family.dimension();
  double algebra = 0.0;
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(dim, dim);
  std::vector<Eigen::MatrixXd> e;
  for (Mask s = 0; s <= full_mask(n); ++s) e.push_back(family.projector(s));
  for (Mask s = 0; s <= full_mask(n); ++s) {
    sum += e[s];
    for (Mask t = 0; t <= full_mask(n); ++t) {
      const Eigen::MatrixXd expected = s == t ? e[s] : Eigen::MatrixXd::Zero(dim, dim);
      algebra = std::max(algebra, (e[s] * e[t] - expected).cwiseAbs().maxCoeff());
    }
  }
  algebra = std::max(algebra, (sum - Eigen::MatrixXd::Identity(dim, dim)).cwiseAbs().maxCoeff());

  double alpha_sq = 0.0;
  for (const auto& a : gt.alpha) alpha_sq += a[0] * a[0];
  const double gamma_norm = spectral_norm(gt.restricted);
  const double norm_target = std::sqrt(alpha_sq / 2.0);

  json steps = json::array();
  bool phi_ok = true;
  for (Mask step = 1; step <= full_mask(n); ++step) {
    const auto r = phi_J(gt, step);
    phi_ok = phi_ok && r.masked_equality && r.norm_match && r.factor_two;
    steps.push_back({{"J", format_subset(step)},
                     {"masked_equality_error", r.masked_equality_error},
                     {"explicit_norm", r.explicit_norm},
                     {"closed_form_norm", r.closed_form_norm},
                     {"masked_norm", r.masked_norm},
                     {"factor_two", r.factor_two}});
  }
  const auto ratio = adversary_ratio(gt.restricted_instance(), p, StepRange::at_most);
  const double chain_target = std::sqrt(alpha_sq) / (2.0 * std::sqrt(2.0)) - 1e-6;

  Outcome out;
  out.value = {{"fact", "appendix-c"},
               {"n", n},
               {"q", q},
               {"p", p},
               {"rows", gt.restricted.rows()},
               {"cols", gt.restricted.cols()},
               {"projector_algebra_error", algebra},
               {"gamma_norm", gamma_norm},
               {"gamma_norm_target", norm_target},
               {"gamma_norm_holds", gamma_norm >= norm_target - 1e-9},
               {"phi", steps},
               {"ratio", ratio.value},
               {"ratio_target", chain_target},
               {"chain_holds", ratio.value >= chain_target}};
  out.property_ok = algebra <= 1e-12 && phi_ok && gamma_norm >= norm_target - 1e-9 && ratio.value >= chain_target;
  return out;
}

Outcome fact_check(const Params& params, std::uint64_t seed) {
  const auto fact = params.get_string("fact");
  Outcome out;
  if (fact == "fact1") {
    params.only({"fact", "trials", "max_n", "max_q"});
    Fact1Dims dims;
    dims.max_n = params.get_int("max_n", dims.max_n);
    dims.max_q = params.get_int("max_q", dims.max_q);
    const auto r = check_fact1(params.get_int("trials", 1000), dims, seed);
    out.value = {{"fact", fact}, {"trials", r.trials}, {"skipped", r.skipped}, {"max_ratio", r.max_ratio}, {"seed", r.seed}};
  } else if (fact == "appendix-c") {
    return appendix_c_check(params);
  } else if (fact == "or-example") {
    params.only({"fact", "n", "p"});
    const int n = params.get_int("n");
    const int p = params.get_int("p");
    const auto r = adversary_ratio(or_adversary(n), p);
    const double expected = std::sqrt(static_cast<double>(n) / p);
    out.value = {{"fact", fact}, {"n", n}, {"p", p}, {"ratio", r.value}, {"expected", expected}};
    out.property_ok = std::abs(r.value - expected) <= 1e-9;
  } else if (fact == "lifting") {
    params.only({"fact", "n", "q", "p", "trials"});
    const int n = params.get_int("n", 4);
    const int q = params.get_int("q", 2 * n * (n - 1) / 2);
    const int p = params.get_int("p", 2);
    const int trials = params.get_int("trials", 10000);
    const auto f = make_ed_function(n, q);
    std::mt19937_64 rng(seed);
    int mismatches = 0;
    int wrong_queries = 0;
    const int expected_queries = (n + p - 1) / p;
    for (int t = 0; t < trials; ++t) {
      Input x(n);
      for (auto& v : x) v = static_cast<int>(rng() % static_cast<std::uint64_t>(q));
      BlockString lifted(x, p);
      if (evaluate_lifted(f, lifted) != f(x)) ++mismatches;
      if (lifted.queries() != expected_queries) ++wrong_queries;
    }
    out.value = {{"fact", fact}, {"trials", trials}, {"mismatches", mismatches}, {"query_mismatches", wrong_queries},
                 {"queries_per_input", expected_queries}};
    out.property_ok = mismatches == 0 && wrong_queries == 0;
  } else {
    throw ParameterError("parameter 'fact' must be fact1, appendix-c, or-example or lifting");
  }
  return out;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"bounds",   "dual-verify", "lgc-solve", "walk-cost",
                                                 "spectra",  "simulate",    "sweep",     "fact-check"};
  return names;
}

Outcome execute(const std::string& command, const json& params, std::uint64_t seed, int jobs) {
  const Params p(params);
  if (command == "bounds") return bounds(p);
  if (command == "dual-verify") return dual_verify(p);
  if (command == "lgc-solve") return lgc_solve(p);
  if (command == "walk-cost") return walk_cost_command(p);
  if (command == "spectra") return spectra(p);
  if (command == "simulate") return simulate(p, seed);
  if (command == "fact-check") return fact_check(p, seed);
  if (command == "sweep") return sweep_command(params, seed, jobs);
  throw ParameterError("unknown command '" + command + "'");
}

json merge_params(const json& config, const json& flags) {
  json out = config.is_object() ? config : json::object();
  if (flags.is_object()) {
    for (const auto& [key, value] : flags.items()) out[key] = value;
  }
  return out;
}

JobResult run(const JobSpec& spec) {
  JobResult result;
  try {
    if (spec.format != "json" && spec.format != "csv") throw ParameterError("--format must be json or csv");
    if (spec.jobs < 1) throw ParameterError("--jobs must be >= 1");
    auto outcome = execute(spec.command, spec.params, spec.seed, spec.jobs);
    result.value = std::move(outcome.value);
    result.output = spec.format == "json" ? to_json(result.value) : to_csv(result.value);
    if (!outcome.property_ok) {
      result.exit_code = kPropertyFailure;
      result.error = "property check failed for " + spec.command;
    } else if (result.value.contains("exit_code") && result.value["exit_code"].is_number_integer()) {
      result.exit_code = result.value["exit_code"].get<int>();
    }
  } catch (const PropertyFailure& e) {
    result.exit_code = kPropertyFailure;
    result.error = e.what();
  } catch (const std::invalid_argument& e) {
    result.exit_code = kValidationError;
    result.error = e.what();
  } catch (const ResourceLimitError& e) {
    result.exit_code = kValidationError;
    result.error = e.what();
  } catch (const json::exception& e) {
    result.exit_code = kValidationError;
    result.error = e.what();
  }
  if (!spec.out.empty() && !result.output.empty()) {
    std::ofstream file(spec.out);
    if (!file) {
      result.exit_code = kValidationError;
      result.error = "cannot open " + spec.out + " for writing";
    } else {
      file << result.output;
    }
  }
  return result;
}

}  // namespace parqq::cli
