#include <doctest.h>

#include <cmath>
#include <random>

#include "../oracles.hpp"
#include "parqq/certstruct.hpp"
#include "parqq/errors.hpp"
#include "parqq/learngraph.hpp"

using namespace parqq;

TEST_CASE("edge sets") {
  CHECK(EdgeSet::build(3, 1, 3).size() == 12);
  CHECK(EdgeSet::build(2, 2, 2).size() == 5);
  CHECK(EdgeSet::build(3, 3, 0).size() == 7);
  for (int n = 1; n <= 7; ++n) {
    for (int p = 1; p <= n; ++p) {
      for (int cap = 0; cap <= n; ++cap) CHECK(EdgeSet::build(n, p, cap).size() == EdgeSet::count(n, p, cap));
    }
  }
  const auto five = EdgeSet::build(5, 2, 5);
  for (const auto& e : five.edges()) {
    CHECK(e.step != 0);
    CHECK((e.source & e.step) == 0);
    CHECK(popcount(e.step) <= 2);
  }
}

TEST_CASE("dual certificate values") {
  const auto ed = ed_dual_certificate(8, 2);
  CHECK(ed.stage(0) == doctest::Approx(std::pow(4.0, 2.0 / 3.0) / 16.0));
  CHECK(ed.stage(0) == doctest::Approx(0.157490).epsilon(1e-5));
  CHECK(ed.objective() == doctest::Approx(std::sqrt(28.0) * ed.stage(0)));
  CHECK(ed.objective() == doctest::Approx(0.83333).epsilon(1e-4));
  CHECK(ksum_dual_certificate(9, 3, 1).stage(0) == doctest::Approx(std::pow(9.0, 0.75) / 54.0));
  CHECK(ksum_dual_certificate(9, 3, 9).stage(0) == doctest::Approx(1.0 / 54.0));
  const auto a = ksum_dual_certificate(10, 2, 3);
  const auto b = ed_dual_certificate(10, 3);
  for (int j = 0; j <= 10; ++j) CHECK(a.stage(j) == doctest::Approx(b.stage(j)));
  CHECK(ed_dual_certificate(6, 6).stage(0) == doctest::Approx(1.0 / 12.0));
}

TEST_CASE("grouped and naive feasibility agree with the brute-force oracle") {
  for (int n = 2; n <= 7; ++n) {
    for (int p = 1; p <= std::min(n, 3); ++p) {
      const auto dual = ed_dual_certificate(n, p);
      const auto structure = make_ed_structure(n);
      const auto edges = EdgeSet::build(n, p, n);
      const auto grouped = verify_dual_feasibility(dual, edges, structure, FeasibilityMode::grouped);
      const auto naive = verify_dual_feasibility(dual, edges, structure, FeasibilityMode::naive);
      const double brute = oracle::max_edge_violation(n, 2, p, dual.stage_alpha());
      CAPTURE(n);
      CAPTURE(p);
      CHECK(grouped.max_violation == doctest::Approx(brute).epsilon(1e-12));
      CHECK(naive.max_violation == doctest::Approx(brute).epsilon(1e-12));
      CHECK(verify_symmetric_dual(dual, p, n).max_violation == doctest::Approx(brute).epsilon(1e-12));
      CHECK(edge_violation(dual, structure, naive.worst_edge) == doctest::Approx(naive.max_violation));
    }
  }
}

TEST_CASE("feasibility verdicts") {
  const auto dual = ed_dual_certificate(8, 2);
  const auto structure = make_ed_structure(8);
  const auto edges = EdgeSet::build(8, 2, 8);
  CHECK(verify_dual_feasibility(dual, edges, structure).feasible);
  const auto zero = DualSolution::symmetric(8, 2, std::vector<double>(9, 0.0));
  CHECK(verify_dual_feasibility(zero, edges, structure).max_violation == 0.0);
  const auto tripled = verify_dual_feasibility(dual.scaled(3.0), edges, structure);
  CHECK_FALSE(tripled.feasible);
  CHECK(tripled.max_violation > 1.0);
}

TEST_CASE("general duals use block-keyed values") {
  const auto structure = make_ed_structure(3);
  std::map<std::pair<Mask, Mask>, double> values;
  for (Mask m : structure.blocks()) values[{0, m}] = 0.5;
  const auto dual = DualSolution::general(structure, values);
  CHECK_FALSE(dual.is_symmetric());
  CHECK(dual.objective() == doctest::Approx(std::sqrt(3 * 0.25)));
  CHECK(dual.value(0b011, 0b011) == 0.0);
  const auto report = verify_dual_feasibility(dual, EdgeSet::build(3, 1, 3), structure);
  CHECK_FALSE(report.grouped);
  CHECK(report.max_violation == doctest::Approx(0.75));
  CHECK_THROWS_AS(verify_dual_feasibility(dual, EdgeSet::build(3, 1, 3), structure, FeasibilityMode::grouped),
                  ParameterError);
}

TEST_CASE("primal on trivial structures") {
  const auto whole = solve_primal(CertificateStructure(2, {0b11}), 2);
  CHECK(whole.objective == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(certify_primal(whole, CertificateStructure(2, {0b11})).feasible);
  const auto single = solve_primal(CertificateStructure(1, {0b1}), 1);
  CHECK(single.objective == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("primal weak duality at ED n=4, p=1") {
  const auto structure = make_ed_structure(4);
  const auto sol = solve_primal(structure, 1);
  const auto cert = certify_primal(sol, structure);
  CHECK(cert.feasible);
  const double dual = ed_dual_certificate(4, 1).objective();
  CHECK(dual == doctest::Approx(std::sqrt(6.0) * std::pow(4.0, 2.0 / 3.0) / 8.0));
  CHECK(sol.objective >= dual - 1e-6);
}

TEST_CASE("witness cut sum is one") {
  const auto f = make_ed_function(3, 6);
  const auto sol = solve_primal(f.structure(), 1);
  std::mt19937_64 rng(5);
  int checked = 0;
  while (checked < 50) {
    std::vector<int> x(3), y(3);
    for (auto& v : x) v = static_cast<int>(rng() % 6);
    for (auto& v : y) v = static_cast<int>(rng() % 6);
    if (!f(x) || f(y)) continue;
    const auto w = witness_from_primal(sol, f, x, y);
    CHECK(w.cut_sum == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(w.one_input_norm == doctest::Approx(w.block_energy).epsilon(1e-12));
    CHECK(w.block_energy <= 1.0 + 1e-9);
    ++checked;
  }
}

TEST_CASE("hand-built path flow") {
  // conductance 1 on (empty, {1}) and ({1}, {2}); unit flow along the path into {1,2}
  const auto f = make_ed_function(3, 6);
  PrimalSolution sol;
  sol.edges = EdgeSet::build(3, 1, 3);
  sol.weights.assign(sol.edges.size(), 0.0);
  sol.flows.assign(f.structure().size(), std::vector<double>(sol.edges.size(), 0.0));
  const auto block = *f.structure().index_of(0b011);
  for (std::size_t e = 0; e < sol.edges.size(); ++e) {
    const auto& edge = sol.edges.edges()[e];
    if ((edge.source == 0 && edge.step == 0b001) || (edge.source == 0b001 && edge.step == 0b010)) {
      sol.weights[e] = 1.0;
      sol.flows[block][e] = 1.0;
    }
  }
  const std::vector<int> x = {2, 2, 0};
  const std::vector<int> y = {1, 2, 3};
  CHECK(witness_from_primal(sol, f, x, y).cut_sum == doctest::Approx(1.0));
  CHECK_THROWS_AS(witness_from_primal(sol, f, y, x), ParameterError);
}

TEST_CASE("resource limits") {
  CHECK_THROWS_AS(solve_primal(make_ed_structure(9), 1), ResourceLimitError);
  CHECK_THROWS_AS(EdgeSet::build(30, 3, 30), ResourceLimitError);
  CHECK(EdgeSet::count(30, 3, 30) > 10000000ULL);
}
