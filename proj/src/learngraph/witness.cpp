#include <cmath>
#include <map>
#include <utility>
#include <vector>

#include "parqq/errors.hpp"
#include "parqq/learngraph.hpp"

namespace parqq {

namespace {

// Basis element |S, z_S>: the subset and the values of z on it, in index order.
using BasisKey = std::pair<Mask, std::vector<int>>;
using SparseVector = std::map<BasisKey, double>;

BasisKey basis_key(Mask subset, std::span<const int> z) {
  std::vector<int> values;
  for (int i : mask_elements(subset)) values.push_back(z[i]);
  return {subset, std::move(values)};
}

double inner(const SparseVector& a, const SparseVector& b) {
  double sum = 0.0;
  for (const auto& [key, v] : a) {
    auto it = b.find(key);
    if (it != b.end()) sum += v * it->second;
  }
  return sum;
}

double squared_norm(const SparseVector& a) {
  double sum = 0.0;
  for (const auto& [key, v] : a) sum += v * v;
  return sum;
}

bool differs_on(Mask subset, std::span<const int> x, std::span<const int> y) {
  for (int i : mask_elements(subset)) {
    if (x[i] != y[i]) return true;
  }
  return false;
}

}  // namespace

WitnessReport witness_from_primal(const PrimalSolution& solution, const InducedFunction& f, std::span<const int> x,
                                  std::span<const int> y) {
  const auto& structure = f.structure();
  if (solution.flows.size() != structure.size() || solution.edges.n() != structure.n()) {
    throw ParameterError("primal solution was not computed for this certificate structure");
  }
  const auto fx = f.evaluate(x);
  if (!fx.value) throw ParameterError("witness construction requires x to be a 1-input");
  if (f.evaluate(y).value) throw ParameterError("witness construction requires y to be a 0-input");

  WitnessReport report;
  report.certificate = *fx.witness;
  const auto block = *structure.index_of(report.certificate);
  const auto& flow = solution.flows[block];

  // u_{x,J} = sum_{S} theta_{S,J}(M_x)/sqrt(w_{S,J}) |S, x_S>,  u_{y,J} = sum_{S} sqrt(w_{S,J}) |S, y_S>
  std::map<Mask, std::pair<SparseVector, SparseVector>> by_step;
  const auto& edges = solution.edges.edges();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const double w = solution.weights[e];
    report.total_weight += w;
    if (w <= 0.0) continue;
    auto& [ux, uy] = by_step[edges[e].step];
    const double root = std::sqrt(w);
    ux[basis_key(edges[e].source, x)] += flow[e] / root;
    uy[basis_key(edges[e].source, y)] += root;
    report.block_energy += flow[e] * flow[e] / w;
  }
  for (const auto& [step, vectors] : by_step) {
    report.one_input_norm += squared_norm(vectors.first);
    report.zero_input_norm += squared_norm(vectors.second);
    if (differs_on(step, x, y)) report.cut_sum += inner(vectors.first, vectors.second);
  }
  return report;
}

}  // namespace parqq
