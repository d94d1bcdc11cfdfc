#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "parqq/errors.hpp"
#include "parqq/learngraph.hpp"

namespace parqq {

double PrimalSolution::total_weight() const { return std::accumulate(weights.begin(), weights.end(), 0.0); }

std::vector<double> electrical_flow(const EdgeSet& edges, std::span<const double> weights, Mask block,
                                    double* energy) {
  const int n = edges.n();
  if (weights.size() != edges.size()) throw ParameterError("one weight per edge required");
  if (block == 0) throw ParameterError("flow target block must be nonempty");
  const std::size_t vertices = std::size_t{1} << n;

  // Sinks (supersets of the block) are grounded; the rest are unknowns.
  std::vector<int> index(vertices, -1);
  int unknowns = 0;
  for (Mask v = 0; v < vertices; ++v) {
    if (!is_subset(block, v)) index[v] = unknowns++;
  }
  Eigen::MatrixXd laplacian = Eigen::MatrixXd::Zero(unknowns, unknowns);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const double c = weights[e];
    if (c <= 0.0) continue;
    const int u = index[edges.edges()[e].source];
    const int v = index[edges.edges()[e].target()];
    if (u >= 0) laplacian(u, u) += c;
    if (v >= 0) laplacian(v, v) += c;
    if (u >= 0 && v >= 0) {
      laplacian(u, v) -= c;
      laplacian(v, u) -= c;
    }
  }
  // Vertices with no conductance are isolated; pin them so the system stays regular.
  for (int i = 0; i < unknowns; ++i) {
    if (laplacian(i, i) == 0.0) laplacian(i, i) = 1.0;
  }
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(unknowns);
  rhs(index[0]) = 1.0;
  const Eigen::VectorXd potential = laplacian.ldlt().solve(rhs);

  std::vector<double> flow(edges.size(), 0.0);
  double total = 0.0;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const double c = weights[e];
    if (c <= 0.0) continue;
    const int u = index[edges.edges()[e].source];
    const int v = index[edges.edges()[e].target()];
    const double pu = u >= 0 ? potential(u) : 0.0;
    const double pv = v >= 0 ? potential(v) : 0.0;
    flow[e] = c * (pu - pv);
    total += flow[e] * flow[e] / c;
  }
  if (energy != nullptr) *energy = total;
  return flow;
}

PrimalCertificate certify_primal(const PrimalSolution& solution, const CertificateStructure& structure,
                                 double tolerance) {
  const auto& edges = solution.edges;
  if (edges.n() != structure.n()) throw ParameterError("solution and structure must share n");
  if (solution.flows.size() != structure.size()) throw ParameterError("one flow per block required");
  PrimalCertificate cert;
  const std::size_t vertices = std::size_t{1} << edges.n();
  std::vector<double> balance(vertices);
  for (std::size_t b = 0; b < structure.size(); ++b) {
    const Mask block = structure.blocks()[b];
    const auto& flow = solution.flows[b];
    std::fill(balance.begin(), balance.end(), 0.0);
    double energy = 0.0;
    for (std::size_t e = 0; e < edges.size(); ++e) {
      const double w = solution.weights[e];
      const double theta = flow[e];
      if (w <= 0.0) {
        if (theta != 0.0) cert.zero_weight_flow = true;
      } else {
        energy += theta * theta / w;
      }
      balance[edges.edges()[e].source] -= theta;
      balance[edges.edges()[e].target()] += theta;
    }
    cert.max_energy = std::max(cert.max_energy, energy);
    cert.max_source_deviation = std::max(cert.max_source_deviation, std::abs(-balance[0] - 1.0));
    for (Mask v = 1; v < vertices; ++v) {
      if (!is_subset(block, v)) cert.max_conservation_residual = std::max(cert.max_conservation_residual, std::abs(balance[v]));
    }
  }
  cert.feasible = cert.max_energy <= 1.0 + tolerance && cert.max_conservation_residual <= tolerance &&
                  cert.max_source_deviation <= tolerance && !cert.zero_weight_flow &&
                  std::all_of(solution.weights.begin(), solution.weights.end(), [](double w) { return w >= 0.0; });
  return cert;
}

PrimalSolution solve_primal(const CertificateStructure& structure, int p, const PrimalOptions& options) {
  const int n = structure.n();
  if (n > kMaxPrimalArity) throw ResourceLimitError("primal solving is limited to n <= 8");
  if (structure.size() > kMaxPrimalBlocks) throw ResourceLimitError("primal solving is limited to 70 blocks");
  if (structure.size() == 0) throw ParameterError("primal solving needs at least one block");
  if (p < 1 || p > n) throw ParameterError("primal solving requires 1 <= p <= n");
  if (options.max_rounds < 1) throw ParameterError("primal solving requires max_rounds >= 1");

  PrimalSolution best;
  best.edges = EdgeSet::build(n, p, n);
  const auto& edges = best.edges;
  const std::size_t blocks = structure.size();

  std::vector<double> weights(edges.size(), 1.0);
  std::vector<double> multipliers(blocks, 1.0 / static_cast<double>(blocks));
  std::vector<std::vector<double>> flows(blocks);
  std::vector<double> energies(blocks);
  double best_objective = std::numeric_limits<double>::infinity();
  double previous = std::numeric_limits<double>::infinity();

  for (int round = 1; round <= options.max_rounds; ++round) {
    for (std::size_t b = 0; b < blocks; ++b) {
      flows[b] = electrical_flow(edges, weights, structure.blocks()[b], &energies[b]);
    }
    const double worst = *std::max_element(energies.begin(), energies.end());
    const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
    // Scaling every weight by the worst energy makes all energy constraints hold.
    const double objective = std::sqrt(total * worst);
    if (objective < best_objective) {
      best_objective = objective;
      const double scale = worst * (1.0 + 1e-12);
      best.weights = weights;
      for (auto& w : best.weights) w *= scale;
      best.flows = flows;
      best.energies = energies;
      for (auto& en : best.energies) en /= scale;
      best.rounds = round;
    }
    if (std::abs(previous - objective) <= options.relative_tolerance * objective) {
      best.converged = true;
      best.rounds = round;
      break;
    }
    previous = objective;

    // Shift multiplier mass toward blocks with the largest energy.
    double mass = 0.0;
    for (std::size_t b = 0; b < blocks; ++b) {
      multipliers[b] *= std::pow(energies[b] / worst, options.multiplier_rate);
      mass += multipliers[b];
    }
    for (auto& m : multipliers) m /= mass;

    // For fixed flows, w_e = sqrt(sum_M lambda_M theta_e(M)^2) minimizes
    // sum_e w_e + sum_M lambda_M sum_e theta_e(M)^2 / w_e.
    double largest = 0.0;
    for (std::size_t e = 0; e < edges.size(); ++e) {
      double s = 0.0;
      for (std::size_t b = 0; b < blocks; ++b) s += multipliers[b] * flows[b][e] * flows[b][e];
      weights[e] = std::sqrt(s);
      largest = std::max(largest, weights[e]);
    }
    const double floor = options.weight_floor * std::max(largest, 1e-300);
    for (auto& w : weights) w = std::max(w, floor);
    best.rounds = round;
  }
  best.objective = std::sqrt(best.total_weight());
  return best;
}

}  // namespace parqq
