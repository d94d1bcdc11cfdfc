#include <algorithm>
#include <cmath>
#include <map>

#include "parqq/errors.hpp"
#include "parqq/learngraph.hpp"

namespace parqq {

DualSolution DualSolution::symmetric(int n, int k, std::vector<double> stage_alpha) {
  if (k < 1 || k > n) throw ParameterError("symmetric dual requires 1 <= k <= n");
  DualSolution d;
  d.n_ = n;
  d.k_ = k;
  d.symmetric_ = true;
  d.stage_alpha_ = std::move(stage_alpha);
  d.stage_alpha_.resize(static_cast<std::size_t>(n) + 1, 0.0);
  d.finish();
  return d;
}

DualSolution DualSolution::general(const CertificateStructure& structure,
                                   std::map<std::pair<Mask, Mask>, double> values) {
  DualSolution d;
  d.n_ = structure.n();
  d.k_ = structure.k_bound();
  d.symmetric_ = false;
  d.blocks_ = structure.blocks();
  for (const auto& [key, v] : values) {
    if (!structure.index_of(key.second)) throw ParameterError("dual value refers to a block outside the structure");
  }
  d.values_ = std::move(values);
  d.finish();
  return d;
}

void DualSolution::finish() {
  if (symmetric_) {
    objective_ = std::sqrt(binomial_real(n_, k_)) * std::abs(stage(0));
    return;
  }
  double sum = 0.0;
  for (Mask m : blocks_) sum += value(0, m) * value(0, m);
  objective_ = std::sqrt(sum);
}

double DualSolution::value(Mask subset, Mask block) const {
  if (is_subset(block, subset)) return 0.0;
  if (symmetric_) return stage(popcount(subset));
  auto it = values_.find({subset, block});
  return it == values_.end() ? 0.0 : it->second;
}

double DualSolution::stage(int j) const {
  if (j < 0 || j >= static_cast<int>(stage_alpha_.size())) return 0.0;
  return stage_alpha_[static_cast<std::size_t>(j)];
}

int DualSolution::support_stage() const {
  if (!symmetric_) return n_;
  int last = 0;
  for (int j = 0; j < static_cast<int>(stage_alpha_.size()); ++j) {
    if (stage_alpha_[j] != 0.0) last = j;
  }
  return last;
}

DualSolution DualSolution::scaled(double factor) const {
  DualSolution d = *this;
  for (auto& a : d.stage_alpha_) a *= factor;
  for (auto& [key, v] : d.values_) v *= factor;
  d.finish();
  return d;
}

DualSolution ksum_dual_certificate(int n, int k, int p) {
  if (k < 2 || k > n) throw ParameterError("k-sum dual requires 2 <= k <= n");
  if (p < 1 || p > n) throw ParameterError("k-sum dual requires 1 <= p <= n");
  const double exponent = static_cast<double>(k) / (k + 1);
  const double peak = std::pow(static_cast<double>(n) / p, exponent);
  const double scale = 2.0 * std::pow(static_cast<double>(n), k / 2.0);
  std::vector<double> alpha(static_cast<std::size_t>(n) + 1);
  for (int j = 0; j <= n; ++j) alpha[j] = std::max(peak - static_cast<double>(j) / p, 0.0) / scale;
  return DualSolution::symmetric(n, k, std::move(alpha));
}

DualSolution ed_dual_certificate(int n, int p) {
  if (n < 2) throw ParameterError("element distinctness dual requires n >= 2");
  if (p < 1 || p > n) throw ParameterError("element distinctness dual requires 1 <= p <= n");
  const double peak = std::pow(static_cast<double>(n) / p, 2.0 / 3.0);
  std::vector<double> alpha(static_cast<std::size_t>(n) + 1);
  for (int j = 0; j <= n; ++j) alpha[j] = std::max(peak - static_cast<double>(j) / p, 0.0) / (2.0 * n);
  return DualSolution::symmetric(n, 2, std::move(alpha));
}

double edge_violation(const DualSolution& dual, const CertificateStructure& structure, const Edge& edge) {
  double sum = 0.0;
  for (Mask m : structure.blocks()) {
    const double diff = dual.value(edge.source, m) - dual.value(edge.target(), m);
    sum += diff * diff;
  }
  return sum;
}

namespace {

// L for an edge with |S| = s, |J| = j under a symmetric dual over all k-subsets.
// A block meeting S in i elements and J in t elements keeps alpha_s at the
// source unless i = k, and alpha_{s+j} at the target unless i + t = k.
double grouped_violation(const DualSolution& dual, int s, int j) {
  const int n = dual.n();
  const int k = dual.block_size();
  const double a_src = dual.stage(s);
  const double a_dst = dual.stage(s + j);
  double sum = 0.0;
  for (int i = 0; i <= std::min(k, s); ++i) {
    for (int t = 0; t <= std::min(k - i, j); ++t) {
      const double count = binomial_real(s, i) * binomial_real(j, t) * binomial_real(n - s - j, k - i - t);
      if (count == 0.0) continue;
      const double src = i == k ? 0.0 : a_src;
      const double dst = i + t == k ? 0.0 : a_dst;
      sum += count * (src - dst) * (src - dst);
    }
  }
  return sum;
}

Edge canonical_edge(int s, int j) {
  const Mask source = full_mask(s);
  return {source, full_mask(s + j) & ~source};
}

}  // namespace

FeasibilityReport verify_symmetric_dual(const DualSolution& dual, int p, int stage_cap) {
  if (!dual.is_symmetric()) throw ParameterError("grouped verification requires a symmetric dual");
  const int n = dual.n();
  if (p < 1 || p > n) throw ParameterError("verification requires 1 <= p <= n");
  if (stage_cap < 0 || stage_cap > n) throw ParameterError("verification requires 0 <= stage_cap <= n");
  FeasibilityReport report;
  report.grouped = true;
  report.max_violation = -1.0;
  double edges = 0.0;
  for (int s = 0; s <= stage_cap; ++s) {
    for (int j = 1; j <= p && s + j <= n; ++j) {
      const double l = grouped_violation(dual, s, j);
      edges += binomial_real(n, s) * binomial_real(n - s, j);
      if (l > report.max_violation) {
        report.max_violation = l;
        report.worst_stage = s;
        report.worst_step = j;
        if (n <= kMaxGroundSet) report.worst_edge = canonical_edge(s, j);
      }
    }
  }
  report.max_violation = std::max(report.max_violation, 0.0);
  report.edges_checked = static_cast<std::size_t>(std::min(edges, 1.8e19));
  report.feasible = report.max_violation <= 1.0 + kDualTolerance;
  return report;
}

FeasibilityReport verify_dual_feasibility(const DualSolution& dual, const EdgeSet& edges,
                                          const CertificateStructure& structure, FeasibilityMode mode) {
  if (edges.n() != structure.n() || dual.n() != structure.n()) {
    throw ParameterError("dual, edge set and structure must share n");
  }
  const bool groupable = dual.is_symmetric() && structure.is_complete_uniform() &&
                         structure.k_bound() == dual.block_size();
  if (mode == FeasibilityMode::grouped && !groupable) {
    throw ParameterError("grouped verification requires a symmetric dual over a complete uniform structure");
  }
  const bool grouped = mode == FeasibilityMode::grouped || (mode == FeasibilityMode::automatic && groupable);

  FeasibilityReport report;
  report.grouped = grouped;
  report.max_violation = -1.0;
  std::map<std::pair<int, int>, double> by_type;
  for (const auto& e : edges.edges()) {
    double l = 0.0;
    if (grouped) {
      const auto key = std::make_pair(popcount(e.source), popcount(e.step));
      auto it = by_type.find(key);
      if (it == by_type.end()) it = by_type.emplace(key, grouped_violation(dual, key.first, key.second)).first;
      l = it->second;
    } else {
      l = edge_violation(dual, structure, e);
    }
    if (l > report.max_violation) {
      report.max_violation = l;
      report.worst_edge = e;
      report.worst_stage = popcount(e.source);
      report.worst_step = popcount(e.step);
    }
  }
  report.max_violation = std::max(report.max_violation, 0.0);
  report.edges_checked = edges.size();
  report.feasible = report.max_violation <= 1.0 + kDualTolerance;
  return report;
}

}  // namespace parqq
