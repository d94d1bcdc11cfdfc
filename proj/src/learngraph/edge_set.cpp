#include "parqq/errors.hpp"
#include "parqq/learngraph.hpp"

namespace parqq {

std::uint64_t EdgeSet::count(int n, int p, int stage_cap) {
  std::uint64_t total = 0;
  for (int s = 0; s <= stage_cap && s <= n; ++s) {
    std::uint64_t steps = 0;
    for (int j = 1; j <= p && j <= n - s; ++j) steps += binomial(n - s, j);
    total += binomial(n, s) * steps;
  }
  return total;
}

EdgeSet EdgeSet::build(int n, int p, int stage_cap) {
  if (n < 1 || n > kMaxGroundSet) throw ParameterError("edge set requires 1 <= n <= 30");
  if (p < 1 || p > n) throw ParameterError("edge set requires 1 <= p <= n (p=" + std::to_string(p) + ")");
  if (stage_cap < 0 || stage_cap > n) throw ParameterError("edge set requires 0 <= stage_cap <= n");
  const auto expected = count(n, p, stage_cap);
  if (expected > kMaxEdges) {
    throw ResourceLimitError("edge set would hold " + std::to_string(expected) + " edges (limit 1e7)");
  }
  EdgeSet out;
  out.n_ = n;
  out.p_ = p;
  out.stage_cap_ = stage_cap;
  out.edges_.reserve(expected);
  const Mask all = full_mask(n);
  for (Mask s = 0; s <= all; ++s) {
    if (popcount(s) > stage_cap) continue;
    const Mask rest = all & ~s;
    // nonempty submasks of the complement with at most p elements
    for (Mask j = rest; j != 0; j = (j - 1) & rest) {
      if (popcount(j) <= p) out.edges_.push_back({s, j});
    }
    if (s == all) break;
  }
  return out;
}

}  // namespace parqq
