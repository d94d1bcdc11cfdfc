#include "parqq/walks.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "parqq/errors.hpp"
#include "parqq/linalg.hpp"

namespace parqq {

namespace {

constexpr double kMergeTolerance = 1e-12;

std::vector<SpectrumEntry> merge_sorted(std::vector<SpectrumEntry> entries) {
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.value > b.value; });
  std::vector<SpectrumEntry> out;
  for (const auto& e : entries) {
    if (!out.empty() && std::abs(out.back().value - e.value) <= kMergeTolerance) {
      out.back().multiplicity += e.multiplicity;
    } else {
      out.push_back(e);
    }
  }
  return out;
}

}  // namespace

void JohnsonWalk::validate() const {
  if (n < 2) throw ParameterError("Johnson walk requires n >= 2");
  if (r < 1 || r > n - 1) throw ParameterError("Johnson walk requires 1 <= r <= n-1");
}

std::vector<SpectrumEntry> johnson_spectrum(const JohnsonWalk& walk) {
  walk.validate();
  const int n = walk.n;
  const int r = walk.r;
  const double degree = static_cast<double>(r) * (n - r);
  std::vector<SpectrumEntry> out;
  for (int i = 0; i <= std::min(r, n - r); ++i) {
    double lambda = (static_cast<double>(r - i) * (n - r - i) - i) / degree;
    if (walk.lazy) lambda = (1.0 + lambda) / 2.0;
    const double mult = binomial_real(n, i) - (i > 0 ? binomial_real(n, i - 1) : 0.0);
    out.push_back({lambda, mult});
  }
  return merge_sorted(std::move(out));
}

double johnson_gap(const JohnsonWalk& walk) {
  walk.validate();
  const double gap = static_cast<double>(walk.n) / (static_cast<double>(walk.r) * (walk.n - walk.r));
  return walk.lazy ? gap / 2.0 : gap;
}

Eigen::MatrixXd johnson_matrix(const JohnsonWalk& walk) {
  walk.validate();
  if (binomial_real(walk.n, walk.r) > kMaxExplicitStates) throw ResourceLimitError("explicit Johnson matrix requires C(n,r) <= 5000");
  const auto vertices = k_subsets(walk.n, walk.r);
  const auto size = static_cast<Eigen::Index>(vertices.size());
  const double degree = static_cast<double>(walk.r) * (walk.n - walk.r);
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(size, size);
  for (Eigen::Index a = 0; a < size; ++a) {
    for (Eigen::Index b = 0; b < size; ++b) {
      if (popcount(vertices[a] & vertices[b]) == walk.r - 1) p(a, b) = 1.0 / degree;
    }
  }
  if (walk.lazy) p = (Eigen::MatrixXd::Identity(size, size) + p) / 2.0;
  return p;
}

std::vector<double> expand_spectrum(std::span<const SpectrumEntry> spectrum) {
  std::vector<double> out;
  for (const auto& e : spectrum) out.insert(out.end(), static_cast<std::size_t>(std::llround(e.multiplicity)), e.value);
  return out;
}

ProductSpectrum product_spectrum(const JohnsonWalk& walk, int p) {
  if (p < 1) throw ParameterError("product spectrum requires p >= 1");
  const auto single = johnson_spectrum(walk);
  std::vector<SpectrumEntry> current = {{1.0, 1.0}};
  for (int copy = 0; copy < p; ++copy) {
    std::vector<SpectrumEntry> next;
    for (const auto& a : current) {
      for (const auto& b : single) next.push_back({a.value * b.value, a.multiplicity * b.multiplicity});
    }
    current = merge_sorted(std::move(next));
  }
  ProductSpectrum out;
  out.values = std::move(current);
  if (out.values.front().multiplicity > 1.5) {
    out.second_largest = out.values.front().value;
  } else if (out.values.size() > 1) {
    out.second_largest = out.values[1].value;
  } else {
    out.second_largest = out.values.front().value;
  }
  out.gap = 1.0 - out.second_largest;
  return out;
}

std::vector<double> explicit_product_spectrum(const JohnsonWalk& walk, int p) {
  if (p < 1) throw ParameterError("product spectrum requires p >= 1");
  if (std::pow(binomial_real(walk.n, walk.r), p) > kMaxExplicitStates) {
    throw ResourceLimitError("explicit product spectrum requires C(n,r)^p <= 5000");
  }
  const Eigen::MatrixXd single = johnson_matrix(walk);
  Eigen::MatrixXd product = single;
  for (int copy = 1; copy < p; ++copy) product = kronecker(product, single);
  return symmetric_eigenvalues(product);
}

double single_witness_fraction(int n, int k, int copy_size, int p) {
  if (k < 1 || k > n) throw ParameterError("witness size must be in [1, n]");
  if (copy_size < 0 || copy_size > n) throw ParameterError("copy size must be in [0, n]");
  const double total = binomial_real(n, copy_size);
  double sum = 0.0;
  for (int t = 0; t <= k; ++t) {
    const double miss = binomial_real(n - t, copy_size) / total;
    sum += (t % 2 == 0 ? 1.0 : -1.0) * binomial_real(k, t) * std::pow(miss, p);
  }
  return std::clamp(sum, 0.0, 1.0);
}

MarkedFraction marked_fraction(const InducedFunction& f, std::span<const int> x, int r, int p) {
  const int n = f.arity();
  if (static_cast<int>(x.size()) != n) throw ParameterError("input length must equal n");
  if (p < 1) throw ParameterError("marked fraction requires p >= 1");
  if (r < p || r % p != 0) throw ParameterError("marked fraction requires p | r and r >= p");
  const int m = r / p;
  if (m > n) throw ParameterError("marked fraction requires r/p <= n");
  if (n > 20) throw ResourceLimitError("marked fraction enumeration is limited to n <= 20");
  const auto subsets = k_subsets(n, m);
  if (static_cast<double>(subsets.size()) * std::ldexp(1.0, n) * p > 1e9) {
    throw ResourceLimitError("marked fraction enumeration exceeds 1e9 steps");
  }

  MarkedFraction out;
  out.copy_size = m;
  out.states = std::pow(static_cast<double>(subsets.size()), p);
  const int k = f.structure().k_bound();
  out.bound = std::pow(static_cast<double>(r) / n, k);

  std::vector<Mask> witnesses;
  for (std::size_t b = 0; b < f.structure().size(); ++b) {
    if (f.block_certifies(b, x)) witnesses.push_back(f.structure().blocks()[b]);
  }
  if (witnesses.empty()) {
    out.zero_input = true;
    return out;
  }

  // Distribution of the union of the copies' subsets.
  const std::size_t states = std::size_t{1} << n;
  std::vector<double> dist(states, 0.0), next(states);
  dist[0] = 1.0;
  const double weight = 1.0 / static_cast<double>(subsets.size());
  for (int copy = 0; copy < p; ++copy) {
    std::fill(next.begin(), next.end(), 0.0);
    for (Mask u = 0; u < states; ++u) {
      if (dist[u] == 0.0) continue;
      for (Mask s : subsets) next[u | s] += dist[u] * weight;
    }
    dist.swap(next);
  }
  for (Mask u = 0; u < states; ++u) {
    if (dist[u] == 0.0) continue;
    if (std::any_of(witnesses.begin(), witnesses.end(), [u](Mask w) { return is_subset(w, u); })) out.exact += dist[u];
  }
  return out;
}

double mnrs_cost(double setup, double update, double check, double epsilon, double delta) {
  if (!(epsilon > 0.0) || epsilon > 1.0) throw ParameterError("MNRS cost requires 0 < eps <= 1");
  if (!(delta > 0.0) || delta > 1.0) throw ParameterError("MNRS cost requires 0 < delta <= 1");
  if (setup < 0.0 || update < 0.0 || check < 0.0) throw ParameterError("MNRS cost components must be nonnegative");
  return setup + (update / std::sqrt(delta) + check) / std::sqrt(epsilon);
}

WalkCost walk_cost(const WalkProblem& problem, int n, int p, int r) {
  const int k = problem.witness_size();
  if (k < 2 || k > n) throw ParameterError("walk problem requires 2 <= k <= n");
  if (p < 1 || p > n) throw ParameterError("walk cost requires 1 <= p <= n");
  if (r < p || r > n || r % p != 0) throw ParameterError("walk cost requires p | r and p <= r <= n");
  WalkCost c;
  c.n = n;
  c.p = p;
  c.r = r;
  c.setup = static_cast<double>(r) / p;
  c.update = 2.0;
  c.check = 0.0;
  c.epsilon = std::pow(static_cast<double>(r) / n, k);
  c.delta = static_cast<double>(p) / r;
  c.total = mnrs_cost(c.setup, c.update, c.check, c.epsilon, c.delta);

  const int m = r / p;
  c.epsilon_exact = single_witness_fraction(n, k, m, p);
  c.delta_lazy = m < n ? std::min(1.0, johnson_gap({n, m, true})) : 1.0;
  if (c.epsilon_exact > 0.0) {
    c.total_exact = mnrs_cost(c.setup, c.update, c.check, c.epsilon_exact, c.delta_lazy);
  } else {
    c.total_exact = std::numeric_limits<double>::infinity();
  }
  return c;
}

OptimizedWalk optimize_r(const WalkProblem& problem, int n, int p) {
  if (p < 1 || p > n) throw ParameterError("optimize_r requires 1 <= p <= n");
  const int k = problem.witness_size();
  OptimizedWalk out;
  bool found = false;
  for (int r = p; r <= n; r += p) {
    const auto c = walk_cost(problem, n, p, r);
    if (!found || c.total < out.best.total) {
      out.best = c;
      found = true;
    }
  }
  if (!found) throw ParameterError("optimize_r grid is empty");
  const double exponent = static_cast<double>(k) / (k + 1);
  out.closed_form_r = std::pow(static_cast<double>(n), exponent) * std::pow(static_cast<double>(p), 1.0 / (k + 1));
  out.cost_ceiling = 4.0 * std::pow(static_cast<double>(n) / p, exponent);
  const double ratio = out.best.r / out.closed_form_r;
  out.r_within_factor_two = ratio >= 0.5 && ratio <= 2.0;
  out.cost_within_ceiling = out.best.total <= out.cost_ceiling;
  return out;
}

}  // namespace parqq
