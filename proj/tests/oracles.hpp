#pragma once

// Brute-force reference implementations. Exponential on purpose; desk scale only.

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "parqq/boolfn.hpp"
#include "parqq/subsets.hpp"

namespace oracle {

inline double binom(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

inline double binomial_prefix(int n, int t) {
  double s = 0.0;
  for (int i = 0; i <= t; ++i) s += binom(n, i);
  return s;
}

// Smallest S such that every z agreeing with x on S has f(z) = f(x).
inline int certificate_size(const parqq::BooleanFunction& f, std::uint32_t x) {
  const int n = f.arity();
  int best = n;
  for (std::uint32_t s = 0; s < (1U << n); ++s) {
    if (std::popcount(s) >= best) continue;
    bool constant = true;
    for (std::uint32_t z = 0; z < (1U << n) && constant; ++z) {
      if (((z ^ x) & s) == 0 && f(z) != f(x)) constant = false;
    }
    if (constant) best = std::popcount(s);
  }
  return best;
}

inline int certificate_complexity(const parqq::BooleanFunction& f) {
  int c = 0;
  for (std::uint32_t x = 0; x < (1U << f.arity()); ++x) c = std::max(c, oracle::certificate_size(f, x));
  return c;
}

// Max number of disjoint sensitive blocks, trying every block inside the available set.
inline int block_sensitivity_at(const parqq::BooleanFunction& f, std::uint32_t x) {
  const int n = f.arity();
  std::function<int(std::uint32_t)> go = [&](std::uint32_t available) {
    int best = 0;
    for (std::uint32_t b = available; b != 0; b = (b - 1) & available) {
      if (f(x ^ b) != f(x)) best = std::max(best, 1 + go(available & ~b));
    }
    return best;
  };
  return go((1U << n) - 1);
}

inline int block_sensitivity(const parqq::BooleanFunction& f) {
  int bs = 0;
  for (std::uint32_t x = 0; x < (1U << f.arity()); ++x) bs = std::max(bs, oracle::block_sensitivity_at(f, x));
  return bs;
}

// Spectral norm from the eigenvalues of A^T A.
inline double spectral_norm(const Eigen::MatrixXd& a) {
  if (a.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a.transpose() * a);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

// Plain transition matrix of J(n, r) built from index vectors.
inline Eigen::MatrixXd johnson_walk(int n, int r, bool lazy) {
  std::vector<std::vector<int>> sets;
  std::vector<int> pick(r);
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == r) {
      sets.push_back(pick);
      return;
    }
    for (int i = start; i < n; ++i) {
      pick[depth] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
  const auto m = static_cast<Eigen::Index>(sets.size());
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index a = 0; a < m; ++a) {
    for (Eigen::Index b = 0; b < m; ++b) {
      int common = 0;
      for (int u : sets[a]) common += static_cast<int>(std::count(sets[b].begin(), sets[b].end(), u));
      if (common == r - 1) p(a, b) = 1.0 / (r * (n - r));
    }
  }
  if (lazy) p = 0.5 * (Eigen::MatrixXd::Identity(m, m) + p);
  return p;
}

inline std::vector<double> eigenvalues_desc(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  std::vector<double> v(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(v.rbegin(), v.rend());
  return v;
}

// Probability over all p-tuples of m-subsets that the union covers some witness.
inline double marked_fraction(int n, int m, int p, const std::vector<std::uint32_t>& witnesses) {
  const auto subsets = parqq::k_subsets(n, m);
  std::vector<std::size_t> idx(static_cast<std::size_t>(p), 0);
  double hits = 0.0, total = 0.0;
  while (true) {
    std::uint32_t u = 0;
    for (auto i : idx) u |= subsets[i];
    total += 1.0;
    for (auto w : witnesses) {
      if ((w & ~u) == 0) {
        hits += 1.0;
        break;
      }
    }
    int pos = 0;
    while (pos < p && ++idx[pos] == subsets.size()) idx[pos++] = 0;
    if (pos == p) break;
  }
  return hits / total;
}

// Grover on N items with explicit reflection matrices.
inline double grover_success(int block, int marked, int iterations) {
  Eigen::VectorXd s = Eigen::VectorXd::Constant(block, 1.0 / std::sqrt(static_cast<double>(block)));
  Eigen::MatrixXd diffuser = 2.0 * s * s.transpose() - Eigen::MatrixXd::Identity(block, block);
  Eigen::MatrixXd oracle = Eigen::MatrixXd::Identity(block, block);
  oracle(marked, marked) = -1.0;
  Eigen::VectorXd state = s;
  for (int t = 0; t < iterations; ++t) state = diffuser * (oracle * state);
  return state(marked) * state(marked);
}

// Amplitude on z after phase and Hadamards, by direct summation over y.
inline double interrogation_probability(std::uint32_t x, std::uint32_t z, int n, int threshold) {
  const double b = binomial_prefix(n, threshold);
  double sum = 0.0;
  for (std::uint32_t y = 0; y < (1U << n); ++y) {
    if (std::popcount(y) > threshold) continue;
    sum += (std::popcount((x ^ z) & y) % 2 == 0) ? 1.0 : -1.0;
  }
  const double amp = sum / std::sqrt(b * std::ldexp(1.0, n));
  return amp * amp;
}

// Symmetric dual value: zero once the block is inside S, else the stage value.
inline double symmetric_alpha(const std::vector<double>& stages, std::uint32_t s, std::uint32_t block) {
  if ((block & ~s) == 0) return 0.0;
  const auto j = static_cast<std::size_t>(std::popcount(s));
  return j < stages.size() ? stages[j] : 0.0;
}

// Max over edges (S, J), 1 <= |J| <= p, of sum_M (alpha_S(M) - alpha_{S u J}(M))^2 over all k-subsets M.
inline double max_edge_violation(int n, int k, int p, const std::vector<double>& stages) {
  const auto blocks = parqq::k_subsets(n, k);
  double worst = 0.0;
  for (std::uint32_t s = 0; s < (1U << n); ++s) {
    const std::uint32_t free = ((1U << n) - 1) & ~s;
    for (std::uint32_t j = free; j != 0; j = (j - 1) & free) {
      if (std::popcount(j) > p) continue;
      double sum = 0.0;
      for (auto m : blocks) {
        const double d = symmetric_alpha(stages, s, m) - symmetric_alpha(stages, s | j, m);
        sum += d * d;
      }
      worst = std::max(worst, sum);
    }
  }
  return worst;
}

}  // namespace oracle
