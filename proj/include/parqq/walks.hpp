#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <vector>

#include "parqq/certstruct.hpp"

namespace parqq {

/// Random walk on J(n, r): each step swaps one element in for one element out.
struct JohnsonWalk {
  int n = 0;
  int r = 0;
  bool lazy = true;  // (I + P) / 2

  void validate() const;
};

struct SpectrumEntry {
  double value = 0.0;
  double multiplicity = 0.0;
};

inline constexpr double kMaxExplicitStates = 5000.0;

/// Distinct eigenvalues in descending order with multiplicities, from the closed form.
std::vector<SpectrumEntry> johnson_spectrum(const JohnsonWalk& walk);

/// 1 - lambda_1; n / (r (n - r)) for the plain walk, half that when lazy.
double johnson_gap(const JohnsonWalk& walk);

/// Transition matrix over the r-subsets in lexicographic order. C(n, r) <= 5000.
Eigen::MatrixXd johnson_matrix(const JohnsonWalk& walk);

/// One value per eigenvalue, repeated by multiplicity, descending.
std::vector<double> expand_spectrum(std::span<const SpectrumEntry> spectrum);

struct ProductSpectrum {
  std::vector<SpectrumEntry> values;
  double second_largest = 0.0;  // second entry of the multiset, so 1 if 1 repeats
  double gap = 0.0;
};

/// Spectrum of the walk on p independent copies: all p-fold products of single-copy eigenvalues.
ProductSpectrum product_spectrum(const JohnsonWalk& walk, int p);

/// Eigenvalues of the p-fold tensor power of the transition matrix. C(n, r)^p <= 5000.
std::vector<double> explicit_product_spectrum(const JohnsonWalk& walk, int p);

struct MarkedFraction {
  double exact = 0.0;
  double bound = 0.0;         // (r / n)^k
  bool zero_input = false;    // no block certifies x
  double states = 0.0;        // C(n, r/p)^p
  int copy_size = 0;          // r / p
};

/// Probability, with each of p copies holding a uniform (r/p)-subset, that the union contains
/// a certifying block of x.
MarkedFraction marked_fraction(const InducedFunction& f, std::span<const int> x, int r, int p);

/// Same event for a single certifying k-set: sum_t (-1)^t C(k,t) (C(n-t,m)/C(n,m))^p.
double single_witness_fraction(int n, int k, int copy_size, int p);

/// S + (1/sqrt(eps)) (U / sqrt(delta) + C).
double mnrs_cost(double setup, double update, double check, double epsilon, double delta);

struct WalkProblem {
  enum class Kind { ed, ksum };
  Kind kind = Kind::ed;
  int k = 2;

  static WalkProblem ed() { return {Kind::ed, 2}; }
  static WalkProblem ksum(int k) { return {Kind::ksum, k}; }
  int witness_size() const { return k; }
};

struct WalkCost {
  int n = 0;
  int p = 0;
  int r = 0;
  double setup = 0.0;
  double update = 0.0;
  double check = 0.0;
  double epsilon = 0.0;  // (r/n)^k
  double delta = 0.0;    // p / r
  double total = 0.0;
  double epsilon_exact = 0.0;  // single witness, uniform copies of size r/p
  double delta_lazy = 0.0;     // gap of the lazy walk on one copy of J(n, r/p)
  double total_exact = 0.0;    // cost with the two exact ingredients
};

/// Cost of the p-parallel walk on J(n, r/p)^p. Requires p | r and p <= r <= n.
WalkCost walk_cost(const WalkProblem& problem, int n, int p, int r);

struct OptimizedWalk {
  WalkCost best;
  double closed_form_r = 0.0;  // n^{k/(k+1)} p^{1/(k+1)}
  double cost_ceiling = 0.0;   // 4 (n/p)^{k/(k+1)}
  bool r_within_factor_two = false;
  bool cost_within_ceiling = false;
};

/// Grid search over r in {p, 2p, ..., n}.
OptimizedWalk optimize_r(const WalkProblem& problem, int n, int p);

}  // namespace parqq
