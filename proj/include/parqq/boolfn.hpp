#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace parqq {

inline constexpr int kMaxExactArity = 16;

/// Total function {0,1}^n -> {0,1} stored as a truth table.
///
/// Inputs are little-endian integers: bit i of the index is variable x_{i+1}.
class BooleanFunction {
 public:
  BooleanFunction(int n, std::vector<std::uint8_t> table);

  static BooleanFunction or_fn(int n);
  static BooleanFunction and_fn(int n);
  static BooleanFunction parity(int n);
  static BooleanFunction constant(int n, bool value);
  static BooleanFunction random(int n, std::uint64_t seed);

  /// Hex string of 2^n bits, most significant digit first; the top bit of the
  /// first digit is the output on input 2^n - 1.
  static BooleanFunction from_hex(int n, std::string_view hex);

  /// Named built-in: "or:n", "and:n", "parity:n", "random:n:seed".
  static BooleanFunction from_name(std::string_view name);

  int arity() const { return n_; }
  std::size_t size() const { return table_.size(); }
  bool operator()(std::uint32_t x) const { return table_[x] != 0; }
  const std::vector<std::uint8_t>& table() const { return table_; }

  bool is_constant() const;
  BooleanFunction negated() const;
  std::string to_hex() const;

 private:
  int n_;
  std::vector<std::uint8_t> table_;
};

enum class CertSide { zero, one, both };

/// bs(f, x): the largest number of disjoint blocks whose flips each change f(x).
int block_sensitivity_at(const BooleanFunction& f, std::uint32_t x);

/// bs(f) = max_x bs(f, x); 0 for constant functions.
int block_sensitivity(const BooleanFunction& f);

/// C(f), C^(0)(f) or C^(1)(f). A side with no inputs contributes 0.
int certificate_complexity(const BooleanFunction& f, CertSide side);

/// Per-input certificate sizes C_x(f) for every x, computed over all subcubes.
std::vector<int> certificate_sizes(const BooleanFunction& f);

struct DparBound {
  int value = 0;
  int p = 1;
  int bs = 0;
  int c = 0;
  int c0 = 0;
  int c1 = 0;
  int value_f = 0;                    // ceil(C1(f)/p) * bs(f)
  std::optional<int> value_negation;  // ceil(C1(1-f)/p) * bs(f), when C(f) != C1(f)
  bool used_negation = false;
};

/// Deterministic p-parallel upper bound ceil(C1/p) * bs. When C(f) != C1(f)
/// the bound for 1-f is evaluated as well and the smaller one returned.
DparBound dpar_upper_bound(const BooleanFunction& f, int p);

/// sqrt(bs(f)/p); order of growth only, the hidden constant is not known.
double q_parallel_lower_bs(const BooleanFunction& f, int p);

struct PolynomialRelation {
  int p = 1;
  double c = 0.0;
  int bs = 0;
  bool precondition_holds = false;  // p <= bs^(1/c)
  double bs_root = 0.0;             // bs^(1/c)
  int dpar_upper = 0;               // ceil(C1/p) * bs
  double cubic_term = 0.0;          // bs^3 / p
  double observed_constant = 0.0;   // dpar_upper / cubic_term
  double q_lower = 0.0;             // sqrt(bs/p)
  double exponent = 0.0;            // 6 + 4/(c-1)
};

PolynomialRelation polynomial_relation_check(const BooleanFunction& f, int p, double c);

struct ComplexityReport {
  int bs = 0;
  int c = 0;
  int c0 = 0;
  int c1 = 0;
  int p = 1;
  int dpar_upper = 0;
  bool dpar_used_negation = false;
  double q_lower = 0.0;
};

ComplexityReport complexity_report(const BooleanFunction& f, int p);

}  // namespace parqq
