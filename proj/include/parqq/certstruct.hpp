#pragma once

#include <functional>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "parqq/subsets.hpp"

namespace parqq {

/// Family of pairwise incomparable subsets of [n], kept in lexicographic order.
class CertificateStructure {
 public:
  /// Validates incomparability and sorts the blocks.
  CertificateStructure(int n, std::vector<Mask> blocks);

  int n() const { return n_; }
  int k_bound() const { return k_bound_; }
  const std::vector<Mask>& blocks() const { return blocks_; }
  std::size_t size() const { return blocks_.size(); }

  /// Index of a block, or nullopt when it is not a member.
  std::optional<std::size_t> index_of(Mask block) const;

  /// True when the blocks are exactly all k-subsets of [n] for k = k_bound.
  bool is_complete_uniform() const { return complete_uniform_; }

 private:
  int n_;
  int k_bound_ = 0;
  bool complete_uniform_ = false;
  std::vector<Mask> blocks_;
};

/// All 2-subsets of [n].
CertificateStructure make_ed_structure(int n);

/// All k-subsets of [n].
CertificateStructure make_uniform_structure(int n, int k);

/// Set T in [q]^k given by a membership predicate and a completion rule.
class OrthogonalArray {
 public:
  using Membership = std::function<bool(std::span<const int>)>;
  /// Given a tuple and a coordinate, the value that coordinate must take for the
  /// tuple to be in T (other coordinates fixed), or nullopt if none/ambiguous.
  using Completion = std::function<std::optional<int>(std::span<const int>, int)>;

  OrthogonalArray(int k, int q, std::string name, Membership contains, Completion complete);

  /// {(v, ..., v)}: the element distinctness array.
  static OrthogonalArray equality(int k, int q);
  /// {(v_1..v_k) : sum v_i = 0 mod q}.
  static OrthogonalArray zero_sum(int k, int q);
  /// Explicit tuple list; completion found by search.
  static OrthogonalArray from_tuples(int k, int q, std::set<std::vector<int>> tuples);

  int length() const { return k_; }
  int alphabet() const { return q_; }
  const std::string& name() const { return name_; }
  bool contains(std::span<const int> tuple) const { return contains_(tuple); }
  std::optional<int> complete(std::span<const int> tuple, int coordinate) const {
    return complete_(tuple, coordinate);
  }

 private:
  int k_;
  int q_;
  std::string name_;
  Membership contains_;
  Completion complete_;
};

inline constexpr double kMaxArrayEnumeration = 1e7;

/// Exactly-one-completion check at every coordinate and every fixing of the
/// remaining k-1 coordinates. Also checks the completion rule agrees.
bool verify_orthogonal_array(const OrthogonalArray& array);

struct Evaluation {
  bool value = false;
  std::optional<Mask> witness;  // first block M (canonical order) with x_M in T_M
};

/// f(x) = 1 iff some block M has x_M in T_M. Alphabet is {0, ..., q-1}.
class InducedFunction {
 public:
  InducedFunction(CertificateStructure structure, std::vector<OrthogonalArray> arrays, int q);

  const CertificateStructure& structure() const { return structure_; }
  const std::vector<OrthogonalArray>& arrays() const { return arrays_; }
  int alphabet() const { return q_; }
  int arity() const { return structure_.n(); }

  /// q >= 2|C|, required by the lower-bound theorems; construction does not enforce it.
  bool theorem_precondition_met() const { return precondition_met_; }

  Evaluation evaluate(std::span<const int> x) const;
  bool operator()(std::span<const int> x) const { return evaluate(x).value; }

  /// Whether block index b certifies x, i.e. x restricted to the block is in its array.
  bool block_certifies(std::size_t b, std::span<const int> x) const;

 private:
  CertificateStructure structure_;
  std::vector<OrthogonalArray> arrays_;
  int q_;
  bool precondition_met_;
};

/// Element distinctness on [q]^n: all pairs with the equality array.
InducedFunction make_ed_function(int n, int q);

/// k-sum on [q]^n: all k-subsets with the zero-sum array.
InducedFunction make_ksum_structure(int n, int k, int q);

}  // namespace parqq
