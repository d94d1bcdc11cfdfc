#include "parqq/certstruct.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "parqq/errors.hpp"

namespace parqq {

namespace {

bool lex_less(Mask a, Mask b) {
  const auto ea = mask_elements(a);
  const auto eb = mask_elements(b);
  return std::lexicographical_compare(ea.begin(), ea.end(), eb.begin(), eb.end());
}

}  // namespace

CertificateStructure::CertificateStructure(int n, std::vector<Mask> blocks) : n_(n), blocks_(std::move(blocks)) {
  if (n < 1 || n > kMaxGroundSet) throw ParameterError("certificate structure requires 1 <= n <= 30");
  std::sort(blocks_.begin(), blocks_.end(), lex_less);
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    if (!is_subset(blocks_[i], full_mask(n))) throw ParameterError("block is not a subset of [n]");
    k_bound_ = std::max(k_bound_, popcount(blocks_[i]));
    for (std::size_t j = 0; j < i; ++j) {
      if (is_subset(blocks_[i], blocks_[j]) || is_subset(blocks_[j], blocks_[i])) {
        throw ParameterError("certificate blocks must be pairwise incomparable: {" + format_subset(blocks_[j]) +
                             "} vs {" + format_subset(blocks_[i]) + "}");
      }
    }
  }
  complete_uniform_ = !blocks_.empty() && blocks_.size() == binomial(n, k_bound_) &&
                      std::all_of(blocks_.begin(), blocks_.end(), [&](Mask m) { return popcount(m) == k_bound_; });
}

std::optional<std::size_t> CertificateStructure::index_of(Mask block) const {
  auto it = std::lower_bound(blocks_.begin(), blocks_.end(), block, lex_less);
  if (it == blocks_.end() || *it != block) return std::nullopt;
  return static_cast<std::size_t>(it - blocks_.begin());
}

CertificateStructure make_ed_structure(int n) {
  if (n < 2) throw ParameterError("element distinctness structure requires n >= 2");
  return {n, k_subsets(n, 2)};
}

CertificateStructure make_uniform_structure(int n, int k) {
  if (k < 1 || k > n) throw ParameterError("uniform structure requires 1 <= k <= n");
  return {n, k_subsets(n, k)};
}

OrthogonalArray::OrthogonalArray(int k, int q, std::string name, Membership contains, Completion complete)
    : k_(k), q_(q), name_(std::move(name)), contains_(std::move(contains)), complete_(std::move(complete)) {
  if (k < 1) throw ParameterError("orthogonal array length must be >= 1");
  if (q < 1) throw ParameterError("orthogonal array alphabet must be >= 1");
}

OrthogonalArray OrthogonalArray::equality(int k, int q) {
  return {k, q, "equality",
          [](std::span<const int> t) { return std::all_of(t.begin(), t.end(), [&](int v) { return v == t[0]; }); },
          [k](std::span<const int> t, int coord) -> std::optional<int> {
            // every other coordinate must already agree
            std::optional<int> v;
            for (int i = 0; i < k; ++i) {
              if (i == coord) continue;
              if (v && *v != t[i]) return std::nullopt;
              v = t[i];
            }
            return v;
          }};
}

OrthogonalArray OrthogonalArray::zero_sum(int k, int q) {
  return {k, q, "zero-sum",
          [q](std::span<const int> t) {
            long long s = 0;
            for (int v : t) s += v;
            return s % q == 0;
          },
          [k, q](std::span<const int> t, int coord) -> std::optional<int> {
            long long s = 0;
            for (int i = 0; i < k; ++i) {
              if (i != coord) s += t[i];
            }
            return static_cast<int>(((-s) % q + q) % q);
          }};
}

OrthogonalArray OrthogonalArray::from_tuples(int k, int q, std::set<std::vector<int>> tuples) {
  for (const auto& t : tuples) {
    if (static_cast<int>(t.size()) != k) throw ParameterError("tuple length differs from array length");
    for (int v : t) {
      if (v < 0 || v >= q) throw ParameterError("tuple entry outside the alphabet");
    }
  }
  auto shared = std::make_shared<const std::set<std::vector<int>>>(std::move(tuples));
  return {k, q, "explicit",
          [shared](std::span<const int> t) { return shared->count(std::vector<int>(t.begin(), t.end())) > 0; },
          [shared, q](std::span<const int> t, int coord) -> std::optional<int> {
            std::vector<int> probe(t.begin(), t.end());
            std::optional<int> found;
            for (int v = 0; v < q; ++v) {
              probe[coord] = v;
              if (shared->count(probe)) {
                if (found) return std::nullopt;
                found = v;
              }
            }
            return found;
          }};
}

bool verify_orthogonal_array(const OrthogonalArray& array) {
  const int k = array.length();
  const int q = array.alphabet();
  if (std::pow(static_cast<double>(q), k) > kMaxArrayEnumeration) {
    throw ResourceLimitError("orthogonal array verification requires q^k <= 1e7");
  }
  std::vector<int> tuple(k, 0);
  for (int coord = 0; coord < k; ++coord) {
    // odometer over all fixings of the other coordinates
    std::fill(tuple.begin(), tuple.end(), 0);
    while (true) {
      int completions = 0;
      int last = -1;
      for (int v = 0; v < q; ++v) {
        tuple[coord] = v;
        if (array.contains(tuple)) {
          ++completions;
          last = v;
        }
      }
      if (completions != 1) return false;
      tuple[coord] = 0;
      const auto rule = array.complete(tuple, coord);
      if (!rule || *rule != last) return false;

      int i = 0;
      for (; i < k; ++i) {
        if (i == coord) continue;
        if (++tuple[i] < q) break;
        tuple[i] = 0;
      }
      if (i == k) break;
    }
  }
  return true;
}

InducedFunction::InducedFunction(CertificateStructure structure, std::vector<OrthogonalArray> arrays, int q)
    : structure_(std::move(structure)), arrays_(std::move(arrays)), q_(q) {
  if (q < 2) throw ParameterError("induced function requires alphabet q >= 2");
  if (arrays_.size() != structure_.size()) throw ParameterError("need exactly one orthogonal array per block");
  for (std::size_t b = 0; b < arrays_.size(); ++b) {
    if (arrays_[b].length() != popcount(structure_.blocks()[b])) {
      throw ParameterError("orthogonal array length must equal its block size");
    }
    if (arrays_[b].alphabet() != q) throw ParameterError("orthogonal array alphabet differs from q");
  }
  precondition_met_ = static_cast<double>(q) >= 2.0 * static_cast<double>(structure_.size());
}

bool InducedFunction::block_certifies(std::size_t b, std::span<const int> x) const {
  int buf[kMaxGroundSet];
  int len = 0;
  for (int i : mask_elements(structure_.blocks()[b])) buf[len++] = x[i];
  return arrays_[b].contains(std::span<const int>(buf, len));
}

Evaluation InducedFunction::evaluate(std::span<const int> x) const {
  if (static_cast<int>(x.size()) != structure_.n()) throw ParameterError("input length differs from n");
  for (int v : x) {
    if (v < 0 || v >= q_) throw ParameterError("input entry " + std::to_string(v) + " outside alphabet [0, q)");
  }
  for (std::size_t b = 0; b < structure_.size(); ++b) {
    if (block_certifies(b, x)) return {true, structure_.blocks()[b]};
  }
  return {false, std::nullopt};
}

InducedFunction make_ed_function(int n, int q) {
  auto structure = make_ed_structure(n);
  std::vector<OrthogonalArray> arrays(structure.size(), OrthogonalArray::equality(2, q));
  return {std::move(structure), std::move(arrays), q};
}

InducedFunction make_ksum_structure(int n, int k, int q) {
  if (k < 2 || k > n) throw ParameterError("k-sum requires 2 <= k <= n");
  auto structure = make_uniform_structure(n, k);
  std::vector<OrthogonalArray> arrays(structure.size(), OrthogonalArray::zero_sum(k, q));
  return {std::move(structure), std::move(arrays), q};
}

}  // namespace parqq
