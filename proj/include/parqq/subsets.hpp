#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace parqq {

/// Subset of [n] as a bitmask; bit i stands for element i+1.
using Mask = std::uint32_t;

inline constexpr int kMaxGroundSet = 30;

inline int popcount(Mask m) { return std::popcount(m); }
inline bool is_subset(Mask a, Mask b) { return (a & ~b) == 0; }
inline Mask full_mask(int n) { return n >= 32 ? ~Mask{0} : (Mask{1} << n) - 1; }

/// Exact binomial coefficient; 0 when k < 0 or k > n.
std::uint64_t binomial(int n, int k);
double binomial_real(int n, int k);

/// All k-subsets of [n] in lexicographic order of their sorted index lists.
std::vector<Mask> k_subsets(int n, int k);

/// Zero-based element indices of a mask, ascending.
std::vector<int> mask_elements(Mask m);

/// One-based, comma separated ("1,3"); empty string for the empty set.
std::string format_subset(Mask m);

/// Inverse of format_subset.
Mask parse_subset(const std::string& text);

}  // namespace parqq
