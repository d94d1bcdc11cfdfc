#include "parqq/boolfn.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "parqq/errors.hpp"

namespace parqq {

namespace {

void require_enumerable(int n) {
  if (n > kMaxExactArity) {
    throw ResourceLimitError("exact enumeration requires n <= " + std::to_string(kMaxExactArity) +
                             " (got n=" + std::to_string(n) + ")");
  }
}

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

int parse_int(std::string_view s, const char* what) {
  try {
    std::size_t used = 0;
    int v = std::stoi(std::string(s), &used);
    if (used != s.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw ParameterError(std::string("malformed ") + what + ": '" + std::string(s) + "'");
  }
}

// Minimal sensitive blocks of f at x.
std::vector<std::uint32_t> minimal_sensitive_blocks(const BooleanFunction& f, std::uint32_t x) {
  const std::size_t size = f.size();
  const bool fx = f(x);
  // has_sensitive_subset[D]: some nonempty D' subset of D flips f at x
  std::vector<std::uint8_t> has_sub(size);
  for (std::uint32_t d = 0; d < size; ++d) has_sub[d] = f(x ^ d) != fx;
  std::vector<std::uint8_t> sensitive = has_sub;
  for (int i = 0; i < f.arity(); ++i) {
    const std::uint32_t bit = 1u << i;
    for (std::uint32_t d = 0; d < size; ++d) {
      if ((d & bit) != 0 && has_sub[d ^ bit]) has_sub[d] = 1;
    }
  }
  std::vector<std::uint32_t> blocks;
  for (std::uint32_t d = 1; d < size; ++d) {
    if (!sensitive[d]) continue;
    bool minimal = true;
    for (std::uint32_t rest = d; rest != 0; rest &= rest - 1) {
      const std::uint32_t bit = rest & (~rest + 1);
      if (has_sub[d ^ bit]) {
        minimal = false;
        break;
      }
    }
    if (minimal) blocks.push_back(d);
  }
  return blocks;
}

// Maximum number of pairwise disjoint blocks, by exact search over the
// available-element mask with memoization.
class BlockPacker {
 public:
  BlockPacker(int n, const std::vector<std::uint32_t>& blocks)
      : by_element_(static_cast<std::size_t>(n)), memo_(std::size_t{1} << n, -1) {
    for (auto b : blocks) {
      for (std::uint32_t rest = b; rest != 0; rest &= rest - 1) {
        by_element_[std::countr_zero(rest)].push_back(b);
      }
    }
  }

  int solve(std::uint32_t available) {
    if (available == 0) return 0;
    if (memo_[available] >= 0) return memo_[available];
    const int e = std::countr_zero(available);
    int best = solve(available & (available - 1));
    for (auto b : by_element_[e]) {
      if ((b & ~available) == 0) best = std::max(best, 1 + solve(available & ~b));
    }
    memo_[available] = static_cast<std::int8_t>(best);
    return best;
  }

 private:
  std::vector<std::vector<std::uint32_t>> by_element_;
  std::vector<std::int8_t> memo_;
};

int pack_blocks(int n, const std::vector<std::uint32_t>& blocks) {
  if (blocks.empty()) return 0;
  std::uint32_t support = 0;
  for (auto b : blocks) support |= b;
  BlockPacker packer(n, blocks);
  return packer.solve(support);
}

}  // namespace

BooleanFunction::BooleanFunction(int n, std::vector<std::uint8_t> table) : n_(n), table_(std::move(table)) {
  if (n < 1) throw ParameterError("BooleanFunction requires n >= 1");
  if (n > 30) throw ResourceLimitError("truth table arity above 30 is not representable");
  if (table_.size() != (std::size_t{1} << n)) {
    throw ParameterError("truth table length must be 2^n");
  }
  for (auto& v : table_) v = v != 0 ? 1 : 0;
}

BooleanFunction BooleanFunction::or_fn(int n) {
  std::vector<std::uint8_t> t(std::size_t{1} << n, 1);
  t[0] = 0;
  return {n, std::move(t)};
}

BooleanFunction BooleanFunction::and_fn(int n) {
  std::vector<std::uint8_t> t(std::size_t{1} << n, 0);
  t.back() = 1;
  return {n, std::move(t)};
}

BooleanFunction BooleanFunction::parity(int n) {
  std::vector<std::uint8_t> t(std::size_t{1} << n);
  for (std::size_t x = 0; x < t.size(); ++x) t[x] = std::popcount(x) & 1;
  return {n, std::move(t)};
}

BooleanFunction BooleanFunction::constant(int n, bool value) {
  return {n, std::vector<std::uint8_t>(std::size_t{1} << n, value ? 1 : 0)};
}

BooleanFunction BooleanFunction::random(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::uint8_t> t(std::size_t{1} << n);
  for (auto& v : t) v = static_cast<std::uint8_t>(rng() & 1);
  return {n, std::move(t)};
}

BooleanFunction BooleanFunction::from_hex(int n, std::string_view hex) {
  if (n < 1 || n > 30) throw ParameterError("hex truth table requires 1 <= n <= 30");
  const std::size_t bits = std::size_t{1} << n;
  const std::size_t digits = std::max<std::size_t>(1, bits / 4);
  if (hex.size() != digits) {
    throw ParameterError("hex truth table for n=" + std::to_string(n) + " needs " + std::to_string(digits) +
                         " digits (got " + std::to_string(hex.size()) + ")");
  }
  std::vector<std::uint8_t> t(bits);
  for (std::size_t d = 0; d < digits; ++d) {
    const int v = hex_value(hex[d]);
    if (v < 0) throw ParameterError("invalid hex digit in truth table");
    const std::size_t base = (digits - 1 - d) * 4;
    for (int b = 0; b < 4; ++b) {
      const std::size_t idx = base + b;
      if (idx < bits) {
        t[idx] = (v >> b) & 1;
      } else if ((v >> b) & 1) {
        throw ParameterError("hex truth table sets bits beyond 2^n");
      }
    }
  }
  return {n, std::move(t)};
}

BooleanFunction BooleanFunction::from_name(std::string_view name) {
  const auto parts = split(name, ':');
  const auto kind = parts.front();
  if ((kind == "or" || kind == "and" || kind == "parity") && parts.size() == 2) {
    const int n = parse_int(parts[1], "arity");
    if (n < 1) throw ParameterError("function arity must be >= 1");
    if (n > 24) throw ResourceLimitError("built-in truth tables are limited to n <= 24");
    if (kind == "or") return or_fn(n);
    if (kind == "and") return and_fn(n);
    return parity(n);
  }
  if (kind == "random" && parts.size() == 3) {
    const int n = parse_int(parts[1], "arity");
    if (n < 1) throw ParameterError("function arity must be >= 1");
    if (n > 24) throw ResourceLimitError("built-in truth tables are limited to n <= 24");
    const auto seed = std::stoull(std::string(parts[2]));
    return random(n, seed);
  }
  throw ParameterError("unknown function name '" + std::string(name) +
                       "' (expected or:n, and:n, parity:n or random:n:seed)");
}

bool BooleanFunction::is_constant() const {
  return std::all_of(table_.begin(), table_.end(), [&](auto v) { return v == table_.front(); });
}

BooleanFunction BooleanFunction::negated() const {
  auto t = table_;
  for (auto& v : t) v ^= 1;
  return {n_, std::move(t)};
}

std::string BooleanFunction::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  const std::size_t digits = std::max<std::size_t>(1, table_.size() / 4);
  std::string out(digits, '0');
  for (std::size_t d = 0; d < digits; ++d) {
    const std::size_t base = (digits - 1 - d) * 4;
    int v = 0;
    for (int b = 0; b < 4; ++b) {
      if (base + b < table_.size() && table_[base + b]) v |= 1 << b;
    }
    out[d] = kDigits[v];
  }
  return out;
}

int block_sensitivity_at(const BooleanFunction& f, std::uint32_t x) {
  require_enumerable(f.arity());
  if (x >= f.size()) throw ParameterError("input index out of range");
  return pack_blocks(f.arity(), minimal_sensitive_blocks(f, x));
}

std::vector<int> certificate_sizes(const BooleanFunction& f) {
  const int n = f.arity();
  require_enumerable(n);
  // Subcubes encoded in base 3: digit 0/1 fixes a variable, digit 2 leaves it free.
  std::vector<std::uint32_t> pow3(n + 1, 1);
  for (int i = 1; i <= n; ++i) pow3[i] = pow3[i - 1] * 3;
  const std::uint32_t cubes = pow3[n];

  // value: 0 or 1 when f is constant on the cube, 2 otherwise
  std::vector<std::uint8_t> value(cubes);
  std::vector<std::uint8_t> free_count(cubes);
  for (std::uint32_t c = 0; c < cubes; ++c) {
    std::uint32_t rest = c;
    int star = -1;
    std::uint32_t point = 0;
    int stars = 0;
    for (int i = 0; i < n; ++i) {
      const std::uint32_t d = rest % 3;
      rest /= 3;
      if (d == 2) {
        if (star < 0) star = i;
        ++stars;
      } else if (d == 1) {
        point |= 1u << i;
      }
    }
    free_count[c] = static_cast<std::uint8_t>(stars);
    if (star < 0) {
      value[c] = f(point) ? 1 : 0;
    } else {
      const auto lo = value[c - 2 * pow3[star]];
      const auto hi = value[c - pow3[star]];
      value[c] = lo == hi ? lo : 2;
    }
  }

  // widest[c]: largest free count of a constant cube containing c
  std::vector<std::int8_t> widest(cubes, -1);
  for (std::uint32_t c = cubes; c-- > 0;) {
    std::int8_t best = value[c] != 2 ? static_cast<std::int8_t>(free_count[c]) : -1;
    std::uint32_t rest = c;
    for (int i = 0; i < n; ++i) {
      const std::uint32_t d = rest % 3;
      rest /= 3;
      if (d != 2) best = std::max(best, widest[c + (2 - d) * pow3[i]]);
    }
    widest[c] = best;
  }

  std::vector<int> sizes(f.size());
  for (std::uint32_t x = 0; x < f.size(); ++x) {
    std::uint32_t c = 0;
    for (int i = 0; i < n; ++i) {
      if ((x >> i) & 1) c += pow3[i];
    }
    sizes[x] = n - widest[c];
  }
  return sizes;
}

int certificate_complexity(const BooleanFunction& f, CertSide side) {
  const auto sizes = certificate_sizes(f);
  int best = 0;
  for (std::uint32_t x = 0; x < f.size(); ++x) {
    const bool counts = side == CertSide::both || (side == CertSide::one) == f(x);
    if (counts) best = std::max(best, sizes[x]);
  }
  return best;
}

int block_sensitivity(const BooleanFunction& f) {
  require_enumerable(f.arity());
  if (f.is_constant()) return 0;
  // bs(f, x) <= C_x(f), so inputs are visited by decreasing certificate size
  // and the scan stops once no remaining input can beat the current best.
  const auto sizes = certificate_sizes(f);
  std::vector<std::uint32_t> order(f.size());
  std::iota(order.begin(), order.end(), 0u);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return sizes[a] > sizes[b]; });
  int best = 0;
  for (auto x : order) {
    if (sizes[x] <= best) break;
    best = std::max(best, pack_blocks(f.arity(), minimal_sensitive_blocks(f, x)));
  }
  return best;
}

DparBound dpar_upper_bound(const BooleanFunction& f, int p) {
  if (p < 1) throw ParameterError("dpar_upper_bound requires p >= 1");
  DparBound out;
  out.p = p;
  const auto sizes = certificate_sizes(f);
  for (std::uint32_t x = 0; x < f.size(); ++x) {
    int& side = f(x) ? out.c1 : out.c0;
    side = std::max(side, sizes[x]);
  }
  out.c = std::max(out.c0, out.c1);
  out.bs = block_sensitivity(f);
  const auto ceil_div = [](int a, int b) { return (a + b - 1) / b; };
  out.value_f = ceil_div(out.c1, p) * out.bs;
  out.value = out.value_f;
  if (out.c != out.c1) {
    // C1(1-f) = C0(f) and bs(1-f) = bs(f)
    out.value_negation = ceil_div(out.c0, p) * out.bs;
    if (*out.value_negation < out.value) {
      out.value = *out.value_negation;
      out.used_negation = true;
    }
  }
  return out;
}

double q_parallel_lower_bs(const BooleanFunction& f, int p) {
  if (p < 1) throw ParameterError("q_parallel_lower_bs requires p >= 1");
  return std::sqrt(static_cast<double>(block_sensitivity(f)) / p);
}

PolynomialRelation polynomial_relation_check(const BooleanFunction& f, int p, double c) {
  if (!(c > 1.0)) throw ParameterError("polynomial_relation_check requires c > 1");
  if (p < 1) throw ParameterError("polynomial_relation_check requires p >= 1");
  PolynomialRelation out;
  out.p = p;
  out.c = c;
  const auto bound = dpar_upper_bound(f, p);
  out.bs = bound.bs;
  out.bs_root = std::pow(static_cast<double>(out.bs), 1.0 / c);
  // p <= bs^(1/c)  <=>  p^c <= bs; compared with a relative slack for roots like 8^(1/3)
  out.precondition_holds = std::pow(static_cast<double>(p), c) <= out.bs * (1.0 + 1e-12);
  out.dpar_upper = bound.value;
  out.cubic_term = std::pow(static_cast<double>(out.bs), 3.0) / p;
  out.observed_constant = out.cubic_term > 0.0 ? out.dpar_upper / out.cubic_term : 0.0;
  out.q_lower = std::sqrt(static_cast<double>(out.bs) / p);
  out.exponent = 6.0 + 4.0 / (c - 1.0);
  return out;
}

ComplexityReport complexity_report(const BooleanFunction& f, int p) {
  const auto bound = dpar_upper_bound(f, p);
  ComplexityReport r;
  r.bs = bound.bs;
  r.c = bound.c;
  r.c0 = bound.c0;
  r.c1 = bound.c1;
  r.p = p;
  r.dpar_upper = bound.value;
  r.dpar_used_negation = bound.used_negation;
  r.q_lower = std::sqrt(static_cast<double>(bound.bs) / p);
  return r;
}

}  // namespace parqq
