#include <doctest.h>

#include "../oracles.hpp"
#include "parqq/boolfn.hpp"
#include "parqq/errors.hpp"

using namespace parqq;

TEST_CASE("block sensitivity of named functions") {
  CHECK(block_sensitivity(BooleanFunction::or_fn(4)) == 4);
  CHECK(block_sensitivity(BooleanFunction::constant(3, false)) == 0);
  CHECK(block_sensitivity(BooleanFunction::parity(5)) == 5);
  CHECK(block_sensitivity(BooleanFunction::and_fn(6)) == 6);
}

TEST_CASE("certificate complexity by side") {
  CHECK(certificate_complexity(BooleanFunction::or_fn(4), CertSide::one) == 1);
  CHECK(certificate_complexity(BooleanFunction::or_fn(4), CertSide::zero) == 4);
  CHECK(certificate_complexity(BooleanFunction::and_fn(4), CertSide::one) == 4);
  CHECK(certificate_complexity(BooleanFunction::constant(3, true), CertSide::one) == 0);
  CHECK(certificate_complexity(BooleanFunction::parity(4), CertSide::both) == 4);
}

TEST_CASE("measures agree with brute force on random functions") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const int n = 2 + static_cast<int>(seed % 5);
    const auto f = BooleanFunction::random(n, seed);
    CAPTURE(seed);
    CHECK(block_sensitivity(f) == oracle::block_sensitivity(f));
    CHECK(certificate_complexity(f, CertSide::both) == oracle::certificate_complexity(f));
    const auto sizes = certificate_sizes(f);
    for (std::uint32_t x = 0; x < f.size(); ++x) {
      CHECK(sizes[x] == oracle::certificate_size(f, x));
      CHECK(block_sensitivity_at(f, x) == oracle::block_sensitivity_at(f, x));
    }
  }
}

TEST_CASE("deterministic parallel upper bound") {
  CHECK(dpar_upper_bound(BooleanFunction::or_fn(4), 2).value == 4);
  const auto and6 = dpar_upper_bound(BooleanFunction::and_fn(6), 3);
  CHECK(and6.value == 12);
  CHECK(dpar_upper_bound(BooleanFunction::constant(4, true), 2).value == 0);
  CHECK(dpar_upper_bound(BooleanFunction::constant(4, false), 3).value == 0);
}

TEST_CASE("quantum lower bound argument") {
  CHECK(q_parallel_lower_bs(BooleanFunction::or_fn(9), 1) == doctest::Approx(3.0));
  CHECK(q_parallel_lower_bs(BooleanFunction::or_fn(8), 2) == doctest::Approx(2.0));
  CHECK(q_parallel_lower_bs(BooleanFunction::constant(3, false), 1) == 0.0);
}

TEST_CASE("polynomial relation precondition") {
  const auto r = polynomial_relation_check(BooleanFunction::or_fn(8), 2, 3.0);
  CHECK(r.precondition_holds);
  CHECK(r.exponent == doctest::Approx(8.0));
  CHECK(r.cubic_term == doctest::Approx(256.0));
  // AND of two ORs on 4 bits
  std::vector<std::uint8_t> table(16);
  for (std::uint32_t x = 0; x < 16; ++x) table[x] = ((x & 3U) != 0) && ((x & 12U) != 0);
  const BooleanFunction andor(4, table);
  CHECK(oracle::block_sensitivity(andor) == 2);
  CHECK_FALSE(polynomial_relation_check(andor, 4, 2.0).precondition_holds);
  CHECK(polynomial_relation_check(BooleanFunction::random(5, 3), 1, 2.0).precondition_holds);
  CHECK_THROWS_AS(polynomial_relation_check(BooleanFunction::or_fn(3), 1, 1.0), ParameterError);
}

TEST_CASE("truth table text forms") {
  CHECK(BooleanFunction::and_fn(4).to_hex() == "8000");
  CHECK(BooleanFunction::or_fn(2).to_hex() == "e");
  const auto f = BooleanFunction::random(6, 11);
  CHECK(BooleanFunction::from_hex(6, f.to_hex()).table() == f.table());
  CHECK(BooleanFunction::from_name("parity:3").table() == BooleanFunction::parity(3).table());
  CHECK(BooleanFunction::from_name("random:5:9").table() == BooleanFunction::random(5, 9).table());
  CHECK_THROWS_AS(BooleanFunction::from_name("xor:3"), ParameterError);
  CHECK_THROWS_AS(BooleanFunction::from_hex(4, "zz00"), ParameterError);
  const auto g = BooleanFunction::or_fn(3).negated();
  for (std::uint32_t x = 0; x < 8; ++x) CHECK(g(x) == (x == 0));
}
