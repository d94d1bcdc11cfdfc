#include <doctest.h>

#include <cmath>

#include "../oracles.hpp"
#include "parqq/certstruct.hpp"
#include "parqq/errors.hpp"
#include "parqq/walks.hpp"

using namespace parqq;

TEST_CASE("Johnson spectra match explicit matrices") {
  for (int n = 2; n <= 8; ++n) {
    for (int r = 1; r <= n - 1; ++r) {
      for (bool lazy : {false, true}) {
        const JohnsonWalk w{n, r, lazy};
        const auto closed = expand_spectrum(johnson_spectrum(w));
        const auto brute = oracle::eigenvalues_desc(oracle::johnson_walk(n, r, lazy));
        REQUIRE(closed.size() == brute.size());
        for (std::size_t i = 0; i < closed.size(); ++i) CHECK(closed[i] == doctest::Approx(brute[i]).epsilon(1e-9));
        CHECK((johnson_matrix(w) - oracle::johnson_walk(n, r, lazy)).cwiseAbs().maxCoeff() == 0.0);
      }
    }
  }
}

TEST_CASE("Johnson examples") {
  const auto s = johnson_spectrum({4, 2, false});
  REQUIRE(s.size() == 3);
  CHECK(s[0].value == doctest::Approx(1.0));
  CHECK(s[1].value == doctest::Approx(0.0));
  CHECK(s[2].value == doctest::Approx(-0.5));
  CHECK(s[1].multiplicity == 3.0);
  CHECK(johnson_gap({4, 2, false}) == doctest::Approx(1.0));
  CHECK(johnson_gap({6, 3, false}) == doctest::Approx(6.0 / 9.0));
  CHECK(johnson_gap({7, 1, false}) == doctest::Approx(7.0 / 6.0));
  CHECK_THROWS_AS(johnson_spectrum({4, 4, false}), ParameterError);
}

TEST_CASE("product spectra") {
  const auto lazy = product_spectrum({4, 2, true}, 3);
  CHECK(lazy.second_largest == doctest::Approx(0.5));
  CHECK(lazy.gap == doctest::Approx(johnson_gap({4, 2, true})));
  const auto plain = product_spectrum({4, 2, false}, 2);
  CHECK(plain.second_largest == doctest::Approx(0.25));
  CHECK(plain.gap == doctest::Approx(0.75));
  const auto one = product_spectrum({6, 3, false}, 1);
  CHECK(expand_spectrum(one.values) == expand_spectrum(johnson_spectrum({6, 3, false})));
  for (int p = 1; p <= 3; ++p) {
    const auto closed = expand_spectrum(product_spectrum({4, 2, false}, p).values);
    const auto numeric = explicit_product_spectrum({4, 2, false}, p);
    REQUIRE(closed.size() == numeric.size());
    for (std::size_t i = 0; i < closed.size(); ++i) CHECK(closed[i] == doctest::Approx(numeric[i]).epsilon(1e-9));
  }
}

TEST_CASE("marked fraction") {
  const auto ed6 = make_ed_function(6, 30);
  const std::vector<int> one_pair = {0, 1, 2, 0, 3, 4};
  const auto m = marked_fraction(ed6, one_pair, 3, 1);
  CHECK(m.exact == doctest::Approx(0.2));
  CHECK(m.bound == doctest::Approx(0.25));
  const auto ed4 = make_ed_function(4, 12);
  const std::vector<int> x4 = {7, 7, 1, 2};
  CHECK(marked_fraction(ed4, x4, 4, 2).exact == doctest::Approx(19.0 / 36.0));
  CHECK(marked_fraction(ed4, x4, 4, 2).exact == doctest::Approx(oracle::marked_fraction(4, 2, 2, {0b0011})));
  const auto zero = marked_fraction(ed4, std::vector<int>{1, 2, 3, 4}, 2, 1);
  CHECK(zero.zero_input);
  CHECK(zero.exact == 0.0);
  CHECK_THROWS_AS(marked_fraction(ed4, x4, 3, 2), ParameterError);
}

TEST_CASE("single witness closed form matches enumeration") {
  for (int n = 3; n <= 7; ++n) {
    for (int k = 2; k <= 3; ++k) {
      for (int m = 1; m <= n; ++m) {
        for (int p = 1; p <= 2; ++p) {
          CHECK(single_witness_fraction(n, k, m, p) ==
                doctest::Approx(oracle::marked_fraction(n, m, p, {(1U << k) - 1})).epsilon(1e-12));
        }
      }
    }
  }
}

TEST_CASE("MNRS cost") {
  CHECK(mnrs_cost(0, 0, 1, 1, 1) == 1.0);
  CHECK_THROWS_AS(mnrs_cost(0, 0, 1, 0, 1), ParameterError);
  CHECK_THROWS_AS(mnrs_cost(0, 0, 1, 1, -1), ParameterError);
  const auto c = walk_cost(WalkProblem::ed(), 64, 1, 16);
  CHECK(c.total == doctest::Approx(16.0 + 2.0 * 64.0 / std::sqrt(16.0)));
  const auto k = walk_cost(WalkProblem::ksum(3), 81, 3, 27);
  CHECK(k.total == doctest::Approx(9.0 + 2.0 * std::pow(81.0, 1.5) / (27.0 * std::sqrt(3.0))));
}

TEST_CASE("optimize r") {
  const auto a = optimize_r(WalkProblem::ed(), 64, 1);
  CHECK(a.closed_form_r == doctest::Approx(16.0));
  CHECK(a.best.r >= 8);
  CHECK(a.best.r <= 32);
  CHECK(optimize_r(WalkProblem::ed(), 64, 8).closed_form_r == doctest::Approx(32.0));
  CHECK(optimize_r(WalkProblem::ksum(3), 81, 1).closed_form_r == doctest::Approx(27.0));
  for (int n : {16, 64, 256, 1024}) {
    for (int p : {1, 2, 4, 8}) {
      const auto o = optimize_r(WalkProblem::ed(), n, p);
      CHECK(o.best.r % p == 0);
      CHECK(o.r_within_factor_two);
      CHECK(o.cost_within_ceiling);
    }
  }
}
