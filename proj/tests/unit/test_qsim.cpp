#include <doctest.h>

#include <cmath>
#include <random>

#include "../oracles.hpp"
#include "parqq/errors.hpp"
#include "parqq/qsim.hpp"

using namespace parqq;

TEST_CASE("Hadamard transform is unitary") {
  StateVector s(4);
  s[0] = 0.0;
  s[3] = 1.0;
  s.hadamard_all();
  CHECK(s.norm_squared() == doctest::Approx(1.0));
  CHECK(s.probability(0) == doctest::Approx(1.0 / 16));
  s.hadamard_all();
  CHECK(s.probability(3) == doctest::Approx(1.0));
}

TEST_CASE("query log limits") {
  ParallelQueryLog log(8, 2);
  log.record({{1, 2}, false});
  log.record({{0}, false});
  CHECK(log.total_rounds() == 2);
  CHECK(log.max_batch() == 2);
  CHECK_THROWS_AS(log.record({{1, 2, 3}, false}), PropertyFailure);
  CHECK_THROWS_AS(log.record({{9}, false}), PropertyFailure);
}

TEST_CASE("interrogation thresholds") {
  CHECK(interrogation_threshold(16, 0.1) == 13);
  CHECK(interrogation_threshold(4, 1e-9) == 4);
  CHECK(interrogation_closed_form(8, 6) == doctest::Approx(247.0 / 256.0));
  CHECK(interrogation_closed_form(5, 5) == 1.0);
}

TEST_CASE("interrogation matches the direct sum") {
  std::mt19937_64 rng(5);
  for (int n = 2; n <= 8; ++n) {
    std::vector<int> x(n);
    std::uint32_t bits = 0;
    for (int i = 0; i < n; ++i) {
      x[i] = static_cast<int>(rng() % 2);
      bits |= static_cast<std::uint32_t>(x[i]) << i;
    }
    const int t = interrogation_threshold(n, 0.2);
    const auto r = interrogate(x, 2, 0.2, std::nullopt, true);
    CHECK(r.threshold == t);
    CHECK(r.batched_checked);
    CHECK(r.success == doctest::Approx(interrogation_closed_form(n, t)).epsilon(1e-12));
    for (std::uint32_t z = 0; z < (1U << n); ++z) {
      CHECK(r.distribution[z] == doctest::Approx(oracle::interrogation_probability(bits, z, n, t)).epsilon(1e-10));
    }
  }
  const std::vector<int> x8 = {1, 0, 1, 1, 0, 0, 1, 0};
  const auto fixed = interrogate(x8, 1, 0.1, 6);
  CHECK(fixed.success == doctest::Approx(0.96484375).epsilon(1e-12));
  CHECK(fixed.rounds == 6);
  CHECK(interrogate(x8, 3, 0.1, 6).rounds == 2);
  CHECK(interrogate(x8, 6, 0.1, 6).rounds == 1);
  CHECK(interrogate(x8, 8, 0.1, 8).success == doctest::Approx(1.0));
}

TEST_CASE("rounds table") {
  const std::vector<int> ps = {1, 2, 4, 16};
  const auto rows = interrogation_rounds_table(16, ps, 0.1);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].rounds == 13);
  CHECK(rows[1].rounds == 7);
  CHECK(rows[2].rounds == 4);
  CHECK(rows[3].rounds == 1);
}

TEST_CASE("parallel Grover") {
  CHECK(grover_iterations(16) == 3);
  CHECK(grover_iterations(4) == 1);
  const auto g = grover_parallel(64, 4, 5);
  CHECK(g.block_size == 16);
  CHECK(g.iterations == 3);
  CHECK(g.rounds == 4);
  CHECK(g.success == doctest::Approx(0.9613189697265625).epsilon(1e-12));
  CHECK(g.candidate == 5);
  CHECK(g.log.max_batch() <= 4);
  for (int block : {4, 8, 16, 32}) {
    for (int t = 0; t <= 5; ++t) {
      const auto r = grover_parallel(block * 2, 2, 3, t);
      CHECK(r.success == doctest::Approx(oracle::grover_success(block, 2, t)).epsilon(1e-9));
      CHECK(r.success == doctest::Approx(r.closed_form).epsilon(1e-9));
    }
  }
  const auto trivial = grover_parallel(8, 8, 8);
  CHECK(trivial.success == doctest::Approx(1.0));
  CHECK_THROWS_AS(grover_parallel(10, 4, 1), ParameterError);
  CHECK_THROWS_AS(grover_parallel(8, 2, 9), ParameterError);
}
