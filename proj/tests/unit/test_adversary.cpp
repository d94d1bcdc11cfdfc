#include <doctest.h>

#include <cmath>
#include <random>

#include "../oracles.hpp"
#include "parqq/adversary.hpp"
#include "parqq/errors.hpp"
#include "parqq/linalg.hpp"

using namespace parqq;

TEST_CASE("delta mask") {
  const std::vector<Input> rows = {{0, 0}, {1, 1}};
  const std::vector<Input> cols = {{1, 1}, {0, 0}, {1, 0}};
  const auto d1 = delta_mask(rows, cols, 0b01);
  CHECK(d1(0, 0) == 1.0);
  CHECK(d1(0, 1) == 0.0);
  CHECK(d1(1, 2) == 0.0);
  CHECK(delta_mask(rows, cols, 0).isZero());
  CHECK(delta_mask(rows, rows, 0b11).diagonal().isZero());
}

TEST_CASE("spectral norms agree with the eigenvalue oracle") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int t = 0; t < 20; ++t) {
    Eigen::MatrixXd a(3 + t % 5, 2 + t % 7);
    for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = u(rng);
    CHECK(spectral_norm(a) == doctest::Approx(oracle::spectral_norm(a)).epsilon(1e-9));
    CHECK(spectral_norm_power(a) == doctest::Approx(oracle::spectral_norm(a)).epsilon(1e-7));
  }
}

TEST_CASE("OR adversary ratios") {
  CHECK(adversary_ratio(or_adversary(4), 2).value == doctest::Approx(std::sqrt(2.0)));
  CHECK(adversary_ratio(or_adversary(9), 1).value == doctest::Approx(3.0));
  AdversaryInstance single{Eigen::MatrixXd::Ones(1, 1), {{0}}, {{1}}, 1, 2};
  CHECK(adversary_ratio(single, 1).value == doctest::Approx(1.0));
  AdversaryInstance blind{Eigen::MatrixXd::Ones(1, 1), {{0, 0}}, {{0, 1}}, 2, 2};
  CHECK(adversary_ratio(blind, 1, StepRange::exact).value == doctest::Approx(1.0));
  AdversaryInstance same{Eigen::MatrixXd::Ones(1, 1), {{0}}, {{0}}, 1, 2};
  CHECK(adversary_ratio(same, 1).unbounded);
}

TEST_CASE("exact and at-most step ranges differ by at most two") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int t = 0; t < 10; ++t) {
    AdversaryInstance a;
    a.n = 4;
    a.q = 2;
    for (int i = 0; i < 5; ++i) {
      Input r(4), c(4);
      for (auto& v : r) v = static_cast<int>(rng() % 2);
      for (auto& v : c) v = static_cast<int>(rng() % 2);
      a.rows.push_back(r);
      a.cols.push_back(c);
    }
    a.gamma = Eigen::MatrixXd(5, 5);
    for (Eigen::Index i = 0; i < 25; ++i) a.gamma.data()[i] = u(rng);
    const auto exact = adversary_ratio(a, 2, StepRange::exact);
    const auto most = adversary_ratio(a, 2, StepRange::at_most);
    if (exact.unbounded) continue;
    CHECK(most.value <= exact.value + 1e-12);
    CHECK(exact.value <= 2.0 * most.value + 1e-9);
  }
}

TEST_CASE("masked norm at most doubles under a smaller step") {
  const auto r = check_fact1(300, {}, 42);
  CHECK(r.trials == 300);
  CHECK(r.max_ratio <= 2.0 + 1e-9);
  CHECK(r.max_ratio > 0.0);
}

TEST_CASE("block string queries") {
  CHECK(block_bijection_query(std::vector<int>{5, 2, 7}, 0b101, 2) == Input{5, 7});
  CHECK(block_bijection_query(std::vector<int>{5, 2, 7}, 0, 2).empty());
  CHECK_THROWS_AS(block_bijection_query(std::vector<int>{5, 2, 7}, 0b111, 2), ParameterError);
  const auto f = make_ed_function(5, 20);
  std::mt19937_64 rng(8);
  for (int t = 0; t < 2000; ++t) {
    Input x(5);
    for (auto& v : x) v = static_cast<int>(rng() % 20);
    BlockString lifted(x, 2);
    CHECK(evaluate_lifted(f, lifted) == f(x));
    CHECK(lifted.queries() == 3);
  }
}

TEST_CASE("projector family algebra") {
  for (int q = 2; q <= 6; ++q) {
    for (int n = 1; n <= 3; ++n) {
      const ProjectorFamily family(q, n);
      const auto dim = family.dimension();
      Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(dim, dim);
      for (Mask s = 0; s <= full_mask(n); ++s) {
        const auto es = family.projector(s);
        sum += es;
        for (Mask t = 0; t <= full_mask(n); ++t) {
          const Eigen::MatrixXd prod = es * family.projector(t);
          const Eigen::MatrixXd expected = s == t ? es : Eigen::MatrixXd::Zero(dim, dim);
          CHECK((prod - expected).cwiseAbs().maxCoeff() <= 1e-12);
        }
      }
      CHECK((sum - Eigen::MatrixXd::Identity(dim, dim)).cwiseAbs().maxCoeff() <= 1e-12);
    }
  }
  CHECK_THROWS_AS(ProjectorFamily(7, 4), ResourceLimitError);
}

TEST_CASE("input indexing") {
  CHECK(input_index(std::vector<int>{1, 0, 2}, 3) == 11);
  CHECK(index_input(11, 3, 3) == Input{1, 0, 2});
}

TEST_CASE("gamma tilde construction") {
  const auto f = make_ed_function(2, 4);
  const auto zero = build_gamma_tilde(DualSolution::symmetric(2, 2, {0.0, 0.0, 0.0}), f);
  CHECK(zero.full.isZero());
  const auto single = build_gamma_tilde(DualSolution::symmetric(2, 2, {1.0, 0.0, 0.0}), f);
  CHECK(spectral_norm(single.full) == doctest::Approx(1.0));
  CHECK((single.full - ProjectorFamily(4, 2).projector(0)).cwiseAbs().maxCoeff() <= 1e-12);
  // rows: (x, {1,2}) with x_1 = x_2; columns: all-distinct y
  CHECK(single.restricted.rows() == 4);
  CHECK(single.restricted.cols() == 12);
}

TEST_CASE("phi_J on the ED construction") {
  const auto f = make_ed_function(3, 6);
  const auto gt = build_gamma_tilde(ed_dual_certificate(3, 1), f);
  for (Mask j = 1; j <= 7; ++j) {
    const auto r = phi_J(gt, j);
    CAPTURE(j);
    CHECK(r.masked_equality);
    CHECK(r.norm_match);
    CHECK(r.factor_two);
  }
  // support of alpha below stage 3, so J = [n] is never inside S within the support except S = [n]
  const auto all = phi_J(gt, 0b111);
  CHECK(all.closed_form_norm > 0.0);
  CHECK(phi_closed_form_norm(gt, 0b001) <= 1.0);
}
