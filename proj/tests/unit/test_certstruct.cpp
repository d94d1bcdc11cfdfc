#include <doctest.h>

#include "parqq/certstruct.hpp"
#include "parqq/errors.hpp"

using namespace parqq;

TEST_CASE("structures") {
  CHECK(make_ed_structure(4).size() == 6);
  CHECK(make_ed_structure(2).size() == 1);
  CHECK(format_subset(make_ed_structure(2).blocks()[0]) == "1,2");
  CHECK(make_ed_structure(8).size() == 28);
  CHECK(make_uniform_structure(5, 3).is_complete_uniform());
  CHECK(make_uniform_structure(5, 3).k_bound() == 3);
  CHECK_THROWS_AS(CertificateStructure(3, {0b011, 0b111}), ParameterError);
  const CertificateStructure mixed(4, {0b0011, 0b1100, 0b0110});
  CHECK_FALSE(mixed.is_complete_uniform());
  CHECK(mixed.index_of(0b0110).has_value());
  CHECK_FALSE(mixed.index_of(0b1001).has_value());
}

TEST_CASE("orthogonal arrays") {
  CHECK(verify_orthogonal_array(OrthogonalArray::zero_sum(2, 5)));
  CHECK(verify_orthogonal_array(OrthogonalArray::equality(2, 7)));
  CHECK(verify_orthogonal_array(OrthogonalArray::zero_sum(3, 4)));
  CHECK_FALSE(verify_orthogonal_array(OrthogonalArray::from_tuples(2, 2, {{0, 0}, {0, 1}})));
  CHECK(verify_orthogonal_array(OrthogonalArray::from_tuples(2, 2, {{0, 0}, {1, 1}})));
}

TEST_CASE("induced functions") {
  const auto ksum2 = make_ksum_structure(4, 2, 12);
  CHECK(ksum2(std::vector<int>{3, 9, 1, 5}));
  CHECK_FALSE(ksum2(std::vector<int>{1, 2, 3, 4}));
  CHECK(make_ksum_structure(3, 3, 2)(std::vector<int>{1, 1, 0}));

  const auto ed = make_ed_function(4, 12);
  const auto hit = ed.evaluate(std::vector<int>{1, 3, 1, 2});
  CHECK(hit.value);
  REQUIRE(hit.witness.has_value());
  CHECK(format_subset(*hit.witness) == "1,3");
  CHECK_FALSE(ed(std::vector<int>{1, 2, 3, 4}));
  CHECK(ed.theorem_precondition_met());
  CHECK_FALSE(make_ed_function(4, 5).theorem_precondition_met());

  const auto sum3 = make_ksum_structure(4, 3, 10);
  const auto e = sum3.evaluate(std::vector<int>{2, 3, 5, 9});
  CHECK(e.value);
  CHECK(format_subset(*e.witness) == "1,2,3");
  CHECK_THROWS_AS(ed(std::vector<int>{1, 2, 3}), ParameterError);
  CHECK_THROWS_AS(ed(std::vector<int>{1, 2, 3, 12}), ParameterError);
}

TEST_CASE("ED evaluation matches pairwise comparison") {
  const auto ed = make_ed_function(5, 4);
  std::vector<int> x(5, 0);
  for (int code = 0; code < 1024; ++code) {
    int c = code;
    for (auto& v : x) {
      v = c % 4;
      c /= 4;
    }
    bool dup = false;
    for (int i = 0; i < 5; ++i) {
      for (int j = i + 1; j < 5; ++j) dup = dup || x[i] == x[j];
    }
    CHECK(ed(x) == dup);
  }
}
