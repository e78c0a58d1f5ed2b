#include "doctest.h"
#include "deskcat/ordsimp.hpp"
#include "deskcat/oracles.hpp"
#include "support.hpp"

using namespace deskcat;

TEST_CASE("ordinal windows") {
  auto w = ordinal_window(4);
  CHECK(w.category->object_count() == 5);
  for (std::size_t a = 0; a <= 4; ++a) {
    for (std::size_t b = 0; b <= 4; ++b) CHECK(w.category->hom(a, b).size() == oracle::isotone_count(a, b));
  }
  CHECK(ordinal_window(4).category == w.category);
}

TEST_CASE("simplices") {
  auto w = ordinal_window(4);
  CHECK(census(delta(0, w)) == std::vector<std::size_t>{1, 0, 0, 0});
  CHECK(census(delta(1, w)) == std::vector<std::size_t>{2, 1, 0, 0});
  CHECK(census(delta(2, w)) == std::vector<std::size_t>{3, 3, 1, 0});
  CHECK(delta(1, w)->size(2) == 3);
  CHECK(census(empty_presheaf(w.category)) == std::vector<std::size_t>{0, 0, 0, 0});
  for (std::size_t a = 0; a < 4; ++a) CHECK(census(delta(a, w))[a] == 1);
  CHECK_THROWS_AS(delta(4, w), Error);
}

TEST_CASE("symmetric 1-simplex") {
  CHECK_THROWS_AS(delta_1s(ordinal_window(2)), Error);
  for (std::size_t bound = 3; bound <= 5; ++bound) {
    auto w = ordinal_window(bound);
    auto s = delta_1s(w);
    auto c = census(s.object);
    CHECK(c[0] == 2);
    CHECK(c[1] == 2);
    CHECK(c == oracle::glued_simplex_census(3, {0, 2}, {0, 0}, bound - 1));
    CHECK(s.object->size(1) == 2);
    CHECK(is_natural(s.j));
  }
}

TEST_CASE("symmetrization") {
  auto w = ordinal_window(3);
  auto point = symmetrize(delta(0, w), w, 3);
  CHECK(point.certificate.stages() == 0);
  CHECK(point.injective[0]);

  auto edge = symmetrize(delta(1, w), w, 3);
  CHECK(edge.certificate.status == FactorizationStatus::BudgetExhausted);
  REQUIRE(edge.censuses.size() == 4);
  for (std::size_t i = 1; i < edge.censuses.size(); ++i) {
    CHECK(edge.censuses[i][1] > edge.censuses[i - 1][1]);
    for (std::size_t d = 0; d < edge.censuses[i].size(); ++d) CHECK(edge.censuses[i][d] >= edge.censuses[i - 1][d]);
    CHECK_FALSE(edge.injective[i]);
  }
  CHECK(edge.certificate.triples[0].size() == 1);
  CHECK(verify_factorization(edge.certificate).ok());
}
