#include "doctest.h"
#include "support.hpp"

using namespace deskcat;
using namespace testing_support;

namespace {

// Independent count of weakly increasing maps: filter all m^n functions.
std::size_t brute_isotone(std::size_t n, std::size_t m) {
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= m;
  std::size_t count = 0;
  for (std::size_t code = 0; code < total; ++code) {
    std::vector<std::size_t> f(n);
    std::size_t c = code;
    for (std::size_t i = 0; i < n; ++i) {
      f[i] = c % m;
      c /= m;
    }
    bool ok = true;
    for (std::size_t i = 1; i < n; ++i) ok = ok && f[i - 1] <= f[i];
    count += ok;
  }
  return n == 0 ? 1 : (m == 0 ? 0 : count);
}

ErrorCode code_of(const CategoryData& d) {
  try {
    validate_category(d);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected a validation error");
  return ErrorCode::ParseError;
}

}  // namespace

TEST_CASE("terminal category validates") {
  auto t = terminal_category();
  CHECK(t->object_count() == 1);
  CHECK(t->morphism_count() == 1);
  CHECK(same_category(*t, validate_category(t->data())));
}

TEST_CASE("missing identity composite is rejected") {
  CategoryData d = single_arrow()->data();
  std::erase_if(d.compose, [](const auto& row) { return row[0] == "f" && row[1] == "id0"; });
  CHECK(code_of(d) == ErrorCode::MissingComposite);
}

TEST_CASE("three-element monoid is associative by brute force") {
  auto c = cyclic(3);
  std::size_t triples = 0;
  for (std::size_t h = 0; h < 3; ++h) {
    for (std::size_t g = 0; g < 3; ++g) {
      for (std::size_t f = 0; f < 3; ++f) {
        CHECK(c->compose(h, c->compose(g, f)) == c->compose(c->compose(h, g), f));
        ++triples;
      }
    }
  }
  CHECK(triples == 27);
}

TEST_CASE("non-associative table names the triple") {
  // a∘b = a, b∘a = b on {1, a, b} with a∘a = b, b∘b = a is not associative.
  CategoryData d;
  d.objects = {"*"};
  d.morphisms = {{"1", "*", "*"}, {"a", "*", "*"}, {"b", "*", "*"}};
  d.identities["*"] = "1";
  const char* n[] = {"1", "a", "b"};
  const std::size_t table[3][3] = {{0, 1, 2}, {1, 2, 1}, {2, 2, 1}};
  for (int g = 0; g < 3; ++g) {
    for (int f = 0; f < 3; ++f) d.compose.push_back({n[g], n[f], n[table[g][f]]});
  }
  try {
    validate_category(d);
    FAIL("expected NonAssociative");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonAssociative);
    CHECK(std::string(e.what()).find("NonAssociative") != std::string::npos);
  }
}

TEST_CASE("identity law violation") {
  CategoryData m = idempotent_monoid()->data();
  for (auto& row : m.compose) {
    if (row[0] == "1" && row[1] == "a") row[2] = "1";
  }
  CHECK(code_of(m) == ErrorCode::IdentityLawViolation);
}

TEST_CASE("duplicate and unknown names") {
  CategoryData d = single_arrow()->data();
  d.objects.push_back("0");
  CHECK(code_of(d) == ErrorCode::DuplicateName);
  CategoryData u = single_arrow()->data();
  u.morphisms.push_back({"g", "0", "2"});
  CHECK(code_of(u) == ErrorCode::UnknownName);
}

TEST_CASE("ordinal windows") {
  auto w1 = ordinals(1);
  CHECK(w1->object_count() == 1);
  CHECK(w1->morphism_count() == 1);

  auto w3 = ordinals(3);
  CHECK(w3->object_count() == 3);
  CHECK(w3->hom(2, 2).size() == 3);
  CHECK(w3->hom(2, 2).size() == brute_isotone(2, 2));

  auto w4 = ordinals(4);
  CHECK(w4->hom(3, 3).size() == 10);
  CHECK(brute_isotone(3, 3) == 10);
  for (std::size_t a = 0; a < 4; ++a) {
    for (std::size_t b = 0; b < 4; ++b) CHECK(w4->hom(a, b).size() == brute_isotone(a, b));
  }
  CHECK(w3->find_morphism("2>2:01").has_value());
  CHECK(w3->is_identity(*w3->find_morphism("2>2:01")));
}

TEST_CASE("smaller windows are full subcategories of larger ones") {
  auto big = ordinals(5);
  auto small = ordinals(3);
  auto sub = full_subcategory(big, {0, 1, 2});
  CHECK(same_category(*sub.category, *small));
}

TEST_CASE("inconsistent oracle is reported") {
  ProceduralCategory p = ordinal_category();
  auto compose = p.compose;
  p.compose = [compose](std::size_t a, std::size_t b, std::size_t c, std::size_t g, std::size_t f) {
    if (a == 1 && b == 2 && c == 2) return std::size_t{0};
    return compose(a, b, c, g, f);
  };
  try {
    materialize(p, 3);
    FAIL("expected OracleInconsistent");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OracleInconsistent);
  }
}

TEST_CASE("comma of identities") {
  auto t = arrow_category(terminal_category());
  CHECK(t.category->object_count() == 1);
  CHECK(t.category->morphism_count() == 1);

  auto a = arrow_category(single_arrow());
  CHECK(a.category->object_count() == 3);
  // The arrow category of 0 → 1 is 0 → 1 → 2 with a composite.
  CHECK(a.category->morphism_count() == 6);
  CHECK(a.category->object_name(0) == "gen#0");
  CHECK(a.category->morphism_name(0) == "gen#3");
}

TEST_CASE("comma with a one-object subcategory not containing K") {
  // objects of A↓K are the morphisms A → K
  auto base = ordinals(4);
  auto sub = full_subcategory(base, {2});
  auto k = constant_functor(terminal_category(), base, 3);
  auto c = comma_category(sub.inclusion, k);
  CHECK(c.category->object_count() == base->hom(2, 3).size());
}

TEST_CASE("opposite") {
  auto t = terminal_category();
  CHECK(same_category(opposite(*t), *t));
  auto a = single_arrow();
  auto op = opposite(*a);
  const auto f = op.morphism_index("f");
  CHECK(op.object_name(op.dom(f)) == "1");
  CHECK(op.object_name(op.cod(f)) == "0");
  auto m = cyclic(3);
  CHECK(same_category(opposite(opposite(*m)), *m));
  auto w = ordinals(4);
  CHECK(same_category(opposite(opposite(*w)), *w));
}

TEST_CASE("functors are validated") {
  auto a = single_arrow();
  auto id = identity_functor(a);
  CHECK(same_functor(compose(id, id), id));
  CHECK_THROWS_AS(make_functor(a, a, {1, 0}, {1, 0, 2}), Error);
  auto c = constant_functor(a, terminal_category(), 0);
  CHECK(c.morphism_map == std::vector<std::size_t>{0, 0, 0});
}

TEST_CASE("natural transformations are validated") {
  auto a = single_arrow();
  auto id = identity_functor(a);
  auto nat = make_nat_transformation(id, id, {a->identity(0), a->identity(1)});
  CHECK(nat.components.size() == 2);
  auto c0 = constant_functor(a, a, 0);
  auto c1 = constant_functor(a, a, 1);
  // the constant transformation at f is natural
  CHECK_NOTHROW(make_nat_transformation(c0, c1, {2, 2}));
  CHECK_THROWS_AS(make_nat_transformation(c1, c0, {2, 2}), Error);
}

TEST_CASE("inverses in a group") {
  auto g = cyclic(4);
  for (std::size_t m = 0; m < 4; ++m) {
    auto inv = g->inverse(m);
    REQUIRE(inv);
    CHECK(g->is_identity(g->compose(*inv, m)));
  }
  auto w = ordinals(3);
  CHECK_FALSE(w->is_isomorphism(*w->find_morphism("2>2:00")));
}
