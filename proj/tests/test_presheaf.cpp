#include "doctest.h"
#include "deskcat/lifting.hpp"
#include "deskcat/oracles.hpp"
#include "support.hpp"

using namespace deskcat;
using namespace testing_support;

namespace {

FormalColimitPresheaf formal(std::size_t window, CategoryData shape, std::vector<std::string> objects,
                             std::vector<std::string> morphisms) {
  FormalColimitPresheaf p;
  p.base = ordinal_category();
  p.window = window;
  p.shape = std::make_shared<const FinCategory>(validate_category(shape));
  p.object_labels = std::move(objects);
  p.morphism_labels = std::move(morphisms);
  return p;
}

CategoryData point_shape() {
  CategoryData d;
  d.objects = {"p"};
  d.morphisms = {{"idp", "p", "p"}};
  d.identities = {{"p", "idp"}};
  d.compose = {{"idp", "idp", "idp"}};
  return d;
}

// p ⇉ q with arrows s, t
CategoryData parallel_shape() {
  CategoryData d;
  d.objects = {"p", "q"};
  d.morphisms = {{"idp", "p", "p"}, {"idq", "q", "q"}, {"s", "p", "q"}, {"t", "p", "q"}};
  d.identities = {{"p", "idp"}, {"q", "idq"}};
  d.compose = {{"idp", "idp", "idp"}, {"idq", "idq", "idq"}, {"s", "idp", "s"},
               {"t", "idp", "t"},     {"idq", "s", "s"},     {"idq", "t", "t"}};
  return d;
}

bool same_shape(const Presheaf& x, const Presheaf& y) {
  if (x.elements.size() != y.elements.size()) return false;
  for (std::size_t a = 0; a < x.elements.size(); ++a) {
    if (x.size(a) != y.size(a)) return false;
  }
  return x.actions == y.actions;
}

}  // namespace

TEST_CASE("presheaf validation") {
  auto a = single_arrow();
  // X(1) = {x}, X(0) = {p, q}, X(f): x ↦ q
  auto x = make_presheaf(a, {{"p", "q"}, {"x"}}, {{0, 1}, {0}, {1}});
  CHECK(x->total_size() == 3);
  CHECK_THROWS_AS(make_presheaf(a, {{"p", "p"}, {"x"}}, {{0, 1}, {0}, {1}}), Error);
  CHECK_THROWS_AS(make_presheaf(a, {{"p", "q"}, {"x"}}, {{1, 0}, {0}, {1}}), Error);
  CHECK_THROWS_AS(make_presheaf(a, {{"p", "q"}, {"x"}}, {{0, 1}, {0}, {2}}), Error);

  // monoid {1, a}: X(a) must be idempotent
  auto m = idempotent_monoid();
  CHECK_NOTHROW(make_presheaf(m, {{"u", "v"}}, {{0, 1}, {0, 0}}));
  CHECK_THROWS_AS(make_presheaf(m, {{"u", "v"}}, {{0, 1}, {1, 0}}), Error);
}

TEST_CASE("maps and their algebra") {
  auto s2 = set_of(2);
  auto s3 = set_of(3);
  auto f = set_map(s2, s3, {0, 2});
  auto g = set_map(s3, s2, {0, 0, 1});
  CHECK(compose(g, f).components == std::vector<std::vector<std::size_t>>{{0, 1}});
  CHECK(is_isomorphism(compose(g, f)));
  CHECK_FALSE(is_isomorphism(f));
  CHECK_THROWS_AS(compose(f, f), Error);
  CHECK_THROWS_AS(set_map(s2, s3, {0, 3}), Error);
  auto inv = inverse(compose(g, f));
  REQUIRE(inv);
  CHECK(same_map(compose(*inv, compose(g, f)), identity_map(s2)));
}

TEST_CASE("yoneda") {
  auto t = yoneda(terminal_category(), 0);
  CHECK(t->elements == std::vector<std::vector<std::string>>{{"id"}});

  auto w = ordinals(4);
  auto d1 = yoneda(w, 2);
  CHECK(d1->size(1) == 2);
  CHECK(d1->size(1) == oracle::isotone_count(1, 2));
  CHECK_NOTHROW(check_presheaf(*d1));

  auto a = single_arrow();
  auto y1 = yoneda(a, 1);
  CHECK(y1->size(0) == 1);
  CHECK(y1->size(1) == 1);

  // y(m) is natural and y(id) = id
  for (std::size_t m = 0; m < w->morphism_count(); ++m) {
    auto from = yoneda(w, w->dom(m));
    auto to = yoneda(w, w->cod(m));
    CHECK_NOTHROW(check_map(yoneda_map(w, m, from, to)));
  }
}

TEST_CASE("evaluate a formal colimit") {
  auto point = formal(4, point_shape(), {"2"}, {"2>2:01"});
  auto ev = evaluate_formal(point, "1");
  CHECK(ev.elements.size() == ordinals(4)->hom(1, 2).size());
  CHECK(ev.elements[0] == "p:1>2:0");

  CategoryData two = point_shape();
  two.objects.push_back("q");
  two.morphisms.push_back({"idq", "q", "q"});
  two.identities["q"] = "idq";
  two.compose.push_back({"idq", "idq", "idq"});
  auto disc = formal(4, two, {"2", "2"}, {"2>2:01", "2>2:01"});
  CHECK(evaluate_formal(disc, "3").elements.size() == 2 * ordinals(4)->hom(3, 2).size());

  auto glued = formal(4, parallel_shape(), {"2", "3"}, {"2>2:01", "3>3:012", "2>3:02", "2>3:00"});
  CHECK(evaluate_formal(glued, "1").elements.size() == 2);

  CHECK_THROWS_AS(evaluate_formal(point, "4"), Error);
  auto outside = formal(3, point_shape(), {"3"}, {"3>3:012"});
  try {
    evaluate_formal(outside, "1");
    FAIL("expected WindowTooSmall");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::WindowTooSmall);
  }
}

TEST_CASE("tabulate") {
  for (std::size_t a = 0; a < 4; ++a) {
    std::string id = std::to_string(a) + ">" + std::to_string(a) + ":";
    for (std::size_t k = 0; k < a; ++k) id += std::to_string(k);
    auto rep = formal(4, point_shape(), {std::to_string(a)}, {id});
    auto x = tabulate(rep, 4);
    CHECK_NOTHROW(check_presheaf(*x));
    CHECK(same_shape(*x, *yoneda(ordinals(4), a)));
  }
  FormalColimitPresheaf none;
  none.base = ordinal_category();
  none.window = 3;
  none.shape = std::make_shared<const FinCategory>();
  auto e = tabulate(none, 3);
  CHECK(e->total_size() == 0);
  CHECK_THROWS_AS(tabulate(none, 4), Error);
}

TEST_CASE("tabulated formal colimits are functorial") {
  auto glued = formal(5, parallel_shape(), {"2", "3"}, {"2>2:01", "3>3:012", "2>3:02", "2>3:00"});
  auto x = tabulate(glued, 5);
  CHECK_NOTHROW(check_presheaf(*x));
  CHECK(x->size(1) == 2);
}

TEST_CASE("canonical functor E") {
  auto w = ordinals(4);
  auto e = canonical_functor_E(w, 2, {1, 2});
  CHECK(e.presheaf->size(1) >= 1);
  CHECK(e.presheaf->size(1) == w->hom(2, 2).size());
  CHECK_NOTHROW(check_presheaf(*e.presheaf));

  auto t = canonical_functor_E(terminal_presheaf(w), {0, 1, 2, 3});
  for (std::size_t a = 0; a < 4; ++a) CHECK(t.presheaf->size(a) == 1);

  // E(Δ₂) at 2: natural transformations y(2) → y(3), which Yoneda counts as hom(2, 3)
  auto d2 = yoneda(w, 3);
  auto k = canonical_functor_E(d2, {1, 2});
  CHECK(k.presheaf->size(1) == d2->size(2));
  CHECK(k.presheaf->size(1) == oracle::isotone_count(2, 3));
  CHECK_NOTHROW(check_presheaf(*k.presheaf));
  // agrees with the base-object version
  auto base_version = canonical_functor_E(w, 3, {1, 2});
  CHECK(base_version.presheaf->actions == k.presheaf->actions);
}
