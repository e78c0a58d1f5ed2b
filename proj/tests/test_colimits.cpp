#include <random>

#include "doctest.h"
#include "deskcat/colimits.hpp"
#include "deskcat/lifting.hpp"
#include "deskcat/oracles.hpp"
#include "support.hpp"

using namespace deskcat;
using namespace testing_support;

namespace {

bool isomorphic(const PresheafPtr& x, const PresheafPtr& y) {
  for (std::size_t a = 0; a < x->elements.size(); ++a) {
    if (x->size(a) != y->size(a)) return false;
  }
  for (const auto& m : enumerate_maps(x, y)) {
    if (is_isomorphism(m)) return true;
  }
  return false;
}

bool pointwise_surjective(const PresheafMap& m) {
  for (std::size_t a = 0; a < m.components.size(); ++a) {
    std::vector<char> hit(m.target->size(a), 0);
    for (std::size_t v : m.components[a]) hit[v] = 1;
    if (std::find(hit.begin(), hit.end(), 0) != hit.end()) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("coproducts") {
  auto base = terminal_category();
  auto empty = coproduct(base, {});
  CHECK(empty.object->total_size() == 0);

  auto x = set_of(3);
  auto with_empty = coproduct(base, {x, empty_presheaf(base)});
  CHECK(isomorphic(with_empty.object, x));
  CHECK(is_isomorphism(with_empty.injections[0]));

  auto w = ordinals(3);
  auto y1 = yoneda(w, 1);
  auto two = coproduct(w, {y1, y1});
  CHECK(two.object->size(1) == 2 * w->hom(1, 1).size());
  CHECK_NOTHROW(check_presheaf(*two.object));
  for (const auto& inj : two.injections) CHECK_NOTHROW(check_map(inj));
  CHECK(two.object->elements[1][0] == "0:1>1:0");

  auto tagged = coproduct(w, {y1, y1}, {"a/", "b/"});
  CHECK(tagged.object->elements[1][1] == "b/1>1:0");
}

TEST_CASE("copairing is the universal map") {
  auto base = terminal_category();
  auto s1 = set_of(1);
  auto s2 = set_of(2);
  auto sum = coproduct(base, {s1, s2});
  auto t = set_of(2);
  auto m = copair(sum, t, {set_map(s1, t, {1}), set_map(s2, t, {0, 0})});
  CHECK(m.components[0] == std::vector<std::size_t>{1, 0, 0});
  CHECK(same_map(compose(m, sum.injections[0]), set_map(s1, t, {1})));
}

TEST_CASE("coequalizers") {
  auto w = ordinals(4);
  auto d2 = yoneda(w, 3);
  auto id = identity_map(d2);
  auto same = coequalizer(id, id);
  CHECK(is_isomorphism(same.projection));

  auto d1 = yoneda(w, 2);
  auto f = yoneda_map(w, w->morphism_index("2>3:02"), d1, d2);
  auto g = yoneda_map(w, w->morphism_index("2>3:00"), d1, d2);
  auto q = coequalizer(f, g);
  CHECK(q.object->size(1) == 2);
  CHECK_NOTHROW(check_presheaf(*q.object));
  CHECK_NOTHROW(check_map(q.projection));
  CHECK(pointwise_surjective(q.projection));
  // the glued class is named by its least member
  CHECK(q.object->elements[1][0] == "1>3:0");
  CHECK(q.object->find(2, "2>3:00").has_value());
  CHECK_FALSE(q.object->find(2, "2>3:02").has_value());

  auto one = set_of(1);
  auto two = set_of(2);
  auto glued = coequalizer(set_map(one, two, {0}), set_map(one, two, {1}));
  CHECK(glued.object->size(0) == 1);
}

TEST_CASE("quotients saturate under actions") {
  // Over 0 → 1: X(1) = {x, y}, X(0) = {p, q, r}, X(f): x ↦ p, y ↦ q.
  auto a = single_arrow();
  auto x = make_presheaf(a, {{"p", "q", "r"}, {"x", "y"}}, {{0, 1, 2}, {0, 1}, {0, 1}});
  Relation rel(2);
  rel[1].push_back({0, 1});
  auto q = quotient(x, rel);
  CHECK(q.object->size(1) == 1);
  CHECK(q.object->size(0) == 2);
  CHECK_NOTHROW(check_map(q.projection));
}

TEST_CASE("pushouts") {
  auto base = terminal_category();
  auto b = set_of(2);
  auto idp = pushout(identity_map(b), identity_map(b));
  CHECK(idp.object->size(0) == 2);
  CHECK(is_isomorphism(idp.left));
  CHECK(same_map(compose(idp.left, identity_map(b)), compose(idp.right, identity_map(b))));

  auto c = set_of(3);
  auto e = pushout(from_empty(b), from_empty(c));
  CHECK(e.object->size(0) == 5);

  auto point = set_presheaf(std::vector<std::string>{"•"});
  auto ab = set_presheaf(std::vector<std::string>{"a", "b"});
  auto inc = set_map(point, ab, {0});
  auto po = pushout(inc, inc);
  CHECK(po.object->size(0) == 3);
  CHECK(po.object->elements[0] == std::vector<std::string>{"0:a", "0:b", "1:b"});
}

TEST_CASE("pushouts are symmetric up to isomorphism") {
  std::mt19937_64 rng(7);
  auto w = ordinals(3);
  std::vector<PresheafPtr> reps = {yoneda(w, 0), yoneda(w, 1), yoneda(w, 2)};
  for (int trial = 0; trial < 20; ++trial) {
    auto a = reps[rng() % 2];
    auto b = reps[1 + rng() % 2];
    auto c = reps[1 + rng() % 2];
    auto fs = enumerate_maps(a, b);
    auto gs = enumerate_maps(a, c);
    if (fs.empty() || gs.empty()) continue;
    auto f = fs[rng() % fs.size()];
    auto g = gs[rng() % gs.size()];
    auto p = pushout(f, g);
    auto q = pushout(g, f);
    CHECK(same_map(compose(p.left, f), compose(p.right, g)));
    CHECK(isomorphic(p.object, q.object));
  }
}

TEST_CASE("finite colimits agree with the special cases") {
  auto w = ordinals(4);
  auto d1 = yoneda(w, 2);
  auto d2 = yoneda(w, 3);
  auto f = yoneda_map(w, w->morphism_index("2>3:02"), d1, d2);
  auto g = yoneda_map(w, w->morphism_index("2>3:00"), d1, d2);

  Diagram span{w, {d1, d2, d2}, {{0, 1, f}, {0, 2, g}}};
  auto cs = finite_colimit(span);
  CHECK(commutes(cs));
  CHECK(isomorphic(cs.apex, pushout(f, g).object));

  Diagram single{w, {d2}, {}};
  auto one = finite_colimit(single);
  CHECK(is_isomorphism(one.legs[0]));

  Diagram pair{w, {d1, d2}, {{0, 1, f}, {0, 1, g}}};
  auto cp = finite_colimit(pair);
  CHECK(commutes(cp));
  auto coeq = coequalizer(f, g);
  for (std::size_t a = 0; a < 4; ++a) CHECK(cp.apex->size(a) == coeq.object->size(a));
  CHECK(cp.apex->actions == coeq.object->actions);
}

TEST_CASE("chain colimits") {
  auto x = set_of(2);
  auto zero = chain_colimit(x, {});
  CHECK(same_presheaf(zero.apex, x));
  CHECK(is_isomorphism(zero.legs[0]));

  auto constant = chain_colimit(x, {identity_map(x), identity_map(x)});
  for (const auto& leg : constant.legs) CHECK(same_map(leg, identity_map(x)));

  auto s1 = set_of(1);
  auto s2 = set_of(2);
  auto s3 = set_of(3);
  auto grow = chain_colimit(s1, {set_map(s1, s2, {0}), set_map(s2, s3, {0, 1})});
  CHECK(commutes(grow));
  CHECK(grow.apex->size(0) == 3);
  CHECK(grow.legs[0].components[0] == std::vector<std::size_t>{0});
}

TEST_CASE("universal property on random competing cocones") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t na = rng() % 3;
    const std::size_t nb = 1 + rng() % 3;
    const std::size_t nc = 1 + rng() % 3;
    const std::size_t nt = 1 + rng() % 3;
    auto a = set_of(na);
    auto b = set_of(nb);
    auto c = set_of(nc);
    auto t = set_of(nt);
    std::vector<std::size_t> fv, gv;
    for (std::size_t i = 0; i < na; ++i) {
      fv.push_back(rng() % nb);
      gv.push_back(rng() % nc);
    }
    auto f = set_map(a, b, fv);
    auto g = set_map(a, c, gv);
    auto p = pushout(f, g);
    REQUIRE(p.object->total_size() <= 40);
    // every competing cocone (u, v) into t gets exactly one mediating map
    for (const auto& u : enumerate_maps(b, t)) {
      for (const auto& v : enumerate_maps(c, t)) {
        if (compose(u, f).components != compose(v, g).components) continue;
        auto m = mediating_map(std::vector<PresheafMap>{p.left, p.right}, t, {u, v});
        REQUIRE(m);
        std::size_t count = 0;
        for (const auto& cand : enumerate_maps(p.object, t)) {
          if (compose(cand, p.left).components == u.components &&
              compose(cand, p.right).components == v.components) {
            ++count;
          }
        }
        CHECK(count == 1);
      }
    }
  }
}

TEST_CASE("canonical diagrams") {
  auto w = ordinals(3);
  std::vector<PresheafPtr> reps = {yoneda(w, 0), yoneda(w, 1), yoneda(w, 2)};

  auto d = yoneda(w, 2);
  auto contains = canonical_diagram(w, {d}, d);
  CHECK(pointwise_surjective(contains.comparison));

  auto k = coproduct(w, {yoneda(w, 1), yoneda(w, 2)}).object;
  auto dense = canonical_diagram(w, reps, k);
  CHECK(is_isomorphism(dense.comparison));
  CHECK(commutes(dense.colimit));

  auto none = canonical_diagram(w, {}, k);
  CHECK(none.colimit.apex->total_size() == 0);
  CHECK(none.entries.empty());
}
