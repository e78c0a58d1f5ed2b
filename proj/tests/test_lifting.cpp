#include <random>

#include "doctest.h"
#include "deskcat/colimits.hpp"
#include "deskcat/lifting.hpp"
#include "deskcat/oracles.hpp"
#include "support.hpp"

using namespace deskcat;
using namespace testing_support;

namespace {

std::vector<oracle::Components> components_of(const std::vector<PresheafMap>& maps) {
  std::vector<oracle::Components> out;
  for (const auto& m : maps) out.push_back(m.components);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("enumerate maps") {
  auto w = ordinals(4);
  for (std::size_t a = 0; a < 4; ++a) {
    auto y = yoneda(w, a);
    CHECK(enumerate_maps(empty_presheaf(w), y).size() == 1);
    CHECK(enumerate_maps(y, terminal_presheaf(w)).size() == 1);
    CHECK(enumerate_maps(y, y).size() == w->hom(a, a).size());
  }
  auto s2 = set_of(2);
  auto s3 = set_of(3);
  CHECK(enumerate_maps(s2, s3).size() == 9);
  CHECK(enumerate_maps(s3, empty_presheaf(terminal_category())).empty());
}

TEST_CASE("enumerate maps matches the filtering oracle") {
  auto w = ordinals(3);
  auto a = single_arrow();
  std::vector<PresheafPtr> objects = {
      yoneda(w, 1), yoneda(w, 2), coproduct(w, {yoneda(w, 1), yoneda(w, 1)}).object,
      make_presheaf(a, {{"p", "q"}, {"x"}}, {{0, 1}, {0}, {1}}),
      make_presheaf(a, {{"p", "q", "r"}, {"x", "y"}}, {{0, 1, 2}, {0, 1}, {0, 2}}),
      yoneda(a, 1), terminal_presheaf(a)};
  for (const auto& x : objects) {
    for (const auto& y : objects) {
      if (!same_category(x->base, y->base)) continue;
      auto brute = oracle::maps(*x, *y, 2'000'000);
      REQUIRE(brute);
      CHECK(components_of(enumerate_maps(x, y)) == *brute);
    }
  }
}

TEST_CASE("search budget is enforced") {
  auto big = set_of(8);
  try {
    enumerate_maps(big, big, 1000);
    FAIL("expected SearchExceeded");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SearchExceeded);
  }
}

TEST_CASE("solve") {
  auto s2 = set_of(2);
  auto s1 = set_of(1);
  auto f = set_map(s2, s1, {0, 0});
  auto id2 = identity_map(s2);
  auto id1 = identity_map(s1);
  // f against itself with identities has no diagonal: it would have to be a section through id
  CHECK(solve({f, f, id2, id1}).empty());

  auto fid = identity_map(s2);
  auto sols = solve({fid, fid, id2, id2});
  REQUIRE(sols.size() == 1);
  CHECK(same_map(sols[0], id2));

  // g iso: exactly g⁻¹∘v
  auto s3 = set_of(3);
  auto g = set_map(s3, s3, {2, 0, 1});
  auto h = set_map(s1, s3, {1});
  auto v = set_map(s3, s3, {0, 0, 2});
  auto u = compose(*inverse(g), compose(v, h));
  auto one = solve({h, g, u, v});
  REQUIRE(one.size() == 1);
  CHECK(same_map(one[0], compose(*inverse(g), v)));

  CHECK_THROWS_AS(solve({h, g, u, identity_map(s3)}), Error);
}

TEST_CASE("solve matches the brute-force oracle on every square") {
  auto w = ordinals(3);
  std::vector<PresheafMap> maps;
  std::vector<PresheafPtr> objects = {yoneda(w, 0), yoneda(w, 1), yoneda(w, 2), terminal_presheaf(w)};
  for (const auto& x : objects) {
    for (const auto& y : objects) {
      for (const auto& m : enumerate_maps(x, y)) maps.push_back(m);
    }
  }
  std::size_t squares = 0;
  for (std::size_t i = 0; i < maps.size(); ++i) {
    for (std::size_t j = 0; j < maps.size(); ++j) {
      for (const auto& sq : enumerate_squares(maps[i], maps[j])) {
        LiftingProblem p{maps[i], maps[j], sq.u, sq.v};
        auto brute = oracle::diagonals(p, 1'000'000);
        REQUIRE(brute);
        CHECK(components_of(solve(p)) == *brute);
        ++squares;
      }
    }
  }
  CHECK(squares > 100);
}

TEST_CASE("box and perp") {
  auto empty = empty_presheaf(terminal_category());
  auto s1 = set_of(1);
  auto s2 = set_of(2);
  auto point = from_empty(s1);     // ∅ → 1
  auto fold = set_map(s2, s1, {0, 0});  // 2 → 1
  CHECK(box(point, fold));
  CHECK_FALSE(perp(point, fold));
  auto report = lifting_report(point, fold);
  // one square (u and v are forced) carrying both points as diagonals
  CHECK(report.squares == 1);
  CHECK(report.without_diagonal == 0);
  CHECK(report.with_several == 1);
  CHECK(solve({point, fold, from_empty(s2), identity_map(s1)}).size() == 2);

  CHECK_FALSE(box(fold, fold));
  CHECK(lifting_report(fold, fold).counterexample.has_value());

  auto iso = set_map(s2, s2, {1, 0});
  CHECK(box(fold, iso));
  CHECK(perp(fold, iso));
  CHECK(perp(point, iso));

  // over 0 → 1, collapsing X(0) = {p, q} while X(1) = {x, y} stays: pointwise onto,
  // but no section can respect both X(f)x = p and X(f)y = q
  auto a = single_arrow();
  auto x = make_presheaf(a, {{"p", "q"}, {"x", "y"}}, {{0, 1}, {0, 1}, {0, 1}});
  auto y = make_presheaf(a, {{"p"}, {"x", "y"}}, {{0}, {0, 1}, {0, 0}});
  auto epi = make_map(x, y, {{0, 0}, {0, 1}});
  for (const auto& s : enumerate_maps(y, x)) CHECK_FALSE(same_map(compose(epi, s), identity_map(y)));
  CHECK_FALSE(box(epi, epi));
}

TEST_CASE("perp implies box on generated pairs") {
  auto w = ordinals(3);
  std::vector<PresheafPtr> objects = {empty_presheaf(w), yoneda(w, 1), yoneda(w, 2), terminal_presheaf(w)};
  std::vector<PresheafMap> maps;
  for (const auto& x : objects) {
    for (const auto& y : objects) {
      for (const auto& m : enumerate_maps(x, y)) maps.push_back(m);
    }
  }
  for (const auto& f : maps) {
    for (const auto& g : maps) {
      auto r = lifting_report(f, g);
      if (r.perp()) CHECK(r.box());
      CHECK(r.box() == box(f, g));
      CHECK(r.perp() == perp(f, g));
    }
  }
}

TEST_CASE("box is stable under pushout and composition") {
  auto w = ordinals(3);
  auto d0 = yoneda(w, 1);
  auto d1 = yoneda(w, 2);
  auto e = empty_presheaf(w);
  auto h = from_empty(d0);
  std::vector<PresheafMap> rights;
  std::vector<PresheafPtr> objects = {d0, d1, terminal_presheaf(w), coproduct(w, {d0, d0}).object};
  for (const auto& x : objects) {
    for (const auto& y : objects) {
      for (const auto& m : enumerate_maps(x, y)) rights.push_back(m);
    }
  }
  // pushout of ∅ → Δ₀ along ∅ → Δ₁ is Δ₁ → Δ₁ ⊔ Δ₀
  auto po = pushout(from_empty(d1), h);
  for (const auto& g : rights) {
    if (box(h, g)) CHECK(box(po.left, g));
  }
  for (const auto& g1 : rights) {
    for (const auto& g2 : rights) {
      if (!same_presheaf(g1.target, g2.source)) continue;
      if (box(h, g1) && box(h, g2)) CHECK(box(h, compose(g2, g1)));
    }
  }
}

TEST_CASE("injective and orthogonal objects") {
  auto base = terminal_category();
  auto s1 = set_of(1);
  auto s2 = set_of(2);
  auto point = from_empty(s1);
  CHECK(injective(s2, {}));
  CHECK(orthogonal(s2, {}));
  CHECK(injective(terminal_presheaf(base), {point}));
  CHECK(orthogonal(terminal_presheaf(base), {point}));
  CHECK(orthogonal(s1, {point}));
  CHECK(injective(s2, {point}));
  CHECK_FALSE(orthogonal(s2, {point}));
  CHECK_FALSE(injective(empty_presheaf(base), {point}));
}

TEST_CASE("retracts") {
  auto s1 = set_of(1);
  auto s2 = set_of(2);
  auto f = from_empty(s1);
  auto fp = from_empty(s2);
  auto e = f.source;
  RetractWitness self{identity_map(e), identity_map(s1), identity_map(e), identity_map(s1)};
  CHECK(verify_retract(f, f, self));
  RetractWitness proper{identity_map(e), set_map(s1, s2, {0}), identity_map(e), set_map(s2, s1, {0, 0})};
  CHECK(verify_retract(f, fp, proper));
  RetractWitness swapped{identity_map(e), set_map(s2, s1, {0, 0}), identity_map(e), set_map(s1, s2, {0})};
  CHECK_FALSE(verify_retract(f, fp, swapped));
  // a retract that does not split: 1 → 2 → 1 but composing the wrong way round
  RetractWitness broken{identity_map(e), set_map(s1, s2, {0}), identity_map(e), set_map(s2, s1, {0, 0})};
  CHECK_FALSE(verify_retract(fp, f, broken));
}

TEST_CASE("cellular certificates") {
  auto base = terminal_category();
  auto s1 = set_of(1);
  auto s2 = set_of(2);
  auto point = from_empty(s1);

  CellularCertificate empty{s2, {}, identity_map(s2)};
  CHECK(verify_cellular(empty, {point}));

  // attach one point to 2: 2 → 3
  auto po = pushout(from_empty(s2), point);
  CellularStage stage{po.left, {{0, from_empty(s2), po.right}}};
  CellularCertificate one{s2, {stage}, po.left};
  CHECK(verify_cellular(one, {point}));

  // claim the attachment lands on an existing point: not a pushout
  auto s3 = po.object;
  auto bad_cell = PresheafMap{s1, s2, {{0}}};
  CellularStage wrong{identity_map(s2), {{0, from_empty(s2), bad_cell}}};
  try {
    verify_cellular(CellularCertificate{s2, {wrong}, identity_map(s2)}, {point});
    FAIL("expected BadStage");
  } catch (const BadStageError& e) {
    CHECK(e.stage() == 0);
    CHECK(e.code() == ErrorCode::BadStage);
  }

  // a valid stage with the wrong composite
  try {
    verify_cellular(CellularCertificate{s2, {stage}, PresheafMap{s2, s3, {{1, 0}}}}, {point});
    FAIL("expected BadStage");
  } catch (const BadStageError& e) {
    CHECK(e.stage() == 1);
  }
}
