#include "doctest.h"
#include "deskcat/soa.hpp"
#include "support.hpp"

using namespace deskcat;
using namespace testing_support;

namespace {

CategoryPtr point() { return terminal_category(); }

PresheafMap empty_to(const PresheafPtr& x) { return from_empty(x); }

/// ∅ → 1 over the terminal category.
PresheafMap point_generator() { return from_empty(set_of(1)); }

/// 2 → 1 over the terminal category.
PresheafMap fold_generator() { return to_terminal(set_of(2)); }

BoundednessConfig stages(std::size_t n, bool prune = true) {
  BoundednessConfig c;
  c.max_stages = n;
  c.prune_solved = prune;
  return c;
}

}  // namespace

TEST_CASE("config and rule validation") {
  CHECK_THROWS_AS(stages(0).validate(), Error);
  MorphismClassSource src{{point_generator()}, nullptr};
  auto f = empty_to(set_of(2));
  CHECK_THROWS_AS(factorize(f, src, stages(0)), Error);

  src.rule = [](const PresheafMap&) { return std::vector<std::size_t>{1}; };
  CHECK_THROWS_AS(src.select(f), Error);
  src.rule = [](const PresheafMap&) { return std::vector<std::size_t>{0, 0}; };
  CHECK_THROWS_AS(src.select(f), Error);
  src.rule = [](const PresheafMap&) { return std::vector<std::size_t>{}; };
  auto cert = factorize(f, src, stages(3));
  CHECK(cert.status == FactorizationStatus::Fixpoint);
  CHECK(cert.stages() == 0);
}

TEST_CASE("empty generating class stops at once") {
  auto f = empty_to(set_of(3));
  auto cert = factorize(f, MorphismClassSource{}, stages(4));
  CHECK(cert.status == FactorizationStatus::Fixpoint);
  CHECK(cert.stages() == 0);
  CHECK(cert.right_class_verified);
  CHECK(verify_factorization(cert).ok());
}

TEST_CASE("attaching points to the empty set") {
  auto t = set_of(3);
  auto f = empty_to(t);
  MorphismClassSource src{{point_generator()}, nullptr};

  auto triples = collect_triples(f, src, true);
  CHECK(triples.size() == 3);

  auto step = one_step(f, src, true);
  CHECK(step.first.target->total_size() == 3);
  CHECK(is_isomorphism(step.second));
  CHECK(step.first.target->elements[0][0].rfind("s1.0/", 0) == 0);

  auto cert = factorize(f, src, stages(8));
  CHECK(cert.status == FactorizationStatus::Fixpoint);
  CHECK(cert.stages() == 1);
  CHECK(cert.right_class_verified);
  CHECK(is_isomorphism(cert.residual));
  auto check = verify_factorization(cert);
  CHECK(check.ok());
}

TEST_CASE("isomorphisms need no cells") {
  auto x = set_of(3);
  MorphismClassSource src{{point_generator(), fold_generator()}, nullptr};
  CHECK(collect_triples(identity_map(x), src, true).empty());
  auto cert = factorize(identity_map(x), src, stages(2));
  CHECK(cert.stages() == 0);
  CHECK(cert.status == FactorizationStatus::Fixpoint);
}

TEST_CASE("collapsing against the fold map") {
  auto f = to_terminal(set_of(3));
  MorphismClassSource src{{fold_generator()}, nullptr};
  // u: 2 → 3 is solved exactly when it is constant
  CHECK(collect_triples(f, src, false).size() == 9);
  CHECK(collect_triples(f, src, true).size() == 6);
  auto cert = factorize(f, src, stages(8));
  CHECK(cert.status == FactorizationStatus::Fixpoint);
  CHECK(cert.stages() == 1);
  CHECK(cert.middle()->total_size() == 1);
  CHECK(verify_factorization(cert).ok());
}

TEST_CASE("pruning drops only solved triples") {
  auto w = ordinals(3);
  std::vector<PresheafMap> gens = {empty_to(yoneda(w, 0)), empty_to(yoneda(w, 1))};
  auto y1 = yoneda(w, 1);
  auto y2 = yoneda(w, 2);
  MorphismClassSource src{gens, nullptr};
  for (const auto& f : enumerate_maps(y1, y2)) {
    auto all = collect_triples(f, src, false);
    auto kept = collect_triples(f, src, true);
    std::size_t solved = 0;
    for (const auto& t : all) {
      if (find_diagonal({gens[t.generator], f, t.u, t.v})) ++solved;
    }
    CHECK(kept.size() + solved == all.size());
    for (const auto& t : kept) CHECK_FALSE(find_diagonal({gens[t.generator], f, t.u, t.v}));
  }
}

TEST_CASE("without pruning the run exhausts its stages") {
  auto f = empty_to(set_of(1));
  MorphismClassSource src{{point_generator()}, nullptr};
  auto cert = factorize(f, src, stages(3, false));
  CHECK(cert.status == FactorizationStatus::BudgetExhausted);
  CHECK(cert.stages() == 3);
  CHECK(cert.pending > 0);
  CHECK_FALSE(cert.right_class_verified);
  // each stage adds one point for the single square
  CHECK(cert.middle()->total_size() == 3);
  CHECK(verify_factorization(cert).ok());
}

TEST_CASE("factorization over ordinals") {
  auto w = ordinals(3);
  auto y0 = yoneda(w, 0);
  auto y1 = yoneda(w, 1);
  auto boundary = coproduct(w, {y0, y0}).object;
  std::vector<PresheafMap> gens;
  for (const auto& inc : enumerate_maps(boundary, y1)) {
    if (inc.components[0][0] != inc.components[0][1]) gens.push_back(inc);
  }
  gens.push_back(empty_to(y0));
  MorphismClassSource src{gens, nullptr};

  auto f = to_terminal(empty_presheaf(w));
  auto cert = factorize(f, src, stages(8));
  CHECK(cert.status == FactorizationStatus::Fixpoint);
  CHECK(cert.right_class_verified);
  auto check = verify_factorization(cert);
  CHECK(check.ok());

  // the residual is in the right class, so factoring it again adds nothing
  auto again = factorize(cert.residual, src, stages(8));
  CHECK(again.stages() == 0);
  CHECK(again.status == FactorizationStatus::Fixpoint);
}

TEST_CASE("tampered certificates are rejected") {
  auto f = empty_to(set_of(3));
  MorphismClassSource src{{point_generator()}, nullptr};
  auto cert = factorize(f, src, stages(8));
  REQUIRE(cert.stages() == 1);

  auto swapped = cert;
  std::swap(swapped.triples[0][0].v, swapped.triples[0][1].v);
  auto c1 = verify_factorization(swapped);
  CHECK_FALSE(c1.ok());

  auto wrong = cert;
  wrong.residual = compose(set_map(set_of(3), set_of(3), {1, 2, 0}), cert.residual);
  wrong.residuals.back() = wrong.residual;
  // still a factorization of ∅ → 3, but the cells no longer solve their squares
  auto c2 = verify_factorization(wrong);
  CHECK(c2.factors);
  CHECK_FALSE(c2.partial);
  CHECK_FALSE(c2.ok());

  auto lost = cert;
  lost.cellular.stages[0].cells.pop_back();
  auto c3 = verify_factorization(lost);
  CHECK_FALSE(c3.ok());
  CHECK(c3.bad_stage == std::optional<std::size_t>{0});
}

TEST_CASE("weak reflection") {
  MorphismClassSource fold{{fold_generator()}, nullptr};
  auto r = weak_reflection(set_of(2), fold, stages(8));
  CHECK(r.certificate.status == FactorizationStatus::Fixpoint);
  CHECK(r.unit.target->total_size() == 1);
  CHECK(r.injective);

  auto e = weak_reflection(empty_presheaf(point()), fold, stages(8));
  CHECK(e.unit.target->total_size() == 0);
  CHECK(e.injective);

  MorphismClassSource pt{{point_generator()}, nullptr};
  auto p = weak_reflection(empty_presheaf(point()), pt, stages(8));
  CHECK(p.unit.target->total_size() == 1);
  CHECK(p.injective);
}

TEST_CASE("chains of injective objects") {
  MorphismClassSource pt{{point_generator()}, nullptr};
  std::vector<PresheafMap> maps = {set_map(set_of(1), set_of(2), {0}), set_map(set_of(2), set_of(3), {0, 1})};
  auto r = injectivity_colimit_check(set_of(1), maps, pt.generators);
  CHECK(r.members == std::vector<bool>{true, true, true});
  CHECK(r.colimit);

  auto s = injectivity_colimit_check(empty_presheaf(point()), {from_empty(set_of(1))}, pt.generators);
  CHECK(s.members == std::vector<bool>{false, true});
  CHECK(s.colimit);
}

TEST_CASE("union of two generating classes") {
  MorphismClassSource pt{{point_generator()}, nullptr};
  MorphismClassSource fold{{fold_generator()}, nullptr};

  auto a = union_factorize(empty_to(set_of(3)), pt, fold, stages(8));
  CHECK(a.status == FactorizationStatus::Fixpoint);
  CHECK(a.generators.size() == 2);
  CHECK(a.stages() == 1);
  CHECK(a.right_class_verified);
  CHECK(verify_factorization(a).ok());

  auto b = union_factorize(to_terminal(set_of(2)), pt, fold, stages(8));
  CHECK(b.status == FactorizationStatus::Fixpoint);
  CHECK(b.middle()->total_size() == 1);
  CHECK(b.cellular.stages[0].cells[0].generator == 1);
  CHECK(verify_factorization(b).ok());
}
