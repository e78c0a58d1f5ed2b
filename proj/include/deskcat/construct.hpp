#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "deskcat/fincat.hpp"

namespace deskcat {

/// (K, L, M, f: FK → M, g: GL → M) with f and g isomorphisms.
struct PsPbObject {
  std::size_t k;
  std::size_t l;
  std::size_t m;
  std::size_t f;
  std::size_t g;
};

struct Pseudopullback {
  CategoryPtr category;
  Functor left_projection;   // → source of F
  Functor right_projection;  // → source of G
  std::vector<PsPbObject> objects;
};

/// Objects ordered by (K, L, M, f, g); morphisms (k, l, m) with m∘f = f'∘Fk and
/// m∘g = g'∘Gl, ordered by (source, target, k, l, m).
Pseudopullback pseudopullback(const Functor& f, const Functor& g);

struct StrictPullback {
  CategoryPtr category;
  Functor left_projection;
  Functor right_projection;
  std::vector<std::pair<std::size_t, std::size_t>> objects;  // (K, L) with FK = GL
};

StrictPullback strict_pullback(const Functor& f, const Functor& g);

struct EquivalenceReport {
  std::size_t strict_objects = 0;
  std::size_t pseudo_objects = 0;
  bool equivalent = false;
  bool comparison_fully_faithful = false;
  bool comparison_essentially_surjective = false;
};

inline constexpr std::size_t kEquivalenceObjectBound = 32;

/// Decides whether the strict pullback and the pseudopullback are equivalent
/// by searching for an isomorphism between skeletons; also reports on the
/// canonical comparison (K, L) ↦ (K, L, FK, id, id). SearchExceeded above
/// kEquivalenceObjectBound objects or past `budget` search nodes.
EquivalenceReport pullback_equiv_check(const Functor& f, const Functor& g,
                                       std::uint64_t budget = 10'000'000);

/// True when the two categories are equivalent (isomorphic skeletons).
bool equivalent_categories(const FinCategory& lhs, const FinCategory& rhs, std::uint64_t budget = 10'000'000);

/// Full subcategory on one object per isomorphism class (the first one).
FullSubcategory skeleton(const CategoryPtr& category);

struct InserterObject {
  std::size_t k;
  std::size_t arrow;  // FK → GK
};

struct Inserter {
  CategoryPtr category;
  Functor projection;
  std::vector<InserterObject> objects;
};

/// Objects (K, f: FK → GK) ordered by (K, f); morphisms k with Gk∘f = f'∘Fk.
Inserter inserter(const Functor& f, const Functor& g);

/// Full subcategory of the source on the objects K with φ_K = ψ_K.
FullSubcategory equifier(const NatTransformation& phi, const NatTransformation& psi);

struct Cone {
  std::size_t apex;
  std::vector<std::size_t> legs;  // per shape object
};

struct ConeSetReport {
  std::vector<Cone> cones;
  std::vector<std::size_t> weakly_initial;  // indices into cones
  bool covers = false;                      // every cone factors through a member
};

/// All cones over D and a greedy covering set: each round takes the cone that
/// the most still-uncovered cones map into, earliest first on ties.
ConeSetReport approximately_complete_check(const Functor& diagram);
std::vector<ConeSetReport> approximately_complete_check(const std::vector<Functor>& diagrams);

/// Cone morphisms from cone `from` to cone `to`: h with to.legs[j]∘h = from.legs[j].
std::vector<std::size_t> cone_morphisms(const Functor& diagram, const Cone& from, const Cone& to);

}  // namespace deskcat
