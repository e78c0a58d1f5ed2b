#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "deskcat/lifting.hpp"
#include "deskcat/presheaf.hpp"

namespace deskcat {

struct Coproduct {
  PresheafPtr object;
  std::vector<PresheafMap> injections;
};

/// Pointwise disjoint union. Element names get the summand's tag as prefix
/// ("i:" by default); custom tags must keep names unique.
Coproduct coproduct(const CategoryPtr& base, const std::vector<PresheafPtr>& summands);
Coproduct coproduct(const CategoryPtr& base, const std::vector<PresheafPtr>& summands,
                    const std::vector<std::string>& tags);

/// [legs]: ∐ X_i → Y.
PresheafMap copair(const Coproduct& sum, const PresheafPtr& target, const std::vector<PresheafMap>& legs);
/// ∐ f_i: ∐ X_i → ∐ Y_i.
PresheafMap coproduct_map(const Coproduct& from, const Coproduct& to, const std::vector<PresheafMap>& maps);

struct Quotient {
  PresheafPtr object;
  PresheafMap projection;
};

/// Pointwise pairs per object.
using Relation = std::vector<std::vector<std::pair<std::size_t, std::size_t>>>;

/// Quotient by the smallest action-compatible equivalence containing
/// `relation`. Each class is named by its least member in element order.
Quotient quotient(const PresheafPtr& object, const Relation& relation);

Quotient coequalizer(const PresheafMap& f, const PresheafMap& g);

struct Pushout {
  PresheafPtr object;
  PresheafMap left;   // B → P
  PresheafMap right;  // C → P
};

/// Pushout of B ← A → C, as the coequalizer of the two composites into B ⊔ C.
Pushout pushout(const PresheafMap& f, const PresheafMap& g);

struct DiagramEdge {
  std::size_t from = 0;
  std::size_t to = 0;
  PresheafMap map;
};

struct Diagram {
  CategoryPtr base;
  std::vector<PresheafPtr> nodes;
  std::vector<DiagramEdge> edges;
};

struct Cocone {
  Diagram diagram;
  PresheafPtr apex;
  std::vector<PresheafMap> legs;
};

/// leg(to)∘edge = leg(from) for every edge.
bool commutes(const Cocone& cocone);

/// Coproduct of all nodes quotiented by all edge relations.
Cocone finite_colimit(const Diagram& diagram);

/// Colimit of X₀ → X₁ → … → X_n: the last object with composite legs.
Cocone chain_colimit(const PresheafPtr& first, const std::vector<PresheafMap>& maps);

/// The unique m: apex → target with m∘legs[i] = competitor[i], if one exists.
/// Requires the colimit legs to be jointly surjective (true for every
/// colimit built here); returns std::nullopt otherwise as well.
std::optional<PresheafMap> mediating_map(const Cocone& colimit, const PresheafPtr& target,
                                         const std::vector<PresheafMap>& competitor);
std::optional<PresheafMap> mediating_map(const std::vector<PresheafMap>& legs, const PresheafPtr& target,
                                         const std::vector<PresheafMap>& competitor);

bool jointly_surjective(const std::vector<PresheafMap>& legs);

/// Canonical diagram of K with respect to a list of objects: the comma
/// category 𝒜↓K as a diagram, its colimit and the comparison colim → K.
struct CanonicalDiagram {
  struct Entry {
    std::size_t object;  // index into the object list
    PresheafMap map;     // object → K
  };
  std::vector<Entry> entries;
  Cocone colimit;
  PresheafMap comparison;
};

CanonicalDiagram canonical_diagram(const CategoryPtr& base, const std::vector<PresheafPtr>& objects,
                                   const PresheafPtr& target, std::uint64_t budget = kDefaultNodeBudget);

}  // namespace deskcat
