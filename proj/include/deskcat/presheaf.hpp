#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "deskcat/fincat.hpp"

namespace deskcat {

/// A contravariant set-valued functor on a finite base with explicit finite values.
///
/// `elements[a]` lists the names of X(a); for a morphism m: a → b,
/// `actions[m]` sends positions in X(b) to positions in X(a).
struct Presheaf {
  CategoryPtr base;
  std::vector<std::vector<std::string>> elements;
  std::vector<std::vector<std::size_t>> actions;

  std::size_t size(std::size_t object) const { return elements.at(object).size(); }
  std::size_t total_size() const;
  std::optional<std::size_t> find(std::size_t object, const std::string& name) const;
  std::size_t act(std::size_t morphism, std::size_t element) const { return actions[morphism][element]; }
};

using PresheafPtr = std::shared_ptr<const Presheaf>;

/// Throws InvalidPresheaf unless names are unique per object and the actions
/// are contravariantly functorial (checked exhaustively).
void check_presheaf(const Presheaf& presheaf);

/// Validates, then freezes the value.
PresheafPtr make_presheaf(CategoryPtr base, std::vector<std::vector<std::string>> elements,
                          std::vector<std::vector<std::size_t>> actions);

/// Freezes without validation; for values that are valid by construction.
PresheafPtr freeze(Presheaf presheaf);

bool same_presheaf(const Presheaf& lhs, const Presheaf& rhs);
inline bool same_presheaf(const PresheafPtr& lhs, const PresheafPtr& rhs) {
  return lhs == rhs || (lhs && rhs && same_presheaf(*lhs, *rhs));
}

/// A natural transformation between presheaves over the same base.
struct PresheafMap {
  PresheafPtr source;
  PresheafPtr target;
  std::vector<std::vector<std::size_t>> components;

  std::size_t operator()(std::size_t object, std::size_t element) const {
    return components[object][element];
  }
};

/// Throws InvalidMap unless sizes match and naturality holds everywhere.
void check_map(const PresheafMap& map);

PresheafMap make_map(PresheafPtr source, PresheafPtr target,
                     std::vector<std::vector<std::size_t>> components);

/// True when the components are natural; no endpoint checks beyond sizes.
bool is_natural(const PresheafMap& map);

bool same_map(const PresheafMap& lhs, const PresheafMap& rhs);

PresheafMap identity_map(const PresheafPtr& object);
/// second∘first
PresheafMap compose(const PresheafMap& second, const PresheafMap& first);
bool is_isomorphism(const PresheafMap& map);
std::optional<PresheafMap> inverse(const PresheafMap& map);

PresheafPtr terminal_presheaf(const CategoryPtr& base);
PresheafPtr empty_presheaf(const CategoryPtr& base);
PresheafMap to_terminal(const PresheafPtr& object);
PresheafMap to_terminal(const PresheafPtr& object, const PresheafPtr& terminal);
PresheafMap from_empty(const PresheafPtr& object);

/// Flattened components, used for deterministic ordering.
std::vector<std::size_t> flatten(const PresheafMap& map);

// Presheaves over the terminal category are plain finite sets.

PresheafPtr set_presheaf(const std::vector<std::string>& elements);
PresheafPtr set_presheaf(std::size_t count);  // elements "0".."count-1"
PresheafMap set_map(const PresheafPtr& source, const PresheafPtr& target,
                    const std::vector<std::size_t>& values);

// ---------------------------------------------------------------------------

/// hom(-, a): elements of X(b) are the morphisms b → a, acting by precomposition.
PresheafPtr yoneda(const CategoryPtr& base, std::size_t object);

/// y(m): y(a) → y(b) for m: a → b, postcomposition.
PresheafMap yoneda_map(const CategoryPtr& base, std::size_t morphism, const PresheafPtr& from,
                       const PresheafPtr& to);

/// Colimit of representables over a procedurally presented base, indexed by a
/// finite shape. Object labels and morphism labels are names in the base.
struct FormalColimitPresheaf {
  ProceduralCategory base;
  std::size_t window = 0;
  CategoryPtr shape;
  std::vector<std::string> object_labels;    // per shape object
  std::vector<std::string> morphism_labels;  // per shape morphism
};

struct FormalEvaluation {
  std::vector<std::string> elements;  // canonical representatives, "j:morphism"
  std::vector<std::size_t> shape_object;  // shape object of each representative
  std::vector<std::size_t> morphism;      // base morphism of each representative
};

/// Checks that the labels define a functor shape → materialized window.
Functor formal_labeling(const FormalColimitPresheaf& presheaf, const CategoryPtr& window);

FormalEvaluation evaluate_formal(const FormalColimitPresheaf& presheaf, const std::string& object);

/// Tabulates on the first `window` objects; throws WindowTooSmall when the
/// window exceeds the declared window or misses a label.
PresheafPtr tabulate(const FormalColimitPresheaf& presheaf, std::size_t window);
PresheafPtr tabulate(const FormalColimitPresheaf& presheaf, const CategoryPtr& window_category);

/// The restricted hom functor onto a chosen list of base objects.
struct RestrictedHom {
  FullSubcategory subcategory;
  PresheafPtr presheaf;
};

/// E(K) for a base object K: hom(a, K) for a in `objects`.
RestrictedHom canonical_functor_E(const CategoryPtr& base, std::size_t object,
                                  const std::vector<std::size_t>& objects);

/// E(K) for a presheaf K: natural transformations y(a) → K, found by search.
RestrictedHom canonical_functor_E(const PresheafPtr& object, const std::vector<std::size_t>& objects);

}  // namespace deskcat
