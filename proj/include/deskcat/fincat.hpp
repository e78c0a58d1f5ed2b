#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "deskcat/error.hpp"

namespace deskcat {

inline constexpr std::size_t kNone = static_cast<std::size_t>(-1);

struct MorphismSpec {
  std::string name;
  std::string dom;
  std::string cod;
};

/// Raw, unvalidated category description (the JSON category file maps onto this).
struct CategoryData {
  std::vector<std::string> objects;
  std::vector<MorphismSpec> morphisms;
  std::map<std::string, std::string> identities;
  std::vector<std::array<std::string, 3>> compose;  // {g, f, g∘f}
};

class FinCategory;
using CategoryPtr = std::shared_ptr<const FinCategory>;

/// A finitely presented category with a total composition table.
///
/// Instances only come out of CategoryBuilder::build (or validate_category),
/// so every FinCategory in circulation satisfies the category laws.
class FinCategory {
 public:
  FinCategory();  // the empty category

  std::size_t object_count() const noexcept { return objects_.size(); }
  std::size_t morphism_count() const noexcept { return names_.size(); }

  const std::string& object_name(std::size_t a) const { return objects_.at(a); }
  const std::string& morphism_name(std::size_t m) const { return names_.at(m); }
  std::size_t dom(std::size_t m) const { return dom_.at(m); }
  std::size_t cod(std::size_t m) const { return cod_.at(m); }
  std::size_t identity(std::size_t a) const { return identity_.at(a); }
  bool is_identity(std::size_t m) const { return identity_.at(dom_.at(m)) == m; }

  /// g∘f; throws BadComposite when cod f != dom g.
  std::size_t compose(std::size_t g, std::size_t f) const;

  const std::vector<std::size_t>& hom(std::size_t a, std::size_t b) const {
    return hom_.at(a * objects_.size() + b);
  }
  const std::vector<std::size_t>& morphisms_into(std::size_t b) const { return into_.at(b); }
  const std::vector<std::size_t>& morphisms_from(std::size_t a) const { return from_.at(a); }

  std::optional<std::size_t> find_object(std::string_view name) const;
  std::optional<std::size_t> find_morphism(std::string_view name) const;
  std::size_t object_index(std::string_view name) const;    // throws UnknownName
  std::size_t morphism_index(std::string_view name) const;  // throws UnknownName

  std::optional<std::size_t> inverse(std::size_t m) const;
  bool is_isomorphism(std::size_t m) const { return inverse(m).has_value(); }

  CategoryData data() const;

  friend bool operator==(const FinCategory& lhs, const FinCategory& rhs);

 private:
  friend class CategoryBuilder;

  std::vector<std::string> objects_;
  std::vector<std::string> names_;
  std::vector<std::size_t> dom_;
  std::vector<std::size_t> cod_;
  std::vector<std::size_t> identity_;
  std::vector<std::uint32_t> table_;  // morphism_count², kAbsent when not composable
  std::vector<std::vector<std::size_t>> hom_;
  std::vector<std::vector<std::size_t>> into_;
  std::vector<std::vector<std::size_t>> from_;
  std::unordered_map<std::string, std::size_t> object_lookup_;
  std::unordered_map<std::string, std::size_t> morphism_lookup_;
};

/// Index-based assembly of a FinCategory; build() runs the full validation.
class CategoryBuilder {
 public:
  std::size_t add_object(std::string name);
  std::size_t add_morphism(std::string name, std::size_t dom, std::size_t cod);
  void set_identity(std::size_t object, std::size_t morphism);
  void set_composite(std::size_t g, std::size_t f, std::size_t gf);

  FinCategory build() &&;

 private:
  std::vector<std::string> objects_;
  std::vector<std::string> names_;
  std::vector<std::size_t> dom_;
  std::vector<std::size_t> cod_;
  std::vector<std::size_t> identity_;
  std::vector<std::array<std::size_t, 3>> composites_;
};

FinCategory validate_category(const CategoryData& data);

bool same_category(const FinCategory& lhs, const FinCategory& rhs);
inline bool same_category(const CategoryPtr& lhs, const CategoryPtr& rhs) {
  return lhs == rhs || (lhs && rhs && same_category(*lhs, *rhs));
}

// ---------------------------------------------------------------------------
// Procedurally presented categories, accessed through a finite window.

struct ProceduralCategory {
  std::string name;
  std::function<std::string(std::size_t)> object_name;
  std::function<std::size_t(std::size_t, std::size_t)> hom_size;
  std::function<std::string(std::size_t, std::size_t, std::size_t)> morphism_name;
  std::function<std::size_t(std::size_t)> identity;
  // (a, b, c, g ∈ hom(b,c), f ∈ hom(a,b)) -> position of g∘f in hom(a,c)
  std::function<std::size_t(std::size_t, std::size_t, std::size_t, std::size_t, std::size_t)>
      compose;
};

/// Full subcategory on the first `window` generated objects.
FinCategory materialize(const ProceduralCategory& category, std::size_t window);

/// Finite ordinals (as chains) and isotone maps. Object k is the k-element
/// chain; morphism names are "a>b:" followed by the image sequence.
ProceduralCategory ordinal_category();

/// All weakly increasing maps from an n-chain to an m-chain, lexicographic.
std::vector<std::vector<std::size_t>> isotone_maps(std::size_t n, std::size_t m);

// ---------------------------------------------------------------------------
// Functors and natural transformations.

struct Functor {
  CategoryPtr source;
  CategoryPtr target;
  std::vector<std::size_t> object_map;
  std::vector<std::size_t> morphism_map;
};

Functor make_functor(CategoryPtr source, CategoryPtr target, std::vector<std::size_t> object_map,
                     std::vector<std::size_t> morphism_map);
Functor identity_functor(CategoryPtr category);
Functor constant_functor(CategoryPtr source, CategoryPtr target, std::size_t object);
Functor compose(const Functor& second, const Functor& first);
bool same_functor(const Functor& lhs, const Functor& rhs);

struct NatTransformation {
  Functor source;
  Functor target;
  std::vector<std::size_t> components;  // object of source category -> morphism of target
};

NatTransformation make_nat_transformation(Functor source, Functor target,
                                          std::vector<std::size_t> components);

// ---------------------------------------------------------------------------
// Derived categories.

CategoryPtr terminal_category();

FinCategory opposite(const FinCategory& category);

struct FullSubcategory {
  CategoryPtr category;
  Functor inclusion;
};

FullSubcategory full_subcategory(const CategoryPtr& category, std::vector<std::size_t> objects);

/// Morphism of a category assembled from component categories; composition
/// is componentwise.
struct TupleMorphism {
  std::size_t dom;
  std::size_t cod;
  std::vector<std::size_t> parts;
};

/// Objects are named gen#0..gen#(n-1) and morphisms continue the numbering in
/// the order given. The identity of each object is the listed morphism whose
/// parts are all identities.
FinCategory build_tuple_category(std::span<const FinCategory* const> components,
                                 std::size_t object_count,
                                 const std::vector<TupleMorphism>& morphisms);

struct CommaObject {
  std::size_t left;
  std::size_t right;
  std::size_t arrow;  // F1(left) -> F2(right) in the shared target
};

struct CommaCategory {
  CategoryPtr category;
  Functor left_projection;
  Functor right_projection;
  std::vector<CommaObject> objects;
};

/// F1↓F2. Objects are ordered by (left, right, arrow position in its hom-set);
/// morphisms by (source object, target object, k1, k2).
CommaCategory comma_category(const Functor& left, const Functor& right);

inline CommaCategory arrow_category(const CategoryPtr& category) {
  auto id = identity_functor(category);
  return comma_category(id, id);
}

}  // namespace deskcat
