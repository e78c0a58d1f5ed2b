#include "deskcat/presheaf.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

#include "deskcat/lifting.hpp"

namespace deskcat {

std::size_t Presheaf::total_size() const {
  std::size_t n = 0;
  for (const auto& e : elements) n += e.size();
  return n;
}

std::optional<std::size_t> Presheaf::find(std::size_t object, const std::string& name) const {
  const auto& e = elements.at(object);
  auto it = std::find(e.begin(), e.end(), name);
  if (it == e.end()) return std::nullopt;
  return static_cast<std::size_t>(it - e.begin());
}

void check_presheaf(const Presheaf& x) {
  if (!x.base) throw Error(ErrorCode::InvalidPresheaf, "missing base category");
  const auto& c = *x.base;
  if (x.elements.size() != c.object_count()) {
    throw Error(ErrorCode::InvalidPresheaf, "one element list per base object expected");
  }
  if (x.actions.size() != c.morphism_count()) {
    throw Error(ErrorCode::InvalidPresheaf, "one action per base morphism expected");
  }
  for (std::size_t a = 0; a < c.object_count(); ++a) {
    std::unordered_set<std::string> seen;
    for (const auto& name : x.elements[a]) {
      if (!seen.insert(name).second) {
        throw Error(ErrorCode::InvalidPresheaf,
                    "element '" + name + "' listed twice at " + c.object_name(a));
      }
    }
  }
  for (std::size_t m = 0; m < c.morphism_count(); ++m) {
    const auto& act = x.actions[m];
    if (act.size() != x.size(c.cod(m))) {
      throw Error(ErrorCode::InvalidPresheaf, "action of " + c.morphism_name(m) + " has the wrong size");
    }
    for (std::size_t v : act) {
      if (v >= x.size(c.dom(m))) {
        throw Error(ErrorCode::InvalidPresheaf, "action of " + c.morphism_name(m) + " leaves its set");
      }
    }
  }
  for (std::size_t a = 0; a < c.object_count(); ++a) {
    const auto& act = x.actions[c.identity(a)];
    for (std::size_t i = 0; i < act.size(); ++i) {
      if (act[i] != i) {
        throw Error(ErrorCode::InvalidPresheaf, "identity at " + c.object_name(a) + " acts non-trivially");
      }
    }
  }
  // X(g∘f) = X(f)∘X(g)
  for (std::size_t g = 0; g < c.morphism_count(); ++g) {
    for (std::size_t f : c.morphisms_into(c.dom(g))) {
      const auto& gf = x.actions[c.compose(g, f)];
      const auto& xg = x.actions[g];
      const auto& xf = x.actions[f];
      for (std::size_t e = 0; e < gf.size(); ++e) {
        if (gf[e] != xf[xg[e]]) {
          throw Error(ErrorCode::InvalidPresheaf, "action is not functorial at " + c.morphism_name(g) +
                                                      "∘" + c.morphism_name(f));
        }
      }
    }
  }
}

PresheafPtr make_presheaf(CategoryPtr base, std::vector<std::vector<std::string>> elements,
                          std::vector<std::vector<std::size_t>> actions) {
  Presheaf x{std::move(base), std::move(elements), std::move(actions)};
  check_presheaf(x);
  return std::make_shared<const Presheaf>(std::move(x));
}

PresheafPtr freeze(Presheaf presheaf) { return std::make_shared<const Presheaf>(std::move(presheaf)); }

bool same_presheaf(const Presheaf& lhs, const Presheaf& rhs) {
  return same_category(lhs.base, rhs.base) && lhs.elements == rhs.elements && lhs.actions == rhs.actions;
}

// ---------------------------------------------------------------------------

bool is_natural(const PresheafMap& map) {
  const auto& x = *map.source;
  const auto& y = *map.target;
  const auto& c = *x.base;
  // comp_a ∘ X(m) = Y(m) ∘ comp_b for m: a → b
  for (std::size_t m = 0; m < c.morphism_count(); ++m) {
    const std::size_t a = c.dom(m);
    const std::size_t b = c.cod(m);
    for (std::size_t e = 0; e < x.size(b); ++e) {
      if (map.components[a][x.act(m, e)] != y.act(m, map.components[b][e])) return false;
    }
  }
  return true;
}

void check_map(const PresheafMap& map) {
  if (!map.source || !map.target) throw Error(ErrorCode::InvalidMap, "missing source or target");
  if (!same_category(map.source->base, map.target->base)) {
    throw Error(ErrorCode::InvalidMap, "source and target live over different bases");
  }
  const auto& c = *map.source->base;
  if (map.components.size() != c.object_count()) {
    throw Error(ErrorCode::InvalidMap, "one component per base object expected");
  }
  for (std::size_t a = 0; a < c.object_count(); ++a) {
    if (map.components[a].size() != map.source->size(a)) {
      throw Error(ErrorCode::InvalidMap, "component at " + c.object_name(a) + " has the wrong size");
    }
    for (std::size_t v : map.components[a]) {
      if (v >= map.target->size(a)) {
        throw Error(ErrorCode::InvalidMap, "component at " + c.object_name(a) + " leaves the target");
      }
    }
  }
  if (!is_natural(map)) throw Error(ErrorCode::InvalidMap, "components are not natural");
}

PresheafMap make_map(PresheafPtr source, PresheafPtr target,
                     std::vector<std::vector<std::size_t>> components) {
  PresheafMap map{std::move(source), std::move(target), std::move(components)};
  check_map(map);
  return map;
}

bool same_map(const PresheafMap& lhs, const PresheafMap& rhs) {
  return lhs.components == rhs.components && same_presheaf(lhs.source, rhs.source) &&
         same_presheaf(lhs.target, rhs.target);
}

PresheafMap identity_map(const PresheafPtr& object) {
  PresheafMap map{object, object, {}};
  for (const auto& e : object->elements) {
    std::vector<std::size_t> comp(e.size());
    std::iota(comp.begin(), comp.end(), std::size_t{0});
    map.components.push_back(std::move(comp));
  }
  return map;
}

PresheafMap compose(const PresheafMap& second, const PresheafMap& first) {
  if (!same_presheaf(first.target, second.source)) {
    throw Error(ErrorCode::InvalidMap, "maps are not composable");
  }
  PresheafMap map{first.source, second.target, first.components};
  for (std::size_t a = 0; a < map.components.size(); ++a) {
    for (auto& v : map.components[a]) v = second.components[a][v];
  }
  return map;
}

bool is_isomorphism(const PresheafMap& map) {
  for (std::size_t a = 0; a < map.components.size(); ++a) {
    if (map.source->size(a) != map.target->size(a)) return false;
    std::vector<char> hit(map.target->size(a), 0);
    for (std::size_t v : map.components[a]) {
      if (hit[v]) return false;
      hit[v] = 1;
    }
  }
  return true;
}

std::optional<PresheafMap> inverse(const PresheafMap& map) {
  if (!is_isomorphism(map)) return std::nullopt;
  PresheafMap inv{map.target, map.source, {}};
  for (const auto& comp : map.components) {
    std::vector<std::size_t> back(comp.size());
    for (std::size_t i = 0; i < comp.size(); ++i) back[comp[i]] = i;
    inv.components.push_back(std::move(back));
  }
  return inv;
}

PresheafPtr terminal_presheaf(const CategoryPtr& base) {
  Presheaf x{base, std::vector<std::vector<std::string>>(base->object_count(), {"*"}),
             std::vector<std::vector<std::size_t>>(base->morphism_count(), {0})};
  return freeze(std::move(x));
}

PresheafPtr empty_presheaf(const CategoryPtr& base) {
  Presheaf x{base, std::vector<std::vector<std::string>>(base->object_count()),
             std::vector<std::vector<std::size_t>>(base->morphism_count())};
  return freeze(std::move(x));
}

PresheafMap to_terminal(const PresheafPtr& object, const PresheafPtr& terminal) {
  PresheafMap map{object, terminal, {}};
  for (const auto& e : object->elements) map.components.emplace_back(e.size(), 0);
  return map;
}

PresheafMap to_terminal(const PresheafPtr& object) {
  return to_terminal(object, terminal_presheaf(object->base));
}

PresheafMap from_empty(const PresheafPtr& object) {
  PresheafMap map{empty_presheaf(object->base), object, {}};
  map.components.resize(object->elements.size());
  return map;
}

std::vector<std::size_t> flatten(const PresheafMap& map) {
  std::vector<std::size_t> out;
  for (const auto& comp : map.components) out.insert(out.end(), comp.begin(), comp.end());
  return out;
}

PresheafPtr set_presheaf(const std::vector<std::string>& elements) {
  return make_presheaf(terminal_category(), {elements}, {[&] {
                         std::vector<std::size_t> id(elements.size());
                         std::iota(id.begin(), id.end(), std::size_t{0});
                         return id;
                       }()});
}

PresheafPtr set_presheaf(std::size_t count) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < count; ++i) names.push_back(std::to_string(i));
  return set_presheaf(names);
}

PresheafMap set_map(const PresheafPtr& source, const PresheafPtr& target,
                    const std::vector<std::size_t>& values) {
  return make_map(source, target, {values});
}

// ---------------------------------------------------------------------------

PresheafPtr yoneda(const CategoryPtr& base, std::size_t object) {
  const auto& c = *base;
  Presheaf x{base, {}, {}};
  // position of each morphism inside its hom(-, object) list
  std::vector<std::size_t> pos(c.morphism_count(), kNone);
  for (std::size_t b = 0; b < c.object_count(); ++b) {
    std::vector<std::string> names;
    const auto& hom = c.hom(b, object);
    for (std::size_t i = 0; i < hom.size(); ++i) {
      names.push_back(c.morphism_name(hom[i]));
      pos[hom[i]] = i;
    }
    x.elements.push_back(std::move(names));
  }
  for (std::size_t m = 0; m < c.morphism_count(); ++m) {
    std::vector<std::size_t> act;
    for (std::size_t e : c.hom(c.cod(m), object)) act.push_back(pos[c.compose(e, m)]);
    x.actions.push_back(std::move(act));
  }
  return freeze(std::move(x));
}

PresheafMap yoneda_map(const CategoryPtr& base, std::size_t morphism, const PresheafPtr& from,
                       const PresheafPtr& to) {
  const auto& c = *base;
  const std::size_t a = c.dom(morphism);
  const std::size_t b = c.cod(morphism);
  PresheafMap map{from, to, {}};
  for (std::size_t d = 0; d < c.object_count(); ++d) {
    const auto& src = c.hom(d, a);
    const auto& dst = c.hom(d, b);
    std::vector<std::size_t> comp;
    for (std::size_t e : src) {
      const std::size_t image = c.compose(morphism, e);
      comp.push_back(static_cast<std::size_t>(std::find(dst.begin(), dst.end(), image) - dst.begin()));
    }
    map.components.push_back(std::move(comp));
  }
  return map;
}

// ---------------------------------------------------------------------------

Functor formal_labeling(const FormalColimitPresheaf& p, const CategoryPtr& window) {
  const auto& shape = *p.shape;
  if (p.object_labels.size() != shape.object_count() || p.morphism_labels.size() != shape.morphism_count()) {
    throw Error(ErrorCode::InvalidFunctor, "one label per shape object and morphism expected");
  }
  std::vector<std::size_t> objects;
  for (const auto& label : p.object_labels) {
    auto idx = window->find_object(label);
    if (!idx) throw Error(ErrorCode::WindowTooSmall, "label '" + label + "' lies outside the window");
    objects.push_back(*idx);
  }
  std::vector<std::size_t> morphisms;
  for (const auto& label : p.morphism_labels) {
    auto idx = window->find_morphism(label);
    if (!idx) throw Error(ErrorCode::WindowTooSmall, "label '" + label + "' lies outside the window");
    morphisms.push_back(*idx);
  }
  return make_functor(p.shape, window, std::move(objects), std::move(morphisms));
}

namespace {

// Union-find over the coproduct ∐_j hom(a, L j); representative = least index.
struct FormalClasses {
  std::vector<std::size_t> offset;            // per shape object
  std::vector<std::size_t> representative;    // per coproduct position
  std::vector<std::size_t> reps;              // sorted distinct representatives
};

FormalClasses formal_classes(const FinCategory& window, const Functor& labels, std::size_t a) {
  const auto& shape = *labels.source;
  FormalClasses out;
  std::size_t total = 0;
  for (std::size_t j = 0; j < shape.object_count(); ++j) {
    out.offset.push_back(total);
    total += window.hom(a, labels.object_map[j]).size();
  }
  std::vector<std::size_t> parent(total);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t i) {
    while (parent[i] != i) {
      parent[i] = parent[parent[i]];
      i = parent[i];
    }
    return i;
  };
  for (std::size_t alpha = 0; alpha < shape.morphism_count(); ++alpha) {
    const std::size_t j = shape.dom(alpha);
    const std::size_t k = shape.cod(alpha);
    const auto& from = window.hom(a, labels.object_map[j]);
    const auto& to = window.hom(a, labels.object_map[k]);
    const std::size_t la = labels.morphism_map[alpha];
    for (std::size_t i = 0; i < from.size(); ++i) {
      const std::size_t image = window.compose(la, from[i]);
      const std::size_t pos = static_cast<std::size_t>(std::find(to.begin(), to.end(), image) - to.begin());
      std::size_t r1 = find(out.offset[j] + i);
      std::size_t r2 = find(out.offset[k] + pos);
      if (r1 != r2) parent[std::max(r1, r2)] = std::min(r1, r2);
    }
  }
  out.representative.resize(total);
  for (std::size_t i = 0; i < total; ++i) {
    out.representative[i] = find(i);
    if (out.representative[i] == i) out.reps.push_back(i);
  }
  return out;
}

std::pair<std::size_t, std::size_t> locate(const FormalClasses& classes, std::size_t position) {
  auto it = std::upper_bound(classes.offset.begin(), classes.offset.end(), position);
  const std::size_t j = static_cast<std::size_t>(it - classes.offset.begin()) - 1;
  return {j, position - classes.offset[j]};
}

}  // namespace

FormalEvaluation evaluate_formal(const FormalColimitPresheaf& p, const std::string& object) {
  auto window = std::make_shared<const FinCategory>(materialize(p.base, p.window));
  auto a = window->find_object(object);
  if (!a) throw Error(ErrorCode::WindowTooSmall, "object '" + object + "' lies outside the window");
  const Functor labels = formal_labeling(p, window);
  const auto classes = formal_classes(*window, labels, *a);
  FormalEvaluation out;
  for (std::size_t r : classes.reps) {
    auto [j, i] = locate(classes, r);
    const std::size_t m = window->hom(*a, labels.object_map[j])[i];
    out.elements.push_back(p.shape->object_name(j) + ":" + window->morphism_name(m));
    out.shape_object.push_back(j);
    out.morphism.push_back(m);
  }
  return out;
}

PresheafPtr tabulate(const FormalColimitPresheaf& p, std::size_t window) {
  if (window > p.window) {
    throw Error(ErrorCode::WindowTooSmall, "window " + std::to_string(window) +
                                               " exceeds the declared window " + std::to_string(p.window));
  }
  return tabulate(p, std::make_shared<const FinCategory>(materialize(p.base, window)));
}

PresheafPtr tabulate(const FormalColimitPresheaf& p, const CategoryPtr& window_category) {
  const auto& w = *window_category;
  const Functor labels = formal_labeling(p, window_category);
  const auto& shape = *p.shape;

  std::vector<FormalClasses> classes;
  Presheaf x{window_category, {}, {}};
  std::vector<std::vector<std::size_t>> class_index;  // per object: coproduct position -> element
  for (std::size_t a = 0; a < w.object_count(); ++a) {
    classes.push_back(formal_classes(w, labels, a));
    const auto& cl = classes.back();
    std::vector<std::string> names;
    std::vector<std::size_t> index(cl.representative.size(), kNone);
    for (std::size_t r : cl.reps) {
      auto [j, i] = locate(cl, r);
      index[r] = names.size();
      names.push_back(shape.object_name(j) + ":" + w.morphism_name(w.hom(a, labels.object_map[j])[i]));
    }
    for (std::size_t pos = 0; pos < index.size(); ++pos) index[pos] = index[cl.representative[pos]];
    x.elements.push_back(std::move(names));
    class_index.push_back(std::move(index));
  }
  for (std::size_t n = 0; n < w.morphism_count(); ++n) {
    // X(n): X(cod) → X(dom), [j, e] ↦ [j, e∘n]
    const std::size_t b = w.dom(n);
    const std::size_t a = w.cod(n);
    const auto& cl = classes[a];
    std::vector<std::size_t> act;
    for (std::size_t r : cl.reps) {
      auto [j, i] = locate(cl, r);
      const std::size_t e = w.hom(a, labels.object_map[j])[i];
      const auto& dst = w.hom(b, labels.object_map[j]);
      const std::size_t en = w.compose(e, n);
      const std::size_t pos = static_cast<std::size_t>(std::find(dst.begin(), dst.end(), en) - dst.begin());
      act.push_back(class_index[b][classes[b].offset[j] + pos]);
    }
    x.actions.push_back(std::move(act));
  }
  return freeze(std::move(x));
}

// ---------------------------------------------------------------------------

RestrictedHom canonical_functor_E(const CategoryPtr& base, std::size_t object,
                                  const std::vector<std::size_t>& objects) {
  auto sub = full_subcategory(base, objects);
  const auto& c = *base;
  const auto& s = *sub.category;
  Presheaf x{sub.category, {}, {}};
  for (std::size_t a = 0; a < s.object_count(); ++a) {
    std::vector<std::string> names;
    for (std::size_t m : c.hom(objects[a], object)) names.push_back(c.morphism_name(m));
    x.elements.push_back(std::move(names));
  }
  for (std::size_t n = 0; n < s.morphism_count(); ++n) {
    const std::size_t m = sub.inclusion.morphism_map[n];
    const auto& dst = c.hom(c.dom(m), object);
    std::vector<std::size_t> act;
    for (std::size_t e : c.hom(c.cod(m), object)) {
      const std::size_t em = c.compose(e, m);
      act.push_back(static_cast<std::size_t>(std::find(dst.begin(), dst.end(), em) - dst.begin()));
    }
    x.actions.push_back(std::move(act));
  }
  return RestrictedHom{std::move(sub), freeze(std::move(x))};
}

RestrictedHom canonical_functor_E(const PresheafPtr& object, const std::vector<std::size_t>& objects) {
  const auto& base = object->base;
  auto sub = full_subcategory(base, objects);
  const auto& c = *base;
  const auto& s = *sub.category;

  std::vector<PresheafPtr> reps;
  std::vector<std::vector<PresheafMap>> maps;
  Presheaf x{sub.category, {}, {}};
  for (std::size_t a = 0; a < s.object_count(); ++a) {
    reps.push_back(yoneda(base, objects[a]));
    maps.push_back(enumerate_maps(reps.back(), object));
    std::vector<std::string> names;
    const std::size_t id_pos = static_cast<std::size_t>(
        std::find(c.hom(objects[a], objects[a]).begin(), c.hom(objects[a], objects[a]).end(),
                  c.identity(objects[a])) -
        c.hom(objects[a], objects[a]).begin());
    // A map out of a representable is named by where it sends the identity.
    for (const auto& m : maps.back()) {
      names.push_back("<" + object->elements[objects[a]][m.components[objects[a]][id_pos]] + ">");
    }
    x.elements.push_back(std::move(names));
  }
  for (std::size_t n = 0; n < s.morphism_count(); ++n) {
    const std::size_t m = sub.inclusion.morphism_map[n];
    const std::size_t from = s.dom(n);
    const std::size_t to = s.cod(n);
    const PresheafMap ym = yoneda_map(base, m, reps[from], reps[to]);
    std::vector<std::size_t> act;
    for (const auto& phi : maps[to]) {
      const PresheafMap pulled = compose(phi, ym);
      std::size_t idx = kNone;
      for (std::size_t k = 0; k < maps[from].size(); ++k) {
        if (maps[from][k].components == pulled.components) {
          idx = k;
          break;
        }
      }
      act.push_back(idx);
    }
    x.actions.push_back(std::move(act));
  }
  return RestrictedHom{std::move(sub), freeze(std::move(x))};
}

}  // namespace deskcat
