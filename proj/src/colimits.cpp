#include "deskcat/colimits.hpp"

#include <algorithm>
#include <numeric>

namespace deskcat {

namespace {

std::vector<std::string> default_tags(std::size_t n) {
  std::vector<std::string> tags;
  for (std::size_t i = 0; i < n; ++i) tags.push_back(std::to_string(i) + ":");
  return tags;
}

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }

  std::size_t find(std::size_t i) {
    while (parent_[i] != i) {
      parent_[i] = parent_[parent_[i]];
      i = parent_[i];
    }
    return i;
  }

  // the smaller root wins, so every class is represented by its least member
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (a > b) std::swap(a, b);
    parent_[b] = a;
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

Coproduct coproduct(const CategoryPtr& base, const std::vector<PresheafPtr>& summands) {
  return coproduct(base, summands, default_tags(summands.size()));
}

Coproduct coproduct(const CategoryPtr& base, const std::vector<PresheafPtr>& summands,
                    const std::vector<std::string>& tags) {
  if (tags.size() != summands.size()) throw Error(ErrorCode::InvalidPresheaf, "one tag per summand expected");
  const auto& c = *base;
  for (const auto& s : summands) {
    if (!same_category(s->base, base)) throw Error(ErrorCode::InvalidPresheaf, "summand over a different base");
  }
  Presheaf sum{base, std::vector<std::vector<std::string>>(c.object_count()),
               std::vector<std::vector<std::size_t>>(c.morphism_count())};
  // offset[i][a]: where summand i starts inside the sum at a
  std::vector<std::vector<std::size_t>> offset(summands.size(), std::vector<std::size_t>(c.object_count()));
  for (std::size_t i = 0; i < summands.size(); ++i) {
    for (std::size_t a = 0; a < c.object_count(); ++a) {
      offset[i][a] = sum.elements[a].size();
      for (const auto& name : summands[i]->elements[a]) sum.elements[a].push_back(tags[i] + name);
    }
  }
  for (std::size_t m = 0; m < c.morphism_count(); ++m) {
    for (std::size_t i = 0; i < summands.size(); ++i) {
      for (std::size_t v : summands[i]->actions[m]) sum.actions[m].push_back(offset[i][c.dom(m)] + v);
    }
  }
  Coproduct out{freeze(std::move(sum)), {}};
  for (std::size_t i = 0; i < summands.size(); ++i) {
    PresheafMap inj{summands[i], out.object, {}};
    for (std::size_t a = 0; a < c.object_count(); ++a) {
      std::vector<std::size_t> comp(summands[i]->size(a));
      std::iota(comp.begin(), comp.end(), offset[i][a]);
      inj.components.push_back(std::move(comp));
    }
    out.injections.push_back(std::move(inj));
  }
  return out;
}

PresheafMap copair(const Coproduct& sum, const PresheafPtr& target, const std::vector<PresheafMap>& legs) {
  if (legs.size() != sum.injections.size()) throw Error(ErrorCode::InvalidMap, "one leg per summand expected");
  PresheafMap out{sum.object, target,
                  std::vector<std::vector<std::size_t>>(sum.object->elements.size())};
  for (std::size_t i = 0; i < legs.size(); ++i) {
    if (!same_presheaf(legs[i].source, sum.injections[i].source) || !same_presheaf(legs[i].target, target)) {
      throw Error(ErrorCode::InvalidMap, "copairing leg " + std::to_string(i) + " has the wrong endpoints");
    }
    for (std::size_t a = 0; a < out.components.size(); ++a) {
      const auto& comp = legs[i].components[a];
      out.components[a].insert(out.components[a].end(), comp.begin(), comp.end());
    }
  }
  return out;
}

PresheafMap coproduct_map(const Coproduct& from, const Coproduct& to, const std::vector<PresheafMap>& maps) {
  if (maps.size() != from.injections.size() || maps.size() != to.injections.size()) {
    throw Error(ErrorCode::InvalidMap, "one map per summand expected");
  }
  std::vector<PresheafMap> legs;
  for (std::size_t i = 0; i < maps.size(); ++i) legs.push_back(compose(to.injections[i], maps[i]));
  return copair(from, to.object, legs);
}

// ---------------------------------------------------------------------------

Quotient quotient(const PresheafPtr& object, const Relation& relation) {
  const auto& y = *object;
  const auto& c = *y.base;
  std::vector<UnionFind> classes;
  for (std::size_t a = 0; a < c.object_count(); ++a) classes.emplace_back(y.size(a));
  for (std::size_t a = 0; a < relation.size() && a < c.object_count(); ++a) {
    for (auto [l, r] : relation[a]) classes[a].unite(l, r);
  }
  // Saturate: e ~ e' in Y(b) forces Y(m)e ~ Y(m)e' in Y(a) for m: a → b.
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t m = 0; m < c.morphism_count(); ++m) {
      const std::size_t a = c.dom(m);
      const std::size_t b = c.cod(m);
      for (std::size_t e = 0; e < y.size(b); ++e) {
        const std::size_t r = classes[b].find(e);
        if (r != e && classes[a].unite(y.act(m, e), y.act(m, r))) changed = true;
      }
    }
  }

  Presheaf q{y.base, {}, {}};
  std::vector<std::vector<std::size_t>> projection;
  for (std::size_t a = 0; a < c.object_count(); ++a) {
    std::vector<std::string> names;
    std::vector<std::size_t> proj(y.size(a));
    std::vector<std::size_t> index(y.size(a), kNone);
    for (std::size_t e = 0; e < y.size(a); ++e) {
      const std::size_t r = classes[a].find(e);
      if (r == e) {
        index[e] = names.size();
        names.push_back(y.elements[a][e]);
      }
      proj[e] = index[r];
    }
    q.elements.push_back(std::move(names));
    projection.push_back(std::move(proj));
  }
  for (std::size_t m = 0; m < c.morphism_count(); ++m) {
    const std::size_t a = c.dom(m);
    const std::size_t b = c.cod(m);
    std::vector<std::size_t> act;
    for (std::size_t e = 0; e < y.size(b); ++e) {
      if (classes[b].find(e) == e) act.push_back(projection[a][y.act(m, e)]);
    }
    q.actions.push_back(std::move(act));
  }
  auto qp = freeze(std::move(q));
  return Quotient{qp, PresheafMap{object, qp, std::move(projection)}};
}

Quotient coequalizer(const PresheafMap& f, const PresheafMap& g) {
  if (!same_presheaf(f.source, g.source) || !same_presheaf(f.target, g.target)) {
    throw Error(ErrorCode::InvalidMap, "coequalizer needs a parallel pair");
  }
  Relation rel(f.components.size());
  for (std::size_t a = 0; a < f.components.size(); ++a) {
    for (std::size_t x = 0; x < f.components[a].size(); ++x) rel[a].emplace_back(f(a, x), g(a, x));
  }
  return quotient(f.target, rel);
}

Pushout pushout(const PresheafMap& f, const PresheafMap& g) {
  if (!same_presheaf(f.source, g.source)) throw Error(ErrorCode::InvalidMap, "pushout needs a common domain");
  const auto& base = f.source->base;
  const Coproduct sum = coproduct(base, {f.target, g.target});
  const Quotient q = coequalizer(compose(sum.injections[0], f), compose(sum.injections[1], g));
  return Pushout{q.object, compose(q.projection, sum.injections[0]), compose(q.projection, sum.injections[1])};
}

// ---------------------------------------------------------------------------

bool commutes(const Cocone& cocone) {
  const auto& d = cocone.diagram;
  if (cocone.legs.size() != d.nodes.size()) return false;
  for (std::size_t i = 0; i < d.nodes.size(); ++i) {
    if (!same_presheaf(cocone.legs[i].source, d.nodes[i]) || !same_presheaf(cocone.legs[i].target, cocone.apex)) {
      return false;
    }
    if (!is_natural(cocone.legs[i])) return false;
  }
  for (const auto& e : d.edges) {
    if (compose(cocone.legs[e.to], e.map).components != cocone.legs[e.from].components) return false;
  }
  return true;
}

Cocone finite_colimit(const Diagram& diagram) {
  for (const auto& e : diagram.edges) {
    if (e.from >= diagram.nodes.size() || e.to >= diagram.nodes.size() ||
        !same_presheaf(e.map.source, diagram.nodes[e.from]) || !same_presheaf(e.map.target, diagram.nodes[e.to])) {
      throw Error(ErrorCode::InvalidMap, "diagram edge does not match its nodes");
    }
  }
  const Coproduct sum = coproduct(diagram.base, diagram.nodes);
  Relation rel(diagram.base->object_count());
  for (const auto& e : diagram.edges) {
    const auto& from = sum.injections[e.from];
    const auto& to = sum.injections[e.to];
    for (std::size_t a = 0; a < rel.size(); ++a) {
      for (std::size_t x = 0; x < e.map.components[a].size(); ++x) {
        rel[a].emplace_back(from(a, x), to(a, e.map(a, x)));
      }
    }
  }
  const Quotient q = quotient(sum.object, rel);
  Cocone out{diagram, q.object, {}};
  for (const auto& inj : sum.injections) out.legs.push_back(compose(q.projection, inj));
  return out;
}

Cocone chain_colimit(const PresheafPtr& first, const std::vector<PresheafMap>& maps) {
  Diagram d{first->base, {first}, {}};
  for (std::size_t i = 0; i < maps.size(); ++i) {
    if (!same_presheaf(maps[i].source, d.nodes.back())) {
      throw Error(ErrorCode::InvalidMap, "chain is not composable at step " + std::to_string(i));
    }
    d.nodes.push_back(maps[i].target);
    d.edges.push_back({i, i + 1, maps[i]});
  }
  const PresheafPtr top = d.nodes.back();
  std::vector<PresheafMap> legs(d.nodes.size());
  legs.back() = identity_map(top);
  for (std::size_t i = maps.size(); i-- > 0;) legs[i] = compose(legs[i + 1], maps[i]);
  return Cocone{std::move(d), top, std::move(legs)};
}

// ---------------------------------------------------------------------------

bool jointly_surjective(const std::vector<PresheafMap>& legs) {
  if (legs.empty()) return true;
  const auto& apex = *legs.front().target;
  for (std::size_t a = 0; a < apex.elements.size(); ++a) {
    std::vector<char> hit(apex.size(a), 0);
    for (const auto& leg : legs) {
      for (std::size_t v : leg.components[a]) hit[v] = 1;
    }
    if (std::find(hit.begin(), hit.end(), 0) != hit.end()) return false;
  }
  return true;
}

std::optional<PresheafMap> mediating_map(const std::vector<PresheafMap>& legs, const PresheafPtr& target,
                                         const std::vector<PresheafMap>& competitor) {
  if (legs.size() != competitor.size()) return std::nullopt;
  if (legs.empty()) return std::nullopt;
  const PresheafPtr apex = legs.front().target;
  PresheafMap out{apex, target, {}};
  for (std::size_t a = 0; a < apex->elements.size(); ++a) {
    std::vector<std::size_t> comp(apex->size(a), kNone);
    for (std::size_t i = 0; i < legs.size(); ++i) {
      if (!same_presheaf(competitor[i].source, legs[i].source) || !same_presheaf(competitor[i].target, target)) {
        return std::nullopt;
      }
      for (std::size_t x = 0; x < legs[i].components[a].size(); ++x) {
        std::size_t& slot = comp[legs[i](a, x)];
        const std::size_t want = competitor[i](a, x);
        if (slot != kNone && slot != want) return std::nullopt;
        slot = want;
      }
    }
    if (std::find(comp.begin(), comp.end(), kNone) != comp.end()) return std::nullopt;
    out.components.push_back(std::move(comp));
  }
  if (!is_natural(out)) return std::nullopt;
  return out;
}

std::optional<PresheafMap> mediating_map(const Cocone& colimit, const PresheafPtr& target,
                                         const std::vector<PresheafMap>& competitor) {
  if (colimit.legs.empty()) {
    // empty diagram: the apex is initial and the unique map is from_empty
    if (colimit.apex->total_size() != 0) return std::nullopt;
    PresheafMap out{colimit.apex, target, std::vector<std::vector<std::size_t>>(colimit.apex->elements.size())};
    return out;
  }
  return mediating_map(colimit.legs, target, competitor);
}

// ---------------------------------------------------------------------------

CanonicalDiagram canonical_diagram(const CategoryPtr& base, const std::vector<PresheafPtr>& objects,
                                   const PresheafPtr& target, std::uint64_t budget) {
  CanonicalDiagram out;
  Diagram d{base, {}, {}};
  std::vector<std::vector<std::size_t>> entries_of(objects.size());
  for (std::size_t i = 0; i < objects.size(); ++i) {
    for (auto& m : enumerate_maps(objects[i], target, budget)) {
      entries_of[i].push_back(out.entries.size());
      out.entries.push_back({i, std::move(m)});
      d.nodes.push_back(objects[i]);
    }
  }
  // Morphisms of 𝒜↓K: h with map(e2)∘h = map(e1).
  for (std::size_t i = 0; i < objects.size(); ++i) {
    for (std::size_t k = 0; k < objects.size(); ++k) {
      if (entries_of[i].empty() || entries_of[k].empty()) continue;
      const auto hs = enumerate_maps(objects[i], objects[k], budget);
      for (std::size_t e1 : entries_of[i]) {
        for (std::size_t e2 : entries_of[k]) {
          for (const auto& h : hs) {
            if (compose(out.entries[e2].map, h).components == out.entries[e1].map.components) {
              d.edges.push_back({e1, e2, h});
            }
          }
        }
      }
    }
  }
  out.colimit = finite_colimit(d);
  std::vector<PresheafMap> competitor;
  for (const auto& e : out.entries) competitor.push_back(e.map);
  auto cmp = mediating_map(out.colimit, target, competitor);
  if (!cmp) throw Error(ErrorCode::InvalidMap, "canonical cocone has no comparison map");
  out.comparison = std::move(*cmp);
  return out;
}

}  // namespace deskcat
