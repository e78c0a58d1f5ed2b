#include "deskcat/construct.hpp"

#include <algorithm>
#include <map>
#include <tuple>

namespace deskcat {

namespace {

void require_common_target(const Functor& f, const Functor& g, const char* what) {
  if (!same_category(f.target, g.target)) {
    throw Error(ErrorCode::InvalidFunctor, std::string(what) + " needs functors with a common target");
  }
}

std::vector<std::size_t> isomorphisms(const FinCategory& c, std::size_t a, std::size_t b) {
  std::vector<std::size_t> out;
  for (std::size_t m : c.hom(a, b)) {
    if (c.is_isomorphism(m)) out.push_back(m);
  }
  return out;
}

}  // namespace

Pseudopullback pseudopullback(const Functor& f, const Functor& g) {
  require_common_target(f, g, "pseudopullback");
  const auto& k = *f.source;
  const auto& l = *g.source;
  const auto& m = *f.target;

  Pseudopullback out;
  for (std::size_t kk = 0; kk < k.object_count(); ++kk) {
    for (std::size_t ll = 0; ll < l.object_count(); ++ll) {
      for (std::size_t mm = 0; mm < m.object_count(); ++mm) {
        for (std::size_t fi : isomorphisms(m, f.object_map[kk], mm)) {
          for (std::size_t gi : isomorphisms(m, g.object_map[ll], mm)) out.objects.push_back({kk, ll, mm, fi, gi});
        }
      }
    }
  }
  std::vector<TupleMorphism> morphisms;
  for (std::size_t s = 0; s < out.objects.size(); ++s) {
    for (std::size_t d = 0; d < out.objects.size(); ++d) {
      const auto& x = out.objects[s];
      const auto& y = out.objects[d];
      for (std::size_t km : k.hom(x.k, y.k)) {
        for (std::size_t lm : l.hom(x.l, y.l)) {
          for (std::size_t mm : m.hom(x.m, y.m)) {
            if (m.compose(mm, x.f) == m.compose(y.f, f.morphism_map[km]) &&
                m.compose(mm, x.g) == m.compose(y.g, g.morphism_map[lm])) {
              morphisms.push_back({s, d, {km, lm, mm}});
            }
          }
        }
      }
    }
  }
  const FinCategory* parts[] = {&k, &l, &m};
  out.category = std::make_shared<const FinCategory>(build_tuple_category(parts, out.objects.size(), morphisms));
  std::vector<std::size_t> lo, ro, lm, rm;
  for (const auto& o : out.objects) {
    lo.push_back(o.k);
    ro.push_back(o.l);
  }
  for (const auto& t : morphisms) {
    lm.push_back(t.parts[0]);
    rm.push_back(t.parts[1]);
  }
  out.left_projection = Functor{out.category, f.source, std::move(lo), std::move(lm)};
  out.right_projection = Functor{out.category, g.source, std::move(ro), std::move(rm)};
  return out;
}

StrictPullback strict_pullback(const Functor& f, const Functor& g) {
  require_common_target(f, g, "pullback");
  const auto& k = *f.source;
  const auto& l = *g.source;
  StrictPullback out;
  for (std::size_t kk = 0; kk < k.object_count(); ++kk) {
    for (std::size_t ll = 0; ll < l.object_count(); ++ll) {
      if (f.object_map[kk] == g.object_map[ll]) out.objects.emplace_back(kk, ll);
    }
  }
  std::vector<TupleMorphism> morphisms;
  for (std::size_t s = 0; s < out.objects.size(); ++s) {
    for (std::size_t d = 0; d < out.objects.size(); ++d) {
      for (std::size_t km : k.hom(out.objects[s].first, out.objects[d].first)) {
        for (std::size_t lm : l.hom(out.objects[s].second, out.objects[d].second)) {
          if (f.morphism_map[km] == g.morphism_map[lm]) morphisms.push_back({s, d, {km, lm}});
        }
      }
    }
  }
  const FinCategory* parts[] = {&k, &l};
  out.category = std::make_shared<const FinCategory>(build_tuple_category(parts, out.objects.size(), morphisms));
  std::vector<std::size_t> lo, ro, lm, rm;
  for (const auto& [a, b] : out.objects) {
    lo.push_back(a);
    ro.push_back(b);
  }
  for (const auto& t : morphisms) {
    lm.push_back(t.parts[0]);
    rm.push_back(t.parts[1]);
  }
  out.left_projection = Functor{out.category, f.source, std::move(lo), std::move(lm)};
  out.right_projection = Functor{out.category, g.source, std::move(ro), std::move(rm)};
  return out;
}

// ---------------------------------------------------------------------------

FullSubcategory skeleton(const CategoryPtr& category) {
  const auto& c = *category;
  std::vector<std::size_t> reps;
  for (std::size_t a = 0; a < c.object_count(); ++a) {
    const bool seen = std::any_of(reps.begin(), reps.end(),
                                  [&](std::size_t r) { return !isomorphisms(c, r, a).empty(); });
    if (!seen) reps.push_back(a);
  }
  return full_subcategory(category, std::move(reps));
}

namespace {

class IsoSearch {
 public:
  IsoSearch(const FinCategory& lhs, const FinCategory& rhs, std::uint64_t budget)
      : x_(lhs), y_(rhs), budget_(budget) {}

  bool run() {
    if (x_.object_count() != y_.object_count() || x_.morphism_count() != y_.morphism_count()) return false;
    object_map_.assign(x_.object_count(), kNone);
    used_object_.assign(y_.object_count(), 0);
    return objects(0);
  }

 private:
  void tick() {
    if (++nodes_ > budget_) throw Error(ErrorCode::SearchExceeded, "category isomorphism search exceeded its budget");
  }

  bool objects(std::size_t i) {
    if (i == x_.object_count()) {
      morphism_map_.assign(x_.morphism_count(), kNone);
      used_morphism_.assign(y_.morphism_count(), 0);
      return morphisms(0);
    }
    for (std::size_t j = 0; j < y_.object_count(); ++j) {
      if (used_object_[j]) continue;
      tick();
      bool ok = x_.hom(i, i).size() == y_.hom(j, j).size();
      for (std::size_t p = 0; ok && p < i; ++p) {
        const std::size_t q = object_map_[p];
        ok = x_.hom(i, p).size() == y_.hom(j, q).size() && x_.hom(p, i).size() == y_.hom(q, j).size();
      }
      if (!ok) continue;
      object_map_[i] = j;
      used_object_[j] = 1;
      if (objects(i + 1)) return true;
      used_object_[j] = 0;
      object_map_[i] = kNone;
    }
    return false;
  }

  bool consistent(std::size_t m) const {
    // every composite among assigned morphisms involving m must be preserved
    auto check = [&](std::size_t g, std::size_t f) {
      const std::size_t gf = x_.compose(g, f);
      if (morphism_map_[g] == kNone || morphism_map_[f] == kNone || morphism_map_[gf] == kNone) return true;
      return y_.compose(morphism_map_[g], morphism_map_[f]) == morphism_map_[gf];
    };
    for (std::size_t g : x_.morphisms_from(x_.cod(m))) {
      if (!check(g, m)) return false;
    }
    for (std::size_t f : x_.morphisms_into(x_.dom(m))) {
      if (!check(m, f)) return false;
    }
    // m as a composite
    for (std::size_t b = 0; b < x_.object_count(); ++b) {
      for (std::size_t f : x_.hom(x_.dom(m), b)) {
        for (std::size_t g : x_.hom(b, x_.cod(m))) {
          if (x_.compose(g, f) == m && !check(g, f)) return false;
        }
      }
    }
    return true;
  }

  bool morphisms(std::size_t m) {
    if (m == x_.morphism_count()) return true;
    const std::size_t a = object_map_[x_.dom(m)];
    const std::size_t b = object_map_[x_.cod(m)];
    std::vector<std::size_t> candidates;
    if (x_.is_identity(m)) {
      candidates.push_back(y_.identity(a));
    } else {
      for (std::size_t n : y_.hom(a, b)) {
        if (!y_.is_identity(n)) candidates.push_back(n);
      }
    }
    for (std::size_t n : candidates) {
      if (used_morphism_[n]) continue;
      tick();
      morphism_map_[m] = n;
      used_morphism_[n] = 1;
      if (consistent(m) && morphisms(m + 1)) return true;
      used_morphism_[n] = 0;
      morphism_map_[m] = kNone;
    }
    return false;
  }

  const FinCategory& x_;
  const FinCategory& y_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  std::vector<std::size_t> object_map_;
  std::vector<char> used_object_;
  std::vector<std::size_t> morphism_map_;
  std::vector<char> used_morphism_;
};

}  // namespace

bool equivalent_categories(const FinCategory& lhs, const FinCategory& rhs, std::uint64_t budget) {
  if (lhs.object_count() > kEquivalenceObjectBound || rhs.object_count() > kEquivalenceObjectBound) {
    throw Error(ErrorCode::SearchExceeded, "equivalence check is limited to " +
                                               std::to_string(kEquivalenceObjectBound) + " objects");
  }
  auto l = skeleton(std::make_shared<const FinCategory>(lhs));
  auto r = skeleton(std::make_shared<const FinCategory>(rhs));
  return IsoSearch(*l.category, *r.category, budget).run();
}

EquivalenceReport pullback_equiv_check(const Functor& f, const Functor& g, std::uint64_t budget) {
  const auto strict = strict_pullback(f, g);
  const auto pseudo = pseudopullback(f, g);
  EquivalenceReport report;
  report.strict_objects = strict.objects.size();
  report.pseudo_objects = pseudo.objects.size();
  report.equivalent = equivalent_categories(*strict.category, *pseudo.category, budget);

  const auto& m = *f.target;
  const auto& p = *pseudo.category;
  const auto& s = *strict.category;
  std::vector<std::size_t> image;
  for (const auto& [k, l] : strict.objects) {
    const std::size_t mm = f.object_map[k];
    const std::size_t id = m.identity(mm);
    std::size_t found = kNone;
    for (std::size_t i = 0; i < pseudo.objects.size(); ++i) {
      const auto& o = pseudo.objects[i];
      if (o.k == k && o.l == l && o.m == mm && o.f == id && o.g == id) found = i;
    }
    image.push_back(found);
  }
  report.comparison_fully_faithful = true;
  for (std::size_t a = 0; a < image.size(); ++a) {
    for (std::size_t b = 0; b < image.size(); ++b) {
      if (s.hom(a, b).size() != p.hom(image[a], image[b]).size()) report.comparison_fully_faithful = false;
    }
  }
  report.comparison_essentially_surjective = true;
  for (std::size_t o = 0; o < p.object_count(); ++o) {
    const bool reached = std::any_of(image.begin(), image.end(),
                                     [&](std::size_t i) { return !isomorphisms(p, i, o).empty(); });
    if (!reached) report.comparison_essentially_surjective = false;
  }
  return report;
}

// ---------------------------------------------------------------------------

Inserter inserter(const Functor& f, const Functor& g) {
  if (!same_category(f.source, g.source) || !same_category(f.target, g.target)) {
    throw Error(ErrorCode::InvalidFunctor, "inserter needs parallel functors");
  }
  const auto& k = *f.source;
  const auto& m = *f.target;
  Inserter out;
  for (std::size_t kk = 0; kk < k.object_count(); ++kk) {
    for (std::size_t a : m.hom(f.object_map[kk], g.object_map[kk])) out.objects.push_back({kk, a});
  }
  std::vector<TupleMorphism> morphisms;
  for (std::size_t s = 0; s < out.objects.size(); ++s) {
    for (std::size_t d = 0; d < out.objects.size(); ++d) {
      const auto& x = out.objects[s];
      const auto& y = out.objects[d];
      for (std::size_t km : k.hom(x.k, y.k)) {
        if (m.compose(g.morphism_map[km], x.arrow) == m.compose(y.arrow, f.morphism_map[km])) {
          morphisms.push_back({s, d, {km}});
        }
      }
    }
  }
  const FinCategory* parts[] = {&k};
  out.category = std::make_shared<const FinCategory>(build_tuple_category(parts, out.objects.size(), morphisms));
  std::vector<std::size_t> om, mm;
  for (const auto& o : out.objects) om.push_back(o.k);
  for (const auto& t : morphisms) mm.push_back(t.parts[0]);
  out.projection = Functor{out.category, f.source, std::move(om), std::move(mm)};
  return out;
}

FullSubcategory equifier(const NatTransformation& phi, const NatTransformation& psi) {
  if (!same_functor(phi.source, psi.source) || !same_functor(phi.target, psi.target)) {
    throw Error(ErrorCode::InvalidNaturalTransformation, "equifier needs parallel transformations");
  }
  std::vector<std::size_t> keep;
  for (std::size_t k = 0; k < phi.components.size(); ++k) {
    if (phi.components[k] == psi.components[k]) keep.push_back(k);
  }
  return full_subcategory(phi.source.source, std::move(keep));
}

// ---------------------------------------------------------------------------

std::vector<std::size_t> cone_morphisms(const Functor& diagram, const Cone& from, const Cone& to) {
  const auto& c = *diagram.target;
  std::vector<std::size_t> out;
  for (std::size_t h : c.hom(from.apex, to.apex)) {
    bool ok = true;
    for (std::size_t j = 0; ok && j < from.legs.size(); ++j) ok = c.compose(to.legs[j], h) == from.legs[j];
    if (ok) out.push_back(h);
  }
  return out;
}

namespace {

void extend_cones(const Functor& d, std::size_t apex, std::vector<std::size_t>& legs, std::size_t j,
                  std::vector<Cone>& out) {
  const auto& shape = *d.source;
  const auto& c = *d.target;
  if (j == shape.object_count()) {
    out.push_back({apex, legs});
    return;
  }
  for (std::size_t leg : c.hom(apex, d.object_map[j])) {
    legs[j] = leg;
    bool ok = true;
    for (std::size_t a = 0; ok && a < shape.morphism_count(); ++a) {
      const std::size_t s = shape.dom(a);
      const std::size_t t = shape.cod(a);
      if (s > j || t > j) continue;
      ok = c.compose(d.morphism_map[a], legs[s]) == legs[t];
    }
    if (ok) extend_cones(d, apex, legs, j + 1, out);
  }
}

}  // namespace

ConeSetReport approximately_complete_check(const Functor& diagram) {
  const auto& c = *diagram.target;
  ConeSetReport report;
  std::vector<std::size_t> legs(diagram.source->object_count(), kNone);
  for (std::size_t apex = 0; apex < c.object_count(); ++apex) extend_cones(diagram, apex, legs, 0, report.cones);

  const std::size_t n = report.cones.size();
  // into[s][c]: cone c factors through cone s
  std::vector<std::vector<char>> into(n, std::vector<char>(n, 0));
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t k = 0; k < n; ++k) {
      into[s][k] = !cone_morphisms(diagram, report.cones[k], report.cones[s]).empty();
    }
  }
  std::vector<char> covered(n, 0);
  std::size_t remaining = n;
  while (remaining > 0) {
    std::size_t best = kNone;
    std::size_t best_gain = 0;
    for (std::size_t s = 0; s < n; ++s) {
      std::size_t gain = 0;
      for (std::size_t k = 0; k < n; ++k) gain += (!covered[k] && into[s][k]) ? 1 : 0;
      if (gain > best_gain) {
        best = s;
        best_gain = gain;
      }
    }
    report.weakly_initial.push_back(best);
    for (std::size_t k = 0; k < n; ++k) {
      if (!covered[k] && into[best][k]) {
        covered[k] = 1;
        --remaining;
      }
    }
  }
  report.covers = true;
  for (std::size_t k = 0; k < n; ++k) {
    const bool hit = std::any_of(report.weakly_initial.begin(), report.weakly_initial.end(),
                                 [&](std::size_t s) { return into[s][k]; });
    if (!hit) report.covers = false;
  }
  return report;
}

std::vector<ConeSetReport> approximately_complete_check(const std::vector<Functor>& diagrams) {
  std::vector<ConeSetReport> out;
  for (const auto& d : diagrams) out.push_back(approximately_complete_check(d));
  return out;
}

}  // namespace deskcat
