#include "deskcat/fincat.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <tuple>

namespace deskcat {

namespace {

constexpr std::uint32_t kAbsent = 0xffffffffu;

// Above this many composable triples associativity is sampled instead of
// enumerated.
constexpr std::uint64_t kExhaustiveTripleLimit = 50'000'000;
constexpr std::uint64_t kSampledTriples = 2'000'000;

}  // namespace

FinCategory::FinCategory() = default;

std::size_t FinCategory::compose(std::size_t g, std::size_t f) const {
  const std::size_t n = names_.size();
  if (g >= n || f >= n) throw Error(ErrorCode::UnknownName, "morphism index out of range");
  const std::uint32_t gf = table_[g * n + f];
  if (gf == kAbsent) {
    throw Error(ErrorCode::BadComposite, names_[g] + " and " + names_[f] + " are not composable");
  }
  return gf;
}

std::optional<std::size_t> FinCategory::find_object(std::string_view name) const {
  auto it = object_lookup_.find(std::string(name));
  if (it == object_lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> FinCategory::find_morphism(std::string_view name) const {
  auto it = morphism_lookup_.find(std::string(name));
  if (it == morphism_lookup_.end()) return std::nullopt;
  return it->second;
}

std::size_t FinCategory::object_index(std::string_view name) const {
  if (auto idx = find_object(name)) return *idx;
  throw Error(ErrorCode::UnknownName, "unknown object '" + std::string(name) + "'");
}

std::size_t FinCategory::morphism_index(std::string_view name) const {
  if (auto idx = find_morphism(name)) return *idx;
  throw Error(ErrorCode::UnknownName, "unknown morphism '" + std::string(name) + "'");
}

std::optional<std::size_t> FinCategory::inverse(std::size_t m) const {
  const std::size_t a = dom(m);
  const std::size_t b = cod(m);
  for (std::size_t candidate : hom(b, a)) {
    if (compose(candidate, m) == identity_[a] && compose(m, candidate) == identity_[b]) {
      return candidate;
    }
  }
  return std::nullopt;
}

CategoryData FinCategory::data() const {
  CategoryData out;
  out.objects = objects_;
  for (std::size_t m = 0; m < names_.size(); ++m) {
    out.morphisms.push_back({names_[m], objects_[dom_[m]], objects_[cod_[m]]});
  }
  for (std::size_t a = 0; a < objects_.size(); ++a) out.identities[objects_[a]] = names_[identity_[a]];
  for (std::size_t g = 0; g < names_.size(); ++g) {
    for (std::size_t f : into_[dom_[g]]) {
      out.compose.push_back({names_[g], names_[f], names_[compose(g, f)]});
    }
  }
  return out;
}

bool operator==(const FinCategory& lhs, const FinCategory& rhs) {
  return lhs.objects_ == rhs.objects_ && lhs.names_ == rhs.names_ && lhs.dom_ == rhs.dom_ &&
         lhs.cod_ == rhs.cod_ && lhs.identity_ == rhs.identity_ && lhs.table_ == rhs.table_;
}

bool same_category(const FinCategory& lhs, const FinCategory& rhs) { return lhs == rhs; }

// ---------------------------------------------------------------------------

std::size_t CategoryBuilder::add_object(std::string name) {
  objects_.push_back(std::move(name));
  identity_.push_back(kNone);
  return objects_.size() - 1;
}

std::size_t CategoryBuilder::add_morphism(std::string name, std::size_t dom, std::size_t cod) {
  if (dom >= objects_.size() || cod >= objects_.size()) {
    throw Error(ErrorCode::UnknownName, "morphism '" + name + "' has an unknown endpoint");
  }
  names_.push_back(std::move(name));
  dom_.push_back(dom);
  cod_.push_back(cod);
  return names_.size() - 1;
}

void CategoryBuilder::set_identity(std::size_t object, std::size_t morphism) {
  identity_.at(object) = morphism;
}

void CategoryBuilder::set_composite(std::size_t g, std::size_t f, std::size_t gf) {
  composites_.push_back({g, f, gf});
}

FinCategory CategoryBuilder::build() && {
  FinCategory c;
  const std::size_t n_obj = objects_.size();
  const std::size_t n_mor = names_.size();
  if (n_mor >= kAbsent) throw Error(ErrorCode::BadComposite, "too many morphisms");

  for (std::size_t a = 0; a < n_obj; ++a) {
    if (!c.object_lookup_.emplace(objects_[a], a).second) {
      throw Error(ErrorCode::DuplicateName, "object '" + objects_[a] + "' is listed twice");
    }
  }
  for (std::size_t m = 0; m < n_mor; ++m) {
    if (!c.morphism_lookup_.emplace(names_[m], m).second) {
      throw Error(ErrorCode::DuplicateName, "morphism '" + names_[m] + "' is listed twice");
    }
  }
  for (std::size_t a = 0; a < n_obj; ++a) {
    const std::size_t id = identity_[a];
    if (id == kNone || id >= n_mor) {
      throw Error(ErrorCode::IdentityLawViolation, "object '" + objects_[a] + "' has no identity");
    }
    if (dom_[id] != a || cod_[id] != a) {
      throw Error(ErrorCode::IdentityLawViolation,
                  "identity '" + names_[id] + "' is not an endomorphism of '" + objects_[a] + "'");
    }
  }

  c.table_.assign(n_mor * n_mor, kAbsent);
  for (const auto& [g, f, gf] : composites_) {
    if (g >= n_mor || f >= n_mor || gf >= n_mor) {
      throw Error(ErrorCode::UnknownName, "composite refers to an unknown morphism");
    }
    if (cod_[f] != dom_[g]) {
      throw Error(ErrorCode::BadComposite,
                  "composite listed for non-composable pair (" + names_[g] + ", " + names_[f] + ")");
    }
    if (dom_[gf] != dom_[f] || cod_[gf] != cod_[g]) {
      throw Error(ErrorCode::BadComposite, names_[g] + "∘" + names_[f] + " = " + names_[gf] +
                                               " does not land in the right hom-set");
    }
    std::uint32_t& slot = c.table_[g * n_mor + f];
    if (slot != kAbsent && slot != gf) {
      throw Error(ErrorCode::BadComposite,
                  "conflicting composites for (" + names_[g] + ", " + names_[f] + ")");
    }
    slot = static_cast<std::uint32_t>(gf);
  }

  c.objects_ = std::move(objects_);
  c.names_ = std::move(names_);
  c.dom_ = std::move(dom_);
  c.cod_ = std::move(cod_);
  c.identity_ = std::move(identity_);
  c.hom_.assign(n_obj * n_obj, {});
  c.into_.assign(n_obj, {});
  c.from_.assign(n_obj, {});
  for (std::size_t m = 0; m < n_mor; ++m) {
    c.hom_[c.dom_[m] * n_obj + c.cod_[m]].push_back(m);
    c.into_[c.cod_[m]].push_back(m);
    c.from_[c.dom_[m]].push_back(m);
  }

  const auto& names = c.names_;
  for (std::size_t g = 0; g < n_mor; ++g) {
    for (std::size_t f : c.into_[c.dom_[g]]) {
      if (c.table_[g * n_mor + f] == kAbsent) {
        throw Error(ErrorCode::MissingComposite,
                    "no composite for " + names[g] + "∘" + names[f]);
      }
    }
  }

  for (std::size_t f = 0; f < n_mor; ++f) {
    const std::size_t id_dom = c.identity_[c.dom_[f]];
    const std::size_t id_cod = c.identity_[c.cod_[f]];
    if (c.table_[f * n_mor + id_dom] != f) {
      throw Error(ErrorCode::IdentityLawViolation, names[f] + "∘" + names[id_dom] + " != " + names[f]);
    }
    if (c.table_[id_cod * n_mor + f] != f) {
      throw Error(ErrorCode::IdentityLawViolation, names[id_cod] + "∘" + names[f] + " != " + names[f]);
    }
  }

  auto check_triple = [&](std::size_t h, std::size_t g, std::size_t f) {
    const std::size_t gf = c.table_[g * n_mor + f];
    const std::size_t hg = c.table_[h * n_mor + g];
    if (c.table_[h * n_mor + gf] != c.table_[hg * n_mor + f]) {
      throw Error(ErrorCode::NonAssociative,
                  names[h] + "∘(" + names[g] + "∘" + names[f] + ") != (" + names[h] + "∘" +
                      names[g] + ")∘" + names[f]);
    }
  };

  std::uint64_t triples = 0;
  for (std::size_t g = 0; g < n_mor; ++g) {
    triples += static_cast<std::uint64_t>(c.into_[c.dom_[g]].size()) * c.from_[c.cod_[g]].size();
  }
  if (triples <= kExhaustiveTripleLimit) {
    for (std::size_t g = 0; g < n_mor; ++g) {
      for (std::size_t f : c.into_[c.dom_[g]]) {
        for (std::size_t h : c.from_[c.cod_[g]]) check_triple(h, g, f);
      }
    }
  } else {
    std::mt19937_64 rng(0x5eedULL);
    std::uniform_int_distribution<std::size_t> pick(0, n_mor - 1);
    for (std::uint64_t i = 0; i < kSampledTriples; ++i) {
      const std::size_t g = pick(rng);
      const auto& ins = c.into_[c.dom_[g]];
      const auto& outs = c.from_[c.cod_[g]];
      const std::size_t f = ins[std::uniform_int_distribution<std::size_t>(0, ins.size() - 1)(rng)];
      const std::size_t h = outs[std::uniform_int_distribution<std::size_t>(0, outs.size() - 1)(rng)];
      check_triple(h, g, f);
    }
  }
  return c;
}

FinCategory validate_category(const CategoryData& data) {
  CategoryBuilder b;
  std::unordered_map<std::string, std::size_t> objects;
  for (const auto& name : data.objects) {
    const std::size_t idx = b.add_object(name);
    if (!objects.emplace(name, idx).second) {
      throw Error(ErrorCode::DuplicateName, "object '" + name + "' is listed twice");
    }
  }
  auto object = [&](const std::string& name) {
    auto it = objects.find(name);
    if (it == objects.end()) throw Error(ErrorCode::UnknownName, "unknown object '" + name + "'");
    return it->second;
  };
  std::unordered_map<std::string, std::size_t> morphisms;
  for (const auto& m : data.morphisms) {
    const std::size_t idx = b.add_morphism(m.name, object(m.dom), object(m.cod));
    if (!morphisms.emplace(m.name, idx).second) {
      throw Error(ErrorCode::DuplicateName, "morphism '" + m.name + "' is listed twice");
    }
  }
  auto morphism = [&](const std::string& name) {
    auto it = morphisms.find(name);
    if (it == morphisms.end()) throw Error(ErrorCode::UnknownName, "unknown morphism '" + name + "'");
    return it->second;
  };
  for (const auto& [obj, mor] : data.identities) b.set_identity(object(obj), morphism(mor));
  for (const auto& [g, f, gf] : data.compose) b.set_composite(morphism(g), morphism(f), morphism(gf));
  return std::move(b).build();
}

// ---------------------------------------------------------------------------

std::vector<std::vector<std::size_t>> isotone_maps(std::size_t n, std::size_t m) {
  std::vector<std::vector<std::size_t>> out;
  if (n == 0) {
    out.emplace_back();
    return out;
  }
  if (m == 0) return out;
  std::vector<std::size_t> seq(n, 0);
  while (true) {
    out.push_back(seq);
    std::size_t i = n;
    while (i > 0 && seq[i - 1] == m - 1) --i;
    if (i == 0) break;
    const std::size_t v = seq[i - 1] + 1;
    for (std::size_t k = i - 1; k < n; ++k) seq[k] = v;
  }
  return out;
}

FinCategory materialize(const ProceduralCategory& category, std::size_t window) {
  CategoryBuilder b;
  for (std::size_t a = 0; a < window; ++a) b.add_object(category.object_name(a));
  std::vector<std::size_t> first(window * window, 0);
  for (std::size_t a = 0; a < window; ++a) {
    for (std::size_t c = 0; c < window; ++c) {
      const std::size_t n = category.hom_size(a, c);
      std::size_t idx = kNone;
      for (std::size_t i = 0; i < n; ++i) {
        const std::size_t m = b.add_morphism(category.morphism_name(a, c, i), a, c);
        if (i == 0) idx = m;
      }
      first[a * window + c] = idx;
    }
  }
  try {
    for (std::size_t a = 0; a < window; ++a) {
      const std::size_t id = category.identity(a);
      if (id >= category.hom_size(a, a)) {
        throw Error(ErrorCode::IdentityLawViolation, "identity oracle out of range");
      }
      b.set_identity(a, first[a * window + a] + id);
    }
    for (std::size_t a = 0; a < window; ++a) {
      for (std::size_t mid = 0; mid < window; ++mid) {
        const std::size_t n_f = category.hom_size(a, mid);
        for (std::size_t c = 0; c < window; ++c) {
          const std::size_t n_g = category.hom_size(mid, c);
          const std::size_t n_gf = category.hom_size(a, c);
          for (std::size_t g = 0; g < n_g; ++g) {
            for (std::size_t f = 0; f < n_f; ++f) {
              const std::size_t gf = category.compose(a, mid, c, g, f);
              if (gf >= n_gf) throw Error(ErrorCode::BadComposite, "compose oracle out of range");
              b.set_composite(first[mid * window + c] + g, first[a * window + mid] + f,
                              first[a * window + c] + gf);
            }
          }
        }
      }
    }
    return std::move(b).build();
  } catch (const Error& e) {
    throw Error(ErrorCode::OracleInconsistent,
                category.name + " window " + std::to_string(window) + ": " + e.what());
  }
}

ProceduralCategory ordinal_category() {
  // Cached per (n, m): the isotone maps and a position lookup.
  struct Cache {
    std::map<std::pair<std::size_t, std::size_t>, std::vector<std::vector<std::size_t>>> maps;
    std::map<std::pair<std::size_t, std::size_t>, std::map<std::vector<std::size_t>, std::size_t>> pos;
    const std::vector<std::vector<std::size_t>>& get(std::size_t n, std::size_t m) {
      auto key = std::make_pair(n, m);
      auto it = maps.find(key);
      if (it == maps.end()) {
        it = maps.emplace(key, isotone_maps(n, m)).first;
        auto& p = pos[key];
        for (std::size_t i = 0; i < it->second.size(); ++i) p.emplace(it->second[i], i);
      }
      return it->second;
    }
  };
  auto cache = std::make_shared<Cache>();

  ProceduralCategory p;
  p.name = "ordinals";
  p.object_name = [](std::size_t a) { return std::to_string(a); };
  p.hom_size = [cache](std::size_t a, std::size_t b) { return cache->get(a, b).size(); };
  p.morphism_name = [cache](std::size_t a, std::size_t b, std::size_t i) {
    const auto& seq = cache->get(a, b).at(i);
    std::string name = std::to_string(a) + ">" + std::to_string(b) + ":";
    for (std::size_t k = 0; k < seq.size(); ++k) {
      if (b > 10 && k > 0) name += ",";
      name += std::to_string(seq[k]);
    }
    return name;
  };
  p.identity = [cache](std::size_t a) {
    std::vector<std::size_t> id(a);
    for (std::size_t k = 0; k < a; ++k) id[k] = k;
    cache->get(a, a);
    return cache->pos.at({a, a}).at(id);
  };
  p.compose = [cache](std::size_t a, std::size_t b, std::size_t c, std::size_t g, std::size_t f) {
    const auto& fs = cache->get(a, b).at(f);
    const auto& gs = cache->get(b, c).at(g);
    std::vector<std::size_t> gf(a);
    for (std::size_t k = 0; k < a; ++k) gf[k] = gs[fs[k]];
    cache->get(a, c);
    return cache->pos.at({a, c}).at(gf);
  };
  return p;
}

// ---------------------------------------------------------------------------

Functor make_functor(CategoryPtr source, CategoryPtr target, std::vector<std::size_t> object_map,
                     std::vector<std::size_t> morphism_map) {
  if (!source || !target) throw Error(ErrorCode::InvalidFunctor, "missing source or target");
  const auto& s = *source;
  const auto& t = *target;
  if (object_map.size() != s.object_count() || morphism_map.size() != s.morphism_count()) {
    throw Error(ErrorCode::InvalidFunctor, "object or morphism map has the wrong size");
  }
  for (std::size_t a = 0; a < s.object_count(); ++a) {
    if (object_map[a] >= t.object_count()) throw Error(ErrorCode::InvalidFunctor, "object image out of range");
  }
  for (std::size_t m = 0; m < s.morphism_count(); ++m) {
    const std::size_t fm = morphism_map[m];
    if (fm >= t.morphism_count()) throw Error(ErrorCode::InvalidFunctor, "morphism image out of range");
    if (t.dom(fm) != object_map[s.dom(m)] || t.cod(fm) != object_map[s.cod(m)]) {
      throw Error(ErrorCode::InvalidFunctor, "image of " + s.morphism_name(m) + " has wrong endpoints");
    }
  }
  for (std::size_t a = 0; a < s.object_count(); ++a) {
    if (morphism_map[s.identity(a)] != t.identity(object_map[a])) {
      throw Error(ErrorCode::InvalidFunctor, "identity of " + s.object_name(a) + " is not preserved");
    }
  }
  for (std::size_t g = 0; g < s.morphism_count(); ++g) {
    for (std::size_t f : s.morphisms_into(s.dom(g))) {
      if (morphism_map[s.compose(g, f)] != t.compose(morphism_map[g], morphism_map[f])) {
        throw Error(ErrorCode::InvalidFunctor,
                    "composite " + s.morphism_name(g) + "∘" + s.morphism_name(f) + " is not preserved");
      }
    }
  }
  return Functor{std::move(source), std::move(target), std::move(object_map), std::move(morphism_map)};
}

Functor identity_functor(CategoryPtr category) {
  std::vector<std::size_t> objects(category->object_count());
  std::vector<std::size_t> morphisms(category->morphism_count());
  for (std::size_t i = 0; i < objects.size(); ++i) objects[i] = i;
  for (std::size_t i = 0; i < morphisms.size(); ++i) morphisms[i] = i;
  return Functor{category, category, std::move(objects), std::move(morphisms)};
}

Functor constant_functor(CategoryPtr source, CategoryPtr target, std::size_t object) {
  std::vector<std::size_t> objects(source->object_count(), object);
  std::vector<std::size_t> morphisms(source->morphism_count(), target->identity(object));
  return Functor{std::move(source), std::move(target), std::move(objects), std::move(morphisms)};
}

Functor compose(const Functor& second, const Functor& first) {
  if (!same_category(first.target, second.source)) {
    throw Error(ErrorCode::InvalidFunctor, "functors are not composable");
  }
  Functor out{first.source, second.target, {}, {}};
  for (std::size_t a : first.object_map) out.object_map.push_back(second.object_map[a]);
  for (std::size_t m : first.morphism_map) out.morphism_map.push_back(second.morphism_map[m]);
  return out;
}

bool same_functor(const Functor& lhs, const Functor& rhs) {
  return same_category(lhs.source, rhs.source) && same_category(lhs.target, rhs.target) &&
         lhs.object_map == rhs.object_map && lhs.morphism_map == rhs.morphism_map;
}

NatTransformation make_nat_transformation(Functor source, Functor target,
                                          std::vector<std::size_t> components) {
  if (!same_category(source.source, target.source) || !same_category(source.target, target.target)) {
    throw Error(ErrorCode::InvalidNaturalTransformation, "functors are not parallel");
  }
  const auto& s = *source.source;
  const auto& t = *source.target;
  if (components.size() != s.object_count()) {
    throw Error(ErrorCode::InvalidNaturalTransformation, "wrong number of components");
  }
  for (std::size_t a = 0; a < s.object_count(); ++a) {
    const std::size_t c = components[a];
    if (c >= t.morphism_count() || t.dom(c) != source.object_map[a] ||
        t.cod(c) != target.object_map[a]) {
      throw Error(ErrorCode::InvalidNaturalTransformation,
                  "component at " + s.object_name(a) + " has wrong endpoints");
    }
  }
  for (std::size_t m = 0; m < s.morphism_count(); ++m) {
    const std::size_t lhs = t.compose(target.morphism_map[m], components[s.dom(m)]);
    const std::size_t rhs = t.compose(components[s.cod(m)], source.morphism_map[m]);
    if (lhs != rhs) {
      throw Error(ErrorCode::InvalidNaturalTransformation,
                  "naturality fails at " + s.morphism_name(m));
    }
  }
  return NatTransformation{std::move(source), std::move(target), std::move(components)};
}

// ---------------------------------------------------------------------------

CategoryPtr terminal_category() {
  static const CategoryPtr instance = [] {
    CategoryBuilder b;
    b.add_object("*");
    b.set_identity(0, b.add_morphism("id", 0, 0));
    b.set_composite(0, 0, 0);
    return std::make_shared<const FinCategory>(std::move(b).build());
  }();
  return instance;
}

FinCategory opposite(const FinCategory& category) {
  CategoryBuilder b;
  for (std::size_t a = 0; a < category.object_count(); ++a) b.add_object(category.object_name(a));
  for (std::size_t m = 0; m < category.morphism_count(); ++m) {
    b.add_morphism(category.morphism_name(m), category.cod(m), category.dom(m));
  }
  for (std::size_t a = 0; a < category.object_count(); ++a) b.set_identity(a, category.identity(a));
  // g^op∘f^op = (f∘g)^op whenever dom f = cod g in the original.
  for (std::size_t f = 0; f < category.morphism_count(); ++f) {
    for (std::size_t g : category.morphisms_into(category.dom(f))) {
      b.set_composite(g, f, category.compose(f, g));
    }
  }
  return std::move(b).build();
}

FullSubcategory full_subcategory(const CategoryPtr& category, std::vector<std::size_t> objects) {
  const auto& c = *category;
  CategoryBuilder b;
  std::vector<std::size_t> local(c.object_count(), kNone);
  for (std::size_t a : objects) {
    if (a >= c.object_count()) throw Error(ErrorCode::UnknownName, "object index out of range");
    if (local[a] != kNone) throw Error(ErrorCode::DuplicateName, "object listed twice: " + c.object_name(a));
    local[a] = b.add_object(c.object_name(a));
  }
  std::vector<std::size_t> morphism_map;
  std::vector<std::size_t> local_mor(c.morphism_count(), kNone);
  for (std::size_t m = 0; m < c.morphism_count(); ++m) {
    if (local[c.dom(m)] == kNone || local[c.cod(m)] == kNone) continue;
    local_mor[m] = b.add_morphism(c.morphism_name(m), local[c.dom(m)], local[c.cod(m)]);
    morphism_map.push_back(m);
  }
  for (std::size_t a : objects) b.set_identity(local[a], local_mor[c.identity(a)]);
  for (std::size_t g : morphism_map) {
    for (std::size_t f : c.morphisms_into(c.dom(g))) {
      if (local_mor[f] == kNone) continue;
      b.set_composite(local_mor[g], local_mor[f], local_mor[c.compose(g, f)]);
    }
  }
  auto sub = std::make_shared<const FinCategory>(std::move(b).build());
  Functor inclusion{sub, category, std::move(objects), std::move(morphism_map)};
  return FullSubcategory{std::move(sub), std::move(inclusion)};
}

FinCategory build_tuple_category(std::span<const FinCategory* const> components,
                                 std::size_t object_count,
                                 const std::vector<TupleMorphism>& morphisms) {
  CategoryBuilder b;
  for (std::size_t o = 0; o < object_count; ++o) b.add_object("gen#" + std::to_string(o));
  std::map<std::tuple<std::size_t, std::size_t, std::vector<std::size_t>>, std::size_t> lookup;
  std::vector<std::vector<std::size_t>> into(object_count);
  for (std::size_t i = 0; i < morphisms.size(); ++i) {
    const auto& m = morphisms[i];
    const std::size_t idx = b.add_morphism("gen#" + std::to_string(object_count + i), m.dom, m.cod);
    lookup.emplace(std::make_tuple(m.dom, m.cod, m.parts), idx);
    into[m.cod].push_back(idx);
    if (m.dom == m.cod) {
      bool all_identity = true;
      for (std::size_t k = 0; k < components.size(); ++k) {
        all_identity = all_identity && components[k]->is_identity(m.parts[k]);
      }
      if (all_identity) b.set_identity(m.dom, idx);
    }
  }
  for (std::size_t gi = 0; gi < morphisms.size(); ++gi) {
    const auto& g = morphisms[gi];
    for (std::size_t fi : into[g.dom]) {
      const auto& f = morphisms[fi];
      std::vector<std::size_t> parts(components.size());
      for (std::size_t k = 0; k < components.size(); ++k) {
        parts[k] = components[k]->compose(g.parts[k], f.parts[k]);
      }
      auto it = lookup.find(std::make_tuple(f.dom, g.cod, parts));
      if (it == lookup.end()) {
        throw Error(ErrorCode::MissingComposite, "constructed category is not closed under composition");
      }
      b.set_composite(gi, fi, it->second);
    }
  }
  return std::move(b).build();
}

CommaCategory comma_category(const Functor& left, const Functor& right) {
  if (!same_category(left.target, right.target)) {
    throw Error(ErrorCode::InvalidFunctor, "comma category needs functors with a common target");
  }
  const auto& l = *left.source;
  const auto& r = *right.source;
  const auto& t = *left.target;

  CommaCategory out;
  for (std::size_t k1 = 0; k1 < l.object_count(); ++k1) {
    for (std::size_t k2 = 0; k2 < r.object_count(); ++k2) {
      for (std::size_t f : t.hom(left.object_map[k1], right.object_map[k2])) {
        out.objects.push_back({k1, k2, f});
      }
    }
  }
  std::vector<TupleMorphism> morphisms;
  for (std::size_t s = 0; s < out.objects.size(); ++s) {
    for (std::size_t d = 0; d < out.objects.size(); ++d) {
      const auto& src = out.objects[s];
      const auto& dst = out.objects[d];
      for (std::size_t k1 : l.hom(src.left, dst.left)) {
        for (std::size_t k2 : r.hom(src.right, dst.right)) {
          // F2(k2)∘f = f'∘F1(k1)
          if (t.compose(right.morphism_map[k2], src.arrow) ==
              t.compose(dst.arrow, left.morphism_map[k1])) {
            morphisms.push_back({s, d, {k1, k2}});
          }
        }
      }
    }
  }
  const FinCategory* parts[] = {&l, &r};
  out.category = std::make_shared<const FinCategory>(build_tuple_category(parts, out.objects.size(), morphisms));

  std::vector<std::size_t> lo, ro, lm, rm;
  for (const auto& o : out.objects) {
    lo.push_back(o.left);
    ro.push_back(o.right);
  }
  for (const auto& m : morphisms) {
    lm.push_back(m.parts[0]);
    rm.push_back(m.parts[1]);
  }
  out.left_projection = Functor{out.category, left.source, std::move(lo), std::move(lm)};
  out.right_projection = Functor{out.category, right.source, std::move(ro), std::move(rm)};
  return out;
}

}  // namespace deskcat
