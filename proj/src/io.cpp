#include "deskcat/io.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "deskcat/ordsimp.hpp"

namespace deskcat::io {

namespace {

[[noreturn]] void parse_error(const std::string& detail) { throw Error(ErrorCode::ParseError, detail); }

const Json& field(const Json& value, const char* key) {
  if (!value.is_object() || !value.contains(key)) parse_error(std::string("missing field \"") + key + "\"");
  return value.at(key);
}

template <typename T>
T get(const Json& value, const char* what) {
  try {
    return value.get<T>();
  } catch (const Json::exception&) {
    parse_error(std::string("bad value for ") + what);
  }
}

std::size_t position(const std::vector<std::string>& names, const std::string& name, const std::string& where) {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return i;
  }
  throw Error(ErrorCode::UnknownName, "no element \"" + name + "\" in " + where);
}

}  // namespace

Json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) parse_error("cannot read " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    parse_error(path.string() + ": " + e.what());
  }
}

std::string dump_line(const Json& value) { return value.dump() + "\n"; }

// --- categories -------------------------------------------------------------

Json category_to_json(const FinCategory& category) {
  const CategoryData d = category.data();
  Json morphisms = Json::array();
  for (const auto& m : d.morphisms) morphisms.push_back({{"name", m.name}, {"dom", m.dom}, {"cod", m.cod}});
  Json compose = Json::array();
  for (const auto& c : d.compose) compose.push_back({c[0], c[1], c[2]});
  return {{"objects", d.objects}, {"morphisms", morphisms}, {"identities", d.identities}, {"compose", compose}};
}

CategoryPtr category_from_json(const Json& value) {
  CategoryData d;
  d.objects = get<std::vector<std::string>>(field(value, "objects"), "objects");
  for (const auto& m : field(value, "morphisms")) {
    d.morphisms.push_back({get<std::string>(field(m, "name"), "morphism name"),
                           get<std::string>(field(m, "dom"), "dom"), get<std::string>(field(m, "cod"), "cod")});
  }
  d.identities = get<std::map<std::string, std::string>>(field(value, "identities"), "identities");
  for (const auto& c : field(value, "compose")) {
    auto triple = get<std::vector<std::string>>(c, "compose entry");
    if (triple.size() != 3) parse_error("compose entries are [g, f, g∘f]");
    d.compose.push_back({triple[0], triple[1], triple[2]});
  }
  return std::make_shared<const FinCategory>(validate_category(d));
}

Json base_ref(const CategoryPtr& base) {
  const auto& c = *base;
  if (same_category(*base, *terminal_category())) return {{"builtin", "terminal"}};
  const std::size_t n = c.object_count();
  bool ordinal_names = n > 0;
  for (std::size_t a = 0; a < n && ordinal_names; ++a) ordinal_names = c.object_name(a) == std::to_string(a);
  if (ordinal_names && n <= 10 && same_category(base, ordinal_window(n - 1).category)) {
    return {{"builtin", "ordinals"}, {"window", n - 1}};
  }
  return category_to_json(c);
}

CategoryPtr resolve_base(const Json& ref) {
  if (ref.is_object() && ref.contains("builtin")) {
    const auto kind = get<std::string>(ref.at("builtin"), "builtin");
    if (kind == "terminal") return terminal_category();
    if (kind == "ordinals") return ordinal_window(get<std::size_t>(field(ref, "window"), "window")).category;
    throw Error(ErrorCode::UnknownName, "no builtin category \"" + kind + "\"");
  }
  return category_from_json(ref);
}

// --- functors ---------------------------------------------------------------

Json functor_to_json(const Functor& f) {
  Json objects = Json::object(), morphisms = Json::object();
  for (std::size_t a = 0; a < f.source->object_count(); ++a) {
    objects[f.source->object_name(a)] = f.target->object_name(f.object_map[a]);
  }
  for (std::size_t m = 0; m < f.source->morphism_count(); ++m) {
    morphisms[f.source->morphism_name(m)] = f.target->morphism_name(f.morphism_map[m]);
  }
  return {{"source", base_ref(f.source)}, {"target", base_ref(f.target)}, {"objects", objects},
          {"morphisms", morphisms}};
}

Functor functor_from_json(const Json& value) {
  CategoryPtr source = resolve_base(field(value, "source"));
  CategoryPtr target = resolve_base(field(value, "target"));
  const Json& objects = field(value, "objects");
  const Json morphisms = value.value("morphisms", Json::object());
  std::vector<std::size_t> object_map, morphism_map;
  for (std::size_t a = 0; a < source->object_count(); ++a) {
    const auto& name = source->object_name(a);
    if (!objects.contains(name)) parse_error("functor misses object " + name);
    object_map.push_back(target->object_index(get<std::string>(objects.at(name), "object image")));
  }
  for (std::size_t m = 0; m < source->morphism_count(); ++m) {
    const auto& name = source->morphism_name(m);
    if (morphisms.contains(name)) {
      morphism_map.push_back(target->morphism_index(get<std::string>(morphisms.at(name), "morphism image")));
    } else if (source->is_identity(m)) {
      morphism_map.push_back(target->identity(object_map[source->dom(m)]));
    } else {
      parse_error("functor misses morphism " + name);
    }
  }
  return make_functor(source, target, std::move(object_map), std::move(morphism_map));
}

NatTransformation nat_from_json(const Json& value) {
  Functor source = functor_from_json(field(value, "source"));
  Functor target = functor_from_json(field(value, "target"));
  const Json& comps = field(value, "components");
  std::vector<std::size_t> components;
  for (std::size_t a = 0; a < source.source->object_count(); ++a) {
    const auto& name = source.source->object_name(a);
    if (!comps.contains(name)) parse_error("transformation misses component at " + name);
    components.push_back(source.target->morphism_index(get<std::string>(comps.at(name), "component")));
  }
  return make_nat_transformation(std::move(source), std::move(target), std::move(components));
}

// --- presheaves -------------------------------------------------------------

namespace {

Json presheaf_body(const Presheaf& p) {
  const auto& c = *p.base;
  Json sets = Json::object(), actions = Json::object();
  for (std::size_t a = 0; a < c.object_count(); ++a) sets[c.object_name(a)] = p.elements[a];
  for (std::size_t m = 0; m < c.morphism_count(); ++m) {
    if (c.is_identity(m)) continue;
    Json act = Json::object();
    const std::size_t from = c.cod(m), to = c.dom(m);
    for (std::size_t e = 0; e < p.size(from); ++e) act[p.elements[from][e]] = p.elements[to][p.act(m, e)];
    actions[c.morphism_name(m)] = act;
  }
  return {{"sets", sets}, {"actions", actions}};
}

PresheafPtr presheaf_from_body(const CategoryPtr& base, const Json& value) {
  const auto& c = *base;
  const Json& sets = field(value, "sets");
  const Json actions = value.value("actions", Json::object());
  std::vector<std::vector<std::string>> elements(c.object_count());
  for (auto it = sets.begin(); it != sets.end(); ++it) c.object_index(it.key());
  for (std::size_t a = 0; a < c.object_count(); ++a) {
    if (sets.contains(c.object_name(a))) {
      elements[a] = get<std::vector<std::string>>(sets.at(c.object_name(a)), "element list");
    }
  }
  std::vector<std::vector<std::size_t>> acts(c.morphism_count());
  for (std::size_t m = 0; m < c.morphism_count(); ++m) {
    const std::size_t from = c.cod(m), to = c.dom(m);
    const auto& name = c.morphism_name(m);
    if (!actions.contains(name)) {
      if (!c.is_identity(m) && !elements[from].empty()) {
        throw Error(ErrorCode::InvalidPresheaf, "no action given for " + name);
      }
      for (std::size_t e = 0; e < elements[from].size(); ++e) acts[m].push_back(e);
      continue;
    }
    const Json& act = actions.at(name);
    for (const auto& e : elements[from]) {
      if (!act.contains(e)) throw Error(ErrorCode::InvalidPresheaf, "action " + name + " misses " + e);
      acts[m].push_back(position(elements[to], get<std::string>(act.at(e), "action value"),
                                 c.object_name(to)));
    }
  }
  return make_presheaf(base, std::move(elements), std::move(acts));
}

PresheafPtr formal_from_json(const CategoryPtr& base, const Json& ref, const Json& value) {
  if (!ref.is_object() || ref.value("builtin", "") != "ordinals") {
    throw Error(ErrorCode::InvalidPresheaf, "formal presheaves need the ordinals as base");
  }
  FormalColimitPresheaf p;
  p.base = ordinal_category();
  p.window = base->object_count();
  p.shape = category_from_json(field(value, "shape"));
  const Json& labels = field(value, "labels");
  const Json morphism_labels = value.value("morphism_labels", Json::object());
  for (std::size_t a = 0; a < p.shape->object_count(); ++a) {
    const auto& name = p.shape->object_name(a);
    if (!labels.contains(name)) parse_error("no label for shape object " + name);
    p.object_labels.push_back(get<std::string>(labels.at(name), "label"));
  }
  for (std::size_t m = 0; m < p.shape->morphism_count(); ++m) {
    const auto& name = p.shape->morphism_name(m);
    if (morphism_labels.contains(name)) {
      p.morphism_labels.push_back(get<std::string>(morphism_labels.at(name), "morphism label"));
    } else if (p.shape->is_identity(m)) {
      p.morphism_labels.push_back(base->morphism_name(
          base->identity(base->object_index(p.object_labels[p.shape->dom(m)]))));
    } else {
      parse_error("no label for shape morphism " + name);
    }
  }
  return tabulate(p, base);
}

}  // namespace

Json presheaf_to_json(const Presheaf& presheaf) {
  Json out = presheaf_body(presheaf);
  out["base"] = base_ref(presheaf.base);
  return out;
}

PresheafPtr presheaf_from_json(const Json& value) {
  const Json& ref = field(value, "base");
  CategoryPtr base = resolve_base(ref);
  if (value.contains("shape")) return formal_from_json(base, ref, value);
  return presheaf_from_body(base, value);
}

// --- maps -------------------------------------------------------------------

Json map_to_json(const PresheafMap& map) {
  const auto& c = *map.source->base;
  Json comps = Json::object();
  for (std::size_t a = 0; a < c.object_count(); ++a) {
    Json comp = Json::object();
    for (std::size_t e = 0; e < map.source->size(a); ++e) {
      comp[map.source->elements[a][e]] = map.target->elements[a][map(a, e)];
    }
    comps[c.object_name(a)] = comp;
  }
  return {{"source", presheaf_to_json(*map.source)}, {"target", presheaf_to_json(*map.target)},
          {"components", comps}};
}

PresheafMap map_from_json(const Json& value) {
  PresheafPtr source = presheaf_from_json(field(value, "source"));
  PresheafPtr target = presheaf_from_json(field(value, "target"));
  if (!same_category(source->base, target->base)) {
    throw Error(ErrorCode::InvalidMap, "source and target live over different bases");
  }
  const auto& c = *source->base;
  const Json& comps = field(value, "components");
  std::vector<std::vector<std::size_t>> components(c.object_count());
  for (std::size_t a = 0; a < c.object_count(); ++a) {
    if (source->size(a) == 0) continue;
    const auto& name = c.object_name(a);
    if (!comps.contains(name)) throw Error(ErrorCode::InvalidMap, "no component at " + name);
    const Json& comp = comps.at(name);
    for (const auto& e : source->elements[a]) {
      if (!comp.contains(e)) throw Error(ErrorCode::InvalidMap, "component " + name + " misses " + e);
      components[a].push_back(position(target->elements[a], get<std::string>(comp.at(e), "image"), name));
    }
  }
  return make_map(source, target, std::move(components));
}

std::vector<PresheafMap> class_from_json(const Json& value) {
  const Json& list = value.is_object() ? field(value, "generators") : value;
  if (!list.is_array()) parse_error("a class is a list of maps");
  std::vector<PresheafMap> out;
  for (const auto& m : list) out.push_back(map_from_json(m));
  return out;
}

// --- certificates -----------------------------------------------------------

namespace {

class ObjectTable {
 public:
  std::size_t index(const PresheafPtr& p) {
    for (std::size_t i = 0; i < objects_.size(); ++i) {
      if (objects_[i] == p) return i;
    }
    for (std::size_t i = 0; i < objects_.size(); ++i) {
      if (same_presheaf(objects_[i], p)) return i;
    }
    objects_.push_back(p);
    return objects_.size() - 1;
  }

  Json map(const PresheafMap& m) {
    return {{"source", index(m.source)}, {"target", index(m.target)}, {"components", m.components}};
  }

  Json objects() const {
    Json out = Json::array();
    for (const auto& p : objects_) out.push_back(presheaf_body(*p));
    return out;
  }

 private:
  std::vector<PresheafPtr> objects_;
};

struct ObjectList {
  std::vector<PresheafPtr> objects;

  const PresheafPtr& at(const Json& i) const {
    const auto k = get<std::size_t>(i, "object index");
    if (k >= objects.size()) parse_error("object index out of range");
    return objects[k];
  }

  PresheafMap map(const Json& value) const {
    return make_map(at(field(value, "source")), at(field(value, "target")),
                    get<std::vector<std::vector<std::size_t>>>(field(value, "components"), "components"));
  }
};

}  // namespace

Json certificate_to_json(const FactorizationCertificate& cert) {
  ObjectTable table;
  Json out;
  out["morphism"] = table.map(cert.morphism);
  Json gens = Json::array();
  for (const auto& g : cert.generators) gens.push_back(table.map(g));
  out["generators"] = gens;
  out["domain"] = table.index(cert.cellular.domain);
  Json stages = Json::array();
  for (std::size_t i = 0; i < cert.cellular.stages.size(); ++i) {
    const auto& st = cert.cellular.stages[i];
    Json cells = Json::array();
    for (const auto& c : st.cells) {
      cells.push_back({{"generator", c.generator}, {"attaching", table.map(c.attaching)}, {"cell", table.map(c.cell)}});
    }
    Json triples = Json::array();
    for (const auto& t : cert.triples[i]) {
      triples.push_back({{"generator", t.generator}, {"u", table.map(t.u)}, {"v", table.map(t.v)}});
    }
    stages.push_back({{"stage_map", table.map(st.stage_map)},
                      {"cells", cells},
                      {"triples", triples},
                      {"residual", table.map(cert.residuals[i])}});
  }
  out["stages"] = stages;
  out["composite"] = table.map(cert.cellular.composite);
  out["residual"] = table.map(cert.residual);
  out["status"] = to_string(cert.status);
  out["pending"] = cert.pending;
  out["right_class_verified"] = cert.right_class_verified;
  out["config"] = {{"max_stages", cert.config.max_stages},
                   {"prune", cert.config.prune_solved},
                   {"budget", cert.config.node_budget}};
  out["base"] = base_ref(cert.morphism.source->base);
  out["objects"] = table.objects();
  out["kind"] = "factorization_certificate";
  return out;
}

FactorizationCertificate certificate_from_json(const Json& value) {
  CategoryPtr base = resolve_base(field(value, "base"));
  ObjectList list;
  for (const auto& body : field(value, "objects")) list.objects.push_back(presheaf_from_body(base, body));

  FactorizationCertificate cert;
  cert.morphism = list.map(field(value, "morphism"));
  for (const auto& g : field(value, "generators")) cert.generators.push_back(list.map(g));
  cert.cellular.domain = list.at(field(value, "domain"));
  for (const auto& st : field(value, "stages")) {
    CellularStage stage;
    stage.stage_map = list.map(field(st, "stage_map"));
    for (const auto& c : field(st, "cells")) {
      stage.cells.push_back({get<std::size_t>(field(c, "generator"), "generator"), list.map(field(c, "attaching")),
                             list.map(field(c, "cell"))});
    }
    std::vector<Triple> triples;
    for (const auto& t : field(st, "triples")) {
      triples.push_back({get<std::size_t>(field(t, "generator"), "generator"), list.map(field(t, "u")),
                         list.map(field(t, "v"))});
    }
    cert.cellular.stages.push_back(std::move(stage));
    cert.triples.push_back(std::move(triples));
    cert.residuals.push_back(list.map(field(st, "residual")));
  }
  cert.cellular.composite = list.map(field(value, "composite"));
  cert.residual = list.map(field(value, "residual"));
  const auto status = get<std::string>(field(value, "status"), "status");
  if (status == "Fixpoint") {
    cert.status = FactorizationStatus::Fixpoint;
  } else if (status == "BudgetExhausted") {
    cert.status = FactorizationStatus::BudgetExhausted;
  } else {
    parse_error("unknown status " + status);
  }
  cert.pending = get<std::size_t>(field(value, "pending"), "pending");
  cert.right_class_verified = get<bool>(field(value, "right_class_verified"), "right_class_verified");
  const Json& config = field(value, "config");
  cert.config.max_stages = get<std::size_t>(field(config, "max_stages"), "max_stages");
  cert.config.prune_solved = get<bool>(field(config, "prune"), "prune");
  cert.config.node_budget = get<std::uint64_t>(field(config, "budget"), "budget");
  for (const auto& c : cert.cellular.stages) {
    for (const auto& cell : c.cells) {
      if (cell.generator >= cert.generators.size()) parse_error("generator index out of range");
    }
  }
  return cert;
}

// --- digests and files ------------------------------------------------------

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 failed");
  }
  std::ostringstream hex;
  for (unsigned int i = 0; i < length; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return hex.str();
}

std::string file_sha256(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) parse_error("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return sha256_hex(buffer.str());
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << content;
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

Json RunManifest::to_json(const std::filesystem::path& out_dir) const {
  Json in = Json::object(), out = Json::object();
  for (const auto& p : inputs) in[p.string()] = file_sha256(p);
  for (const auto& p : outputs) out[p.generic_string()] = file_sha256(out_dir / p);
  return {{"command", command},
          {"inputs", in},
          {"config", config},
          {"outputs", out},
          {"wall_clock_seconds", wall_clock_seconds}};
}

}  // namespace deskcat::io
