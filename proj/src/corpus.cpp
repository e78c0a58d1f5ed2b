#include "deskcat/corpus.hpp"

#include <chrono>
#include <set>
#include <sstream>

#include "deskcat/colimits.hpp"
#include "deskcat/construct.hpp"
#include "deskcat/io.hpp"
#include "deskcat/lifting.hpp"
#include "deskcat/ofs.hpp"
#include "deskcat/oracles.hpp"
#include "deskcat/ordsimp.hpp"

namespace deskcat::corpus {

using io::Json;

namespace {

constexpr std::uint64_t kOracleCap = 20'000'000;

// --- small categories -------------------------------------------------------

CategoryPtr share(const CategoryData& d) { return std::make_shared<const FinCategory>(validate_category(d)); }

CategoryPtr monoid(const std::vector<std::string>& elements, const std::vector<std::vector<std::size_t>>& table) {
  CategoryData d;
  d.objects = {"*"};
  for (const auto& e : elements) d.morphisms.push_back({e, "*", "*"});
  d.identities["*"] = elements[0];
  for (std::size_t g = 0; g < elements.size(); ++g) {
    for (std::size_t f = 0; f < elements.size(); ++f) d.compose.push_back({elements[g], elements[f], elements[table[g][f]]});
  }
  return share(d);
}

CategoryPtr cyclic(std::size_t n) {
  std::vector<std::string> names;
  std::vector<std::vector<std::size_t>> table(n, std::vector<std::size_t>(n));
  for (std::size_t i = 0; i < n; ++i) {
    names.push_back("r" + std::to_string(i));
    for (std::size_t k = 0; k < n; ++k) table[i][k] = (i + k) % n;
  }
  return monoid(names, table);
}

CategoryPtr discrete(std::size_t n) {
  CategoryData d;
  for (std::size_t i = 0; i < n; ++i) {
    const std::string o = "o" + std::to_string(i);
    d.objects.push_back(o);
    d.morphisms.push_back({"id" + o, o, o});
    d.identities[o] = "id" + o;
    d.compose.push_back({"id" + o, "id" + o, "id" + o});
  }
  return share(d);
}

CategoryPtr chaotic(std::size_t n) {
  CategoryData d;
  auto name = [](std::size_t a, std::size_t b) { return "c" + std::to_string(a) + ">" + std::to_string(b); };
  for (std::size_t a = 0; a < n; ++a) d.objects.push_back("c" + std::to_string(a));
  for (std::size_t a = 0; a < n; ++a) {
    d.identities[d.objects[a]] = name(a, a);
    for (std::size_t b = 0; b < n; ++b) {
      d.morphisms.push_back({name(a, b), d.objects[a], d.objects[b]});
      for (std::size_t c = 0; c < n; ++c) d.compose.push_back({name(b, c), name(a, b), name(a, c)});
    }
  }
  return share(d);
}

/// 0 ⇉ 1 when `parallel`, else 0 → 1.
CategoryPtr arrows(bool parallel) {
  CategoryData d;
  d.objects = {"0", "1"};
  d.morphisms = {{"id0", "0", "0"}, {"id1", "1", "1"}, {"u", "0", "1"}};
  d.identities = {{"0", "id0"}, {"1", "id1"}};
  d.compose = {{"id0", "id0", "id0"}, {"id1", "id1", "id1"}, {"u", "id0", "u"}, {"id1", "u", "u"}};
  if (parallel) {
    d.morphisms.push_back({"v", "0", "1"});
    d.compose.push_back({"v", "id0", "v"});
    d.compose.push_back({"id1", "v", "v"});
  }
  return share(d);
}

std::vector<std::pair<std::string, CategoryPtr>> category_zoo() {
  std::vector<std::pair<std::string, CategoryPtr>> zoo = {
      {"terminal", terminal_category()},
      {"discrete3", discrete(3)},
      {"arrow", arrows(false)},
      {"parallel", arrows(true)},
      {"cyclic2", cyclic(2)},
      {"cyclic3", cyclic(3)},
      {"idempotent", monoid({"1", "a"}, {{0, 1}, {1, 1}})},
      {"left_zero3", monoid({"1", "a", "b"}, {{0, 1, 2}, {1, 1, 1}, {2, 2, 2}})},
      {"chaotic2", chaotic(2)},
      {"chaotic3", chaotic(3)},
      {"ordinals2", ordinal_window(2).category},
      {"ordinals3", ordinal_window(3).category},
  };
  zoo.push_back({"arrow_of_arrow", arrow_category(arrows(false)).category});
  zoo.push_back({"opposite_ordinals2", std::make_shared<const FinCategory>(opposite(*ordinal_window(2).category))});
  return zoo;
}

// --- presheaves ---------------------------------------------------------------

PresheafPtr set(std::size_t n) { return set_presheaf(n); }
PresheafMap smap(std::size_t n, std::size_t m, std::vector<std::size_t> values) {
  return set_map(set(n), set(m), values);
}
PresheafMap point_gen() { return from_empty(set(1)); }
PresheafMap fold_gen() { return to_terminal(set(2)); }

struct Simplices {
  OrdinalWindow w;
  PresheafPtr d0, d1, d2;
  PresheafMap boundary;  // Δ0 ⊔ Δ0 → Δ1
  PresheafMap vertex;    // Δ0 → Δ1 at vertex 1
  PresheafMap face;      // Δ1 → Δ2, the [0,1] face
  PresheafMap j;

  explicit Simplices(std::size_t bound) : w(ordinal_window(bound)) {
    const auto& c = w.category;
    d0 = delta(0, w);
    d1 = delta(1, w);
    d2 = delta(2, w);
    const Coproduct two = coproduct(c, {d0, d0});
    boundary = copair(two, d1, {yoneda_map(c, c->morphism_index("1>2:0"), d0, d1),
                                yoneda_map(c, c->morphism_index("1>2:1"), d0, d1)});
    vertex = yoneda_map(c, c->morphism_index("1>2:1"), d0, d1);
    face = yoneda_map(c, c->morphism_index("2>3:01"), d1, d2);
    j = delta_1s(w).j;
  }

  PresheafMap to_one(const PresheafPtr& x) const { return to_terminal(x); }
  PresheafMap from_none(const PresheafPtr& x) const { return from_empty(x); }
};

}  // namespace

std::vector<Instance> factorization_instances() {
  std::vector<Instance> out;
  const std::vector<PresheafMap> p = {point_gen()};
  const std::vector<PresheafMap> f = {fold_gen()};
  const std::vector<PresheafMap> pf = {point_gen(), fold_gen()};
  const std::vector<PresheafMap> incl = {smap(1, 2, {0})};
  auto add = [&](std::string name, PresheafMap m, std::vector<PresheafMap> gens) {
    out.push_back({std::move(name), std::move(m), std::move(gens)});
  };

  add("set/point/empty->3", from_empty(set(3)), p);
  add("set/point/empty->8", from_empty(set(8)), p);
  add("set/point/2->5", smap(2, 5, {0, 3}), p);
  add("set/point/3->1", to_terminal(set(3)), p);
  add("set/point/3->3", smap(3, 3, {0, 0, 1}), p);
  add("set/fold/3->1", to_terminal(set(3)), f);
  add("set/fold/8->1", to_terminal(set(8)), f);
  add("set/fold/5->2", smap(5, 2, {0, 1, 0, 1, 1}), f);
  add("set/fold/2->5", smap(2, 5, {1, 4}), f);
  add("set/fold/empty->4", from_empty(set(4)), f);
  add("set/both/empty->3", from_empty(set(3)), pf);
  add("set/both/4->1", to_terminal(set(4)), pf);
  add("set/both/3->3", smap(3, 3, {0, 0, 1}), pf);
  add("set/both/2->6", smap(2, 6, {2, 5}), pf);
  add("set/incl/1->2", smap(1, 2, {0}), incl);
  add("set/incl/empty->2", from_empty(set(2)), incl);
  add("set/incl/1->3", smap(1, 3, {2}), incl);
  add("set/none/3->2", smap(3, 2, {0, 1, 1}), {});

  for (std::size_t bound : {3, 4}) {
    const Simplices s(bound);
    const std::string w = "ord" + std::to_string(bound) + "/";
    const std::vector<PresheafMap> b = {s.boundary};
    const std::vector<PresheafMap> v = {s.from_none(s.d0)};
    const std::vector<PresheafMap> h = {s.vertex};
    const std::vector<PresheafMap> bv = {s.boundary, s.from_none(s.d0)};
    add(w + "boundary/d1->1", s.to_one(s.d1), b);
    add(w + "boundary/d0->1", s.to_one(s.d0), b);
    add(w + "boundary/empty->d1", s.from_none(s.d1), b);
    add(w + "vertices/empty->1", s.to_one(empty_presheaf(s.w.category)), v);
    add(w + "vertices/d1->1", s.to_one(s.d1), v);
    add(w + "vertex/d1->1", s.to_one(s.d1), h);
    add(w + "both/empty->1", s.to_one(empty_presheaf(s.w.category)), bv);
    add(w + "both/boundary", s.boundary, bv);
    add(w + "j/d0->1", s.to_one(s.d0), {s.j});
    if (bound == 3) {
      add(w + "boundary/face", s.face, b);
      add(w + "boundary/d2->1", s.to_one(s.d2), b);
      add(w + "vertices/empty->d2", s.from_none(s.d2), v);
      add(w + "vertex/d0->1", s.to_one(s.d0), h);
      add(w + "j/d1->1", s.to_one(s.d1), {s.j});
    }
  }
  {
    const Simplices s(5);
    add("ord5/vertices/empty->d2", s.from_none(s.d2), {s.from_none(s.d0)});
    add("ord5/boundary/d1->1", s.to_one(s.d1), {s.boundary});
  }
  return out;
}

namespace {

CriterionResult criterion(int id, std::string title) {
  CriterionResult r;
  r.id = id;
  r.title = std::move(title);
  return r;
}

Json result_json(const CriterionResult& r) {
  return {{"criterion", r.id}, {"title", r.title}, {"cases", r.cases},
          {"failures", r.failures}, {"passed", r.passed}, {"detail", r.detail}};
}

// 1 ---------------------------------------------------------------------------

// Maps met by the factorization runs: generators on the left, the factored
// maps and their residuals on the right.
struct LiftingPool {
  std::vector<PresheafMap> generators;
  std::vector<PresheafMap> maps;
};

std::vector<PresheafMap> distinct(const std::vector<PresheafMap>& maps) {
  std::vector<PresheafMap> out;
  std::set<std::string> seen;
  for (const auto& m : maps) {
    if (seen.insert(io::map_to_json(m).dump()).second) out.push_back(m);
  }
  return out;
}

CriterionResult factorization_soundness(const Options& options, std::string& certificates,
                                        LiftingPool& problems) {
  CriterionResult r = criterion(1, "factorization soundness");
  const auto start = std::chrono::steady_clock::now();
  std::size_t fixpoints = 0, exhausted = 0;
  std::ostringstream failed;
  for (const auto& inst : factorization_instances()) {
    ++r.cases;
    bool ok = true;
    std::string why;
    try {
      const auto cert = factorize(inst.f, MorphismClassSource{inst.generators, nullptr}, options.config);
      const Json j = io::certificate_to_json(cert);
      certificates += io::dump_line({{"instance", inst.name}, {"certificate", j}});
      problems.generators.insert(problems.generators.end(), cert.generators.begin(), cert.generators.end());
      problems.maps.push_back(cert.morphism);
      problems.maps.insert(problems.maps.end(), cert.residuals.begin(), cert.residuals.end());
      if (cert.status == FactorizationStatus::Fixpoint) {
        ++fixpoints;
        ok = compose(cert.residual, cert.cellular.composite).components == inst.f.components &&
             verify_cellular(cert.cellular, cert.generators);
        for (const auto& h : cert.generators) ok = ok && box(h, cert.residual, options.config.node_budget);
      } else {
        ++exhausted;
      }
      // the written certificate must stand on its own
      ok = ok && verify_factorization(io::certificate_from_json(j), options.config.node_budget).ok();
    } catch (const Error& e) {
      ok = false;
      why = " (" + std::string(to_string(e.code())) + ")";
    }
    if (!ok) {
      ++r.failures;
      failed << " " << inst.name << why;
    }
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = seconds < 60.0;
  r.passed = r.failures == 0 && r.cases >= 30 && in_time;
  r.detail = std::to_string(r.cases) + " instances, " + std::to_string(fixpoints) + " fixpoints, " +
             std::to_string(exhausted) + " budget exhausted" + (in_time ? "" : ", over 60 s") +
             (r.failures ? "; failed:" + failed.str() : "");
  return r;
}

// 2 ---------------------------------------------------------------------------

CriterionResult solver_oracle(const Options& options, const LiftingPool& pool) {
  CriterionResult r = criterion(2, "lifting solver against brute force");
  std::size_t squares = 0, pairs = 0, errors = 0;
  std::vector<std::pair<PresheafMap, PresheafMap>> problems;
  const auto maps = distinct(pool.maps);
  for (const auto& h : distinct(pool.generators)) {
    for (const auto& g : maps) {
      if (same_category(h.source->base, g.source->base)) problems.emplace_back(h, g);
    }
  }
  for (const auto& [f, g] : problems) {
    const std::size_t total =
        f.source->total_size() + f.target->total_size() + g.source->total_size() + g.target->total_size();
    if (total > 64) continue;
    ++pairs;
    try {
      for (const auto& s : enumerate_squares(f, g, options.config.node_budget)) {
        ++squares;
        const LiftingProblem problem{f, g, s.u, s.v};
        auto brute = oracle::diagonals(problem, kOracleCap);
        std::vector<oracle::Components> found;
        for (const auto& d : solve(problem, options.config.node_budget)) found.push_back(d.components);
        std::sort(found.begin(), found.end());
        if (!brute) {
          ++r.failures;
          continue;
        }
        std::sort(brute->begin(), brute->end());
        if (*brute != found) ++r.failures;
      }
    } catch (const Error&) {
      ++errors;
      ++r.failures;
    }
  }
  r.cases = squares;
  r.passed = r.failures == 0 && squares > 0;
  r.detail = std::to_string(squares) + " squares from " + std::to_string(pairs) + " corpus lifting problems, " +
             std::to_string(r.failures) + " discrepancies" +
             (errors ? ", " + std::to_string(errors) + " searches over budget" : "");
  return r;
}

// 3 ---------------------------------------------------------------------------

struct Chain {
  PresheafPtr first;
  std::vector<PresheafMap> maps;
  std::vector<PresheafMap> generators;
};

std::vector<Chain> injective_chains(const Options& options) {
  std::vector<Chain> chains;
  const std::vector<PresheafMap> p = {point_gen()};
  const std::vector<PresheafMap> f = {fold_gen()};
  chains.push_back({set(1), {}, p});
  chains.push_back({set(1), {smap(1, 2, {0})}, p});
  chains.push_back({set(1), {smap(1, 2, {1}), smap(2, 3, {0, 2})}, p});
  chains.push_back({set(2), {smap(2, 2, {1, 0}), smap(2, 5, {4, 0}), smap(5, 1, {0, 0, 0, 0, 0})}, p});
  chains.push_back({set(1), {identity_map(set(1)), identity_map(set(1)), identity_map(set(1)), smap(1, 4, {3})}, p});
  chains.push_back({empty_presheaf(terminal_category()), {from_empty(set(1))}, f});
  chains.push_back({empty_presheaf(terminal_category()), {from_empty(empty_presheaf(terminal_category())), from_empty(set(1))}, f});
  chains.push_back({set(1), {smap(1, 1, {0})}, f});

  const Simplices s(3);
  const auto one = terminal_presheaf(s.w.category);
  const std::vector<PresheafMap> v = {s.from_none(s.d0)};
  chains.push_back({s.d0, {s.vertex, s.face}, v});
  chains.push_back({s.d1, {to_terminal(s.d1, one)}, v});
  chains.push_back({s.d0, {to_terminal(s.d0, one)}, {s.j}});
  // weak reflections are injective; follow them into the terminal object
  for (const auto& x : {s.d1, s.d0}) {
    auto r = weak_reflection(x, MorphismClassSource{{s.boundary}, nullptr}, options.config);
    chains.push_back({r.unit.target, {identity_map(r.unit.target), to_terminal(r.unit.target, one)}, {s.boundary}});
  }
  return chains;
}

CriterionResult injectivity_closure(const Options& options) {
  CriterionResult r = criterion(3, "injectivity closed under chain colimits");
  std::size_t skipped = 0;
  for (const auto& c : injective_chains(options)) {
    const auto check = injectivity_colimit_check(c.first, c.maps, c.generators, options.config.node_budget);
    const bool members = std::all_of(check.members.begin(), check.members.end(), [](bool b) { return b; });
    if (!members || c.maps.size() + 1 > 5) {
      ++skipped;
      continue;
    }
    ++r.cases;
    if (!check.colimit) ++r.failures;
  }
  r.passed = r.failures == 0 && r.cases >= 10;
  r.detail = std::to_string(r.cases) + " chains of injectives" +
             (skipped ? ", " + std::to_string(skipped) + " rejected by the precondition" : "");
  return r;
}

// 4 ---------------------------------------------------------------------------

CriterionResult orthogonal_reflections(const Options& options) {
  CriterionResult r = criterion(4, "orthogonal reflections and square correspondence");
  const std::vector<PresheafPtr> tests = {set(0), set(1), set(2), set(3)};
  std::size_t universal_checks = 0, reflections = 0;
  for (std::size_t n = 0; n <= 5; ++n) {
    for (int cls = 0; cls < 2; ++cls) {
      ++reflections;
      const std::vector<PresheafMap> gens = {cls == 0 ? point_gen() : fold_gen()};
      const std::size_t expected = cls == 0 ? 1 : (n == 0 ? 0 : 1);
      bool ok = false;
      try {
        auto refl = reflect_ort(set(n), gens, options.config, tests);
        ok = refl.certificate.status == FactorizationStatus::Fixpoint && refl.orthogonal &&
             refl.unit.target->total_size() == expected && refl.universal();
        for (const auto& c : refl.checks) universal_checks += c.factorings.size();
      } catch (const Error&) {
        ok = false;
      }
      if (!ok) ++r.failures;
    }
  }

  std::vector<PresheafMap> maps = {identity_map(set(1)), smap(1, 2, {0}), fold_gen(), point_gen(),
                                   from_empty(set(2)), smap(2, 2, {1, 0}), smap(3, 2, {0, 1, 1})};
  const Simplices s(3);
  std::vector<PresheafMap> ord = {s.vertex, s.face, s.boundary, to_terminal(s.d1)};
  std::size_t pairs = 0;
  for (const auto* list : {&maps, &ord}) {
    for (const auto& f : *list) {
      for (const auto& g : *list) {
        ++pairs;
        if (!square_correspondence_check(f, g, options.config.node_budget)) ++r.failures;
      }
    }
  }
  r.cases = reflections + pairs;
  r.passed = r.failures == 0 && pairs >= 20 && universal_checks > 0;
  r.detail = std::to_string(reflections) + " reflections, " + std::to_string(universal_checks) +
             " universal-property checks, " + std::to_string(pairs) + " square correspondence pairs";
  return r;
}

// 5 ---------------------------------------------------------------------------

CriterionResult simplicial_anchors(const Options& options, std::string& census_lines) {
  CriterionResult r = criterion(5, "symmetric simplex anchors");
  r.cases = 3;
  try {
    const auto w = ordinal_window(options.window);
    const auto s = delta_1s(w);
    const auto c = census(s.object);
    const auto expected = oracle::glued_simplex_census(3, {0, 2}, {0, 0}, options.window - 1);
    if (c[0] != 2 || c[1] != 2) ++r.failures;
    if (c != expected) ++r.failures;

    const auto sym = symmetrize(delta(1, w), w, 3, options.config.node_budget);
    std::vector<std::size_t> edges;
    for (const auto& x : sym.censuses) edges.push_back(x[1]);
    bool increasing = edges.size() == 4;
    for (std::size_t i = 1; i < edges.size(); ++i) increasing = increasing && edges[i] > edges[i - 1];
    if (!increasing || sym.certificate.status != FactorizationStatus::BudgetExhausted) ++r.failures;

    census_lines += io::dump_line({{"object", "delta_1s"}, {"window", options.window}, {"census", c}});
    census_lines += io::dump_line({{"object", "symmetrize(delta 1, 3)"},
                                   {"window", options.window},
                                   {"censuses", sym.censuses},
                                   {"injective", sym.injective},
                                   {"status", to_string(sym.certificate.status)}});
    std::ostringstream d;
    d << "window " << options.window << ", delta_1s census (" << c[0] << ", " << c[1] << "), edges";
    for (auto e : edges) d << " " << e;
    d << ", " << to_string(sym.certificate.status);
    r.detail = d.str();
  } catch (const Error& e) {
    r.failures = r.cases;
    r.detail = std::string(to_string(e.code())) + ": " + e.detail();
  }
  r.passed = r.failures == 0;
  return r;
}

// 6 ---------------------------------------------------------------------------

CriterionResult construction_identities() {
  CriterionResult r = criterion(6, "construction identities");
  for (const auto& [name, c] : category_zoo()) {
    ++r.cases;
    const auto id = identity_functor(c);
    std::vector<std::size_t> ids;
    for (std::size_t a = 0; a < c->object_count(); ++a) ids.push_back(c->identity(a));
    const auto phi = make_nat_transformation(id, id, ids);
    const auto e = equifier(phi, phi);
    const bool equifier_ok = same_category(*e.category, *c);
    const bool comma_ok = arrow_category(c).objects.size() == c->morphism_count();
    const bool pspb_ok = pseudopullback(id, id).objects.size() == oracle::iso_five_tuples(id, id);
    if (!(equifier_ok && comma_ok && pspb_ok)) {
      ++r.failures;
      r.detail += " " + name;
    }
  }
  r.passed = r.failures == 0 && r.cases >= 10;
  r.detail = std::to_string(r.cases) + " categories" + (r.failures ? "; failed:" + r.detail : "");
  return r;
}

}  // namespace

Report run_corpus(const Options& options) {
  options.config.validate();
  Report report;
  std::string certificates, census_lines;
  LiftingPool problems;
  auto timed = [&](auto&& fn) {
    const auto start = std::chrono::steady_clock::now();
    report.criteria.push_back(fn());
    report.seconds.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  };
  timed([&] { return factorization_soundness(options, certificates, problems); });
  timed([&] { return solver_oracle(options, problems); });
  timed([&] { return injectivity_closure(options); });
  timed([&] { return orthogonal_reflections(options); });
  timed([&] { return simplicial_anchors(options, census_lines); });
  timed([&] { return construction_identities(); });

  std::string summary;
  for (const auto& c : report.criteria) summary += io::dump_line(result_json(c));
  report.artifacts = {{"summary.jsonl", summary},
                      {"summary.txt", summary_table(report.criteria)},
                      {"certificates.jsonl", certificates},
                      {"census.jsonl", census_lines}};
  return report;
}

std::string summary_table(const std::vector<CriterionResult>& criteria) {
  std::ostringstream out;
  for (const auto& c : criteria) {
    out << c.id << "  " << (c.passed ? "PASS" : "FAIL") << "  " << c.title << ": " << c.detail << "\n";
  }
  return out.str();
}

}  // namespace deskcat::corpus
