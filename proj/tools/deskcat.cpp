// deskcat: command-line front end. Exit status 0 on success, 1 on a domain
// error or a failed check, 2 on a usage error.

#include <chrono>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "deskcat/colimits.hpp"
#include "deskcat/construct.hpp"
#include "deskcat/corpus.hpp"
#include "deskcat/io.hpp"
#include "deskcat/lifting.hpp"
#include "deskcat/ofs.hpp"
#include "deskcat/ordsimp.hpp"
#include "deskcat/soa.hpp"

namespace fs = std::filesystem;
using namespace deskcat;
using io::Json;

namespace {

struct Globals {
  std::size_t window = 6;
  std::size_t max_stages = 8;
  bool no_prune = false;
  std::uint64_t budget = kDefaultNodeBudget;
  std::string out;
};

struct Run {
  std::string name;               // output file stem
  std::vector<fs::path> inputs;
  std::vector<Json> lines;
  int status = 0;
};

BoundednessConfig config_of(const Globals& g) {
  BoundednessConfig c;
  c.max_stages = g.max_stages;
  c.prune_solved = !g.no_prune;
  c.node_budget = g.budget;
  return c;
}

Json config_json(const Globals& g) {
  return {{"window", g.window}, {"max_stages", g.max_stages}, {"prune", !g.no_prune}, {"budget", g.budget}};
}

Json load(Run& run, const std::string& path) {
  run.inputs.emplace_back(path);
  return io::read_json(path);
}

Json certificate_summary(const FactorizationCertificate& c) {
  return {{"status", to_string(c.status)},
          {"stages", c.stages()},
          {"pending", c.pending},
          {"right_class_verified", c.right_class_verified}};
}

// --- commands -----------------------------------------------------------------

void validate(Run& run, const std::string& path) {
  const Json v = load(run, path);
  Json out = {{"file", path}, {"valid", true}};
  if (v.is_object() && v.contains("kind")) {
    const auto cert = io::certificate_from_json(v);
    out["kind"] = "factorization_certificate";
    out["stages"] = cert.stages();
  } else if (v.is_object() && v.contains("compose")) {
    const auto c = io::category_from_json(v);
    out["kind"] = "category";
    out["objects"] = c->object_count();
    out["morphisms"] = c->morphism_count();
  } else if (v.is_object() && v.contains("base")) {
    out["kind"] = "presheaf";
    out["elements"] = io::presheaf_from_json(v)->total_size();
  } else if (v.is_object() && v.contains("components") && v.contains("source") && v["source"].contains("base")) {
    io::map_from_json(v);
    out["kind"] = "map";
  } else if (v.is_object() && v.contains("components")) {
    io::nat_from_json(v);
    out["kind"] = "natural_transformation";
  } else if (v.is_object() && v.contains("source") && v.contains("objects")) {
    io::functor_from_json(v);
    out["kind"] = "functor";
  } else if (v.is_array() || (v.is_object() && v.contains("generators"))) {
    out["kind"] = "class";
    out["generators"] = io::class_from_json(v).size();
  } else {
    throw Error(ErrorCode::ParseError, "unrecognized file contents");
  }
  run.lines.push_back(out);
}

void construct(Run& run, const std::string& kind, const std::string& left, const std::string& right) {
  if (kind == "approx-complete") {
    const Functor d = io::functor_from_json(load(run, left));
    const auto report = approximately_complete_check(d);
    Json cones = Json::array();
    for (std::size_t s : report.weakly_initial) {
      const auto& cone = report.cones[s];
      Json legs = Json::array();
      for (std::size_t m : cone.legs) legs.push_back(d.target->morphism_name(m));
      cones.push_back({{"apex", d.target->object_name(cone.apex)}, {"legs", legs}});
    }
    run.lines.push_back({{"cones", report.cones.size()}, {"weakly_initial", cones}, {"covers", report.covers}});
    return;
  }
  if (right.empty()) throw CLI::ValidationError("--right", "required for construct " + kind);
  if (kind == "equifier") {
    const auto phi = io::nat_from_json(load(run, left));
    const auto psi = io::nat_from_json(load(run, right));
    run.lines.push_back(io::category_to_json(*equifier(phi, psi).category));
    return;
  }
  const Functor f = io::functor_from_json(load(run, left));
  const Functor g = io::functor_from_json(load(run, right));
  CategoryPtr result;
  if (kind == "pspb") result = pseudopullback(f, g).category;
  if (kind == "inserter") result = inserter(f, g).category;
  if (kind == "comma") result = comma_category(f, g).category;
  run.lines.push_back(io::category_to_json(*result));
}

void colimit(Run& run, const std::string& kind, const std::vector<std::string>& files) {
  std::vector<PresheafMap> maps;
  for (const auto& f : files) maps.push_back(io::map_from_json(load(run, f)));
  Json legs = Json::array();
  PresheafPtr object;
  if (kind == "chain") {
    if (maps.empty()) throw CLI::ValidationError("MAPS", "chain needs at least one map");
    const Cocone c = chain_colimit(maps.front().source, maps);
    object = c.apex;
    for (const auto& l : c.legs) legs.push_back(io::map_to_json(l));
  } else {
    if (maps.size() != 2) throw CLI::ValidationError("MAPS", kind + " takes exactly two maps");
    if (kind == "pushout") {
      const Pushout p = pushout(maps[0], maps[1]);
      object = p.object;
      legs = {io::map_to_json(p.left), io::map_to_json(p.right)};
    } else {
      const Quotient q = coequalizer(maps[0], maps[1]);
      object = q.object;
      legs = {io::map_to_json(q.projection)};
    }
  }
  run.lines.push_back({{"object", io::presheaf_to_json(*object)}, {"legs", legs}});
}

void lift(Run& run, const Globals& g, const std::string& f_path, const std::string& g_path,
          const std::string& u_path, const std::string& v_path) {
  const PresheafMap f = io::map_from_json(load(run, f_path));
  const PresheafMap gm = io::map_from_json(load(run, g_path));
  if (!u_path.empty() || !v_path.empty()) {
    if (u_path.empty() || v_path.empty()) throw CLI::ValidationError("--u/--v", "give both or neither");
    const LiftingProblem p{f, gm, io::map_from_json(load(run, u_path)), io::map_from_json(load(run, v_path))};
    Json diagonals = Json::array();
    for (const auto& d : solve(p, g.budget)) diagonals.push_back(io::map_to_json(d));
    run.lines.push_back({{"diagonals", diagonals}, {"count", diagonals.size()}});
    return;
  }
  const auto r = lifting_report(f, gm, g.budget);
  run.lines.push_back({{"squares", r.squares},
                       {"without_diagonal", r.without_diagonal},
                       {"with_several", r.with_several},
                       {"box", r.box()},
                       {"perp", r.perp()}});
}

void factorize_cmd(Run& run, const Globals& g, const std::string& cls, const std::string& map, bool orth) {
  const auto gens = io::class_from_json(load(run, cls));
  const PresheafMap f = io::map_from_json(load(run, map));
  const auto cert = orth ? orth_factorize(f, gens, config_of(g))
                         : factorize(f, MorphismClassSource{gens, nullptr}, config_of(g));
  run.lines.push_back(io::certificate_to_json(cert));
}

void reflect(Run& run, const Globals& g, const std::string& cls, const std::string& object) {
  const auto gens = io::class_from_json(load(run, cls));
  const auto k = io::presheaf_from_json(load(run, object));
  const auto r = weak_reflection(k, MorphismClassSource{gens, nullptr}, config_of(g));
  Json summary = certificate_summary(r.certificate);
  summary["injective"] = r.injective;
  summary["unit"] = io::map_to_json(r.unit);
  run.lines.push_back(summary);
  run.lines.push_back(io::certificate_to_json(r.certificate));
}

void reflect_ort_cmd(Run& run, const Globals& g, const std::string& cls, const std::string& object,
                     const std::vector<std::string>& tests) {
  const auto gens = io::class_from_json(load(run, cls));
  const auto k = io::presheaf_from_json(load(run, object));
  std::vector<PresheafPtr> family;
  for (const auto& t : tests) family.push_back(io::presheaf_from_json(load(run, t)));
  const auto r = reflect_ort(k, gens, config_of(g), family);
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    checks.push_back({{"test_object", c.test_object}, {"orthogonal", c.orthogonal}, {"factorings", c.factorings}});
  }
  Json summary = certificate_summary(r.certificate);
  summary["orthogonal"] = r.orthogonal;
  summary["universal"] = r.universal();
  summary["checks"] = checks;
  summary["unit"] = io::map_to_json(r.unit);
  run.lines.push_back(summary);
  run.lines.push_back(io::certificate_to_json(r.certificate));
  if (!r.universal()) run.status = 1;
}

void square_corr(Run& run, const Globals& g, const std::string& f_path, const std::string& g_path) {
  const PresheafMap f = io::map_from_json(load(run, f_path));
  const PresheafMap gm = io::map_from_json(load(run, g_path));
  const auto r = square_correspondence(f, gm, g.budget);
  run.lines.push_back({{"codiagonal_squares", r.codiagonal_squares},
                       {"pullback_squares", r.pullback_squares},
                       {"bijective", r.bijective}});
  if (!r.bijective) run.status = 1;
}

void simplicial(Run& run, const Globals& g, const std::string& kind, std::size_t n, std::size_t stages,
                const std::string& object) {
  const auto w = ordinal_window(g.window);
  if (kind == "delta") {
    const auto d = delta(n, w);
    run.lines.push_back({{"presheaf", io::presheaf_to_json(*d)}, {"census", census(d)}});
  } else if (kind == "delta1s") {
    const auto s = delta_1s(w);
    run.lines.push_back({{"presheaf", io::presheaf_to_json(*s.object)}, {"j", io::map_to_json(s.j)},
                         {"census", census(s.object)}});
  } else {
    const auto x = object.empty() ? delta(1, w) : io::presheaf_from_json(load(run, object));
    const auto s = symmetrize(x, w, stages, g.budget);
    run.lines.push_back({{"censuses", s.censuses},
                         {"injective", s.injective},
                         {"status", to_string(s.certificate.status)},
                         {"stages", s.certificate.stages()}});
    run.lines.push_back(io::certificate_to_json(s.certificate));
  }
}

void verify(Run& run, const Globals& g, const std::string& path) {
  const Json v = load(run, path);
  // accept the certificate line itself or a corpus line wrapping it
  const Json& body = v.contains("certificate") ? v.at("certificate") : v;
  const auto cert = io::certificate_from_json(body);
  const auto c = verify_factorization(cert, g.budget);
  Json out = {{"ok", c.ok()},       {"factors", c.factors},        {"cellular", c.cellular},
              {"squares", c.squares}, {"partial", c.partial},      {"right_class", c.right_class},
              {"status", to_string(cert.status)}, {"message", c.message}};
  if (c.bad_stage) out["bad_stage"] = *c.bad_stage;
  run.lines.push_back(out);
  if (!c.ok()) run.status = 1;
}

int corpus_run(const Globals& g, const std::vector<std::string>& argv) {
  corpus::Options options;
  options.config = config_of(g);
  options.window = g.window;
  const auto start = std::chrono::steady_clock::now();
  const auto report = corpus::run_corpus(options);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cout << corpus::summary_table(report.criteria);
  if (!g.out.empty()) {
    io::RunManifest m;
    m.command = argv;
    m.config = config_json(g);
    for (const auto& a : report.artifacts) {
      io::write_atomic(fs::path(g.out) / a.name, a.content);
      m.outputs.emplace_back(a.name);
    }
    m.wall_clock_seconds = seconds;
    io::write_atomic(fs::path(g.out) / "manifest.json", io::dump_line(m.to_json(g.out)));
  }
  for (const auto& c : report.criteria) {
    if (!c.passed) return 1;
  }
  return 0;
}

int emit(const Run& run, const Globals& g, const std::vector<std::string>& argv, double seconds) {
  std::string content;
  for (const auto& l : run.lines) content += io::dump_line(l);
  if (g.out.empty()) {
    std::cout << content;
    return run.status;
  }
  const fs::path name = run.name + ".jsonl";
  io::write_atomic(fs::path(g.out) / name, content);
  io::RunManifest m;
  m.command = argv;
  m.inputs = run.inputs;
  m.config = config_json(g);
  m.outputs = {name};
  m.wall_clock_seconds = seconds;
  io::write_atomic(fs::path(g.out) / "manifest.json", io::dump_line(m.to_json(g.out)));
  return run.status;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv, argv + argc);
  CLI::App app{"Finite category theory workbench: lifting problems, small object argument, factorization systems"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--window", g.window, "ordinal window bound (objects 0..W)")->check(CLI::Range(1, 9));
  app.add_option("--max-stages", g.max_stages, "stage budget for factorizations")->check(CLI::Range(1, 1000));
  app.add_flag("--no-prune", g.no_prune, "keep triples that already have a lift");
  app.add_option("--budget", g.budget, "search node budget")->check(CLI::PositiveNumber);
  app.add_option("--out", g.out, "write results and a manifest into this directory");

  Run run;
  std::function<void()> action;

  std::string file;
  auto* validate_cmd = app.add_subcommand("validate", "check a category, presheaf, map, class or certificate file");
  validate_cmd->add_option("file", file)->required()->check(CLI::ExistingFile);
  validate_cmd->callback([&] { action = [&] { validate(run, file); }; });

  std::string kind, left, right;
  auto* construct_cmd = app.add_subcommand("construct", "pseudopullback, inserter, equifier, comma, cone sets");
  construct_cmd->add_option("kind", kind)->required()->check(
      CLI::IsMember({"pspb", "inserter", "equifier", "comma", "approx-complete"}));
  construct_cmd->add_option("--left,--phi,--diagram", left, "functor, transformation or diagram file")
      ->required()->check(CLI::ExistingFile);
  construct_cmd->add_option("--right,--psi", right, "second functor or transformation")->check(CLI::ExistingFile);
  construct_cmd->callback([&] { action = [&] { construct(run, kind, left, right); }; });

  std::vector<std::string> files;
  auto* colimit_cmd = app.add_subcommand("colimit", "pushout, coequalizer or chain colimit of map files");
  colimit_cmd->add_option("kind", kind)->required()->check(CLI::IsMember({"pushout", "coeq", "chain"}));
  colimit_cmd->add_option("maps", files)->required()->check(CLI::ExistingFile);
  colimit_cmd->callback([&] { action = [&] { colimit(run, kind, files); }; });

  std::string f_path, g_path, u_path, v_path;
  auto* lift_cmd = app.add_subcommand("lift", "lifting report for f against g, or the diagonals of one square");
  lift_cmd->add_option("--f", f_path)->required()->check(CLI::ExistingFile);
  lift_cmd->add_option("--g", g_path)->required()->check(CLI::ExistingFile);
  lift_cmd->add_option("--u", u_path)->check(CLI::ExistingFile);
  lift_cmd->add_option("--v", v_path)->check(CLI::ExistingFile);
  lift_cmd->callback([&] { action = [&] { lift(run, g, f_path, g_path, u_path, v_path); }; });

  std::string cls, map, object;
  auto* factorize_cmd_ = app.add_subcommand("factorize", "small object argument against a generating class");
  factorize_cmd_->add_option("--class", cls)->required()->check(CLI::ExistingFile);
  factorize_cmd_->add_option("--map", map)->required()->check(CLI::ExistingFile);
  factorize_cmd_->callback([&] { action = [&] { factorize_cmd(run, g, cls, map, false); }; });

  auto* reflect_cmd = app.add_subcommand("reflect", "weak reflection K → K* into the injective objects");
  reflect_cmd->add_option("--class", cls)->required()->check(CLI::ExistingFile);
  reflect_cmd->add_option("--object", object)->required()->check(CLI::ExistingFile);
  reflect_cmd->callback([&] { action = [&] { reflect(run, g, cls, object); }; });

  auto* ofactorize_cmd = app.add_subcommand("ofactorize", "orthogonal factorization against a class");
  ofactorize_cmd->add_option("--class", cls)->required()->check(CLI::ExistingFile);
  ofactorize_cmd->add_option("--map", map)->required()->check(CLI::ExistingFile);
  ofactorize_cmd->callback([&] { action = [&] { factorize_cmd(run, g, cls, map, true); }; });

  std::vector<std::string> tests;
  auto* reflect_ort_cmd_ = app.add_subcommand("reflect-ort", "reflection onto the orthogonal objects");
  reflect_ort_cmd_->add_option("--class", cls)->required()->check(CLI::ExistingFile);
  reflect_ort_cmd_->add_option("--object", object)->required()->check(CLI::ExistingFile);
  reflect_ort_cmd_->add_option("--test", tests, "test objects for the universal property")->check(CLI::ExistingFile);
  reflect_ort_cmd_->callback([&] { action = [&] { reflect_ort_cmd(run, g, cls, object, tests); }; });

  auto* square_cmd = app.add_subcommand("square-corr", "squares f* → g against squares f → g*");
  square_cmd->add_option("--f", f_path)->required()->check(CLI::ExistingFile);
  square_cmd->add_option("--g", g_path)->required()->check(CLI::ExistingFile);
  square_cmd->callback([&] { action = [&] { square_corr(run, g, f_path, g_path); }; });

  std::size_t n = 0, stages = 3;
  auto* simplicial_cmd = app.add_subcommand("simplicial", "simplices, the symmetric 1-simplex, symmetrization");
  simplicial_cmd->add_option("kind", kind)->required()->check(CLI::IsMember({"delta", "delta1s", "symmetrize"}));
  simplicial_cmd->add_option("n", n, "dimension for delta");
  simplicial_cmd->add_option("--stages", stages, "symmetrization stages")->check(CLI::Range(1, 1000));
  simplicial_cmd->add_option("--object", object, "presheaf to symmetrize (default Δ₁)")->check(CLI::ExistingFile);
  simplicial_cmd->callback([&] { action = [&] { simplicial(run, g, kind, n, stages, object); }; });

  std::string corpus_action;
  auto* corpus_cmd = app.add_subcommand("corpus", "the acceptance corpus");
  corpus_cmd->add_option("action", corpus_action)->required()->check(CLI::IsMember({"run"}));

  std::string cert;
  auto* verify_cmd = app.add_subcommand("verify", "re-check a factorization certificate from its file");
  verify_cmd->add_option("certificate", cert)->required()->check(CLI::ExistingFile);
  verify_cmd->callback([&] { action = [&] { verify(run, g, cert); }; });

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (corpus_cmd->parsed()) return corpus_run(g, args);
    run.name = app.get_subcommands().front()->get_name();
    const auto start = std::chrono::steady_clock::now();
    action();
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return emit(run, g, args, seconds);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << to_string(e.code()) << ": " << e.detail() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
