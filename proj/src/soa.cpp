#include "deskcat/soa.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

namespace deskcat {

std::vector<std::size_t> MorphismClassSource::select(const PresheafMap& f) const {
  std::vector<std::size_t> chosen;
  if (!rule) {
    for (std::size_t i = 0; i < generators.size(); ++i) chosen.push_back(i);
    return chosen;
  }
  chosen = rule(f);
  std::set<std::size_t> seen;
  for (std::size_t i : chosen) {
    if (i >= generators.size() || !seen.insert(i).second) {
      throw Error(ErrorCode::InvalidConfig, "coreflection rule must return a sublist of the generators");
    }
  }
  return chosen;
}

void BoundednessConfig::validate() const {
  if (max_stages < 1) throw Error(ErrorCode::InvalidConfig, "max_stages must be at least 1");
}

std::string to_string(FactorizationStatus status) {
  return status == FactorizationStatus::Fixpoint ? "Fixpoint" : "BudgetExhausted";
}

std::vector<Triple> collect_triples(const PresheafMap& f, const MorphismClassSource& source, bool prune,
                                    std::uint64_t budget) {
  std::vector<Triple> out;
  for (std::size_t h : source.select(f)) {
    const auto& gen = source.generators[h];
    std::vector<Triple> found;
    for_each_square(gen, f, [&](const Square& s) {
      if (!prune || !find_diagonal({gen, f, s.u, s.v}, budget)) found.push_back({h, s.u, s.v});
      return true;
    }, budget);
    std::sort(found.begin(), found.end(), [](const Triple& l, const Triple& r) {
      return std::make_pair(flatten(l.u), flatten(l.v)) < std::make_pair(flatten(r.u), flatten(r.v));
    });
    out.insert(out.end(), std::make_move_iterator(found.begin()), std::make_move_iterator(found.end()));
  }
  return out;
}

StepResult attach_cells(const PresheafMap& f, const std::vector<PresheafMap>& generators,
                        std::vector<Triple> triples, std::size_t stage_index) {
  const PresheafPtr& a = f.source;
  const CategoryPtr& base = a->base;
  if (triples.empty()) {
    return StepResult{identity_map(a), f, CellularStage{identity_map(a), {}}, {}};
  }
  std::vector<PresheafPtr> summands = {a};
  std::vector<std::string> tags = {""};
  for (std::size_t t = 0; t < triples.size(); ++t) {
    summands.push_back(generators.at(triples[t].generator).target);
    tags.push_back("s" + std::to_string(stage_index) + "." + std::to_string(t) + "/");
  }
  const Coproduct sum = coproduct(base, summands, tags);
  for (std::size_t obj = 0; obj < base->object_count(); ++obj) {
    std::unordered_set<std::string> names(sum.object->elements[obj].begin(), sum.object->elements[obj].end());
    if (names.size() != sum.object->elements[obj].size()) {
      throw Error(ErrorCode::DuplicateName, "cell names collide with existing elements at " + base->object_name(obj));
    }
  }
  Relation rel(base->object_count());
  for (std::size_t t = 0; t < triples.size(); ++t) {
    const auto& h = generators[triples[t].generator];
    for (std::size_t obj = 0; obj < rel.size(); ++obj) {
      for (std::size_t x = 0; x < h.components[obj].size(); ++x) {
        rel[obj].emplace_back(sum.injections[0](obj, triples[t].u(obj, x)), sum.injections[t + 1](obj, h(obj, x)));
      }
    }
  }
  const Quotient q = quotient(sum.object, rel);
  StepResult out;
  out.first = compose(q.projection, sum.injections[0]);
  std::vector<PresheafMap> legs = {out.first};
  std::vector<PresheafMap> competitor = {f};
  out.stage.stage_map = out.first;
  for (std::size_t t = 0; t < triples.size(); ++t) {
    PresheafMap cell = compose(q.projection, sum.injections[t + 1]);
    legs.push_back(cell);
    competitor.push_back(triples[t].v);
    out.stage.cells.push_back({triples[t].generator, triples[t].u, std::move(cell)});
  }
  auto induced = mediating_map(legs, f.target, competitor);
  if (!induced) throw Error(ErrorCode::InvalidSquare, "attached triples do not form commutative squares");
  out.second = std::move(*induced);
  out.triples = std::move(triples);
  return out;
}

StepResult one_step(const PresheafMap& f, const MorphismClassSource& source, bool prune, std::uint64_t budget,
                    std::size_t stage_index) {
  return attach_cells(f, source.generators, collect_triples(f, source, prune, budget), stage_index);
}

namespace {

bool in_right_class(const std::vector<PresheafMap>& generators, const PresheafMap& g, std::uint64_t budget) {
  return std::all_of(generators.begin(), generators.end(),
                     [&](const PresheafMap& h) { return box(h, g, budget); });
}

}  // namespace

FactorizationCertificate factorize(const PresheafMap& f, const MorphismClassSource& source,
                                   const BoundednessConfig& config) {
  config.validate();
  FactorizationCertificate cert;
  cert.morphism = f;
  cert.generators = source.generators;
  cert.config = config;
  cert.cellular.domain = f.source;
  PresheafMap composite = identity_map(f.source);
  PresheafMap residual = f;
  for (;;) {
    auto triples = collect_triples(residual, source, config.prune_solved, config.node_budget);
    if (triples.empty()) {
      cert.status = FactorizationStatus::Fixpoint;
      break;
    }
    if (cert.cellular.stages.size() == config.max_stages) {
      cert.status = FactorizationStatus::BudgetExhausted;
      cert.pending = triples.size();
      break;
    }
    auto step = attach_cells(residual, source.generators, std::move(triples), cert.cellular.stages.size() + 1);
    composite = compose(step.first, composite);
    residual = step.second;
    cert.cellular.stages.push_back(std::move(step.stage));
    cert.triples.push_back(std::move(step.triples));
    cert.residuals.push_back(residual);
  }
  cert.cellular.composite = composite;
  cert.residual = residual;
  if (cert.status == FactorizationStatus::Fixpoint) {
    cert.right_class_verified = in_right_class(cert.generators, residual, config.node_budget);
  }
  return cert;
}

CertificateCheck verify_factorization(const FactorizationCertificate& cert, std::uint64_t budget) {
  CertificateCheck check;
  const auto& stages = cert.cellular.stages;
  const std::size_t k = stages.size();
  auto fail = [&](const std::string& why) {
    if (check.message.empty()) check.message = why;
  };

  try {
    check.cellular = verify_cellular(cert.cellular, cert.generators);
  } catch (const BadStageError& e) {
    check.bad_stage = e.stage();
    fail(e.what());
  }

  check.factors = cert.residuals.size() == k && cert.triples.size() == k &&
                  same_presheaf(cert.residual.target, cert.morphism.target) &&
                  same_presheaf(cert.cellular.composite.target, cert.residual.source) &&
                  compose(cert.residual, cert.cellular.composite).components == cert.morphism.components;
  if (check.factors) {
    // f_i = f_{i+1}∘(stage map i) at every stage
    PresheafMap previous = cert.morphism;
    for (std::size_t i = 0; i < k && check.factors; ++i) {
      check.factors = same_presheaf(stages[i].stage_map.target, cert.residuals[i].source) &&
                      compose(cert.residuals[i], stages[i].stage_map).components == previous.components;
      previous = cert.residuals[i];
    }
    check.factors = check.factors && (k == 0 || cert.residuals.back().components == cert.residual.components);
  }
  if (!check.factors) {
    fail("f does not factor through the recorded stages");
    return check;
  }

  check.squares = true;
  for (std::size_t i = 0; i < k && check.squares; ++i) {
    const PresheafMap& before = i == 0 ? cert.morphism : cert.residuals[i - 1];
    if (cert.triples[i].size() != stages[i].cells.size()) check.squares = false;
    for (std::size_t t = 0; t < cert.triples[i].size() && check.squares; ++t) {
      const auto& tr = cert.triples[i][t];
      const auto& h = cert.generators.at(tr.generator);
      check.squares = tr.generator == stages[i].cells[t].generator &&
                      tr.u.components == stages[i].cells[t].attaching.components &&
                      compose(before, tr.u).components == compose(tr.v, h).components;
    }
  }
  if (!check.squares) fail("a recorded triple is not a commutative square");

  // f_{i,k}: A_i → A_k for every i
  std::vector<PresheafMap> to_end(k + 1);
  to_end[k] = identity_map(cert.residual.source);
  for (std::size_t i = k; i-- > 0;) to_end[i] = compose(to_end[i + 1], stages[i].stage_map);
  check.partial = check.squares;
  for (std::size_t i = 0; i < k && check.partial; ++i) {
    for (std::size_t t = 0; t < cert.triples[i].size() && check.partial; ++t) {
      const auto& tr = cert.triples[i][t];
      const auto& h = cert.generators[tr.generator];
      const PresheafMap d = compose(to_end[i + 1], stages[i].cells[t].cell);
      check.partial = compose(d, h).components == compose(to_end[i], tr.u).components &&
                      compose(cert.residual, d).components == tr.v.components;
    }
  }
  if (!check.partial) fail("an attached triple is not solved in the composite");

  check.right_class = cert.status != FactorizationStatus::Fixpoint ||
                      in_right_class(cert.generators, cert.residual, budget);
  if (!check.right_class) fail("the residual of a fixpoint run fails to lift against a generator");
  return check;
}

WeakReflection weak_reflection(const PresheafPtr& object, const MorphismClassSource& source,
                               const BoundednessConfig& config) {
  WeakReflection out;
  out.certificate = factorize(to_terminal(object), source, config);
  out.unit = out.certificate.cellular.composite;
  out.injective = out.certificate.status == FactorizationStatus::Fixpoint &&
                  injective(out.certificate.middle(), source.generators, config.node_budget);
  return out;
}

ChainInjectivity injectivity_colimit_check(const PresheafPtr& first, const std::vector<PresheafMap>& maps,
                                           const std::vector<PresheafMap>& generators, std::uint64_t budget) {
  ChainInjectivity out;
  const Cocone colim = chain_colimit(first, maps);
  for (const auto& node : colim.diagram.nodes) out.members.push_back(injective(node, generators, budget));
  out.colimit = injective(colim.apex, generators, budget);
  return out;
}

namespace {

void append_pass(FactorizationCertificate& total, PresheafMap& composite, const FactorizationCertificate& pass,
                 std::size_t offset) {
  for (std::size_t i = 0; i < pass.cellular.stages.size(); ++i) {
    CellularStage stage = pass.cellular.stages[i];
    for (auto& cell : stage.cells) cell.generator += offset;
    std::vector<Triple> triples = pass.triples[i];
    for (auto& t : triples) t.generator += offset;
    total.cellular.stages.push_back(std::move(stage));
    total.triples.push_back(std::move(triples));
    total.residuals.push_back(pass.residuals[i]);
  }
  composite = compose(pass.cellular.composite, composite);
  total.residual = pass.residual;
}

}  // namespace

FactorizationCertificate union_factorize(const PresheafMap& f, const MorphismClassSource& first,
                                         const MorphismClassSource& second, const BoundednessConfig& config) {
  config.validate();
  FactorizationCertificate total;
  total.morphism = f;
  total.generators = first.generators;
  total.generators.insert(total.generators.end(), second.generators.begin(), second.generators.end());
  total.config = config;
  total.cellular.domain = f.source;
  total.residual = f;
  PresheafMap composite = identity_map(f.source);
  const MorphismClassSource* sources[] = {&first, &second};
  const std::size_t offsets[] = {0, first.generators.size()};

  total.status = FactorizationStatus::BudgetExhausted;
  for (std::size_t pass = 0; pass < 2 * config.max_stages; ++pass) {
    const auto& src = *sources[pass % 2];
    auto pc = factorize(total.residual, src, config);
    append_pass(total, composite, pc, offsets[pass % 2]);
    if (pc.status == FactorizationStatus::BudgetExhausted) {
      total.pending = pc.pending;
      break;
    }
    // this class is satisfied; if nothing was added the other one still is
    if (pass > 0 && pc.stages() == 0) {
      total.status = FactorizationStatus::Fixpoint;
      break;
    }
  }
  if (total.status == FactorizationStatus::BudgetExhausted && total.pending == 0) {
    MorphismClassSource all{total.generators, nullptr};
    total.pending = collect_triples(total.residual, all, config.prune_solved, config.node_budget).size();
    if (total.pending == 0) total.status = FactorizationStatus::Fixpoint;
  }
  total.cellular.composite = composite;
  if (total.status == FactorizationStatus::Fixpoint) {
    total.right_class_verified = in_right_class(total.generators, total.residual, config.node_budget);
  }
  return total;
}

}  // namespace deskcat
