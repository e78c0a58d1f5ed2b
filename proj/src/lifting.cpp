#include "deskcat/lifting.hpp"

#include <algorithm>
#include <numeric>

#include "deskcat/colimits.hpp"

namespace deskcat {

namespace {

class MapSearch {
 public:
  MapSearch(const PresheafPtr& source, const PresheafPtr& target, const Candidates* candidates,
            std::uint64_t budget)
      : source_(source), target_(target), x_(*source), y_(*target), c_(*source->base), budget_(budget) {
    const std::size_t n = c_.object_count();
    value_.resize(n);
    allowed_.resize(n);
    for (std::size_t a = 0; a < n; ++a) {
      value_[a].assign(x_.size(a), kNone);
      allowed_[a].resize(x_.size(a));
      if (candidates) {
        for (std::size_t e = 0; e < x_.size(a); ++e) {
          const auto& cand = (*candidates)[a][e];
          if (!cand) continue;
          std::vector<char> mask(y_.size(a), 0);
          for (std::size_t v : *cand) mask.at(v) = 1;
          allowed_[a][e] = std::move(mask);
        }
      }
    }
    std::vector<std::size_t> objects(n);
    std::iota(objects.begin(), objects.end(), std::size_t{0});
    std::stable_sort(objects.begin(), objects.end(), [&](std::size_t l, std::size_t r) {
      if (x_.size(l) != x_.size(r)) return x_.size(l) > x_.size(r);
      return l > r;
    });
    for (std::size_t a : objects) {
      for (std::size_t e = 0; e < x_.size(a); ++e) order_.emplace_back(a, e);
    }
    for (std::size_t a = 0; a < n; ++a) {
      std::vector<std::size_t> into;
      for (std::size_t m : c_.morphisms_into(a)) {
        if (!c_.is_identity(m)) into.push_back(m);
      }
      into_.push_back(std::move(into));
    }
  }

  void run(const std::function<bool(const PresheafMap&)>& visit) {
    visit_ = &visit;
    // Elements with a single admissible value are fixed up front.
    for (std::size_t a = 0; a < allowed_.size(); ++a) {
      for (std::size_t e = 0; e < allowed_[a].size(); ++e) {
        const auto& mask = allowed_[a][e];
        if (!mask) continue;
        const std::size_t count = static_cast<std::size_t>(std::count(mask->begin(), mask->end(), 1));
        if (count == 0) return;
        if (count == 1 && value_[a][e] == kNone) {
          const std::size_t v = static_cast<std::size_t>(std::find(mask->begin(), mask->end(), 1) - mask->begin());
          if (!assign(a, e, v)) return;
        }
      }
    }
    search(0);
  }

 private:
  bool permitted(std::size_t a, std::size_t e, std::size_t v) const {
    const auto& mask = allowed_[a][e];
    return !mask || (*mask)[v];
  }

  bool assign(std::size_t a, std::size_t e, std::size_t v) {
    stack_.clear();
    stack_.push_back({a, e, v});
    while (!stack_.empty()) {
      const auto [obj, elem, val] = stack_.back();
      stack_.pop_back();
      std::size_t& slot = value_[obj][elem];
      if (slot != kNone) {
        if (slot != val) return false;
        continue;
      }
      if (!permitted(obj, elem, val)) return false;
      slot = val;
      trail_.push_back({obj, elem});
      for (std::size_t m : into_[obj]) {
        stack_.push_back({c_.dom(m), x_.act(m, elem), y_.act(m, val)});
      }
    }
    return true;
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      const auto [a, e] = trail_.back();
      value_[a][e] = kNone;
      trail_.pop_back();
    }
  }

  bool search(std::size_t depth) {
    while (depth < order_.size() && value_[order_[depth].first][order_[depth].second] != kNone) ++depth;
    if (depth == order_.size()) {
      PresheafMap map{source_, target_, value_};
      return (*visit_)(map);
    }
    const auto [a, e] = order_[depth];
    for (std::size_t v = 0; v < y_.size(a); ++v) {
      if (!permitted(a, e, v)) continue;
      if (++nodes_ > budget_) {
        throw Error(ErrorCode::SearchExceeded,
                    "map search exceeded " + std::to_string(budget_) + " nodes");
      }
      const std::size_t mark = trail_.size();
      if (assign(a, e, v)) {
        if (!search(depth + 1)) return false;
      }
      undo(mark);
    }
    return true;
  }

  struct Pending {
    std::size_t object;
    std::size_t element;
    std::size_t value;
  };

  PresheafPtr source_;
  PresheafPtr target_;
  const Presheaf& x_;
  const Presheaf& y_;
  const FinCategory& c_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  std::vector<std::vector<std::size_t>> value_;
  std::vector<std::vector<std::optional<std::vector<char>>>> allowed_;
  std::vector<std::pair<std::size_t, std::size_t>> order_;
  std::vector<std::vector<std::size_t>> into_;
  std::vector<std::pair<std::size_t, std::size_t>> trail_;
  std::vector<Pending> stack_;
  const std::function<bool(const PresheafMap&)>* visit_ = nullptr;
};

void require_same_base(const PresheafPtr& x, const PresheafPtr& y) {
  if (!same_category(x->base, y->base)) {
    throw Error(ErrorCode::InvalidMap, "presheaves live over different bases");
  }
}

void sort_maps(std::vector<PresheafMap>& maps) {
  std::vector<std::pair<std::vector<std::size_t>, std::size_t>> keys;
  for (std::size_t i = 0; i < maps.size(); ++i) keys.emplace_back(flatten(maps[i]), i);
  std::sort(keys.begin(), keys.end());
  std::vector<PresheafMap> sorted;
  sorted.reserve(maps.size());
  for (const auto& k : keys) sorted.push_back(std::move(maps[k.second]));
  maps = std::move(sorted);
}

// fibre[a][d] = elements of C(a) sent to d by g
std::vector<std::vector<std::vector<std::size_t>>> fibres(const PresheafMap& g) {
  std::vector<std::vector<std::vector<std::size_t>>> out;
  for (std::size_t a = 0; a < g.components.size(); ++a) {
    std::vector<std::vector<std::size_t>> f(g.target->size(a));
    for (std::size_t c = 0; c < g.components[a].size(); ++c) f[g.components[a][c]].push_back(c);
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace

void for_each_map(const PresheafPtr& source, const PresheafPtr& target, const Candidates* candidates,
                  const std::function<bool(const PresheafMap&)>& visit, std::uint64_t budget) {
  require_same_base(source, target);
  MapSearch search(source, target, candidates, budget);
  search.run(visit);
}

std::vector<PresheafMap> enumerate_maps(const PresheafPtr& source, const PresheafPtr& target,
                                        std::uint64_t budget) {
  std::vector<PresheafMap> out;
  for_each_map(source, target, nullptr, [&](const PresheafMap& m) {
    out.push_back(m);
    return true;
  }, budget);
  sort_maps(out);
  return out;
}

// ---------------------------------------------------------------------------

void check_square(const LiftingProblem& p) {
  auto fail = [](const std::string& why) { throw Error(ErrorCode::InvalidSquare, why); };
  if (!same_presheaf(p.u.source, p.f.source)) fail("u and f have different domains");
  if (!same_presheaf(p.u.target, p.g.source)) fail("u does not land in the domain of g");
  if (!same_presheaf(p.v.source, p.f.target)) fail("v does not start at the codomain of f");
  if (!same_presheaf(p.v.target, p.g.target)) fail("v and g have different codomains");
  for (std::size_t a = 0; a < p.f.components.size(); ++a) {
    for (std::size_t e = 0; e < p.f.components[a].size(); ++e) {
      if (p.g(a, p.u(a, e)) != p.v(a, p.f(a, e))) fail("square does not commute");
    }
  }
}

std::optional<Candidates> diagonal_candidates(const LiftingProblem& p) {
  const auto& b = *p.f.target;
  const auto fib = fibres(p.g);
  Candidates cand(b.elements.size());
  for (std::size_t a = 0; a < b.elements.size(); ++a) {
    cand[a].resize(b.size(a));
    for (std::size_t e = 0; e < b.size(a); ++e) cand[a][e] = fib[a][p.v(a, e)];
    for (std::size_t x = 0; x < p.f.components[a].size(); ++x) {
      auto& slot = cand[a][p.f(a, x)];
      const std::size_t want = p.u(a, x);
      if (std::find(slot->begin(), slot->end(), want) == slot->end()) return std::nullopt;
      slot = std::vector<std::size_t>{want};
    }
  }
  return cand;
}

std::vector<PresheafMap> solve(const LiftingProblem& p, std::uint64_t budget) {
  check_square(p);
  std::vector<PresheafMap> out;
  auto cand = diagonal_candidates(p);
  if (!cand) return out;
  for_each_map(p.f.target, p.g.source, &*cand, [&](const PresheafMap& d) {
    out.push_back(d);
    return true;
  }, budget);
  sort_maps(out);
  return out;
}

std::optional<PresheafMap> find_diagonal(const LiftingProblem& p, std::uint64_t budget) {
  auto cand = diagonal_candidates(p);
  if (!cand) return std::nullopt;
  std::optional<PresheafMap> found;
  for_each_map(p.f.target, p.g.source, &*cand, [&](const PresheafMap& d) {
    found = d;
    return false;
  }, budget);
  return found;
}

std::size_t count_diagonals(const LiftingProblem& p, std::size_t limit, std::uint64_t budget) {
  auto cand = diagonal_candidates(p);
  if (!cand) return 0;
  std::size_t count = 0;
  for_each_map(p.f.target, p.g.source, &*cand, [&](const PresheafMap&) {
    return ++count < limit;
  }, budget);
  return count;
}

void for_each_square(const PresheafMap& f, const PresheafMap& g,
                     const std::function<bool(const Square&)>& visit, std::uint64_t budget) {
  require_same_base(f.source, g.source);
  const auto fib = fibres(g);
  const auto& a_obj = *f.source;
  bool go = true;
  for_each_map(f.target, g.target, nullptr, [&](const PresheafMap& v) {
    Candidates cand(a_obj.elements.size());
    for (std::size_t a = 0; a < a_obj.elements.size(); ++a) {
      for (std::size_t e = 0; e < a_obj.size(a); ++e) cand[a].emplace_back(fib[a][v(a, f(a, e))]);
    }
    for_each_map(f.source, g.source, &cand, [&](const PresheafMap& u) {
      go = visit(Square{u, v});
      return go;
    }, budget);
    return go;
  }, budget);
}

std::vector<Square> enumerate_squares(const PresheafMap& f, const PresheafMap& g, std::uint64_t budget) {
  std::vector<Square> out;
  for_each_square(f, g, [&](const Square& s) {
    out.push_back(s);
    return true;
  }, budget);
  std::sort(out.begin(), out.end(), [](const Square& l, const Square& r) {
    return std::make_pair(flatten(l.u), flatten(l.v)) < std::make_pair(flatten(r.u), flatten(r.v));
  });
  return out;
}

LiftingReport lifting_report(const PresheafMap& f, const PresheafMap& g, std::uint64_t budget) {
  LiftingReport report;
  for_each_square(f, g, [&](const Square& s) {
    ++report.squares;
    const std::size_t n = count_diagonals({f, g, s.u, s.v}, 2, budget);
    if (n == 0) ++report.without_diagonal;
    if (n > 1) ++report.with_several;
    if (n != 1 && !report.counterexample) report.counterexample = s;
    return true;
  }, budget);
  return report;
}

bool box(const PresheafMap& f, const PresheafMap& g, std::uint64_t budget) {
  bool ok = true;
  for_each_square(f, g, [&](const Square& s) {
    ok = find_diagonal({f, g, s.u, s.v}, budget).has_value();
    return ok;
  }, budget);
  return ok;
}

bool perp(const PresheafMap& f, const PresheafMap& g, std::uint64_t budget) {
  bool ok = true;
  for_each_square(f, g, [&](const Square& s) {
    ok = count_diagonals({f, g, s.u, s.v}, 2, budget) == 1;
    return ok;
  }, budget);
  return ok;
}

bool injective(const PresheafPtr& object, const std::vector<PresheafMap>& generators, std::uint64_t budget) {
  const PresheafMap bang = to_terminal(object);
  return std::all_of(generators.begin(), generators.end(),
                     [&](const PresheafMap& h) { return box(h, bang, budget); });
}

bool orthogonal(const PresheafPtr& object, const std::vector<PresheafMap>& generators, std::uint64_t budget) {
  const PresheafMap bang = to_terminal(object);
  return std::all_of(generators.begin(), generators.end(),
                     [&](const PresheafMap& h) { return perp(h, bang, budget); });
}

bool verify_retract(const PresheafMap& f, const PresheafMap& fp, const RetractWitness& w) {
  const auto& sa = w.section_domain;
  const auto& sb = w.section_codomain;
  const auto& ra = w.retraction_domain;
  const auto& rb = w.retraction_codomain;
  if (!same_presheaf(sa.source, f.source) || !same_presheaf(sa.target, fp.source)) return false;
  if (!same_presheaf(sb.source, f.target) || !same_presheaf(sb.target, fp.target)) return false;
  if (!same_presheaf(ra.source, fp.source) || !same_presheaf(ra.target, f.source)) return false;
  if (!same_presheaf(rb.source, fp.target) || !same_presheaf(rb.target, f.target)) return false;
  for (const auto* m : {&sa, &sb, &ra, &rb}) {
    if (!is_natural(*m)) return false;
  }
  // (sa, sb): f → f' and (ra, rb): f' → f are arrow-category morphisms
  if (compose(fp, sa).components != compose(sb, f).components) return false;
  if (compose(f, ra).components != compose(rb, fp).components) return false;
  return compose(ra, sa).components == identity_map(f.source).components &&
         compose(rb, sb).components == identity_map(f.target).components;
}

// ---------------------------------------------------------------------------

bool verify_cellular(const CellularCertificate& cert, const std::vector<PresheafMap>& generators) {
  if (!cert.domain) throw BadStageError(0, "certificate has no domain");
  const CategoryPtr& base = cert.domain->base;
  PresheafPtr current = cert.domain;
  PresheafMap running = identity_map(current);

  for (std::size_t k = 0; k < cert.stages.size(); ++k) {
    const auto& stage = cert.stages[k];
    auto fail = [k](const std::string& why) { throw BadStageError(k, why); };
    if (!same_presheaf(stage.stage_map.source, current)) fail("stage map does not start at the previous stage");
    const PresheafPtr next = stage.stage_map.target;
    if (!is_natural(stage.stage_map)) fail("stage map is not natural");

    std::vector<PresheafPtr> doms;
    std::vector<PresheafPtr> cods;
    std::vector<PresheafMap> attach;
    std::vector<PresheafMap> cells;
    std::vector<PresheafMap> hs;
    for (const auto& cell : stage.cells) {
      if (cell.generator >= generators.size()) fail("unknown generator index");
      const auto& h = generators[cell.generator];
      if (!same_presheaf(cell.attaching.source, h.source) || !same_presheaf(cell.attaching.target, current)) {
        fail("attaching map has the wrong endpoints");
      }
      if (!same_presheaf(cell.cell.source, h.target) || !same_presheaf(cell.cell.target, next)) {
        fail("cell map has the wrong endpoints");
      }
      if (!is_natural(cell.attaching) || !is_natural(cell.cell)) fail("cell data is not natural");
      if (compose(stage.stage_map, cell.attaching).components != compose(cell.cell, h).components) {
        fail("stage square does not commute");
      }
      doms.push_back(h.source);
      cods.push_back(h.target);
      attach.push_back(cell.attaching);
      cells.push_back(cell.cell);
      hs.push_back(h);
    }

    // Independent pushout of source ← ∐ dom h → ∐ cod h, compared with the claim.
    const Coproduct dom_sum = coproduct(base, doms);
    const Coproduct cod_sum = coproduct(base, cods);
    const PresheafMap glue = copair(dom_sum, current, attach);
    const PresheafMap sum_h = coproduct_map(dom_sum, cod_sum, hs);
    const Pushout po = pushout(glue, sum_h);
    const auto comparison = mediating_map(std::vector<PresheafMap>{po.left, po.right}, next,
                                          {stage.stage_map, copair(cod_sum, next, cells)});
    if (!comparison || !is_isomorphism(*comparison)) fail("stage square is not a pushout");

    running = compose(stage.stage_map, running);
    current = next;
  }
  if (!same_presheaf(cert.composite.source, cert.domain) || !same_presheaf(cert.composite.target, current) ||
      cert.composite.components != running.components) {
    throw BadStageError(cert.stages.size(), "composite does not match the stage maps");
  }
  return true;
}

}  // namespace deskcat
