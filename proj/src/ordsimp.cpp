#include "deskcat/ordsimp.hpp"

#include <algorithm>
#include <map>

#include "deskcat/colimits.hpp"
#include "deskcat/lifting.hpp"

namespace deskcat {

OrdinalWindow ordinal_window(std::size_t bound) {
  static std::map<std::size_t, CategoryPtr> cache;
  auto& slot = cache[bound];
  if (!slot) slot = std::make_shared<const FinCategory>(materialize(ordinal_category(), bound + 1));
  return OrdinalWindow{bound, slot};
}

PresheafPtr delta(std::size_t alpha, const OrdinalWindow& window) {
  if (alpha + 1 > window.bound) {
    throw Error(ErrorCode::WindowTooSmall, "delta " + std::to_string(alpha) + " needs a window of at least " +
                                               std::to_string(alpha + 1));
  }
  return yoneda(window.category, alpha + 1);
}

SymmetricSimplex delta_1s(const OrdinalWindow& window) {
  if (window.bound < 3) throw Error(ErrorCode::WindowTooSmall, "delta_1s needs a window of at least 3");
  const auto& w = window.category;
  const PresheafPtr d1 = yoneda(w, 2);
  const PresheafPtr d2 = yoneda(w, 3);
  const PresheafMap long_edge = yoneda_map(w, w->morphism_index("2>3:02"), d1, d2);
  const PresheafMap constant = yoneda_map(w, w->morphism_index("2>3:00"), d1, d2);
  const Quotient q = coequalizer(long_edge, constant);
  const PresheafMap face = yoneda_map(w, w->morphism_index("2>3:01"), d1, d2);
  return SymmetricSimplex{q.object, compose(q.projection, face)};
}

namespace {

// σ: d → e is injective iff it separates the points 1 → d
bool injective_morphism(const FinCategory& c, std::size_t m) {
  const auto& points = c.hom(1, c.dom(m));
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t k = i + 1; k < points.size(); ++k) {
      if (c.compose(m, points[i]) == c.compose(m, points[k])) return false;
    }
  }
  return true;
}

}  // namespace

std::vector<std::size_t> census(const PresheafPtr& object) {
  const FinCategory& c = *object->base;
  std::vector<std::size_t> out;
  if (c.object_count() < 2) return out;
  for (std::size_t d = 1; d < c.object_count(); ++d) {
    std::vector<bool> degenerate(object->size(d), false);
    for (std::size_t m : c.morphisms_from(d)) {
      if (injective_morphism(c, m)) continue;
      for (std::size_t y : object->actions[m]) degenerate[y] = true;
    }
    out.push_back(static_cast<std::size_t>(std::count(degenerate.begin(), degenerate.end(), false)));
  }
  return out;
}

Symmetrization symmetrize(const PresheafPtr& object, const OrdinalWindow& window, std::size_t stages,
                          std::uint64_t budget) {
  const SymmetricSimplex s = delta_1s(window);
  BoundednessConfig config;
  config.max_stages = stages;
  config.node_budget = budget;
  Symmetrization out;
  out.certificate = factorize(to_terminal(object), MorphismClassSource{{s.j}, nullptr}, config);
  out.tower.push_back(object);
  for (const auto& stage : out.certificate.cellular.stages) out.tower.push_back(stage.stage_map.target);
  for (const auto& x : out.tower) {
    out.censuses.push_back(census(x));
    out.injective.push_back(injective(x, {s.j}, budget));
  }
  return out;
}

}  // namespace deskcat
