#include "deskcat/oracles.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace deskcat::oracle {

namespace {

// Plain generate-and-test over the slots of X in storage order. Each naturality
// equation is tested as soon as both of its slots hold a value; nothing is
// propagated. std::nullopt once more than `cap` values have been tried.
std::optional<std::vector<Components>> natural_tuples(const Presheaf& x, const Presheaf& y,
                                                      const std::vector<std::vector<std::size_t>>& choices,
                                                      std::uint64_t cap) {
  const auto& c = *x.base;
  std::vector<std::size_t> offset(x.elements.size() + 1, 0);
  for (std::size_t a = 0; a < x.elements.size(); ++a) offset[a + 1] = offset[a] + x.size(a);
  struct Equation {
    std::size_t from;  // slot of e ∈ X(b)
    std::size_t to;    // slot of X(m)e ∈ X(a)
    std::size_t morphism;
  };
  std::vector<std::vector<Equation>> due(offset.back());
  for (std::size_t m = 0; m < c.morphism_count(); ++m) {
    for (std::size_t e = 0; e < x.size(c.cod(m)); ++e) {
      const Equation eq{offset[c.cod(m)] + e, offset[c.dom(m)] + x.actions[m][e], m};
      due[std::max(eq.from, eq.to)].push_back(eq);
    }
  }
  std::vector<Components> out;
  std::vector<std::size_t> value(offset.back());
  std::uint64_t tried = 0;
  bool exceeded = false;
  auto fill = [&](auto&& self, std::size_t slot) -> void {
    if (exceeded) return;
    if (slot == value.size()) {
      Components comp;
      for (std::size_t a = 0; a < x.elements.size(); ++a) {
        comp.emplace_back(value.begin() + static_cast<std::ptrdiff_t>(offset[a]),
                          value.begin() + static_cast<std::ptrdiff_t>(offset[a + 1]));
      }
      out.push_back(std::move(comp));
      return;
    }
    for (std::size_t z : choices[slot]) {
      if (++tried > cap) {
        exceeded = true;
        return;
      }
      value[slot] = z;
      bool ok = true;
      for (const auto& eq : due[slot]) {
        ok = ok && value[eq.to] == y.actions[eq.morphism][value[eq.from]];
      }
      if (ok) self(self, slot + 1);
    }
  };
  fill(fill, 0);
  if (exceeded) return std::nullopt;
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::optional<std::vector<Components>> maps(const Presheaf& x, const Presheaf& y, std::uint64_t cap) {
  std::vector<std::vector<std::size_t>> choices;
  for (std::size_t a = 0; a < x.elements.size(); ++a) {
    std::vector<std::size_t> all(y.size(a));
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    for (std::size_t e = 0; e < x.size(a); ++e) choices.push_back(all);
  }
  return natural_tuples(x, y, choices, cap);
}

std::optional<std::vector<Components>> diagonals(const LiftingProblem& p, std::uint64_t cap) {
  const auto& b = *p.f.target;
  const auto& c = *p.g.source;
  std::vector<std::vector<std::size_t>> choices;
  for (std::size_t a = 0; a < b.elements.size(); ++a) {
    for (std::size_t e = 0; e < b.size(a); ++e) {
      std::vector<std::size_t> ok;
      for (std::size_t z = 0; z < c.size(a); ++z) {
        bool fits = p.g.components[a][z] == p.v.components[a][e];
        for (std::size_t x = 0; fits && x < p.f.components[a].size(); ++x) {
          if (p.f.components[a][x] == e && p.u.components[a][x] != z) fits = false;
        }
        if (fits) ok.push_back(z);
      }
      choices.push_back(std::move(ok));
    }
  }
  return natural_tuples(b, c, choices, cap);
}

std::size_t isotone_count(std::size_t n, std::size_t m) {
  if (n == 0) return 1;
  std::size_t count = 0;
  std::vector<std::size_t> f(n, 0);
  if (m == 0) return 0;
  for (;;) {
    bool ok = true;
    for (std::size_t i = 1; i < n; ++i) ok = ok && f[i - 1] <= f[i];
    count += ok ? 1 : 0;
    std::size_t i = 0;
    while (i < n && ++f[i] == m) f[i++] = 0;
    if (i == n) return count;
  }
}

std::vector<std::size_t> glued_simplex_census(std::size_t top, const std::vector<std::size_t>& glued_from,
                                              const std::vector<std::size_t>& glued_to, std::size_t max_dim) {
  std::vector<std::size_t> census;
  const std::size_t span = glued_from.size();
  for (std::size_t dim = 0; dim <= max_dim; ++dim) {
    const std::size_t k = dim + 1;
    // all weakly increasing sequences of length k with values < top
    std::vector<std::vector<std::size_t>> seqs;
    std::vector<std::size_t> s(k, 0);
    for (;;) {
      if (std::is_sorted(s.begin(), s.end())) seqs.push_back(s);
      std::size_t i = 0;
      while (i < k && ++s[i] == top) s[i++] = 0;
      if (i == k) break;
    }
    std::map<std::vector<std::size_t>, std::size_t> label;
    for (std::size_t i = 0; i < seqs.size(); ++i) label[seqs[i]] = i;
    // t runs over weakly increasing k-sequences into the glued edge's chain
    std::vector<std::size_t> t(k, 0);
    for (;;) {
      if (std::is_sorted(t.begin(), t.end())) {
        std::vector<std::size_t> a(k), b(k);
        for (std::size_t i = 0; i < k; ++i) {
          a[i] = glued_from[t[i]];
          b[i] = glued_to[t[i]];
        }
        const std::size_t la = label[a];
        const std::size_t lb = label[b];
        if (la != lb) {
          for (auto& [seq, l] : label) {
            if (l == lb) l = la;
          }
        }
      }
      std::size_t i = 0;
      while (i < k && ++t[i] == span) t[i++] = 0;
      if (i == k) break;
    }
    // a class is nondegenerate when none of its members repeats a value
    std::map<std::size_t, bool> degenerate;
    for (const auto& [seq, l] : label) {
      bool repeats = false;
      for (std::size_t i = 1; i < seq.size(); ++i) repeats = repeats || seq[i] == seq[i - 1];
      degenerate[l] = degenerate[l] || repeats;
    }
    std::size_t count = 0;
    for (const auto& [l, d] : degenerate) count += d ? 0 : 1;
    census.push_back(count);
  }
  return census;
}

std::size_t iso_five_tuples(const Functor& f, const Functor& g) {
  const auto& m = *f.target;
  auto is_iso = [&](std::size_t x) {
    for (std::size_t y : m.hom(m.cod(x), m.dom(x))) {
      if (m.is_identity(m.compose(y, x)) && m.is_identity(m.compose(x, y))) return true;
    }
    return false;
  };
  std::size_t count = 0;
  for (std::size_t k = 0; k < f.source->object_count(); ++k) {
    for (std::size_t l = 0; l < g.source->object_count(); ++l) {
      for (std::size_t c = 0; c < m.object_count(); ++c) {
        std::size_t fi = 0, gi = 0;
        for (std::size_t x : m.hom(f.object_map[k], c)) fi += is_iso(x) ? 1 : 0;
        for (std::size_t x : m.hom(g.object_map[l], c)) gi += is_iso(x) ? 1 : 0;
        count += fi * gi;
      }
    }
  }
  return count;
}

}  // namespace deskcat::oracle
