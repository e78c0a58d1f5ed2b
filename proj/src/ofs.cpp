#include "deskcat/ofs.hpp"

#include <map>

namespace deskcat {

CodiagonalData codiagonal(const PresheafMap& f) {
  const Pushout po = pushout(f, f);
  auto fstar = mediating_map({po.left, po.right}, f.target, {identity_map(f.target), identity_map(f.target)});
  if (!fstar) throw Error(ErrorCode::InvalidMap, "codiagonal is not induced");
  return CodiagonalData{f, po.object, po.left, po.right, std::move(*fstar)};
}

PullbackData kernel_pair(const PresheafMap& g) {
  const Presheaf& c = *g.source;
  const CategoryPtr& base = c.base;
  Presheaf d{base, std::vector<std::vector<std::string>>(base->object_count()),
             std::vector<std::vector<std::size_t>>(base->morphism_count())};
  std::vector<std::map<std::pair<std::size_t, std::size_t>, std::size_t>> index(base->object_count());
  std::vector<std::vector<std::size_t>> q1(base->object_count()), q2(base->object_count()),
      diag(base->object_count());
  for (std::size_t a = 0; a < base->object_count(); ++a) {
    for (std::size_t i = 0; i < c.size(a); ++i) {
      for (std::size_t j = 0; j < c.size(a); ++j) {
        if (g(a, i) != g(a, j)) continue;
        index[a][{i, j}] = d.elements[a].size();
        d.elements[a].push_back("(" + c.elements[a][i] + "," + c.elements[a][j] + ")");
        q1[a].push_back(i);
        q2[a].push_back(j);
      }
    }
    for (std::size_t i = 0; i < c.size(a); ++i) diag[a].push_back(index[a].at({i, i}));
  }
  for (std::size_t m = 0; m < base->morphism_count(); ++m) {
    const std::size_t from = base->cod(m);
    const std::size_t to = base->dom(m);
    for (std::size_t e = 0; e < d.elements[from].size(); ++e) {
      d.actions[m].push_back(index[to].at({c.act(m, q1[from][e]), c.act(m, q2[from][e])}));
    }
  }
  auto object = freeze(std::move(d));
  return PullbackData{g, object, PresheafMap{object, g.source, std::move(q1)},
                      PresheafMap{object, g.source, std::move(q2)}, PresheafMap{g.source, object, std::move(diag)}};
}

std::vector<PresheafMap> cbar(const std::vector<PresheafMap>& generators) {
  std::vector<PresheafMap> out = generators;
  for (const auto& h : generators) out.push_back(codiagonal(h).fstar);
  return out;
}

FactorizationCertificate orth_factorize(const PresheafMap& f, const std::vector<PresheafMap>& generators,
                                        const BoundednessConfig& config) {
  auto cert = factorize(f, MorphismClassSource{cbar(generators), nullptr}, config);
  if (cert.status == FactorizationStatus::Fixpoint) {
    for (std::size_t i = 0; i < generators.size(); ++i) {
      if (!perp(generators[i], cert.residual, config.node_budget)) {
        throw Error(ErrorCode::UniquenessFailure,
                    "residual admits several lifts against generator " + std::to_string(i));
      }
    }
  }
  return cert;
}

bool OrtReflection::universal() const {
  for (const auto& c : checks) {
    for (std::size_t n : c.factorings) {
      if (n != 1) return false;
    }
  }
  return true;
}

OrtReflection reflect_ort(const PresheafPtr& object, const std::vector<PresheafMap>& generators,
                          const BoundednessConfig& config, const std::vector<PresheafPtr>& test_family) {
  OrtReflection out;
  out.certificate = orth_factorize(to_terminal(object), generators, config);
  out.unit = out.certificate.cellular.composite;
  if (out.certificate.status != FactorizationStatus::Fixpoint) return out;
  const PresheafPtr& rk = out.unit.target;
  out.orthogonal = orthogonal(rk, generators, config.node_budget);
  for (std::size_t i = 0; i < test_family.size(); ++i) {
    UniversalCheck check;
    check.test_object = i;
    check.orthogonal = orthogonal(test_family[i], generators, config.node_budget);
    if (check.orthogonal) {
      std::map<std::vector<std::size_t>, std::size_t> through;
      for_each_map(rk, test_family[i], nullptr, [&](const PresheafMap& n) {
        ++through[flatten(compose(n, out.unit))];
        return true;
      }, config.node_budget);
      for (const auto& m : enumerate_maps(object, test_family[i], config.node_budget)) {
        auto it = through.find(flatten(m));
        check.factorings.push_back(it == through.end() ? 0 : it->second);
      }
    }
    out.checks.push_back(std::move(check));
  }
  return out;
}

SquareCorrespondence square_correspondence(const PresheafMap& f, const PresheafMap& g, std::uint64_t budget) {
  const CodiagonalData cd = codiagonal(f);
  const PullbackData pb = kernel_pair(g);
  const auto left = enumerate_squares(cd.fstar, g, budget);   // u: A* → C, v: B → D
  const auto right = enumerate_squares(f, pb.gstar, budget);  // t: A → C, h: B → D*
  SquareCorrespondence out;
  out.codiagonal_squares = left.size();
  out.pullback_squares = right.size();
  if (left.size() != right.size()) return out;

  auto key = [](const Square& s) { return std::make_pair(flatten(s.u), flatten(s.v)); };
  std::map<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>, std::size_t> left_index, right_index;
  for (std::size_t i = 0; i < left.size(); ++i) left_index[key(left[i])] = i;
  for (std::size_t i = 0; i < right.size(); ++i) right_index[key(right[i])] = i;

  const Presheaf& dstar = *pb.object;
  auto pair_into_dstar = [&](const PresheafMap& x, const PresheafMap& y) -> std::optional<PresheafMap> {
    std::vector<std::vector<std::size_t>> comp(x.components.size());
    for (std::size_t a = 0; a < comp.size(); ++a) {
      for (std::size_t e = 0; e < x.components[a].size(); ++e) {
        std::optional<std::size_t> hit;
        for (std::size_t k = 0; k < dstar.size(a); ++k) {
          if (pb.q1(a, k) == x(a, e) && pb.q2(a, k) == y(a, e)) hit = k;
        }
        if (!hit) return std::nullopt;
        comp[a].push_back(*hit);
      }
    }
    return PresheafMap{x.source, pb.object, std::move(comp)};
  };

  std::vector<std::size_t> phi(left.size()), psi(right.size());
  for (std::size_t i = 0; i < left.size(); ++i) {
    const auto& s = left[i];
    PresheafMap t = compose(s.u, compose(cd.p1, f));
    auto h = pair_into_dstar(compose(s.u, cd.p1), compose(s.u, cd.p2));
    if (!h) return out;
    auto it = right_index.find({flatten(t), flatten(*h)});
    if (it == right_index.end()) return out;
    phi[i] = it->second;
  }
  for (std::size_t i = 0; i < right.size(); ++i) {
    const auto& s = right[i];
    auto u = mediating_map({cd.p1, cd.p2}, g.source, {compose(pb.q1, s.v), compose(pb.q2, s.v)});
    if (!u) return out;
    PresheafMap v = compose(g, compose(pb.q1, s.v));
    auto it = left_index.find({flatten(*u), flatten(v)});
    if (it == left_index.end()) return out;
    psi[i] = it->second;
  }
  out.bijective = true;
  for (std::size_t i = 0; i < left.size(); ++i) out.bijective = out.bijective && psi[phi[i]] == i;
  for (std::size_t i = 0; i < right.size(); ++i) out.bijective = out.bijective && phi[psi[i]] == i;
  return out;
}

}  // namespace deskcat
