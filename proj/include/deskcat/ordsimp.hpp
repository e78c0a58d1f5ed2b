#pragma once

#include <cstddef>
#include <vector>

#include "deskcat/fincat.hpp"
#include "deskcat/presheaf.hpp"
#include "deskcat/soa.hpp"

namespace deskcat {

/// Finite ordinals 0..bound and isotone maps. Ordinal k is the k-element chain,
/// so the α-simplex lives at object α+1.
struct OrdinalWindow {
  std::size_t bound = 0;
  CategoryPtr category;
};

/// Shared per bound; not safe to call concurrently for the first time.
OrdinalWindow ordinal_window(std::size_t bound);

/// hom(-, α+1). Throws WindowTooSmall unless α+1 ≤ bound.
PresheafPtr delta(std::size_t alpha, const OrdinalWindow& window);

struct SymmetricSimplex {
  PresheafPtr object;  // Δ_1s
  PresheafMap j;       // Δ₁ → Δ_1s, the [0,1] face
};

/// Coequalizer of the [0,2] face and the constant map at 0, both Δ₁ → Δ₂.
/// Needs bound ≥ 3.
SymmetricSimplex delta_1s(const OrdinalWindow& window);

/// Nondegenerate simplices per dimension d = 0..bound-1 (ordinal d+1).
/// A simplex is degenerate when it is X(σ) of something for a non-injective σ.
std::vector<std::size_t> census(const PresheafPtr& object);

struct Symmetrization {
  FactorizationCertificate certificate;
  std::vector<PresheafPtr> tower;                  // X = X_0, X_1, …, X_k
  std::vector<std::vector<std::size_t>> censuses;  // one per tower member
  std::vector<bool> injective;                     // injective(X_i, {j})
};

/// Pruned factorization of X → 1 against {j} for at most `stages` stages.
Symmetrization symmetrize(const PresheafPtr& object, const OrdinalWindow& window, std::size_t stages,
                          std::uint64_t budget = kDefaultNodeBudget);

}  // namespace deskcat
