#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "deskcat/colimits.hpp"
#include "deskcat/lifting.hpp"
#include "deskcat/soa.hpp"

namespace deskcat {

/// f: A → B, the pushout A* of f with itself, and f*: A* → B induced by (id, id).
struct CodiagonalData {
  PresheafMap f;
  PresheafPtr object;
  PresheafMap p1;  // B → A*
  PresheafMap p2;
  PresheafMap fstar;
};

CodiagonalData codiagonal(const PresheafMap& f);

/// g: C → D, the kernel pair D* = C ×_D C with projections, and g*: C → D*.
/// Elements of D* are named "(c1,c2)".
struct PullbackData {
  PresheafMap g;
  PresheafPtr object;
  PresheafMap q1;  // D* → C
  PresheafMap q2;
  PresheafMap gstar;
};

PullbackData kernel_pair(const PresheafMap& g);

/// C followed by the codiagonals of its members.
std::vector<PresheafMap> cbar(const std::vector<PresheafMap>& generators);

/// factorize against cbar(C); a Fixpoint residual is also checked to be
/// orthogonal to every h ∈ C and UniquenessFailure is thrown otherwise.
FactorizationCertificate orth_factorize(const PresheafMap& f, const std::vector<PresheafMap>& generators,
                                        const BoundednessConfig& config);

/// One test object X of the universal property.
struct UniversalCheck {
  std::size_t test_object = 0;
  bool orthogonal = false;              // X ⊥ C; other objects are not checked
  std::vector<std::size_t> factorings;  // for each map K → X, the number of maps RK → X through r
};

struct OrtReflection {
  PresheafMap unit;  // K → RK
  FactorizationCertificate certificate;
  bool orthogonal = false;  // Fixpoint and RK ⊥ C
  std::vector<UniversalCheck> checks;

  /// Every recorded factoring count is exactly 1.
  bool universal() const;
};

OrtReflection reflect_ort(const PresheafPtr& object, const std::vector<PresheafMap>& generators,
                          const BoundednessConfig& config, const std::vector<PresheafPtr>& test_family = {});

struct SquareCorrespondence {
  std::size_t codiagonal_squares = 0;  // (u, v): f* → g
  std::size_t pullback_squares = 0;    // (t, h): f → g*
  bool bijective = false;
};

/// Checks that (u, v) ↦ (u∘p₁∘f, ⟨u∘p₁, u∘p₂⟩) and (t, h) ↦ (u with u∘pᵢ = qᵢ∘h,
/// g∘q₁∘h) are mutually inverse between the two sets of squares.
SquareCorrespondence square_correspondence(const PresheafMap& f, const PresheafMap& g,
                                           std::uint64_t budget = kDefaultNodeBudget);

inline bool square_correspondence_check(const PresheafMap& f, const PresheafMap& g,
                                        std::uint64_t budget = kDefaultNodeBudget) {
  return square_correspondence(f, g, budget).bijective;
}

}  // namespace deskcat
