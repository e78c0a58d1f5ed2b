#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "deskcat/presheaf.hpp"

namespace deskcat {

inline constexpr std::uint64_t kDefaultNodeBudget = 10'000'000;

/// Per-element restriction of the values a map may take; std::nullopt leaves
/// the element free. Indexed [object][element].
using Candidates = std::vector<std::vector<std::optional<std::vector<std::size_t>>>>;

/// Backtracking enumeration of natural transformations source → target.
///
/// Objects are visited in descending |source(a)|; every assignment is pushed
/// down along all morphisms into its object, so conflicts surface as soon as
/// two forced values disagree. `visit` returns false to stop early. Throws
/// SearchExceeded once more than `budget` values have been tried.
void for_each_map(const PresheafPtr& source, const PresheafPtr& target, const Candidates* candidates,
                  const std::function<bool(const PresheafMap&)>& visit,
                  std::uint64_t budget = kDefaultNodeBudget);

/// All maps, sorted by flattened components.
std::vector<PresheafMap> enumerate_maps(const PresheafPtr& source, const PresheafPtr& target,
                                        std::uint64_t budget = kDefaultNodeBudget);

/// A commutative square g∘u = v∘f with f: A → B, g: C → D, u: A → C, v: B → D.
struct LiftingProblem {
  PresheafMap f;
  PresheafMap g;
  PresheafMap u;
  PresheafMap v;
};

/// Throws InvalidSquare when endpoints disagree or the square does not commute.
void check_square(const LiftingProblem& problem);

/// Candidate restrictions for a diagonal d: B → C (d∘f = u, g∘d = v), or
/// std::nullopt when some element already has no admissible value.
std::optional<Candidates> diagonal_candidates(const LiftingProblem& problem);

/// Every diagonal, sorted. Empty means the square has no filler.
std::vector<PresheafMap> solve(const LiftingProblem& problem, std::uint64_t budget = kDefaultNodeBudget);
std::optional<PresheafMap> find_diagonal(const LiftingProblem& problem,
                                         std::uint64_t budget = kDefaultNodeBudget);
/// Counts diagonals, stopping at `limit`.
std::size_t count_diagonals(const LiftingProblem& problem, std::size_t limit,
                            std::uint64_t budget = kDefaultNodeBudget);

struct Square {
  PresheafMap u;
  PresheafMap v;
};

/// Every commutative square from f to g: pairs (u, v) with g∘u = v∘f.
void for_each_square(const PresheafMap& f, const PresheafMap& g,
                     const std::function<bool(const Square&)>& visit,
                     std::uint64_t budget = kDefaultNodeBudget);
std::vector<Square> enumerate_squares(const PresheafMap& f, const PresheafMap& g,
                                      std::uint64_t budget = kDefaultNodeBudget);

struct LiftingReport {
  std::size_t squares = 0;
  std::size_t without_diagonal = 0;
  std::size_t with_several = 0;
  std::optional<Square> counterexample;

  bool box() const { return without_diagonal == 0; }
  bool perp() const { return without_diagonal == 0 && with_several == 0; }
};

/// Full census over all squares (no early exit).
LiftingReport lifting_report(const PresheafMap& f, const PresheafMap& g,
                             std::uint64_t budget = kDefaultNodeBudget);

/// f □ g: every square has a diagonal.
bool box(const PresheafMap& f, const PresheafMap& g, std::uint64_t budget = kDefaultNodeBudget);
/// f ⊥ g: every square has exactly one diagonal.
bool perp(const PresheafMap& f, const PresheafMap& g, std::uint64_t budget = kDefaultNodeBudget);

bool injective(const PresheafPtr& object, const std::vector<PresheafMap>& generators,
               std::uint64_t budget = kDefaultNodeBudget);
bool orthogonal(const PresheafPtr& object, const std::vector<PresheafMap>& generators,
                std::uint64_t budget = kDefaultNodeBudget);

/// f exhibited as a retract of f' in the arrow category.
struct RetractWitness {
  PresheafMap section_domain;       // A → A'
  PresheafMap section_codomain;     // B → B'
  PresheafMap retraction_domain;    // A' → A
  PresheafMap retraction_codomain;  // B' → B
};

bool verify_retract(const PresheafMap& f, const PresheafMap& f_prime, const RetractWitness& witness);

// ---------------------------------------------------------------------------
// Cellular certificates.

struct CellAttachment {
  std::size_t generator = 0;  // index into the generator list
  PresheafMap attaching;      // dom h → stage source
  PresheafMap cell;           // cod h → stage target
};

/// One pushout of a coproduct of generators:
///   ∐ dom h --⟨attaching⟩--> source
///      |                       | stage_map
///   ∐ cod h ----⟨cell⟩-----> target
struct CellularStage {
  PresheafMap stage_map;
  std::vector<CellAttachment> cells;
};

struct CellularCertificate {
  PresheafPtr domain;
  std::vector<CellularStage> stages;
  PresheafMap composite;
};

/// Re-checks each stage square against an independently built pushout and the
/// composite against the stage maps. Returns true or throws BadStageError.
bool verify_cellular(const CellularCertificate& certificate, const std::vector<PresheafMap>& generators);

}  // namespace deskcat
