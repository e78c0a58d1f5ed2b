#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "deskcat/colimits.hpp"
#include "deskcat/lifting.hpp"
#include "deskcat/presheaf.hpp"

namespace deskcat {

/// A finite generating list 𝒞 with an optional rule f ↦ 𝒞_f (indices into
/// the list). Without a rule every generator is used.
struct MorphismClassSource {
  std::vector<PresheafMap> generators;
  std::function<std::vector<std::size_t>(const PresheafMap&)> rule;

  /// 𝒞_f, checked to be a duplicate-free sublist.
  std::vector<std::size_t> select(const PresheafMap& f) const;
};

struct BoundednessConfig {
  std::size_t max_stages = 8;
  bool prune_solved = true;
  std::uint64_t node_budget = kDefaultNodeBudget;

  /// Throws InvalidConfig unless max_stages ≥ 1.
  void validate() const;
};

/// (u, h, v) with f∘u = v∘h; h is an index into the generators.
struct Triple {
  std::size_t generator = 0;
  PresheafMap u;  // dom h → A
  PresheafMap v;  // cod h → B
};

/// Triples over 𝒞_f ordered by (generator, u, v). With `prune`, triples that
/// already have a solution w (w∘h = u, f∘w = v) are dropped.
std::vector<Triple> collect_triples(const PresheafMap& f, const MorphismClassSource& source, bool prune,
                                    std::uint64_t budget = kDefaultNodeBudget);

struct StepResult {
  PresheafMap first;   // f01: A → A₁
  PresheafMap second;  // f1: A₁ → B
  CellularStage stage;
  std::vector<Triple> triples;
};

/// One pushout of ∐ h along ⟨u⟩. New cells are named "s<stage>.<t>/<element>";
/// elements of A keep their names.
StepResult one_step(const PresheafMap& f, const MorphismClassSource& source, bool prune,
                    std::uint64_t budget = kDefaultNodeBudget, std::size_t stage_index = 1);

/// The same pushout for an explicit list of triples.
StepResult attach_cells(const PresheafMap& f, const std::vector<PresheafMap>& generators,
                        std::vector<Triple> triples, std::size_t stage_index);

enum class FactorizationStatus { Fixpoint, BudgetExhausted };

std::string to_string(FactorizationStatus status);

struct FactorizationCertificate {
  PresheafMap morphism;                       // f: A → B
  std::vector<PresheafMap> generators;
  CellularCertificate cellular;               // A = A₀ → … → A_k, composite f_{0k}
  std::vector<std::vector<Triple>> triples;   // attached at each stage
  std::vector<PresheafMap> residuals;         // f_1 … f_k, f_i: A_i → B
  PresheafMap residual;                       // f_k
  FactorizationStatus status = FactorizationStatus::Fixpoint;
  std::size_t pending = 0;                    // triples still open when the run stopped
  bool right_class_verified = false;          // Fixpoint: box(h, f_k) for every generator
  BoundednessConfig config;

  std::size_t stages() const { return cellular.stages.size(); }
  PresheafPtr middle() const { return residual.source; }
};

/// Iterates one_step until no triples remain (Fixpoint, then box(h, f_k) is
/// verified for every generator) or max_stages stages have run and triples
/// remain (BudgetExhausted).
FactorizationCertificate factorize(const PresheafMap& f, const MorphismClassSource& source,
                                   const BoundednessConfig& config);

struct CertificateCheck {
  bool factors = false;        // f = f_k∘f_{0k}
  bool cellular = false;       // verify_cellular
  bool squares = false;        // every recorded triple commutes
  bool partial = false;        // recorded triples are solved in the composite
  bool right_class = false;    // Fixpoint only: box(h, f_k); true otherwise
  std::optional<std::size_t> bad_stage;
  std::string message;

  bool ok() const { return factors && cellular && squares && partial && right_class; }
};

/// Re-derives every claim of a certificate from its data alone.
CertificateCheck verify_factorization(const FactorizationCertificate& certificate,
                                      std::uint64_t budget = kDefaultNodeBudget);

struct WeakReflection {
  PresheafMap unit;  // K → K*
  FactorizationCertificate certificate;
  bool injective = false;  // only claimed at Fixpoint
};

WeakReflection weak_reflection(const PresheafPtr& object, const MorphismClassSource& source,
                               const BoundednessConfig& config);

struct ChainInjectivity {
  std::vector<bool> members;
  bool colimit = false;
};

/// Injectivity of each chain member and of the chain colimit.
ChainInjectivity injectivity_colimit_check(const PresheafPtr& first, const std::vector<PresheafMap>& maps,
                                           const std::vector<PresheafMap>& generators,
                                           std::uint64_t budget = kDefaultNodeBudget);

/// Alternating passes: factorize against A, then the residual against B, and so
/// on, until a pass adds nothing after the other class has reached a fixpoint.
/// Generators of the result are A followed by B. At most 2·max_stages passes.
FactorizationCertificate union_factorize(const PresheafMap& f, const MorphismClassSource& first,
                                         const MorphismClassSource& second, const BoundednessConfig& config);

}  // namespace deskcat
