#pragma once

// Deliberately naive reference computations. Nothing here shares code with the
// search, quotient or construction paths it is compared against.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "deskcat/fincat.hpp"
#include "deskcat/lifting.hpp"
#include "deskcat/presheaf.hpp"

namespace deskcat::oracle {

using Components = std::vector<std::vector<std::size_t>>;

/// Every natural transformation X → Y, by assigning elements one at a time in
/// storage order and rejecting a partial tuple once an equation between two
/// assigned elements fails. std::nullopt after more than `cap` trials.
std::optional<std::vector<Components>> maps(const Presheaf& x, const Presheaf& y, std::uint64_t cap);

/// Every diagonal of a square: per element, the values allowed by d∘f = u and
/// g∘d = v, then the same generate-and-test as maps().
std::optional<std::vector<Components>> diagonals(const LiftingProblem& problem, std::uint64_t cap);

/// Weakly increasing maps n-chain → m-chain, counted by filtering all m^n functions.
std::size_t isotone_count(std::size_t n, std::size_t m);

/// Nondegenerate simplex counts of hom(-, top) quotiented by the identification
/// of the sequences `glued_from` ~ `glued_to` (as maps into a top-chain), computed
/// from sequences alone: dims 0..max_dim.
std::vector<std::size_t> glued_simplex_census(std::size_t top, const std::vector<std::size_t>& glued_from,
                                              const std::vector<std::size_t>& glued_to, std::size_t max_dim);

/// Isomorphism 5-tuples (K, L, M, f: FK → M, g: GL → M) of a pseudopullback,
/// counted straight from the hom-sets.
std::size_t iso_five_tuples(const Functor& f, const Functor& g);

}  // namespace deskcat::oracle
