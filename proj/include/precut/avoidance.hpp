#pragma once

#include "precut/species.hpp"

#include <functional>
#include <string>

namespace precut {

/// Relabeling-invariant predicate on elements of a parent species.
struct AvoidanceSet {
    std::string name;
    std::function<bool(const Element&)> membership;
};

bool has_part(const Species& S, const AvoidanceSet& A, const Element& s);

/// has_part for every element of S[0..n], indexed like S.elements(m).
std::vector<std::vector<char>> has_part_table(const Species& S, const AvoidanceSet& A, int n);

SpeciesPtr avoiding_instance(SpeciesPtr S, AvoidanceSet A);

VerificationReport is_irreducible(const Species& S, Projection which, const AvoidanceSet& A, int nmax);

struct AvoidanceRoles {
    SpeciesPtr species;
    Projection irreducible = Projection::First;
    /// (Δ_other, μ_irreducible) restricts to a sub-bimonoid.
    std::string sub_bimonoid;
    /// (Δ_irreducible, μ_other) passes to a quotient bimonoid.
    std::string quotient_bimonoid;
};

/// Throws IrreducibilityNotVerified unless `irreducibility` is a passing report for that coproduct.
AvoidanceRoles quotient_or_sub_bimonoid(SpeciesPtr S, AvoidanceSet A, Projection irreducible,
                                        const VerificationReport& irreducibility);

nlohmann::json to_json(const AvoidanceRoles& roles);

/// Named predicates, joined by '+': permutation patterns such as "213", "cherry", "V",
/// "second-not-total" (alias "nondecreasing-parking"), "first-not-total", "same-bubble-1", "same-bubble-2".
AvoidanceSet avoidance_preset(const std::string& preset, const Species& parent);

}  // namespace precut
