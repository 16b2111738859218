#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gframe/controlled_frames.hpp"

namespace gframe {

// Row identifiers in canonical order.
const std::vector<std::string>& theorem_ids();
// One-line statement of what a row checks.
std::string theorem_statement(const std::string& id);

// Deliberate corruptions applied to the concluded object after the
// hypotheses were evaluated on the honest instance. A row that is not a
// target of a mutant ignores it.
enum class Mutant { none, scale_member, break_commutation, wrong_k };
std::string to_string(Mutant m);
Mutant parse_mutant(const std::string& s);
const std::vector<std::string>& mutant_targets(Mutant m);

// Optional operators for rows that need them; anything missing is generated
// from the seed and the report notes which one was used.
struct TheoremAux {
    std::optional<AdjointableOperator> theta;  // θ, or T for the ΛT row
    std::optional<AdjointableOperator> K;
    std::optional<AdjointableOperator> Q;
    std::optional<AdjointableOperator> P;      // orthogonal projection onto H
    std::optional<AlgebraElement> v;           // central element
};

// Instance on which a row runs when none is supplied.
GFrameSystem theorem_instance(const std::string& id, std::uint64_t seed);

TheoremReport verify_theorem(const std::string& id, std::uint64_t seed, double tol = 1e-9,
                             Mutant mutant = Mutant::none, const std::optional<GFrameSystem>& supplied = std::nullopt,
                             const TheoremAux& aux = {});

// Number of θ samples in the right-inverse rows.
constexpr int kRightInverseSamples = 20;

}  // namespace gframe
