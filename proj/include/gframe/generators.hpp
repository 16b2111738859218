#pragma once

#include <cstdint>

#include "gframe/controlled_frames.hpp"
#include "gframe/random.hpp"

namespace gframe {

// Diagonal algebra ℂ^k on A^1, Λ_w = w·diag(1, 1/2, ..., 1/k), C = αI, C' = βI,
// Simpson atoms on [0, 1]. The frame operator is (αβ/3)·diag(1/n²).
GFrameSystem generate_unit_interval(double alpha, double beta, int rank, int nodes);

struct RandomOptions {
    AlgebraDescriptor algebra{AlgebraKind::matrix, 2};
    int rank = 2;
    int atoms = 4;
    // Family and controls share one eigenbasis per irreducible component, so
    // C, C' commute with each other and with every Λ_w^*Λ_w.
    bool commuting = false;
    bool uniform_outputs = false;   // every Λ_w maps onto A^rank
    bool identical_controls = false;
    // Commuting mode: control spectra lie in [level(1 - spread), level].
    double control_spread = 0.7;
};

GFrameSystem generate_random(std::uint64_t seed, const RandomOptions& opt);

// c0·I + Σ c_i X_i over the normalised C, C', S_0 and S_0², |c_i| <= 0.02 and
// |c0| >= 1, so the result is invertible, close to scalar, and commutes with
// everything the listed operators commute with.
AdjointableOperator commuting_operator(const GFrameSystem& sys, Rng& rng);

// Uncontrolled frame operator Σ μ Λ_w^*Λ_w.
AdjointableOperator uncontrolled_frame_operator(const GFrameSystem& sys);

}  // namespace gframe
