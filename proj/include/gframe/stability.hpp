#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gframe/controlled_frames.hpp"

namespace gframe {

// Every check here works with (C, C) control; systems with C != C' are rejected.

enum class PerturbationKind { equivalence_M, sum, weighted, additive };
std::string to_string(PerturbationKind k);
PerturbationKind parse_perturbation_kind(const std::string& s);

// theorem: bounds ν(1 - √q), δ(1 + √q) with q = α + β/ν².
// corollary: α = 0 in the hypothesis, bounds ν(1 - √q)², δ(1 + √q)².
enum class AdditiveForm { theorem, corollary };

struct PerturbationParams {
    PerturbationKind kind = PerturbationKind::equivalence_M;
    double lambda = 0.0;
    double mu = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
    std::vector<double> alpha_w;  // empty: all ones
    std::vector<double> beta_w;
    std::optional<double> M;      // equivalence: use this M instead of M*
    AdditiveForm form = AdditiveForm::theorem;
};

constexpr int kDefaultStabilitySamples = 500;

// ∫ <(Λ_w - Γ_w) C x, (Λ_w - Γ_w) C x> dμ
AlgebraElement family_distance(const GFrameSystem& a, const GFrameSystem& b, const ModuleVector& x);

TheoremReport check_equivalence_M(const GFrameSystem& a, const GFrameSystem& b, int samples = kDefaultStabilitySamples,
                                  std::uint64_t seed = 0, double tol = 1e-9, std::optional<double> M = std::nullopt);

TheoremReport sum_frame_check(const GFrameSystem& lam, const GFrameSystem& gam, double tol = 1e-9);

TheoremReport weighted_perturbation_check(const GFrameSystem& t, const Family& r, const std::vector<double>& alpha_w,
                                          const std::vector<double>& beta_w, double lambda, double mu,
                                          int samples = kDefaultStabilitySamples, std::uint64_t seed = 0,
                                          double tol = 1e-9);

// Throws PreconditionError when α + β/ν² >= 1.
TheoremReport additive_perturbation_check(const GFrameSystem& t, const Family& r, double alpha, double beta,
                                          AdditiveForm form = AdditiveForm::theorem,
                                          int samples = kDefaultStabilitySamples, std::uint64_t seed = 0,
                                          double tol = 1e-9);

// systemB supplies Γ (sum, equivalence) or R (weighted, additive).
TheoremReport run_perturbation(const GFrameSystem& a, const GFrameSystem& b, const PerturbationParams& p,
                               int samples = kDefaultStabilitySamples, std::uint64_t seed = 0, double tol = 1e-9);

}  // namespace gframe
