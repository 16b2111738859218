#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gframe/hilbert_module.hpp"
#include "gframe/kernels.hpp"
#include "gframe/measure.hpp"
#include "gframe/report.hpp"

namespace gframe {

// Λ_w for every atom, in atom order.
using Family = std::vector<AdjointableOperator>;

constexpr double kDefaultCommuteTol = 1e-9;

struct ControlPair {
    AdjointableOperator C;
    AdjointableOperator Cp;
    bool commute_each_other = false;
    bool commute_with_family = false;
    bool identical = false;  // C == C' within tolerance
    double each_other_residual = 0.0;
    double family_residual = 0.0;
};

// (Ω, μ), {Λ_w} and the control pair (C, C'). Commutation flags are computed
// on construction, relative to tol·max(1, ||·|| ||·||).
class GFrameSystem {
public:
    GFrameSystem(MeasureSpace m, Family family, AdjointableOperator C, AdjointableOperator Cp,
                 double commute_tol = kDefaultCommuteTol);
    // C = C' = I.
    static GFrameSystem uncontrolled(MeasureSpace m, Family family);

    const MeasureSpace& measure() const { return measure_; }
    const Family& family() const { return family_; }
    const ControlPair& controls() const { return controls_; }
    const AdjointableOperator& C() const { return controls_.C; }
    const AdjointableOperator& Cp() const { return controls_.Cp; }
    const AlgebraDescriptor& descriptor() const { return desc_; }
    int module_rank() const { return rank_; }
    double commute_tol() const { return commute_tol_; }
    bool commuting() const { return controls_.commute_each_other && controls_.commute_with_family; }

    GFrameSystem with_family(Family family) const;
    GFrameSystem with_controls(AdjointableOperator C, AdjointableOperator Cp) const;

private:
    MeasureSpace measure_;
    Family family_;
    ControlPair controls_;
    AlgebraDescriptor desc_;
    int rank_ = 0;
    double commute_tol_ = kDefaultCommuteTol;
};

struct FrameBounds {
    AlgebraElement lower;
    AlgebraElement upper;
    double scalar_lower = 0.0;
    double scalar_upper = 0.0;
    bool frame = false;  // false: Bessel-only (a <= tol)
};

FrameBounds scalar_bounds(AlgebraDescriptor desc, double a, double b);

// ∫⟨Λ_w C x, Λ_w C' x⟩ dμ
AlgebraElement controlled_gram(const GFrameSystem& sys, const ModuleVector& x,
                               Execution exec = Execution::parallel);
// S = ∫ C' Λ_w^* Λ_w C dμ, assembled blockwise.
AdjointableOperator frame_operator(const GFrameSystem& sys, Execution exec = Execution::parallel);

// Needs commuting controls, or C = C' (then S = C S_0 C is self-adjoint anyway).
FrameBounds optimal_scalar_bounds(const GFrameSystem& sys, double tol = kDefaultPsdTol);

enum class CheckMode { exact_scalar, sampled_general };

TheoremReport check_frame(const GFrameSystem& sys, const FrameBounds& bounds, CheckMode mode,
                          int samples = 200, std::uint64_t seed = 0, double tol = kDefaultPsdTol);

// Vector in ⊕_w V_w with ⟨y, z⟩ = Σ μ_w ⟨y_w, z_w⟩.
struct DirectSumVector {
    std::vector<ModuleVector> parts;
};
AlgebraElement direct_sum_inner(const MeasureSpace& m, const DirectSumVector& y, const DirectSumVector& z);
double direct_sum_norm(const MeasureSpace& m, const DirectSumVector& y);

// Viewing a family as one map U -> ⊕ V_w.
DirectSumVector family_apply(const Family& f, const ModuleVector& x);
// Σ μ_w f_w^* ∘ g_w  (the product f^* g of two such maps).
AdjointableOperator family_adjoint_product(const MeasureSpace& m, const Family& f, const Family& g,
                                           Execution exec = Execution::parallel);
// Flattened map with blocks sqrt(μ_w)·flatten(f_w) side by side; isometric picture.
CMatrix family_flatten(const MeasureSpace& m, const Family& f);
double family_norm(const MeasureSpace& m, const Family& f);
double family_lower(const MeasureSpace& m, const Family& f);
Family compose_right(const Family& f, const AdjointableOperator& q);  // f_w ∘ q
Family compose_left(const AdjointableOperator& q, const Family& f);   // q ∘ f_w
Family scale_family(const Family& f, cplx c);

// Λ_w (C'C)^{1/2} for every atom.
Family analysis_family(const GFrameSystem& sys);
DirectSumVector analysis(const GFrameSystem& sys, const ModuleVector& x);
ModuleVector synthesis(const GFrameSystem& sys, const DirectSumVector& y);

struct DualCertificate {
    Family dual_family;
    std::optional<AdjointableOperator> corresponding_K;
    double reconstruction_residual = 0.0;
    double converse_residual = 0.0;  // Λ as an operator dual of Γ with K^*
    bool pass = false;
};

// Σ μ C' Λ_w^* Γ_w K C
AdjointableOperator reconstruction_operator(const GFrameSystem& sys, const Family& dual,
                                            const std::optional<AdjointableOperator>& K,
                                            Execution exec = Execution::parallel);
// max over seeded unit x of ||x - Σ μ C' Λ_w^* Γ_w K C x|| / ||x||, evaluated vector by vector.
double reconstruction_residual(const GFrameSystem& sys, const Family& dual,
                               const std::optional<AdjointableOperator>& K, int samples, std::uint64_t seed,
                               Execution exec = Execution::parallel);

DualCertificate canonical_dual(const GFrameSystem& sys, int samples = 100, std::uint64_t seed = 0,
                               double tol = 1e-8);
DualCertificate operator_dual_check(const GFrameSystem& sys, const Family& dual, const AdjointableOperator& K,
                                    int samples = 100, std::uint64_t seed = 0, double tol = 1e-8);

// L = ∫ γ_w Λ_w^* θ_w dμ
AdjointableOperator multiplier(const std::vector<cplx>& gamma, const Family& lam, const Family& theta,
                               const MeasureSpace& m, Execution exec = Execution::parallel);

struct MultiplierReport {
    AdjointableOperator L;
    double norm = 0.0;
    double bound = 0.0;            // ||γ||_∞ b_Λ b_Θ
    double displayed_bound = 0.0;  // ||γ||_∞^2 b_Θ^2 b_Λ^2
    double adjoint_residual = 0.0; // L^* against the conjugate-symbol, swapped-family multiplier
    double unswapped_defect = 0.0; // L^* against the conjugate symbol with the families kept in place
    bool pass = false;
};
MultiplierReport multiplier_report(const std::vector<cplx>& gamma, const Family& lam, const Family& theta,
                                   const MeasureSpace& m, double tol = 1e-10);

// L = ∫ γ_w C θ_w^* Λ_w C' dμ
AdjointableOperator controlled_multiplier(const std::vector<cplx>& gamma, const Family& theta, const Family& lam,
                                          const ControlPair& controls, const MeasureSpace& m,
                                          Execution exec = Execution::parallel);

struct ControlledMultiplierReport {
    AdjointableOperator L;
    double norm = 0.0;
    double b_theta = 0.0;   // Bessel bound of θ under (C, C)
    double b_lambda = 0.0;  // Bessel bound of Λ under (C', C')
    double bound = 0.0;
    bool pass = false;
};
ControlledMultiplierReport controlled_multiplier_report(const std::vector<cplx>& gamma, const Family& theta,
                                                        const Family& lam, const ControlPair& controls,
                                                        const MeasureSpace& m, double tol = 1e-10);

double sup_norm(const std::vector<cplx>& gamma);

// Atom whose term contributes most to the top eigenvalue of S; scaling that
// member strictly raises λ_max(S).
size_t dominant_atom(const GFrameSystem& sys);

}  // namespace gframe
