#include "gframe/theorems.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>

#include "gframe/errors.hpp"
#include "gframe/generators.hpp"
#include "gframe/random.hpp"

namespace gframe {

namespace {

struct RowInfo {
    std::string id;
    std::string statement;
};

const std::vector<RowInfo>& rows()
{
    static const std::vector<RowInfo> r = {
        {"T2.3", "the transform T is injective and adjointable, has a closed range, ||T|| <= ||B|| and T* is surjective"},
        {"FO-PROPS", "S is bounded, positive, self-adjoint and invertible with ||A^-1||^-2 <= ||S|| <= ||B||^2"},
        {"SCC-PROPS", "S_{CC'} is bounded, positive, sefladjoint and invertible"},
        {"T-T3", "Λ is a frame if and only if Λ is a (C,C)-controlled frame, with transported bounds"},
        {"T-TT", "frame bounds ||(T*T)^-1||^-1 and ||T||^2"},
        {"BESSEL-COMP", "{Λ_w* Γ_w} is a controlled Bessel family for U2 with bound sup||Λ_w||·b_Γ"},
        {"TH-SURJ", "a surjective synthesis map θ on ⊕V_w makes Λ a frame with bounds from ||(θ*)^-1|| and ||θ||"},
        {"F-KT", "F = ∫ Γ_w* Λ_w surjective makes Γ a frame"},
        {"HOM-TRANSPORT", "a *-homomorphism with intertwiner θ transports the frame, <S_B θx, θy> = φ(<S_A x, y>)"},
        {"LEFT-COMP", "{θΛ_w} is a frame with bounds ||θ^-1||^-1 A and ||θ|| B"},
        {"RIGHT-COMP", "{Λ_w θ} is a frame with frame operator θ*Sθ"},
        {"DUAL-SIM", "Γ dual of ΛQ* gives ΓQ dual of Λ, and Γ dual of Λ gives ΓQ^-1 dual of ΛQ*"},
        {"EQ-FRAME-OP", "Q = S_Λ^{1/2} S_Γ^{-1/2} gives S_{ΓQ*} = S_Λ"},
        {"OP-DUAL-CORR", "operator duals of Λ correspond to operator duals of ΛQ* with operator (Q*)^-1 K Q^-1"},
        {"SUBMODULE", "Λ_w P_H is a frame for H, duals restrict, and S_P^-1 P_H = P_H S^-1 on H"},
        {"T33", "one reconstruction identity gives mutual operator duality and a lower bound for Γ"},
        {"T55", "right inverses of KT* are exactly TS^-1K^-1 + (I - TS^-1T*)θ"},
        {"MIDPOINT-DUAL", "vΓ_w + vΛ_w S^-1 K^-1 is an operator dual with operator (1/2)v^-1 K"},
        {"T12", "Bessel families are exactly {P_w θ}"},
        {"T66", "a right inverse θ of KT* yields the operator dual {P_w θ}"},
        {"DUAL-PARAM", "every (C,C)-controlled operator dual has the form Λ_wCS^-1K^-1 + G_wC - ∫Λ_wCS^-1CΛ_t*G_tC"},
        {"ANY-FRAME-CONTROLLED", "an uncontrolled frame is (C,C')-controlled"},
        {"LAMBDA-T", "ΛT is a frame with bounds (A·m, B||T||) for invertible T commuting with the controls"},
    };
    return r;
}

struct Ctx {
    const GFrameSystem& sys;
    TheoremReport& r;
    Rng& rng;
    Mutant mut;
    const TheoremAux& aux;
    double tol;
};

double excess(double value, double bound)
{
    return std::max(0.0, value - bound) / std::max(1.0, std::abs(bound));
}

AdjointableOperator ident(const GFrameSystem& s)
{
    return AdjointableOperator::identity(s.descriptor(), s.module_rank());
}

double identity_residual(const AdjointableOperator& t)
{
    return op_distance(t, AdjointableOperator::identity(t.descriptor(), t.in_rank()));
}

AdjointableOperator cmp(const AdjointableOperator& a, const AdjointableOperator& b, const AdjointableOperator& c)
{
    return op_compose(a, op_compose(b, c));
}

Family family_add(const Family& f, const Family& g)
{
    Family out;
    for (size_t k = 0; k < f.size(); ++k) out.push_back(f[k] + g[k]);
    return out;
}

Family family_sub(const Family& f, const Family& g)
{
    Family out;
    for (size_t k = 0; k < f.size(); ++k) out.push_back(f[k] - g[k]);
    return out;
}

double relative_commutator(const AdjointableOperator& a, const AdjointableOperator& b)
{
    return commutator_norm(a, b) / std::max(1.0, op_norm(a) * op_norm(b));
}

bool require_commuting(Ctx& c, const GFrameSystem& s)
{
    const auto& cp = s.controls();
    return c.r.hypothesis("controls commute with each other and with every Λ_w*Λ_w", s.commuting(),
                          std::max(cp.each_other_residual, cp.family_residual));
}

bool require_identical(Ctx& c, const GFrameSystem& s)
{
    return c.r.hypothesis("C = C'", s.controls().identical, op_distance(s.C(), s.Cp()));
}

std::optional<FrameBounds> require_frame(Ctx& c, const GFrameSystem& s, const std::string& name)
{
    try {
        FrameBounds fb = optimal_scalar_bounds(s, c.tol);
        c.r.value(name + ".a", fb.scalar_lower);
        c.r.value(name + ".b", fb.scalar_upper);
        if (!c.r.hypothesis(name + " is a frame", fb.frame, fb.scalar_lower)) return std::nullopt;
        return fb;
    } catch (const UnsupportedConfiguration&) {
        c.r.hypothesis(name + " has scalar bounds", false, INFINITY);
        return std::nullopt;
    }
}

bool require_commutes_with_controls(Ctx& c, const AdjointableOperator& t, const std::string& name)
{
    double res = std::max(relative_commutator(t, c.sys.C()), relative_commutator(t, c.sys.Cp()));
    return c.r.hypothesis(name + " commutes with C and C'", res <= c.sys.commute_tol(), res);
}

bool require_invertible(Ctx& c, const AdjointableOperator& t, const std::string& name)
{
    double s = bounded_below_constant(t);
    return c.r.hypothesis(name + " is invertible", s > c.tol * std::max(1.0, op_norm(t)), s);
}

void check_shape(const GFrameSystem& s, const AdjointableOperator& t, const std::string& name)
{
    if (!(t.descriptor() == s.descriptor()) || t.in_rank() != s.module_rank() || t.out_rank() != s.module_rank())
        throw InputError("auxiliary operator " + name + " must act on the system's module");
}

AdjointableOperator aux_or(Ctx& c, const std::optional<AdjointableOperator>& given, const std::string& name,
                           const std::function<AdjointableOperator()>& make)
{
    if (given) {
        check_shape(c.sys, *given, name);
        c.r.note(name, "supplied");
        return *given;
    }
    c.r.note(name, "generated from seed");
    return make();
}

AdjointableOperator commuting_aux(Ctx& c, const std::optional<AdjointableOperator>& given, const std::string& name)
{
    return aux_or(c, given, name, [&] { return commuting_operator(c.sys, c.rng); });
}

AdjointableOperator invertible_aux(Ctx& c, const std::optional<AdjointableOperator>& given, const std::string& name)
{
    return aux_or(c, given, name,
                  [&] { return random_invertible_operator(c.rng, c.sys.descriptor(), c.sys.module_rank()); });
}

Family scaled_dominant(const GFrameSystem& s)
{
    Family f = s.family();
    const size_t k = dominant_atom(s);
    f[k] = 2.0 * f[k];
    return f;
}

// C' replaced by an unrelated positive control of the same size.
GFrameSystem broken_controls(const GFrameSystem& s, Rng& rng)
{
    AdjointableOperator q = random_positive_operator(rng, s.descriptor(), s.module_rank());
    q = (op_norm(s.Cp()) / op_norm(q)) * q;
    return s.with_controls(s.C(), q);
}

void record_check(Ctx& c, const std::string& name, const TheoremReport& rep)
{
    c.r.conclusion(name, rep.passed(), rep.conclusion_residual);
}

std::vector<int> out_ranks(const GFrameSystem& s)
{
    std::vector<int> r;
    for (const auto& l : s.family()) r.push_back(l.out_rank());
    return r;
}

Family random_family(Ctx& c)
{
    Family f;
    for (int m : out_ranks(c.sys)) f.push_back(random_operator(c.rng, c.sys.descriptor(), c.sys.module_rank(), m));
    return f;
}

// T S^-1 K^-1 + (I - T S^-1 T*) θ
Family right_inverse_from(const MeasureSpace& m, const Family& T, const AdjointableOperator& sinv,
                          const AdjointableOperator& kinv, const Family& theta)
{
    Family base = compose_right(T, op_compose(sinv, kinv));
    Family proj = compose_right(T, op_compose(sinv, family_adjoint_product(m, T, theta)));
    return family_add(base, family_sub(theta, proj));
}

double family_gap(const MeasureSpace& m, const Family& f, const Family& g)
{
    return family_norm(m, family_sub(f, g)) / std::max(1.0, family_norm(m, g));
}

// ---------------------------------------------------------------- rows

void row_transform(Ctx& c)
{
    if (!require_commuting(c, c.sys)) return;
    auto fb = require_frame(c, c.sys, "Λ");
    if (!fb) return;
    const GFrameSystem concl = c.mut == Mutant::scale_member ? c.sys.with_family(scaled_dominant(c.sys)) : c.sys;
    const MeasureSpace& m = c.sys.measure();
    const Family T = analysis_family(concl);
    const double lower = family_lower(m, T), upper = family_norm(m, T);
    c.r.value("sigma_min(T)", lower);
    c.r.value("norm(T)", upper);
    c.r.conclusion("T injective with closed range (sigma_min >= a)", excess(fb->scalar_lower, lower));
    c.r.conclusion("||T|| <= b", excess(upper, fb->scalar_upper));
    c.r.conclusion("T* surjective", lower > c.tol, lower > c.tol ? 0.0 : 1.0);
    const AdjointableOperator S = frame_operator(c.sys);
    c.r.conclusion("T*T = S", op_distance(family_adjoint_product(m, T, T), S) / std::max(1.0, op_norm(S)));
}

void frame_operator_properties(Ctx& c, const AdjointableOperator& s, const FrameBounds* fb)
{
    const PositivePartChecks pc = positive_part_checks(s, c.tol);
    const double scale = std::max(1.0, op_norm(s));
    c.r.value("lambda_min(S)", pc.lower);
    c.r.value("lambda_max(S)", pc.upper);
    c.r.conclusion("self-adjoint", linalg::hermitian_defect(flatten(s)) / scale);
    c.r.conclusion("positive", std::max(0.0, -pc.lower) / scale);
    c.r.conclusion("invertible", pc.lower > c.tol * scale, pc.lower > c.tol * scale ? 0.0 : 1.0);
    if (fb) {
        const double a = fb->scalar_lower, b = fb->scalar_upper, n = op_norm(s);
        c.r.conclusion("||A^-1||^-2 <= ||S||", excess(a * a, n));
        c.r.conclusion("||S|| <= ||B||^2", excess(n, b * b));
    }
}

void row_fo_props(Ctx& c)
{
    if (!require_commuting(c, c.sys)) return;
    auto fb = require_frame(c, c.sys, "Λ");
    if (!fb) return;
    GFrameSystem concl = c.sys;
    if (c.mut == Mutant::scale_member) concl = c.sys.with_family(scaled_dominant(c.sys));
    if (c.mut == Mutant::break_commutation) concl = broken_controls(c.sys, c.rng);
    frame_operator_properties(c, frame_operator(concl), &*fb);
}

void row_scc_props(Ctx& c)
{
    if (!require_commuting(c, c.sys)) return;
    auto fb = require_frame(c, c.sys, "Λ");
    if (!fb) return;
    const Family T = analysis_family(c.sys);
    const GFrameSystem concl = c.mut == Mutant::break_commutation ? broken_controls(c.sys, c.rng) : c.sys;
    const AdjointableOperator s = frame_operator(concl);
    const AdjointableOperator tt = family_adjoint_product(c.sys.measure(), T, T);
    c.r.conclusion("S_{CC'} = T_{CC'} T*_{CC'}", op_distance(s, tt) / std::max(1.0, op_norm(s)));
    frame_operator_properties(c, s, nullptr);
}

void row_tt3(Ctx& c)
{
    if (!require_identical(c, c.sys)) return;
    auto fb = require_frame(c, c.sys, "(C,C) system");
    if (!fb) return;
    const GFrameSystem bare = GFrameSystem::uncontrolled(c.sys.measure(), c.sys.family());
    auto fb0 = require_frame(c, bare, "uncontrolled system");
    if (!fb0) return;
    const double nc = op_norm(c.sys.C()), nci = op_norm(op_inverse(c.sys.C()));
    const bool mutate = c.mut == Mutant::scale_member;
    const AlgebraDescriptor desc = c.sys.descriptor();

    // controlled -> uncontrolled with A||C||^-1, B||C^-1||
    const GFrameSystem bare_c = mutate ? GFrameSystem::uncontrolled(bare.measure(), scaled_dominant(bare)) : bare;
    const FrameBounds to_bare = scalar_bounds(desc, fb->scalar_lower / nc, fb->scalar_upper * nci);
    record_check(c, "controlled => frame with A||C||^-1, B||C^-1||",
                 check_frame(bare_c, to_bare, CheckMode::exact_scalar, 0, 0, c.tol));
    // uncontrolled -> controlled with A||C^-1||^-1, B||C||
    const GFrameSystem ctl_c = mutate ? c.sys.with_family(scaled_dominant(c.sys)) : c.sys;
    const FrameBounds to_ctl = scalar_bounds(desc, fb0->scalar_lower / nci, fb0->scalar_upper * nc);
    record_check(c, "frame => controlled with A||C^-1||^-1, B||C||",
                 check_frame(ctl_c, to_ctl, CheckMode::exact_scalar, 0, 0, c.tol));
}

void row_tt(Ctx& c)
{
    if (!require_commuting(c, c.sys)) return;
    if (!require_frame(c, c.sys, "Λ")) return;
    const MeasureSpace& m = c.sys.measure();
    const Family T = analysis_family(c.sys);
    const AdjointableOperator tt = family_adjoint_product(m, T, T);
    const double lower = 1.0 / op_norm(op_inverse(tt));
    const double upper = std::pow(family_norm(m, T), 2);
    c.r.value("||(T*T)^-1||^-1", lower);
    c.r.value("||T||^2", upper);
    const GFrameSystem concl = c.mut == Mutant::scale_member ? c.sys.with_family(scaled_dominant(c.sys)) : c.sys;
    record_check(c, "frame with bounds ||(T*T)^-1||^-1 and ||T||^2",
                 check_frame(concl, scalar_bounds(c.sys.descriptor(), std::sqrt(lower), std::sqrt(upper)),
                             CheckMode::exact_scalar, 0, 0, c.tol));
}

void row_bessel_comp(Ctx& c)
{
    if (!require_identical(c, c.sys)) return;
    const Family gamma = random_family(c);
    const GFrameSystem gsys = c.sys.with_family(gamma);
    const double b1 = optimal_scalar_bounds(c.sys).scalar_upper;
    const double b2 = optimal_scalar_bounds(gsys).scalar_upper;
    c.r.hypothesis("Λ is Bessel", std::isfinite(b1), b1);
    if (!c.r.hypothesis("Γ is Bessel", std::isfinite(b2), b2)) return;
    double sup = 0.0;
    Family comp;
    for (size_t k = 0; k < gamma.size(); ++k) {
        sup = std::max(sup, op_norm(c.sys.family()[k]));
        comp.push_back(op_compose(op_adjoint(c.sys.family()[k]), gamma[k]));
    }
    const double bound = sup * b2;
    c.r.value("sup||Λ_w||", sup);
    c.r.value("bound", bound);
    c.r.value("displayed_bound", b1 * b2);
    GFrameSystem concl = c.sys.with_family(comp);
    if (c.mut == Mutant::break_commutation) concl = broken_controls(concl, c.rng);
    record_check(c, "{Λ_w*Γ_w} Bessel with bound sup||Λ_w||·b_Γ",
                 check_frame(concl, scalar_bounds(c.sys.descriptor(), 0.0, bound), CheckMode::exact_scalar, 0, 0,
                             c.tol));
}

void row_th_surj(Ctx& c)
{
    if (!require_commuting(c, c.sys)) return;
    const MeasureSpace& m = c.sys.measure();
    // θ({x_w}) = ∫ Λ_w* x_w, so θ* x = {Λ_w x}
    const double smin = family_lower(m, c.sys.family());
    const double tnorm = family_norm(m, c.sys.family());
    if (!c.r.hypothesis("θ surjective", smin > c.tol * std::max(1.0, tnorm), smin)) return;
    const PositivePartChecks cc = positive_part_checks(op_compose(c.sys.Cp(), c.sys.C()));
    const double lower = smin * std::sqrt(cc.lower);
    const double upper = tnorm * std::sqrt(cc.upper);
    c.r.value("||(θ*|R)^-1||^-1", smin);
    c.r.value("||θ||", tnorm);
    c.r.value("lower", lower);
    c.r.value("upper", upper);
    const GFrameSystem bare = GFrameSystem::uncontrolled(m, c.sys.family());
    const GFrameSystem concl = c.mut == Mutant::scale_member ? c.sys.with_family(scaled_dominant(bare)) : c.sys;
    record_check(c, "frame with bounds from ||(θ*|R)^-1||^-1 and ||θ||",
                 check_frame(concl, scalar_bounds(c.sys.descriptor(), lower, upper), CheckMode::exact_scalar, 0, 0,
                             c.tol));
}

void row_f_kt(Ctx& c)
{
    if (!require_commuting(c, c.sys)) return;
    if (!require_frame(c, c.sys, "Λ")) return;
    const AdjointableOperator Q = commuting_aux(c, c.aux.Q, "Q");
    const MeasureSpace& m = c.sys.measure();
    const Family gamma = compose_right(c.sys.family(), Q);
    const double bg = family_norm(m, gamma);
    c.r.hypothesis("Γ is Bessel", std::isfinite(bg), bg);
    const AdjointableOperator F = family_adjoint_product(m, gamma, c.sys.family());
    const double fmin = bounded_below_constant(F);
    if (!c.r.hypothesis("F surjective", fmin > c.tol * std::max(1.0, op_norm(F)), fmin)) return;
    const PositivePartChecks cc = positive_part_checks(op_compose(c.sys.Cp(), c.sys.C()));
    const double lower2 = std::pow(fmin / family_norm(m, c.sys.family()), 2) * cc.lower;
    c.r.value("lower^2", lower2);
    GFrameSystem concl = c.sys.with_family(gamma);
    if (c.mut == Mutant::break_commutation) concl = broken_controls(concl, c.rng);
    const AdjointableOperator s = frame_operator(concl);
    const PositivePartChecks pc = positive_part_checks(s, c.tol);
    const double scale = std::max(1.0, op_norm(s));
    c.r.conclusion("S_Γ self-adjoint", linalg::hermitian_defect(flatten(s)) / scale);
    c.r.conclusion("Γ lower frame bound", excess(lower2, pc.lower));
}

// θ acts coordinatewise by the *-homomorphism φ.
struct Transport {
    std::string kind;
    std::function<AlgebraElement(const AlgebraElement&)> phi;
};

ModuleVector transport(const Transport& t, const ModuleVector& x)
{
    std::vector<AlgebraElement> coords;
    for (const auto& a : x.coords()) coords.push_back(t.phi(a));
    return ModuleVector(std::move(coords));
}

AdjointableOperator map_blocks(const AdjointableOperator& t,
                               const std::function<AlgebraElement(const AlgebraElement&)>& f)
{
    std::vector<AlgebraElement> blocks;
    for (const auto& b : t.blocks()) blocks.push_back(f(b));
    return AdjointableOperator(t.in_rank(), t.out_rank(), std::move(blocks));
}

GFrameSystem map_system(const GFrameSystem& s, const std::function<AlgebraElement(const AlgebraElement&)>& f)
{
    Family fam;
    for (const auto& l : s.family()) fam.push_back(map_blocks(l, f));
    return GFrameSystem(s.measure(), std::move(fam), map_blocks(s.C(), f), map_blocks(s.Cp(), f));
}

Transport conjugation(const CMatrix& V)
{
    const AlgebraDescriptor desc{AlgebraKind::matrix, static_cast<int>(V.rows())};
    return {"unitary conjugation",
            [V, desc](const AlgebraElement& a) { return AlgebraElement::from_dense(desc, V * a.dense() * V.adjoint()); }};
}

Transport swap01(int k)
{
    return {"diagonal permutation", [k](const AlgebraElement& a) {
                std::vector<cplx> e = a.entries();
                if (k >= 2) std::swap(e[0], e[1]);
                return AlgebraElement(a.descriptor(), std::move(e));
            }};
}

Transport identity_transport()
{
    return {"identity", [](const AlgebraElement& a) { return a; }};
}

RandomOptions theorem_options(std::uint64_t seed, const std::string& id)
{
    Rng rng(mix_seed(seed, 0x7a11));
    RandomOptions o;
    switch (rng.uniform_int(0, 3)) {
    case 0: o.algebra = {AlgebraKind::matrix, 1}; break;
    case 1: o.algebra = {AlgebraKind::matrix, 2}; break;
    case 2: o.algebra = {AlgebraKind::diagonal, 2}; break;
    default: o.algebra = {AlgebraKind::diagonal, 3}; break;
    }
    // every irreducible component has size >= 2, so commutation can be broken
    const bool m2 = o.algebra.kind == AlgebraKind::matrix && o.algebra.dim == 2;
    o.rank = m2 ? rng.uniform_int(1, 2) : rng.uniform_int(2, 3);
    o.atoms = rng.uniform_int(2, 4);
    o.commuting = true;
    o.control_spread = 0.05;
    static const std::vector<std::string> identical = {"T-T3", "BESSEL-COMP", "LEFT-COMP", "T55",
                                                       "T12",  "T66",         "DUAL-PARAM"};
    o.identical_controls = std::find(identical.begin(), identical.end(), id) != identical.end();
    o.uniform_outputs = id == "LEFT-COMP";
    return o;
}

struct HomInstance {
    GFrameSystem sys;
    Transport t;
};

HomInstance hom_instance(std::uint64_t seed)
{
    RandomOptions o = theorem_options(seed, "HOM-TRANSPORT");
    Rng rng(mix_seed(seed, 0x40e1));
    switch (seed % 3) {
    case 1: {
        // diagonal system lifted into M_d through a fixed eigenbasis W; V shares it
        const int d = rng.uniform_int(2, 3);
        o.algebra = {AlgebraKind::diagonal, d};
        o.rank = rng.uniform_int(1, 2);
        GFrameSystem base = generate_random(mix_seed(seed, 1), o);
        const CMatrix W = random_unitary(rng, d);
        CVector ph(d);
        for (int i = 0; i < d; ++i) ph(i) = std::polar(1.0, 2.0 * std::numbers::pi * (i + 0.5) / d);
        const CMatrix V = W * ph.asDiagonal() * W.adjoint();
        const AlgebraDescriptor md{AlgebraKind::matrix, d};
        auto lift = [W, md](const AlgebraElement& a) {
            return AlgebraElement::from_dense(md, W * a.dense() * W.adjoint());
        };
        return {map_system(base, lift), conjugation(V)};
    }
    case 2: {
        // ℂ^2 -> ℂ^3, (a, b) -> (a, a, b), fixed by swapping the first two entries
        o.algebra = {AlgebraKind::diagonal, 2};
        o.rank = rng.uniform_int(2, 3);
        GFrameSystem base = generate_random(mix_seed(seed, 1), o);
        auto lift = [](const AlgebraElement& a) {
            const auto& e = a.entries();
            return AlgebraElement::diag({e[0], e[0], e[1]});
        };
        return {map_system(base, lift), swap01(3)};
    }
    default:
        return {generate_random(mix_seed(seed, 1), o), identity_transport()};
    }
}

Transport transport_for(const GFrameSystem& s, std::uint64_t seed)
{
    const AlgebraDescriptor d = s.descriptor();
    if (d.kind == AlgebraKind::matrix && d.dim >= 2 && seed % 3 == 1) {
        Rng rng(mix_seed(seed, 0x40e2));
        return conjugation(random_unitary(rng, d.dim));
    }
    if (d.kind == AlgebraKind::diagonal && d.dim >= 2 && seed % 3 == 2) return swap01(d.dim);
    return identity_transport();
}

void row_hom(Ctx& c, const Transport& t)
{
    c.r.note("phi", t.kind);
    if (!require_commuting(c, c.sys)) return;
    auto fb = require_frame(c, c.sys, "A-system");
    if (!fb) return;
    double fixed = 0.0;
    auto fixes = [&](const AdjointableOperator& op) {
        for (const auto& b : op.blocks()) fixed = std::max(fixed, norm(t.phi(b) - b) / std::max(1.0, norm(b)));
    };
    for (const auto& l : c.sys.family()) fixes(l);
    fixes(c.sys.C());
    fixes(c.sys.Cp());
    if (!c.r.hypothesis("θ intertwines Λ_w, C and C'", fixed <= c.tol, fixed)) return;
    Rng samples(mix_seed(c.r.seed, 0x40e3));
    const AlgebraDescriptor desc = c.sys.descriptor();
    const int n = c.sys.module_rank();
    std::vector<std::pair<ModuleVector, ModuleVector>> xs;
    for (int i = 0; i < 50; ++i)
        xs.emplace_back(random_unit_vector(samples, desc, n), random_unit_vector(samples, desc, n));
    double hom = 0.0;
    for (const auto& [x, y] : xs)
        hom = std::max(hom, norm(inner_product(transport(t, x), transport(t, y)) - t.phi(inner_product(x, y))));
    if (!c.r.hypothesis("<θx, θy>_B = φ(<x, y>_A)", hom <= c.tol, hom)) return;

    const GFrameSystem concl = c.mut == Mutant::break_commutation ? broken_controls(c.sys, c.rng) : c.sys;
    const AdjointableOperator s = frame_operator(concl);
    const double scale = std::max(1.0, op_norm(s));
    double ident_res = 0.0;
    for (const auto& [x, y] : xs) {
        AlgebraElement lhs = inner_product(op_apply(s, transport(t, x)), transport(t, y));
        AlgebraElement rhs = t.phi(inner_product(op_apply(s, x), y));
        ident_res = std::max(ident_res, norm(lhs - rhs) / scale);
    }
    c.r.conclusion("<S_B θx, θy>_B = φ(<S_A x, y>_A)", ident_res);
    // φ(a·1) = a·1, so the transported bounds are the scalar bounds again
    record_check(c, "B-system frame with bounds φ(A), φ(B)",
                 check_frame(concl, scalar_bounds(desc, fb->scalar_lower, fb->scalar_upper), CheckMode::exact_scalar,
                             0, 0, c.tol));
}

void row_left_comp(Ctx& c)
{
    if (!require_identical(c, c.sys)) return;
    const auto outs = out_ranks(c.sys);
    const bool square = std::all_of(outs.begin(), outs.end(), [&](int m) { return m == c.sys.module_rank(); });
    if (!c.r.hypothesis("every V_w equals U", square)) return;
    auto fb = require_frame(c, c.sys, "Λ");
    if (!fb) return;
    const AdjointableOperator theta = invertible_aux(c, c.aux.theta, "theta");
    if (!require_invertible(c, theta, "θ")) return;
    const double lower = fb->scalar_lower / op_norm(op_inverse(theta));
    const double upper = fb->scalar_upper * op_norm(theta);
    c.r.value("lower", lower);
    c.r.value("upper", upper);
    GFrameSystem concl = c.sys.with_family(compose_left(theta, c.sys.family()));
    if (c.mut == Mutant::break_commutation) concl = broken_controls(concl, c.rng);
    record_check(c, "{θΛ_w} frame with bounds ||θ^-1||^-1 A, ||θ|| B",
                 check_frame(concl, scalar_bounds(c.sys.descriptor(), lower, upper), CheckMode::exact_scalar, 0, 0,
                             c.tol));
}

void row_right_comp(Ctx& c)
{
    if (!require_commuting(c, c.sys)) return;
    auto fb = require_frame(c, c.sys, "Λ");
    if (!fb) return;
    AdjointableOperator theta = commuting_aux(c, c.aux.theta, "theta");
    if (!require_invertible(c, theta, "θ")) return;
    if (!require_commutes_with_controls(c, theta, "θ")) return;
    const AdjointableOperator S = frame_operator(c.sys);
    const AdjointableOperator expected = cmp(op_adjoint(theta), S, theta);
    Family base = c.sys.family();
    if (c.mut == Mutant::scale_member) base = scaled_dominant(c.sys);
    if (c.mut == Mutant::break_commutation)
        theta = random_invertible_operator(c.rng, c.sys.descriptor(), c.sys.module_rank());
    const GFrameSystem concl = c.sys.with_family(compose_right(base, theta));
    const AdjointableOperator snew = frame_operator(concl);
    c.r.conclusion("frame operator equals θ*Sθ", op_distance(snew, expected) / std::max(1.0, op_norm(expected)));
    const double lower = fb->scalar_lower / op_norm(op_inverse(theta));
    const double upper = fb->scalar_upper * op_norm(theta);
    record_check(c, "{Λ_w θ} frame with bounds ||θ^-1||^-1 A, ||θ|| B",
                 check_frame(concl, scalar_bounds(c.sys.descriptor(), lower, upper), CheckMode::exact_scalar, 0, 0,
                             c.tol));
}

Family canonical_family(const GFrameSystem& s)
{
    return compose_right(s.family(), op_inverse(frame_operator(s)));
}

void row_dual_sim(Ctx& c)
{
    if (!require_commuting(c, c.sys)) return;
    if (!require_frame(c, c.sys, "Λ")) return;
    AdjointableOperator Q = commuting_aux(c, c.aux.Q, "Q");
    if (!require_invertible(c, Q, "Q")) return;
    if (!require_commutes_with_controls(c, Q, "Q")) return;
    if (c.mut == Mutant::break_commutation)
        Q = random_invertible_operator(c.rng, c.sys.descriptor(), c.sys.module_rank());
    const GFrameSystem lq = c.sys.with_family(compose_right(c.sys.family(), op_adjoint(Q)));
    const Family gamma = canonical_family(lq);
    c.r.conclusion("Γ dual of ΛQ* => ΓQ dual of Λ",
                   identity_residual(reconstruction_operator(c.sys, compose_right(gamma, Q), std::nullopt)));
    const Family gamma2 = canonical_family(c.sys);
    c.r.conclusion("Γ dual of Λ => ΓQ^-1 dual of ΛQ*",
                   identity_residual(reconstruction_operator(lq, compose_right(gamma2, op_inverse(Q)), std::nullopt)));
}

void row_eq_frame_op(Ctx& c)
{
    if (!require_commuting(c, c.sys)) return;
    if (!require_frame(c, c.sys, "Λ")) return;
    const AdjointableOperator R = commuting_aux(c, c.aux.theta, "theta");
    const GFrameSystem gsys = c.sys.with_family(compose_right(c.sys.family(), R));
    if (!require_commuting(c, gsys)) return;
    if (!require_frame(c, gsys, "Γ")) return;
    const AdjointableOperator sl = frame_operator(c.sys);
    const AdjointableOperator sg = frame_operator(gsys);
    const AdjointableOperator Q = op_compose(op_sqrt_positive(sl), op_inverse(op_sqrt_positive(sg)));
    if (!require_commutes_with_controls(c, Q, "Q")) return;
    const Family gc = c.mut == Mutant::scale_member ? scaled_dominant(gsys) : gsys.family();
    const GFrameSystem gq = c.sys.with_family(compose_right(gc, op_adjoint(Q)));
    c.r.conclusion("S_{ΓQ*} = S_Λ", op_distance(frame_operator(gq), sl) / std::max(1.0, op_norm(sl)));
    const Family theta = canonical_family(c.sys.with_family(gc));
    c.r.conclusion("θQ^-1 dual of ΓQ*",
                   identity_residual(reconstruction_operator(gq, compose_right(theta, op_inverse(Q)), std::nullopt)));
}

AdjointableOperator wrong_or(const Ctx& c, const AdjointableOperator& k)
{
    return c.mut == Mutant::wrong_k ? 2.0 * k : k;
}

void row_op_dual_corr(Ctx& c)
{
    if (!require_commuting(c, c.sys)) return;
    if (!require_frame(c, c.sys, "Λ")) return;
    const AdjointableOperator K = commuting_aux(c, c.aux.K, "K");
    const AdjointableOperator Q = commuting_aux(c, c.aux.Q, "Q");
    if (!require_invertible(c, K, "K") || !require_invertible(c, Q, "Q")) return;
    if (!require_commutes_with_controls(c, K, "K") || !require_commutes_with_controls(c, Q, "Q")) return;
    const AdjointableOperator sinv = op_inverse(frame_operator(c.sys));
    const AdjointableOperator kinv = op_inverse(K);
    const Family gamma = compose_right(c.sys.family(), op_compose(sinv, kinv));
    if (!c.r.hypothesis("Γ operator dual of Λ with K",
                        identity_residual(reconstruction_operator(c.sys, gamma, K)) <= c.tol))
        return;
    const AdjointableOperator Kc = wrong_or(c, K);
    const AdjointableOperator qs = op_adjoint(Q), qsi = op_inverse(op_adjoint(Q)), qi = op_inverse(Q);
    const GFrameSystem lq = c.sys.with_family(compose_right(c.sys.family(), qs));
    c.r.conclusion("ΓQ* operator dual of ΛQ* with (Q*)^-1 K Q^-1",
                   identity_residual(reconstruction_operator(lq, compose_right(gamma, qs), cmp(qsi, Kc, qi))));
    const Family gamma2 = compose_right(lq.family(), op_compose(op_inverse(frame_operator(lq)), kinv));
    c.r.conclusion("Γ operator dual of ΛQ* => ΓQ* operator dual of Λ with (Q*)^-1 K Q",
                   identity_residual(reconstruction_operator(c.sys, compose_right(gamma2, qs), cmp(qsi, Kc, Q))));
}

AdjointableOperator spectral_projection(const GFrameSystem& s)
{
    std::vector<CMatrix> parts;
    for (const CMatrix& f : components(frame_operator(s))) {
        const linalg::HermitianSpectrum sp = linalg::hermitian_spectrum(f);
        const Eigen::Index r = std::max<Eigen::Index>(1, f.rows() / 2);
        const CMatrix v = sp.vectors.leftCols(r);
        parts.push_back(v * v.adjoint());
    }
    return from_components(s.descriptor(), s.module_rank(), s.module_rank(), parts);
}

void row_submodule(Ctx& c)
{
    if (!require_commuting(c, c.sys)) return;
    auto fb = require_frame(c, c.sys, "Λ");
    if (!fb) return;
    const AdjointableOperator P = aux_or(c, c.aux.P, "P", [&] { return spectral_projection(c.sys); });
    const double proj = std::max(op_distance(op_compose(P, P), P), op_distance(op_adjoint(P), P));
    if (!c.r.hypothesis("P_H is an orthogonal projection", proj <= c.tol, proj)) return;
    if (!require_commutes_with_controls(c, P, "P_H")) return;
    const AdjointableOperator K = commuting_aux(c, c.aux.K, "K");
    if (!require_invertible(c, K, "K")) return;
    const AdjointableOperator I = ident(c.sys);
    const double inv = op_norm(cmp(I - P, K, P));
    if (!c.r.hypothesis("K(H) ⊂ H", inv <= c.tol, inv)) return;

    const AdjointableOperator sinv = op_inverse(frame_operator(c.sys));
    const GFrameSystem sp_sys = c.sys.with_family(compose_right(c.sys.family(), P));
    const AdjointableOperator sp = frame_operator(sp_sys);
    const AdjointableOperator sp_pinv = op_pseudo_inverse(sp);
    double hyp3 = 0.0;
    for (const auto& l : c.sys.family())
        hyp3 = std::max(hyp3, op_distance(cmp(sp_pinv, P, op_adjoint(l)), cmp(P, sinv, op_adjoint(l))));
    if (!c.r.hypothesis("S_P^-1 P_H Λ_w* = P_H S^-1 Λ_w*", hyp3 <= c.tol, hyp3)) return;

    // (1) compression of S_P to H against the bounds of Λ
    const CMatrix fp = flatten(P);
    const linalg::HermitianSpectrum pe = linalg::hermitian_spectrum(fp);
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < pe.values.size(); ++i)
        if (pe.values(i) > 0.5) keep.push_back(i);
    CMatrix B(fp.rows(), static_cast<Eigen::Index>(keep.size()));
    for (size_t j = 0; j < keep.size(); ++j) B.col(static_cast<Eigen::Index>(j)) = pe.vectors.col(keep[j]);
    const RVector ev = linalg::hermitian_spectrum(B.adjoint() * flatten(sp) * B).values;
    const double a2 = fb->scalar_lower * fb->scalar_lower, b2 = fb->scalar_upper * fb->scalar_upper;
    c.r.value("dim H (flattened)", static_cast<double>(keep.size()));
    c.r.conclusion("Λ_w P_H frame for H", std::max(excess(a2, ev(0)), excess(ev(ev.size() - 1), b2)));
    // (2) Γ_w P_H operator dual of Λ_w P_H with K on H
    const Family gamma = compose_right(c.sys.family(), op_compose(sinv, op_inverse(K)));
    const AdjointableOperator rec = reconstruction_operator(sp_sys, compose_right(gamma, P), wrong_or(c, K));
    c.r.conclusion("Γ_w P_H operator dual of Λ_w P_H with K|_H", op_distance(op_compose(rec, P), P));
    // (3)
    c.r.conclusion("S_P^-1 P_H = P_H S^-1 on H",
                   op_distance(op_compose(sp_pinv, P), cmp(P, sinv, P)) / std::max(1.0, op_norm(sinv)));
}

void row_t33(Ctx& c)
{
    if (!require_commuting(c, c.sys)) return;
    if (!require_frame(c, c.sys, "Λ")) return;
    const AdjointableOperator K = commuting_aux(c, c.aux.K, "K");
    if (!require_invertible(c, K, "K")) return;
    if (!require_commutes_with_controls(c, K, "K")) return;
    const MeasureSpace& m = c.sys.measure();
    const AdjointableOperator kinv = op_inverse(K);
    const Family gamma = compose_right(c.sys.family(), op_compose(op_inverse(frame_operator(c.sys)), kinv));
    if (!c.r.hypothesis("x = ∫ C'Λ_w*Γ_w K C x",
                        identity_residual(reconstruction_operator(c.sys, gamma, K)) <= c.tol))
        return;
    c.r.hypothesis("Γ is Bessel", std::isfinite(family_norm(m, gamma)));
    const AdjointableOperator Kc = wrong_or(c, K);
    const GFrameSystem gsys = c.sys.with_family(gamma);
    c.r.conclusion("Γ operator dual of Λ with K", identity_residual(reconstruction_operator(c.sys, gamma, Kc)));
    c.r.conclusion("Λ operator dual of Γ with K*",
                   identity_residual(reconstruction_operator(gsys, c.sys.family(), op_adjoint(Kc))));

    // ||T_0 y|| >= ||M y|| / ||T_0Λ|| with M = ∫ Λ*Γ, then the controls enter through C'C
    const AdjointableOperator M = family_adjoint_product(m, c.sys.family(), gamma);
    const PositivePartChecks cc = positive_part_checks(op_compose(c.sys.Cp(), c.sys.C()));
    const double lower2 = std::pow(bounded_below_constant(M) / family_norm(m, c.sys.family()), 2) * cc.lower;
    const double tl = std::sqrt(op_norm(frame_operator(c.sys)));
    const double displayed = std::pow(op_norm(op_inverse(op_compose(kinv, op_adjoint(kinv)))), -0.5) / tl;
    const double lam_min = positive_part_checks(frame_operator(gsys)).lower;
    c.r.value("lower", std::sqrt(lower2));
    c.r.value("displayed_lower", displayed);
    c.r.value("displayed_lower_holds", lam_min + c.tol >= displayed * displayed ? 1.0 : 0.0);
    c.r.conclusion("Γ lower frame bound", excess(lower2, lam_min));
}

void row_t55(Ctx& c)
{
    if (!require_identical(c, c.sys)) return;
    if (!require_frame(c, c.sys, "Λ")) return;
    const AdjointableOperator K = invertible_aux(c, c.aux.K, "K");
    if (!require_invertible(c, K, "K")) return;
    const MeasureSpace& m = c.sys.measure();
    const AdjointableOperator I = ident(c.sys);
    const Family T = compose_right(c.sys.family(), c.sys.C());
    const AdjointableOperator S = family_adjoint_product(m, T, T);
    const AdjointableOperator sinv = op_inverse(S), kinv = op_inverse(K);
    const AdjointableOperator Kc = wrong_or(c, K);

    double worst = 0.0;
    int verified = 0;
    for (int i = 0; i < kRightInverseSamples; ++i) {
        const Family G = right_inverse_from(m, T, sinv, kinv, random_family(c));
        const double r = op_distance(op_compose(Kc, family_adjoint_product(m, T, G)), I);
        worst = std::max(worst, r);
        if (r <= c.tol) ++verified;
    }
    c.r.value("right_inverses_verified", verified);
    c.r.value("right_inverses_total", kRightInverseSamples);
    c.r.conclusion("KT*G = I for every constructed G", worst);

    // least-squares right inverse in the isometric picture: Ĝ = (X^H flatten(K))^+
    const int d = c.sys.descriptor().dim;
    const CMatrix Y = family_flatten(m, T).adjoint() * flatten(K);
    const CMatrix gh = linalg::pseudo_inverse(Y, 1e-12);
    Family G0;
    Eigen::Index at = 0;
    for (size_t k = 0; k < T.size(); ++k) {
        const Eigen::Index cols = T[k].out_rank() * d;
        G0.push_back(unflatten(c.sys.descriptor(), c.sys.module_rank(), T[k].out_rank(),
                               gh.middleCols(at, cols) / std::sqrt(m.weight(k))));
        at += cols;
    }
    const double lsq = op_distance(op_compose(K, family_adjoint_product(m, T, G0)), I);
    c.r.value("least_squares_right_inverse_residual", lsq);
    c.r.conclusion("least-squares G decomposes with θ = G",
                   family_gap(m, right_inverse_from(m, T, sinv, op_inverse(Kc), G0), G0) <= 1e-8 && lsq <= 1e-8,
                   family_gap(m, right_inverse_from(m, T, sinv, op_inverse(Kc), G0), G0));
}

void row_midpoint(Ctx& c)
{
    if (!require_commuting(c, c.sys)) return;
    if (!require_frame(c, c.sys, "Λ")) return;
    const AdjointableOperator K = invertible_aux(c, c.aux.K, "K");
    if (!require_invertible(c, K, "K")) return;
    const AlgebraDescriptor desc = c.sys.descriptor();
    AlgebraElement v;
    if (c.aux.v) {
        v = *c.aux.v;
        if (!(v.descriptor() == desc)) throw InputError("auxiliary element v has the wrong descriptor");
        c.r.note("v", "supplied");
    } else {
        std::vector<cplx> e;
        for (int i = 0; i < (desc.kind == AlgebraKind::diagonal ? desc.dim : 1); ++i)
            e.push_back(c.rng.uniform(0.5, 2.0) * c.rng.unit_phase());
        v = desc.kind == AlgebraKind::diagonal ? AlgebraElement::diag(e) : AlgebraElement::scalar(desc, e[0]);
        c.r.note("v", "generated from seed");
    }
    if (!c.r.hypothesis("v central", is_central(v))) return;
    const double vmin = hermitian_eigenvalues(v * adjoint(v))(0);
    if (!c.r.hypothesis("v invertible", vmin > c.tol, vmin)) return;

    const MeasureSpace& m = c.sys.measure();
    const AdjointableOperator kinv = op_inverse(K);
    const Family canon = compose_right(c.sys.family(), op_compose(op_inverse(frame_operator(c.sys)), kinv));
    // Γ = canonical operator dual + Δ with ∫ Λ*Δ = 0
    const Family theta = random_family(c);
    const AdjointableOperator s0inv = op_inverse(uncontrolled_frame_operator(c.sys));
    const Family delta = family_sub(
        theta, compose_right(c.sys.family(), op_compose(s0inv, family_adjoint_product(m, c.sys.family(), theta))));
    const Family gamma = family_add(canon, delta);
    if (!c.r.hypothesis("Γ operator dual of Λ with K",
                        identity_residual(reconstruction_operator(c.sys, gamma, K)) <= c.tol))
        return;
    Family mid;
    for (size_t k = 0; k < gamma.size(); ++k)
        mid.push_back(op_scale_central(v, gamma[k]) + op_scale_central(v, canon[k]));
    const AdjointableOperator op = op_scale_central(0.5 * invert(v), K);
    c.r.conclusion("θ operator dual with (1/2)v^-1 K",
                   identity_residual(reconstruction_operator(c.sys, mid, wrong_or(c, op))));
}

void row_t12(Ctx& c)
{
    if (!require_identical(c, c.sys)) return;
    const MeasureSpace& m = c.sys.measure();
    const double b = family_norm(m, c.sys.family());
    if (!c.r.hypothesis("Λ is Bessel", std::isfinite(b), b)) return;
    c.r.note("P_w θ = Λ_w", "θ x = {Λ_w x} has components Λ_w x");
    const Family theta = random_family(c);
    const double bound = family_norm(m, theta) * op_norm(c.sys.C());
    c.r.value("||θ||·||C||", bound);
    GFrameSystem concl = c.sys.with_family(theta);
    if (c.mut == Mutant::break_commutation) concl = broken_controls(concl, c.rng);
    record_check(c, "{P_w θ} Bessel with bound ||θ||·||C||",
                 check_frame(concl, scalar_bounds(c.sys.descriptor(), 0.0, bound), CheckMode::exact_scalar, 0, 0,
                             c.tol));
}

void row_t66(Ctx& c)
{
    if (!require_identical(c, c.sys)) return;
    if (!require_frame(c, c.sys, "Λ")) return;
    const AdjointableOperator K = invertible_aux(c, c.aux.K, "K");
    if (!require_invertible(c, K, "K")) return;
    const MeasureSpace& m = c.sys.measure();
    const Family T = compose_right(c.sys.family(), c.sys.C());
    const AdjointableOperator sinv = op_inverse(family_adjoint_product(m, T, T));
    const Family G = right_inverse_from(m, T, sinv, op_inverse(K), random_family(c));
    const double ri = op_distance(op_compose(K, family_adjoint_product(m, T, G)), ident(c.sys));
    if (!c.r.hypothesis("θ right inverse of KT*", ri <= c.tol, ri)) return;
    // the controls enter the reconstruction twice, so the operator is K C^-1
    const AdjointableOperator op = op_compose(K, op_inverse(c.sys.C()));
    c.r.value("residual_with_K", identity_residual(reconstruction_operator(c.sys, G, K)));
    c.r.conclusion("{P_w θ} operator dual of Λ with K C^-1",
                   identity_residual(reconstruction_operator(c.sys, G, wrong_or(c, op))));
}

void row_dual_param(Ctx& c)
{
    if (!require_identical(c, c.sys)) return;
    if (!require_commuting(c, c.sys)) return;
    if (!require_frame(c, c.sys, "Λ")) return;
    const AdjointableOperator K = commuting_aux(c, c.aux.K, "K");
    if (!require_invertible(c, K, "K")) return;
    if (!require_commutes_with_controls(c, K, "K")) return;
    const MeasureSpace& m = c.sys.measure();
    const AdjointableOperator C = c.sys.C(), cinv = op_inverse(c.sys.C());
    const Family T = compose_right(c.sys.family(), C);
    const AdjointableOperator sinv = op_inverse(frame_operator(c.sys));
    const AdjointableOperator kinv = op_inverse(K);
    auto form = [&](const Family& G) {
        const Family gc = compose_right(G, C);
        Family a = compose_right(T, op_compose(sinv, kinv));
        Family b = compose_right(T, op_compose(sinv, family_adjoint_product(m, T, gc)));
        return compose_right(family_sub(family_add(a, gc), b), cinv);
    };
    const AdjointableOperator Kc = wrong_or(c, K);
    double worst = 0.0;
    for (int i = 0; i < kRightInverseSamples; ++i)
        worst = std::max(worst, identity_residual(reconstruction_operator(c.sys, form(random_family(c)), Kc)));
    c.r.conclusion("every G gives an operator dual", worst);
    // an operator dual fed back as G is reproduced
    const Family gamma = compose_right(c.sys.family(), op_compose(sinv, kinv));
    const Family theta = random_family(c);
    const Family delta = family_sub(theta, compose_right(T, op_compose(sinv, family_adjoint_product(m, T, theta))));
    const Family op_dual = family_add(gamma, delta);
    const double od = identity_residual(reconstruction_operator(c.sys, op_dual, Kc));
    c.r.value("operator_dual_residual", od);
    c.r.conclusion("operator dual Γ has the form with G = Γ", family_gap(m, form(op_dual), op_dual) <= 1e-8 && od <= c.tol,
                   std::max(family_gap(m, form(op_dual), op_dual), od));
}

void row_any_frame(Ctx& c)
{
    if (!require_commuting(c, c.sys)) return;
    const GFrameSystem bare = GFrameSystem::uncontrolled(c.sys.measure(), c.sys.family());
    auto fb0 = require_frame(c, bare, "uncontrolled Λ");
    if (!fb0) return;
    const double nc = op_norm(c.sys.C()), ncp = op_norm(c.sys.Cp());
    const double nci = op_norm(op_inverse(c.sys.C())), ncpi = op_norm(op_inverse(c.sys.Cp()));
    const double lower = fb0->scalar_lower / std::sqrt(nci * ncpi);
    const double upper = fb0->scalar_upper * std::sqrt(nc * ncp);
    c.r.value("lower", lower);
    c.r.value("upper", upper);
    c.r.value("displayed_lower", fb0->scalar_lower * nc * ncp);
    c.r.value("displayed_upper", fb0->scalar_upper * nc * ncp);
    const GFrameSystem concl = c.mut == Mutant::break_commutation ? broken_controls(c.sys, c.rng) : c.sys;
    record_check(c, "(C,C')-controlled frame",
                 check_frame(concl, scalar_bounds(c.sys.descriptor(), lower, upper), CheckMode::exact_scalar, 0, 0,
                             c.tol));
}

void row_lambda_t(Ctx& c)
{
    if (!require_commuting(c, c.sys)) return;
    auto fb = require_frame(c, c.sys, "Λ");
    if (!fb) return;
    const AdjointableOperator T = commuting_aux(c, c.aux.theta, "T");
    if (!require_invertible(c, T, "T")) return;
    if (!require_commutes_with_controls(c, T, "T")) return;
    const double mlow = bounded_below_constant(T);
    const double lower = fb->scalar_lower * mlow, upper = fb->scalar_upper * op_norm(T);
    c.r.value("m", mlow);
    const GFrameSystem lt = c.sys.with_family(compose_right(c.sys.family(), T));
    const GFrameSystem concl = c.mut == Mutant::scale_member ? lt.with_family(scaled_dominant(lt)) : lt;
    record_check(c, "ΛT frame with bounds (A·m, B||T||)",
                 check_frame(concl, scalar_bounds(c.sys.descriptor(), lower, upper), CheckMode::exact_scalar, 0, 0,
                             c.tol));
}

const std::map<std::string, std::function<void(Ctx&)>>& dispatch()
{
    static const std::map<std::string, std::function<void(Ctx&)>> d = {
        {"T2.3", row_transform},         {"FO-PROPS", row_fo_props},
        {"SCC-PROPS", row_scc_props},    {"T-T3", row_tt3},
        {"T-TT", row_tt},                {"BESSEL-COMP", row_bessel_comp},
        {"TH-SURJ", row_th_surj},        {"F-KT", row_f_kt},
        {"LEFT-COMP", row_left_comp},    {"RIGHT-COMP", row_right_comp},
        {"DUAL-SIM", row_dual_sim},      {"EQ-FRAME-OP", row_eq_frame_op},
        {"OP-DUAL-CORR", row_op_dual_corr}, {"SUBMODULE", row_submodule},
        {"T33", row_t33},                {"T55", row_t55},
        {"MIDPOINT-DUAL", row_midpoint}, {"T12", row_t12},
        {"T66", row_t66},                {"DUAL-PARAM", row_dual_param},
        {"ANY-FRAME-CONTROLLED", row_any_frame}, {"LAMBDA-T", row_lambda_t},
    };
    return d;
}

void require_known(const std::string& id)
{
    const auto& ids = theorem_ids();
    if (std::find(ids.begin(), ids.end(), id) == ids.end()) throw InputError("unknown theorem id '" + id + "'");
}

}  // namespace

const std::vector<std::string>& theorem_ids()
{
    static const std::vector<std::string> ids = [] {
        std::vector<std::string> v;
        for (const auto& r : rows()) v.push_back(r.id);
        return v;
    }();
    return ids;
}

std::string theorem_statement(const std::string& id)
{
    for (const auto& r : rows())
        if (r.id == id) return r.statement;
    throw InputError("unknown theorem id '" + id + "'");
}

std::string to_string(Mutant m)
{
    switch (m) {
    case Mutant::none: return "none";
    case Mutant::scale_member: return "scale-member";
    case Mutant::break_commutation: return "break-commutation";
    case Mutant::wrong_k: return "wrong-k";
    }
    return "none";
}

Mutant parse_mutant(const std::string& s)
{
    for (Mutant m : {Mutant::none, Mutant::scale_member, Mutant::break_commutation, Mutant::wrong_k})
        if (to_string(m) == s) return m;
    throw InputError("unknown mutant '" + s + "'");
}

const std::vector<std::string>& mutant_targets(Mutant m)
{
    static const std::vector<std::string> none;
    static const std::vector<std::string> scale = {"T2.3", "FO-PROPS",   "T-T3",        "T-TT",
                                                   "TH-SURJ", "RIGHT-COMP", "EQ-FRAME-OP", "LAMBDA-T"};
    static const std::vector<std::string> broken = {"FO-PROPS",  "SCC-PROPS",  "BESSEL-COMP", "F-KT",
                                                    "HOM-TRANSPORT", "LEFT-COMP", "RIGHT-COMP", "DUAL-SIM",
                                                    "T12",       "ANY-FRAME-CONTROLLED"};
    static const std::vector<std::string> wrongk = {"OP-DUAL-CORR", "SUBMODULE", "T33",       "T55",
                                                    "MIDPOINT-DUAL", "T66",      "DUAL-PARAM"};
    switch (m) {
    case Mutant::scale_member: return scale;
    case Mutant::break_commutation: return broken;
    case Mutant::wrong_k: return wrongk;
    default: return none;
    }
}

GFrameSystem theorem_instance(const std::string& id, std::uint64_t seed)
{
    require_known(id);
    if (id == "HOM-TRANSPORT") return hom_instance(seed).sys;
    return generate_random(mix_seed(seed, 1), theorem_options(seed, id));
}

TheoremReport verify_theorem(const std::string& id, std::uint64_t seed, double tol, Mutant mutant,
                             const std::optional<GFrameSystem>& supplied, const TheoremAux& aux)
{
    require_known(id);
    if (!(tol > 0)) throw InputError("tolerance must be positive");
    const auto& targets = mutant_targets(mutant);
    const bool applies = std::find(targets.begin(), targets.end(), id) != targets.end();

    TheoremReport r(id, tol, seed);
    r.note("statement", theorem_statement(id));
    r.note("instance", supplied ? "supplied" : "generated");
    r.note("mutant", applies ? to_string(mutant) : "none");

    std::optional<HomInstance> hom;
    if (id == "HOM-TRANSPORT" && !supplied) hom = hom_instance(seed);
    const GFrameSystem sys = supplied ? *supplied : hom ? hom->sys : theorem_instance(id, seed);
    Rng rng(mix_seed(seed, 0xa0));
    Ctx c{sys, r, rng, applies ? mutant : Mutant::none, aux, tol};
    try {
        if (id == "HOM-TRANSPORT")
            row_hom(c, hom ? hom->t : transport_for(sys, seed));
        else
            dispatch().at(id)(c);
    } catch (const DomainError& e) {
        if (r.hypotheses_hold() && !r.conclusions.empty())
            r.conclusion("evaluation", false, INFINITY);
        else
            r.hypothesis("numerically well-posed", false, INFINITY);
        r.note("error", e.what());
    }
    return r.finish();
}

}  // namespace gframe
