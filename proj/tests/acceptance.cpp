// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

#include "gframe/cli.hpp"
#include "gframe/controlled_frames.hpp"
#include "gframe/errors.hpp"
#include "gframe/generators.hpp"
#include "gframe/random.hpp"
#include "gframe/serialize.hpp"
#include "gframe/stability.hpp"
#include "gframe/theorems.hpp"
#include "oracles.hpp"

using namespace gframe;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

int failures = 0;

std::string fmt(const char* f, double a, double b = 0, double c = 0)
{
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

void criterion(int n, const char* name, const std::function<Outcome()>& body, double limit = 0)
{
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (limit > 0 && secs >= limit) {
        o.pass = false;
        o.detail += fmt(", over the %.0fs budget", limit);
    }
    if (!o.pass) ++failures;
    std::printf("%s [%2d] %s: %s (%.2fs)\n", o.pass ? "PASS" : "FAIL", n, name, o.detail.c_str(), secs);
    std::fflush(stdout);
}

double value_of(const TheoremReport& r, const std::string& key)
{
    for (const auto& [k, v] : r.values)
        if (k == key) return v;
    throw std::runtime_error("report " + r.theorem_id + " lacks value " + key);
}

GFrameSystem commuting_system(std::uint64_t seed)
{
    RandomOptions opt;
    const int d = 1 + static_cast<int>(seed % 3);
    opt.algebra = seed % 2 ? AlgebraDescriptor{AlgebraKind::matrix, d} : AlgebraDescriptor{AlgebraKind::diagonal, d};
    opt.rank = 1 + static_cast<int>((seed / 2) % 4);
    opt.atoms = 1 + static_cast<int>((seed * 7) % 8);
    opt.commuting = true;
    opt.uniform_outputs = true;
    return generate_random(seed, opt);
}

GFrameSystem cc_system(std::uint64_t seed)
{
    RandomOptions opt;
    opt.algebra = seed % 2 ? AlgebraDescriptor{AlgebraKind::matrix, 2} : AlgebraDescriptor{AlgebraKind::diagonal, 3};
    opt.rank = 2;
    opt.atoms = 3 + static_cast<int>(seed % 3);
    opt.identical_controls = true;
    opt.uniform_outputs = true;
    return generate_random(seed, opt);
}

GFrameSystem nudged(const GFrameSystem& s, double eps, std::uint64_t seed)
{
    Rng rng(seed);
    Family f;
    for (const auto& l : s.family()) f.push_back(l + eps * random_operator(rng, s.descriptor(), l.in_rank(), l.out_rank()));
    return s.with_family(f);
}

double op_gap(const AdjointableOperator& a, const CMatrix& b)
{
    return oracle::max_abs(oracle::block_matrix(a) - b) / std::max(1.0, oracle::max_abs(b));
}

Outcome unit_interval()
{
    const GFrameSystem ex = generate_unit_interval(2, 3, 3, 11);
    const CMatrix s = flatten(frame_operator(ex));
    CMatrix want = CMatrix::Zero(3, 3);
    want(0, 0) = 2.0;
    want(1, 1) = 2.0 / 4;
    want(2, 2) = 2.0 / 9;
    const double err = (s - want).cwiseAbs().maxCoeff();
    const FrameBounds fb = optimal_scalar_bounds(ex);
    const double ea = std::abs(fb.scalar_lower - std::sqrt(2.0 / 9)), eb = std::abs(fb.scalar_upper - std::sqrt(2.0));
    return {err <= 1e-12 && ea <= 1e-9 && eb <= 1e-9,
            fmt("max entry error %.2e, bounds (%.10f, %.10f)", err, fb.scalar_lower, fb.scalar_upper)};
}

Outcome operator_properties()
{
    int bad = 0;
    double worst_sa = 0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const GFrameSystem sys = commuting_system(seed);
        const AdjointableOperator S = frame_operator(sys);
        const double sa = op_distance(S, op_adjoint(S));
        worst_sa = std::max(worst_sa, sa);
        const FrameBounds fb = optimal_scalar_bounds(sys);
        const double ns = op_norm(S), a2 = fb.scalar_lower * fb.scalar_lower, b2 = fb.scalar_upper * fb.scalar_upper;
        const bool ok = sa <= 1e-10 && is_positive(S) && bounded_below_constant(S) > 1e-9 &&
                        a2 <= ns + 1e-9 * std::max(1.0, ns) && ns <= b2 + 1e-9 * std::max(1.0, ns) &&
                        verify_theorem("SCC-PROPS", seed, 1e-9, Mutant::none, sys).passed();
        bad += !ok;
    }
    return {bad == 0, fmt("%.0f/50 systems fail, worst self-adjoint residual %.2e", bad, worst_sa)};
}

Outcome reconstruction()
{
    double worst = 0;
    int bad = 0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const DualCertificate c = canonical_dual(commuting_system(seed), 100, seed);
        worst = std::max(worst, c.reconstruction_residual);
        bad += !(c.reconstruction_residual <= 1e-8);
    }
    return {bad == 0, fmt("worst relative residual %.2e over 50 systems x 100 vectors", worst)};
}

Outcome analysis_synthesis()
{
    double adj = 0, comp = 0, over = -1e300;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const GFrameSystem sys = commuting_system(seed);
        const MeasureSpace& m = sys.measure();
        const AdjointableOperator S = frame_operator(sys);
        const double scale = std::max(1.0, op_norm(S));
        Rng rng(mix_seed(seed, 0xa5));
        for (int k = 0; k < 10; ++k) {
            const ModuleVector x = random_module_vector(rng, sys.descriptor(), sys.module_rank());
            DirectSumVector y;
            for (const auto& l : sys.family()) y.parts.push_back(random_module_vector(rng, sys.descriptor(), l.out_rank()));
            const AlgebraElement lhs = direct_sum_inner(m, analysis(sys, x), y);
            const AlgebraElement rhs = inner_product(x, synthesis(sys, y));
            const double sx = scalar_norm(x), sy = direct_sum_norm(m, y);
            adj = std::max(adj, norm(lhs - rhs) / (scale * std::max(1.0, sx * sy)));
            const ModuleVector d = synthesis(sys, analysis(sys, x)) - op_apply(S, x);
            comp = std::max(comp, scalar_norm(d) / (scale * std::max(1.0, sx)));
        }
        const double b = optimal_scalar_bounds(sys).scalar_upper;
        over = std::max(over, family_norm(m, analysis_family(sys)) - b);
    }
    return {adj <= 1e-10 && comp <= 1e-10 && over <= 1e-9,
            fmt("adjointness %.2e, synthesis*analysis - S %.2e, ||T|| - b max %.2e", adj, comp, over)};
}

Outcome theorem_suite()
{
    int honest_fail = 0, false_pass = 0, false_fail = 0, runs = 0;
    for (std::uint64_t seed = 0; seed < 10; ++seed)
        for (const std::string& id : theorem_ids()) {
            honest_fail += !verify_theorem(id, seed).passed();
            for (Mutant m : {Mutant::scale_member, Mutant::break_commutation, Mutant::wrong_k}) {
                const auto& t = mutant_targets(m);
                const bool targeted = std::find(t.begin(), t.end(), id) != t.end();
                const TheoremReport r = verify_theorem(id, seed, 1e-9, m);
                ++runs;
                if (targeted && r.status != Status::fail) ++false_pass;
                if (!targeted && !r.passed()) ++false_fail;
            }
        }
    return {honest_fail == 0 && false_pass == 0 && false_fail == 0,
            fmt("honest failures %.0f, mutant false passes %.0f, false failures %.0f", honest_fail, false_pass,
                false_fail) +
                " over " + std::to_string(runs) + " mutant runs"};
}

Outcome right_inverses()
{
    double verified = 0, total = 0, lsq = 0;
    bool all = true;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const TheoremReport r = verify_theorem("T55", seed);
        all = all && r.passed();
        verified += value_of(r, "right_inverses_verified");
        total += value_of(r, "right_inverses_total");
        lsq = std::max(lsq, value_of(r, "least_squares_right_inverse_residual"));
    }
    return {all && verified == total && total == 200 && lsq <= 1e-8,
            fmt("%.0f/%.0f right inverses verified, least-squares residual %.2e", verified, total, lsq)};
}

Outcome stability()
{
    int eq_bad = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const GFrameSystem a = cc_system(seed);
        eq_bad += !check_equivalence_M(a, nudged(a, 0.02, seed + 50), 100, seed).passed();
    }

    const GFrameSystem t3 = generate_unit_interval(1.5, 1.5, 3, 11);
    const GFrameSystem t1 = generate_unit_interval(1.5, 1.5, 1, 11);
    int certified = 0, violations = 0, skipped = 0;
    std::string gate;
    auto tally = [&](const TheoremReport& r, const GFrameSystem& t, double c) {
        if (!r.hypotheses_hold()) {
            ++skipped;
            return;
        }
        ++certified;
        const FrameBounds ft = optimal_scalar_bounds(t);
        const double lo = c * ft.scalar_lower, hi = c * ft.scalar_upper, eps = 1e-9 * std::max(1.0, hi);
        if (!r.passed() || value_of(r, "certified_lower") > lo + eps || value_of(r, "certified_upper") < hi - eps)
            ++violations;
    };
    for (double c : {0.5, 1.0, 2.0}) {
        for (const GFrameSystem* t : {&t3, &t1})
            tally(sum_frame_check(*t, t->with_family(scale_family(t->family(), c - 1))), *t, c);
        const double lambda = c < 1 ? 1 - c : 0, mu = c > 1 ? 1 - 1 / c : 0;
        tally(weighted_perturbation_check(t3, scale_family(t3.family(), c), {}, {}, lambda, mu, 100, 4), t3, c);
        try {
            tally(additive_perturbation_check(t3, scale_family(t3.family(), c), (1 - c) * (1 - c), 0.0,
                                              AdditiveForm::theorem, 100, 5),
                  t3, c);
        } catch (const PreconditionError&) {
            gate += fmt(" additive c=%g: gate applies, no window certified;", c);
        }
    }
    return {eq_bad == 0 && violations == 0 && certified >= 6,
            fmt("equivalence fails %.0f/20; %.0f windows certified, %.0f violations", eq_bad, certified, violations) +
                fmt(", %.0f hypotheses not met;", skipped) + gate};
}

Outcome oracle_equivalence()
{
    const std::string dir = GFRAME_FIXTURES;
    std::vector<GFrameSystem> systems;
    for (const char* f : {"identity_frame.json", "small_perturbation.json", "half_identity.json", "zero_family.json"})
        systems.push_back(load_system(dir + "/" + f));
    systems.push_back(generate_unit_interval(2, 3, 3, 11));
    double worst = 0;
    Rng rng(17);
    for (const GFrameSystem& sys : systems) {
        worst = std::max(worst, op_gap(frame_operator(sys), oracle::frame_operator(sys)));
        std::vector<cplx> gamma;
        for (size_t k = 0; k < sys.measure().size(); ++k) gamma.push_back(rng.uniform(0.1, 2.0) * rng.unit_phase());
        worst = std::max(worst, op_gap(multiplier(gamma, sys.family(), sys.family(), sys.measure()),
                                       oracle::multiplier(gamma, sys.family(), sys.family(), sys.measure())));
    }
    for (size_t i = 0; i + 1 < 4; ++i)
        for (size_t j = i + 1; j < 4; ++j) {
            const ModuleVector x = random_module_vector(rng, systems[i].descriptor(), systems[i].module_rank());
            const CMatrix want = oracle::distance(systems[i], systems[j], x);
            worst = std::max(worst, oracle::max_abs(family_distance(systems[i], systems[j], x).dense() - want) /
                                        std::max(1.0, oracle::max_abs(want)));
        }
    return {worst <= 1e-11, fmt("worst relative gap %.2e", worst)};
}

Outcome positivity()
{
    Rng rng(2024);
    int disagreements = 0, positives = 0;
    for (int k = 0; k < 1000; ++k) {
        const int d = 1 + k % 4;
        const AlgebraDescriptor desc = k % 3 ? AlgebraDescriptor{AlgebraKind::matrix, d}
                                             : AlgebraDescriptor{AlgebraKind::diagonal, d};
        AlgebraElement h = random_hermitian_element(rng, desc);
        if (k % 2) h = h + AlgebraElement::scalar(desc, rng.uniform(0.0, 3.0));
        const bool p = is_positive(h);
        positives += p;
        disagreements += p != is_positive_by_norm_shift(h);
    }
    return {disagreements == 0, fmt("%.0f disagreements, %.0f positive of 1000", disagreements, positives)};
}

Outcome determinism()
{
    auto suite = [] {
        std::string out;
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            RunConfig c;
            c.command = "theorem";
            c.seed = seed;
            out += run(c).document;
        }
        return out;
    };
    const std::string a = suite(), b = suite();
    return {a == b && !a.empty(), fmt("%.0f bytes per run, identical", static_cast<double>(a.size())) +
                                      (a == b ? "" : " (MISMATCH)")};
}

}  // namespace

int main()
{
    criterion(1, "unit-interval example", unit_interval, 1.0);
    criterion(2, "frame-operator properties", operator_properties, 30.0);
    criterion(3, "canonical-dual reconstruction", reconstruction);
    criterion(4, "analysis/synthesis", analysis_synthesis);
    criterion(5, "theorem suite and mutant matrix", theorem_suite);
    criterion(6, "right-inverse characterization", right_inverses);
    criterion(7, "stability windows", stability);
    criterion(8, "oracle equivalence on fixtures", oracle_equivalence);
    criterion(9, "positivity cross-check", positivity);
    criterion(10, "determinism", determinism);
    std::printf("%d/10 criteria passed\n", 10 - failures);
    return failures == 0 ? 0 : 1;
}
