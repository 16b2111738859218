#include <doctest.h>

#include <cmath>

#include "gframe/controlled_frames.hpp"
#include "gframe/errors.hpp"
#include "gframe/generators.hpp"
#include "gframe/random.hpp"
#include "oracles.hpp"

using namespace gframe;

namespace {
const AlgebraDescriptor M2{AlgebraKind::matrix, 2};
const AlgebraDescriptor C3{AlgebraKind::diagonal, 3};

GFrameSystem identity_frame(AlgebraDescriptor d = M2, int n = 2)
{
    return GFrameSystem::uncontrolled(MeasureSpace({{"w", 1.0}}), {AdjointableOperator::identity(d, n)});
}

AlgebraElement diag3(double a, double b, double c) { return AlgebraElement::diag({a, b, c}); }

double op_gap(const AdjointableOperator& a, const CMatrix& b) { return oracle::max_abs(oracle::block_matrix(a) - b); }

GFrameSystem seeded_commuting(std::uint64_t seed)
{
    RandomOptions opt;
    opt.algebra = seed % 2 ? M2 : C3;
    opt.rank = 2 + static_cast<int>(seed % 2);
    opt.atoms = 3 + static_cast<int>(seed % 4);
    opt.commuting = true;
    return generate_random(seed, opt);
}
}  // namespace

TEST_CASE("system validation")
{
    MeasureSpace m({{"a", 1.0}});
    const auto id = AdjointableOperator::identity(M2, 2);
    CHECK_THROWS_AS(GFrameSystem(m, {id, id}, id, id), InputError);
    CHECK_THROWS_AS(GFrameSystem(m, {id}, -1.0 * id, id), InputError);
    CHECK_THROWS_AS(GFrameSystem(m, {id}, id, AdjointableOperator(M2, 2, 2)), InputError);
    CHECK_THROWS_AS(GFrameSystem(m, {AdjointableOperator::identity(M2, 3)}, id, id), InputError);
    CHECK(identity_frame().commuting());
    CHECK(identity_frame().controls().identical);
}

TEST_CASE("controlled gram")
{
    Rng rng(1);
    ModuleVector x = random_module_vector(rng, M2, 2);
    GFrameSystem id = identity_frame();
    CHECK(norm(controlled_gram(id, x) - inner_product(x, x)) <= 1e-14);
    CHECK(norm(controlled_gram(id, ModuleVector(M2, 2))) == 0.0);

    // unit interval, α = 2, β = 3: gram is 2·diag(|a_n|²/n²)
    GFrameSystem ex = generate_unit_interval(2, 3, 3, 11);
    const AlgebraDescriptor d{AlgebraKind::diagonal, 3};
    AlgebraElement a = AlgebraElement::diag({cplx(1, 2), cplx(-0.5, 0), cplx(0, 3)});
    ModuleVector v({a});
    AlgebraElement want = diag3(2 * 5.0, 2 * 0.25 / 4, 2 * 9.0 / 9);
    CHECK(norm(controlled_gram(ex, v) - want) <= 1e-12);
    (void)d;
}

TEST_CASE("frame operator")
{
    CHECK(op_gap(frame_operator(identity_frame()), CMatrix::Identity(4, 4)) <= 1e-15);
    GFrameSystem ex = generate_unit_interval(1, 1, 3, 11);
    AdjointableOperator want(1, 1, {diag3(1.0 / 3, 1.0 / 12, 1.0 / 27)});
    CHECK(op_distance(frame_operator(ex), want) <= 1e-14);
    GFrameSystem ex23 = generate_unit_interval(2, 3, 3, 11);
    AdjointableOperator want23(1, 1, {diag3(2.0, 0.5, 2.0 / 9)});
    CHECK(op_distance(frame_operator(ex23), want23) <= 1e-12);
    GFrameSystem one = generate_unit_interval(1, 1, 1, 3);
    const FrameBounds fb = optimal_scalar_bounds(one);
    CHECK(fb.scalar_lower == doctest::Approx(1 / std::sqrt(3.0)).epsilon(1e-12));
    CHECK(fb.scalar_upper == doctest::Approx(1 / std::sqrt(3.0)).epsilon(1e-12));
}

TEST_CASE("property: frame operator against the brute-force oracle")
{
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        RandomOptions opt;
        opt.algebra = seed % 3 == 0 ? C3 : M2;
        opt.rank = 1 + static_cast<int>(seed % 3);
        opt.atoms = 1 + static_cast<int>(seed % 5);
        opt.commuting = seed % 2 == 0;
        GFrameSystem sys = generate_random(seed, opt);
        const CMatrix s = oracle::frame_operator(sys);
        CHECK(op_gap(frame_operator(sys), s) <= 1e-11 * std::max(1.0, oracle::max_abs(s)));
        Rng rng(seed);
        for (int k = 0; k < 5; ++k) {
            ModuleVector x = random_module_vector(rng, sys.descriptor(), sys.module_rank());
            const CMatrix g = oracle::gram(sys, x);
            CHECK(oracle::max_abs(controlled_gram(sys, x).dense() - g) <= 1e-11 * std::max(1.0, oracle::max_abs(g)));
            // <Sx, x> = gram(x)
            const AlgebraElement sx = inner_product(op_apply(frame_operator(sys), x), x);
            CHECK(norm(sx - controlled_gram(sys, x)) <= 1e-10 * std::max(1.0, norm(sx)));
        }
    }
}

TEST_CASE("optimal scalar bounds")
{
    const FrameBounds id = optimal_scalar_bounds(identity_frame());
    CHECK(id.scalar_lower == doctest::Approx(1.0));
    CHECK(id.scalar_upper == doctest::Approx(1.0));
    CHECK(id.frame);

    const FrameBounds ex = optimal_scalar_bounds(generate_unit_interval(1, 1, 3, 11));
    CHECK(std::abs(ex.scalar_lower - 1 / std::sqrt(27.0)) <= 1e-12);
    CHECK(std::abs(ex.scalar_upper - 1 / std::sqrt(3.0)) <= 1e-12);

    GFrameSystem zero = GFrameSystem::uncontrolled(MeasureSpace({{"w", 1.0}}), {AdjointableOperator(M2, 2, 1)});
    const FrameBounds z = optimal_scalar_bounds(zero);
    CHECK_FALSE(z.frame);
    CHECK(z.scalar_lower == 0.0);

    RandomOptions opt;
    opt.commuting = false;
    CHECK_THROWS_AS(optimal_scalar_bounds(generate_random(3, opt)), UnsupportedConfiguration);
}

TEST_CASE("property: scalar bounds are optimal")
{
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        GFrameSystem sys = seeded_commuting(seed);
        const FrameBounds fb = optimal_scalar_bounds(sys);
        REQUIRE(fb.frame);
        CHECK(check_frame(sys, fb, CheckMode::exact_scalar).passed());
        const TheoremReport lo =
            check_frame(sys, scalar_bounds(sys.descriptor(), 1.01 * fb.scalar_lower, fb.scalar_upper),
                        CheckMode::exact_scalar);
        CHECK(lo.status == Status::fail);
        CHECK(lo.witness.has_value());
        const TheoremReport hi =
            check_frame(sys, scalar_bounds(sys.descriptor(), fb.scalar_lower, 0.99 * fb.scalar_upper),
                        CheckMode::exact_scalar);
        CHECK(hi.status == Status::fail);
        REQUIRE(hi.witness.has_value());
        // the witness really violates the upper inequality
        const ModuleVector& w = *hi.witness;
        const double b = 0.99 * fb.scalar_upper;
        CHECK(norm(controlled_gram(sys, w)) > b * b * norm(inner_product(w, w)));
    }
}

TEST_CASE("check_frame examples")
{
    GFrameSystem id = identity_frame();
    CHECK(check_frame(id, scalar_bounds(M2, 1, 1), CheckMode::exact_scalar).passed());
    CHECK(check_frame(id, scalar_bounds(M2, 1, 1), CheckMode::sampled_general, 50, 1).passed());
    const TheoremReport bad = check_frame(id, scalar_bounds(M2, 2, 2), CheckMode::sampled_general, 50, 1);
    CHECK(bad.status == Status::fail);
    CHECK(bad.witness.has_value());

    // element bounds √(αβ)/4·diag(1/n) and √(αβ)·diag(1/n) for the unit-interval system
    const double ab = 6.0, r = std::sqrt(ab);
    GFrameSystem ex = generate_unit_interval(2, 3, 3, 11);
    FrameBounds eb;
    eb.lower = AlgebraElement::diag({r / 4, r / 8, r / 12});
    eb.upper = AlgebraElement::diag({r, r / 2, r / 3});
    eb.scalar_lower = r / 12;
    eb.scalar_upper = r;
    eb.frame = true;
    CHECK(check_frame(ex, eb, CheckMode::sampled_general, 200, 7).passed());
}

TEST_CASE("analysis and synthesis")
{
    GFrameSystem id = identity_frame();
    Rng rng(5);
    ModuleVector x = random_module_vector(rng, M2, 2);
    CHECK(analysis(id, x).parts.at(0) == x);
    CHECK(synthesis(id, analysis(id, x)) == x);
    CHECK(scalar_norm(analysis(id, ModuleVector(M2, 2)).parts[0]) == 0.0);

    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        GFrameSystem sys = seeded_commuting(seed);
        const AdjointableOperator s = frame_operator(sys);
        const double scale = std::max(1.0, op_norm(s));
        for (int k = 0; k < 10; ++k) {
            ModuleVector v = random_module_vector(rng, sys.descriptor(), sys.module_rank());
            DirectSumVector y;
            for (const auto& l : sys.family()) y.parts.push_back(random_module_vector(rng, sys.descriptor(), l.out_rank()));
            const AlgebraElement lhs = inner_product(synthesis(sys, y), v);
            const AlgebraElement rhs = direct_sum_inner(sys.measure(), y, analysis(sys, v));
            CHECK(norm(lhs - rhs) <= 1e-10 * scale * scalar_norm(v) * direct_sum_norm(sys.measure(), y));
            const DirectSumVector av = analysis(sys, v);
            CHECK(norm(direct_sum_inner(sys.measure(), av, av) - inner_product(op_apply(s, v), v)) <=
                  1e-10 * scale * scalar_norm(v) * scalar_norm(v));
            CHECK(scalar_norm(synthesis(sys, av) - op_apply(s, v)) <= 1e-10 * scale * scalar_norm(v));
        }
    }
}

TEST_CASE("canonical dual")
{
    const DualCertificate id = canonical_dual(identity_frame());
    CHECK(id.pass);
    CHECK(id.reconstruction_residual <= 1e-15);

    GFrameSystem ex = generate_unit_interval(2, 3, 3, 11);
    const DualCertificate cd = canonical_dual(ex);
    CHECK(cd.pass);
    CHECK(cd.reconstruction_residual <= 1e-10);
    // Γ_w = Λ_w · 3 diag(1, 4, 9) / (αβ)
    AdjointableOperator inv(1, 1, {diag3(0.5, 2.0, 4.5)});
    for (size_t k = 0; k < ex.family().size(); ++k)
        CHECK(op_distance(cd.dual_family[k], op_compose(ex.family()[k], inv)) <= 1e-12);

    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const DualCertificate c = canonical_dual(seeded_commuting(seed), 100, seed);
        CHECK(c.pass);
        CHECK(c.reconstruction_residual <= 1e-8);
    }
}

TEST_CASE("operator duals")
{
    GFrameSystem ex = generate_unit_interval(1, 1, 3, 11);
    const DualCertificate cd = canonical_dual(ex);
    const AdjointableOperator one = AdjointableOperator::identity(ex.descriptor(), 1);
    CHECK(operator_dual_check(ex, cd.dual_family, one).pass);

    // K commuting with the diagonal S
    AdjointableOperator K(1, 1, {AlgebraElement::diag({2.0, cplx(0, 1), 0.5})});
    AdjointableOperator kinv(1, 1, {AlgebraElement::diag({0.5, cplx(0, -1), 2.0})});
    Family g = compose_right(cd.dual_family, kinv);
    CHECK(operator_dual_check(ex, g, K).pass);

    const DualCertificate twice = operator_dual_check(ex, cd.dual_family, 2.0 * one);
    CHECK_FALSE(twice.pass);
    CHECK(twice.reconstruction_residual == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("multipliers")
{
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        RandomOptions opt;
        opt.algebra = seed % 2 ? M2 : C3;
        opt.atoms = 4;
        GFrameSystem sys = generate_random(seed, opt);
        const MeasureSpace& m = sys.measure();
        Rng rng(seed + 100);
        Family theta;
        for (const auto& l : sys.family()) theta.push_back(random_operator(rng, sys.descriptor(), l.in_rank(), l.out_rank()));
        std::vector<cplx> gamma, ones(m.size(), 1.0), zeros(m.size(), 0.0);
        for (size_t k = 0; k < m.size(); ++k) gamma.push_back(rng.uniform(0.1, 2.0) * rng.unit_phase());

        const AdjointableOperator L = multiplier(gamma, sys.family(), theta, m);
        const CMatrix want = oracle::multiplier(gamma, sys.family(), theta, m);
        CHECK(op_gap(L, want) <= 1e-11 * std::max(1.0, oracle::max_abs(want)));

        const MultiplierReport r = multiplier_report(gamma, sys.family(), theta, m);
        CHECK(r.pass);
        CHECK(r.adjoint_residual <= 1e-10);
        CHECK(r.norm == doctest::Approx(op_norm(op_adjoint(L))).epsilon(1e-12));

        CHECK(op_distance(multiplier(ones, sys.family(), sys.family(), m), uncontrolled_frame_operator(sys)) <= 1e-12);
        CHECK(op_norm(multiplier(zeros, sys.family(), theta, m)) == 0.0);

        // scalar controls factor out
        const double c = 1.5, cp = 0.75;
        ControlPair cpair;
        cpair.C = AdjointableOperator::scalar(sys.descriptor(), sys.module_rank(), c);
        cpair.Cp = AdjointableOperator::scalar(sys.descriptor(), sys.module_rank(), cp);
        const AdjointableOperator cl = controlled_multiplier(gamma, theta, sys.family(), cpair, m);
        CHECK(op_distance(cl, c * cp * multiplier(gamma, theta, sys.family(), m)) <= 1e-12 * std::max(1.0, op_norm(cl)));
        CHECK(op_norm(controlled_multiplier(zeros, theta, sys.family(), cpair, m)) == 0.0);
        ControlPair idp{AdjointableOperator::identity(sys.descriptor(), sys.module_rank()),
                        AdjointableOperator::identity(sys.descriptor(), sys.module_rank())};
        CHECK(op_distance(controlled_multiplier(ones, sys.family(), sys.family(), idp, m),
                          uncontrolled_frame_operator(sys)) <= 1e-12);
    }
}

TEST_CASE("dominant atom raises the top eigenvalue when scaled")
{
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        GFrameSystem sys = seeded_commuting(seed);
        const size_t k = dominant_atom(sys);
        Family f = sys.family();
        f[k] = 2.0 * f[k];
        const double before = optimal_scalar_bounds(sys).scalar_upper;
        const double after = optimal_scalar_bounds(sys.with_family(f)).scalar_upper;
        CHECK(after > before * (1 + 1e-6));
    }
}
