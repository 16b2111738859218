#include <doctest.h>

#include <cmath>

#include "gframe/errors.hpp"
#include "gframe/hilbert_module.hpp"
#include "gframe/random.hpp"
#include "oracles.hpp"

using namespace gframe;

namespace {
const AlgebraDescriptor M1{AlgebraKind::matrix, 1};
const AlgebraDescriptor M2{AlgebraKind::matrix, 2};
const AlgebraDescriptor C3{AlgebraKind::diagonal, 3};

AlgebraElement s1(cplx v) { return AlgebraElement::scalar(M1, v); }

double op_gap(const AdjointableOperator& a, const AdjointableOperator& b)
{
    return oracle::max_abs(oracle::block_matrix(a) - oracle::block_matrix(b));
}
}  // namespace

TEST_CASE("inner product")
{
    ModuleVector x({s1(1), s1(0)}), y({s1(0), s1(1)});
    CHECK(norm(inner_product(x, y)) == 0.0);
    ModuleVector z({s1(1), s1(1)});
    CHECK(inner_product(z, z) == s1(2));

    Rng rng(4);
    AlgebraElement a = random_element(rng, M2), b = random_element(rng, M2);
    const AlgebraElement one = AlgebraElement::identity(M2);
    ModuleVector u({one, a}), v({b, one});
    CHECK(norm(inner_product(u, v) - (one * adjoint(b) + a * one)) <= 1e-15);
}

TEST_CASE("scalar norm")
{
    ModuleVector e({AlgebraElement::identity(M2), AlgebraElement::zero(M2), AlgebraElement::zero(M2)});
    CHECK(scalar_norm(e) == doctest::Approx(1.0));
    CHECK(scalar_norm(ModuleVector(M2, 3)) == 0.0);
    Rng rng(8);
    for (int k = 0; k < 20; ++k) {
        ModuleVector x = random_module_vector(rng, k % 2 ? M2 : C3, 3);
        CHECK(scalar_norm(x) == doctest::Approx(oracle::spectral_norm(oracle::row_blocks(x))).epsilon(1e-12));
    }
}

TEST_CASE("op_apply: identity, zero and the norm inequality")
{
    Rng rng(12);
    ModuleVector x = random_module_vector(rng, M2, 3);
    CHECK(op_apply(AdjointableOperator::identity(M2, 3), x) == x);
    CHECK(scalar_norm(op_apply(AdjointableOperator(M2, 3, 2), x)) == 0.0);
    for (int k = 0; k < 100; ++k) {
        AdjointableOperator t = random_operator(rng, M2, 3, 2);
        ModuleVector v = random_module_vector(rng, M2, 3);
        const ModuleVector tv = op_apply(t, v);
        const double nt = op_norm(t);
        CHECK(leq(inner_product(tv, tv), nt * nt * inner_product(v, v), 1e-10));
        CHECK(oracle::max_abs(oracle::row_blocks(tv) - oracle::matmul(oracle::row_blocks(v), oracle::block_matrix(t))) <=
              1e-13);
    }
}

TEST_CASE("op_apply is left A-linear")
{
    Rng rng(21);
    for (int k = 0; k < 50; ++k) {
        AdjointableOperator t = random_operator(rng, M2, 2, 3);
        ModuleVector x = random_module_vector(rng, M2, 2);
        AlgebraElement a = random_element(rng, M2);
        CHECK(scalar_norm(op_apply(t, left_mul(a, x)) - left_mul(a, op_apply(t, x))) <= 1e-12);
    }
}

TEST_CASE("property: adjoint defect on 1000 seeded triples")
{
    Rng rng(1000);
    double worst = 0.0;
    for (int k = 0; k < 1000; ++k) {
        const AlgebraDescriptor d = k % 2 ? M2 : C3;
        const int n = 1 + k % 3, m = 1 + (k / 3) % 3;
        AdjointableOperator t = random_operator(rng, d, n, m);
        ModuleVector x = random_module_vector(rng, d, n), y = random_module_vector(rng, d, m);
        const double defect = norm(inner_product(op_apply(t, x), y) - inner_product(x, op_apply(op_adjoint(t), y)));
        const double scale = (1.0 + op_norm(t)) * scalar_norm(x) * scalar_norm(y);
        worst = std::max(worst, defect / scale);
    }
    CHECK(worst <= 1e-10);
    CHECK(op_adjoint(AdjointableOperator::identity(M2, 2)) == AdjointableOperator::identity(M2, 2));
}

TEST_CASE("d = 1 adjoint is the conjugate transpose")
{
    Rng rng(2);
    AdjointableOperator t = random_operator(rng, M1, 3, 2);
    CHECK(oracle::max_abs(oracle::block_matrix(op_adjoint(t)) - oracle::adjoint(oracle::block_matrix(t))) == 0.0);
}

TEST_CASE("composition")
{
    Rng rng(13);
    for (int k = 0; k < 30; ++k) {
        const AlgebraDescriptor d = k % 2 ? M2 : C3;
        AdjointableOperator r = random_operator(rng, d, 2, 3), s = random_operator(rng, d, 3, 2),
                            t = random_operator(rng, d, 2, 3);
        // s ∘ t applies t first
        ModuleVector x = random_module_vector(rng, d, 2);
        CHECK(scalar_norm(op_apply(op_compose(s, t), x) - op_apply(s, op_apply(t, x))) <= 1e-12);
        CHECK(op_gap(op_compose(s, AdjointableOperator::identity(d, 3)), s) == 0.0);
        CHECK(op_gap(op_adjoint(op_compose(s, t)), op_compose(op_adjoint(t), op_adjoint(s))) <= 1e-14);
        CHECK(op_gap(op_compose(op_compose(t, s), t), op_compose(t, op_compose(s, t))) <= 1e-13);
        // flatten reverses the order under the right action
        CHECK(oracle::max_abs(flatten(op_compose(s, t)) - oracle::matmul(flatten(t), flatten(s))) <= 1e-14);
        (void)r;
    }
    CHECK_THROWS_AS(op_compose(random_operator(rng, M2, 2, 2), random_operator(rng, M2, 3, 3)), InputError);
}

TEST_CASE("flatten")
{
    CHECK(oracle::max_abs(flatten(AdjointableOperator::identity(M2, 2)) - CMatrix::Identity(4, 4)) == 0.0);
    Rng rng(14);
    for (int k = 0; k < 20; ++k) {
        AdjointableOperator t = random_operator(rng, k % 2 ? M2 : C3, 2, 3);
        CHECK(oracle::max_abs(flatten(op_adjoint(t)) - flatten(t).adjoint()) == 0.0);
        CHECK(oracle::max_abs(flatten(t) - oracle::block_matrix(t)) == 0.0);
        CHECK(unflatten(t.descriptor(), 2, 3, flatten(t)) == t);
    }
}

TEST_CASE("property: positivity bridge between <Sx, x> and flatten(S)")
{
    Rng rng(100);
    int psd_count = 0;
    for (int k = 0; k < 100; ++k) {
        AdjointableOperator q = random_operator(rng, M2, 2, 2);
        AdjointableOperator h = q + op_adjoint(q);
        if (k % 2) h = op_compose(op_adjoint(q), q);
        const RVector ev = oracle::hermitian_eigenvalues(oracle::block_matrix(h));
        const bool psd = ev(0) >= -1e-12;
        psd_count += psd;
        CHECK(is_positive(h) == psd);
        if (psd) {
            for (int s = 0; s < 20; ++s) {
                ModuleVector x = random_module_vector(rng, M2, 2);
                CHECK(is_positive(inner_product(op_apply(h, x), x), 1e-10));
            }
        } else {
            // witness among the eigenvectors of flatten(S)
            const linalg::HermitianSpectrum sp = linalg::hermitian_spectrum(flatten(h));
            CVector v = sp.vectors.col(0).conjugate();
            ModuleVector w = from_flat_row(M2, 2, v);
            CHECK_FALSE(is_positive(inner_product(op_apply(h, w), w)));
        }
    }
    CHECK(psd_count >= 50);
}

TEST_CASE("op_norm")
{
    CHECK(op_norm(AdjointableOperator::identity(M2, 3)) == doctest::Approx(1.0));
    CHECK(op_norm(AdjointableOperator::scalar(M2, 2, cplx(0, -3))) == doctest::Approx(3.0));
    Rng rng(500);
    AdjointableOperator t = random_operator(rng, M2, 3, 2);
    double sup = 0.0;
    for (int k = 0; k < 500; ++k) {
        ModuleVector x = random_unit_vector(rng, M2, 3);
        sup = std::max(sup, scalar_norm(op_apply(t, x)));
    }
    const double n = op_norm(t);
    CHECK(sup <= n * (1 + 1e-12));
    CHECK(sup >= 0.85 * n);  // random directions in a 12-dim real sphere rarely get closer
    CHECK(n == doctest::Approx(oracle::spectral_norm(oracle::block_matrix(t))).epsilon(1e-12));
}

TEST_CASE("bounded_below_constant")
{
    CHECK(bounded_below_constant(AdjointableOperator::identity(C3, 2)) == doctest::Approx(1.0));
    AdjointableOperator deficient(M2, 2, 2);
    CHECK(bounded_below_constant(deficient) == 0.0);
    Rng rng(9);
    AdjointableOperator t = random_invertible_operator(rng, M2, 2);
    const double m = bounded_below_constant(t);
    CHECK(m > 0);
    for (int k = 0; k < 200; ++k) {
        ModuleVector x = random_module_vector(rng, M2, 2);
        CHECK(m * scalar_norm(x) <= scalar_norm(op_apply(t, x)) * (1 + 1e-12));
    }
}

TEST_CASE("positive_part_checks")
{
    PositivePartChecks id = positive_part_checks(AdjointableOperator::identity(M2, 2));
    CHECK(id.self_adjoint);
    CHECK(id.positive);
    CHECK(id.invertible);
    CHECK(id.lower == doctest::Approx(1.0));
    CHECK(id.upper == doctest::Approx(1.0));

    Rng rng(6);
    AdjointableOperator t = random_invertible_operator(rng, M2, 2);
    PositivePartChecks tt = positive_part_checks(op_compose(op_adjoint(t), t));
    CHECK(tt.positive);
    CHECK(tt.invertible);

    AdjointableOperator nil(1, 1, {AlgebraElement::matrix(2, {0, 1, 0, 0})});
    CHECK_FALSE(positive_part_checks(nil).self_adjoint);
}

TEST_CASE("property: Cauchy-Schwarz")
{
    Rng rng(77);
    for (int k = 0; k < 300; ++k) {
        ModuleVector x = random_module_vector(rng, k % 2 ? M2 : C3, 3), y = random_module_vector(rng, k % 2 ? M2 : C3, 3);
        CHECK(norm(inner_product(x, y)) <= scalar_norm(x) * scalar_norm(y) * (1 + 1e-12));
    }
}

TEST_CASE("shape errors")
{
    CHECK_THROWS_AS(AdjointableOperator(2, 2, {AlgebraElement::identity(M2)}), InputError);
    CHECK_THROWS_AS(op_apply(AdjointableOperator::identity(M2, 3), ModuleVector(M2, 2)), InputError);
    CHECK_THROWS_AS(inner_product(ModuleVector(M2, 2), ModuleVector(C3, 2)), InputError);
}
