#pragma once

#include <cstdint>
#include <random>

#include "gframe/hilbert_module.hpp"

namespace gframe {

// Seeded source for every random object in the library and its tests.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform(double lo, double hi);
    int uniform_int(int lo, int hi);  // inclusive
    double normal();
    // Standard complex Gaussian: real and imaginary parts N(0, 1/2).
    cplx complex_normal();
    cplx unit_phase();

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

// Derives an independent stream for (seed, salt).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt);

CMatrix random_gaussian(Rng& rng, int rows, int cols);
CMatrix random_unitary(Rng& rng, int n);
CMatrix random_hermitian(Rng& rng, int n);

AlgebraElement random_element(Rng& rng, AlgebraDescriptor desc);
AlgebraElement random_hermitian_element(Rng& rng, AlgebraDescriptor desc);
ModuleVector random_module_vector(Rng& rng, AlgebraDescriptor desc, int rank);
ModuleVector random_unit_vector(Rng& rng, AlgebraDescriptor desc, int rank);
AdjointableOperator random_operator(Rng& rng, AlgebraDescriptor desc, int in_rank, int out_rank);
// Positive invertible q*q + eps·I.
AdjointableOperator random_positive_operator(Rng& rng, AlgebraDescriptor desc, int n, double eps = 0.5);
// Invertible operator with condition number below roughly 50.
AdjointableOperator random_invertible_operator(Rng& rng, AlgebraDescriptor desc, int n);

}  // namespace gframe
