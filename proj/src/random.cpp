#include "gframe/random.hpp"

#include <cmath>

namespace gframe {

double Rng::uniform(double lo, double hi)
{
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
}

int Rng::uniform_int(int lo, int hi)
{
    return std::uniform_int_distribution<int>(lo, hi)(engine_);
}

double Rng::normal()
{
    return std::normal_distribution<double>(0.0, 1.0)(engine_);
}

cplx Rng::complex_normal()
{
    const double s = std::sqrt(0.5);
    double re = normal();
    double im = normal();
    return {s * re, s * im};
}

cplx Rng::unit_phase()
{
    return std::polar(1.0, uniform(0.0, 2.0 * M_PI));
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt)
{
    // splitmix64 finaliser over the combined value
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

CMatrix random_gaussian(Rng& rng, int rows, int cols)
{
    CMatrix m(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) m(r, c) = rng.complex_normal();
    return m;
}

CMatrix random_unitary(Rng& rng, int n)
{
    return linalg::orthonormalize(random_gaussian(rng, n, n));
}

CMatrix random_hermitian(Rng& rng, int n)
{
    CMatrix g = random_gaussian(rng, n, n);
    return 0.5 * (g + g.adjoint());
}

AlgebraElement random_element(Rng& rng, AlgebraDescriptor desc)
{
    std::vector<cplx> e(static_cast<size_t>(desc.entry_count()));
    for (auto& v : e) v = rng.complex_normal();
    return AlgebraElement(desc, std::move(e));
}

AlgebraElement random_hermitian_element(Rng& rng, AlgebraDescriptor desc)
{
    AlgebraElement a = random_element(rng, desc);
    return 0.5 * (a + adjoint(a));
}

ModuleVector random_module_vector(Rng& rng, AlgebraDescriptor desc, int rank)
{
    std::vector<AlgebraElement> coords;
    coords.reserve(static_cast<size_t>(rank));
    for (int i = 0; i < rank; ++i) coords.push_back(random_element(rng, desc));
    return ModuleVector(std::move(coords));
}

ModuleVector random_unit_vector(Rng& rng, AlgebraDescriptor desc, int rank)
{
    ModuleVector x = random_module_vector(rng, desc, rank);
    double n = scalar_norm(x);
    return (1.0 / n) * x;
}

AdjointableOperator random_operator(Rng& rng, AlgebraDescriptor desc, int in_rank, int out_rank)
{
    std::vector<AlgebraElement> blocks;
    blocks.reserve(static_cast<size_t>(in_rank * out_rank));
    for (int k = 0; k < in_rank * out_rank; ++k) blocks.push_back(random_element(rng, desc));
    return AdjointableOperator(in_rank, out_rank, std::move(blocks));
}

AdjointableOperator random_positive_operator(Rng& rng, AlgebraDescriptor desc, int n, double eps)
{
    AdjointableOperator q = random_operator(rng, desc, n, n);
    return op_compose(op_adjoint(q), q) + AdjointableOperator::scalar(desc, n, eps);
}

AdjointableOperator random_invertible_operator(Rng& rng, AlgebraDescriptor desc, int n)
{
    for (;;) {
        AdjointableOperator k = random_operator(rng, desc, n, n);
        CMatrix f = flatten(k);
        double smax = linalg::spectral_norm(f);
        double smin = linalg::sigma_min(f);
        if (smin * 50.0 >= smax) return k;
    }
}

}  // namespace gframe
