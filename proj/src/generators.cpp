#include "gframe/generators.hpp"

#include <algorithm>
#include <string>

#include "gframe/errors.hpp"

namespace gframe {

namespace {

MeasureSpace random_measure(Rng& rng, int atoms)
{
    std::vector<Atom> a;
    for (int k = 0; k < atoms; ++k)
        a.push_back({"w" + std::to_string(k), rng.uniform(0.2, 1.0)});
    return MeasureSpace(std::move(a));
}

// c0·I + Σ c_i X̂_i per component, for positive Hermitian X with X̂ = X/||X||.
CMatrix normalised(const CMatrix& x)
{
    double n = linalg::spectral_norm(x);
    return n > 0 ? CMatrix(x / n) : x;
}

}  // namespace

AdjointableOperator uncontrolled_frame_operator(const GFrameSystem& sys)
{
    return family_adjoint_product(sys.measure(), sys.family(), sys.family());
}

GFrameSystem generate_unit_interval(double alpha, double beta, int rank, int nodes)
{
    if (!(alpha > 0) || !(beta > 0)) throw InputError("alpha and beta must be positive");
    if (rank < 1) throw InputError("rank must be at least 1");
    MeasureSpace m = simpson_unit_interval(nodes);
    AlgebraDescriptor desc{AlgebraKind::diagonal, rank};
    std::vector<double> w = simpson_nodes(nodes);
    Family family;
    for (double t : w) {
        std::vector<cplx> v(static_cast<size_t>(rank));
        for (int n = 0; n < rank; ++n) v[static_cast<size_t>(n)] = t / (n + 1);
        family.push_back(AdjointableOperator::block_diagonal(1, AlgebraElement::diag(v)));
    }
    return GFrameSystem(std::move(m), std::move(family), AdjointableOperator::scalar(desc, 1, alpha),
                        AdjointableOperator::scalar(desc, 1, beta));
}

GFrameSystem generate_random(std::uint64_t seed, const RandomOptions& opt)
{
    if (opt.rank < 1 || opt.atoms < 1) throw InputError("rank and atoms must be at least 1");
    if (opt.algebra.dim < 1) throw InputError("algebra dimension must be at least 1");
    Rng rng(mix_seed(seed, 0x6e11));
    const AlgebraDescriptor desc = opt.algebra;
    const int n = opt.rank;
    MeasureSpace m = random_measure(rng, opt.atoms);

    std::vector<int> outs(static_cast<size_t>(opt.atoms), n);
    if (!opt.uniform_outputs)
        for (size_t k = 1; k < outs.size(); ++k) outs[k] = rng.uniform_int(1, n);

    if (!opt.commuting) {
        Family family;
        for (int r : outs) family.push_back(random_operator(rng, desc, n, r));
        AdjointableOperator C = random_positive_operator(rng, desc, n);
        AdjointableOperator Cp = opt.identical_controls ? C : random_positive_operator(rng, desc, n);
        return GFrameSystem(std::move(m), std::move(family), std::move(C), std::move(Cp));
    }

    // Shared eigenbasis U per component: F_w = U E_w V_w, so F_w F_w^H = U E E^H U^H.
    const int comps = component_count(desc);
    const int N = component_size(desc, n);
    std::vector<CMatrix> U;
    for (int l = 0; l < comps; ++l) U.push_back(random_unitary(rng, N));
    Family family;
    for (size_t k = 0; k < outs.size(); ++k) {
        const int M = component_size(desc, outs[k]);
        std::vector<CMatrix> parts;
        for (int l = 0; l < comps; ++l) {
            CMatrix E = CMatrix::Zero(N, M);
            for (int i = 0; i < std::min(N, M); ++i) E(i, i) = rng.uniform(0.3, 1.5);
            parts.push_back(U[static_cast<size_t>(l)] * E * random_unitary(rng, M));
        }
        family.push_back(from_components(desc, n, outs[k], parts));
    }
    GFrameSystem bare = GFrameSystem::uncontrolled(m, family);
    std::vector<CMatrix> s0 = components(uncontrolled_frame_operator(bare));
    const double spread = std::clamp(opt.control_spread, 0.0, 0.95);
    auto control = [&]() {
        double level = rng.uniform(0.7, 1.4);
        double c1 = rng.uniform(0.0, 1.0), c2 = rng.uniform(0.0, 1.0);
        double total = std::max(c1 + c2, 1e-3);
        std::vector<CMatrix> parts;
        for (const CMatrix& s : s0) {
            CMatrix sh = normalised(s);
            CMatrix p = (c1 * sh + c2 * sh * sh) / total;
            CMatrix c = level * ((1.0 - spread) * CMatrix::Identity(N, N) + spread * p);
            parts.push_back(0.5 * (c + c.adjoint()));
        }
        return from_components(desc, n, n, parts);
    };
    AdjointableOperator C = control();
    AdjointableOperator Cp = opt.identical_controls ? C : control();
    return GFrameSystem(std::move(m), std::move(family), std::move(C), std::move(Cp));
}

AdjointableOperator commuting_operator(const GFrameSystem& sys, Rng& rng)
{
    const AlgebraDescriptor desc = sys.descriptor();
    const int n = sys.module_rank();
    std::vector<CMatrix> c = components(sys.C());
    std::vector<CMatrix> cp = components(sys.Cp());
    std::vector<CMatrix> s0 = components(uncontrolled_frame_operator(sys));
    cplx c0 = rng.uniform(1.0, 1.5) * rng.unit_phase();
    cplx ci[4];
    for (cplx& v : ci) v = rng.uniform(0.0, 0.02) * rng.unit_phase();
    std::vector<CMatrix> parts;
    for (size_t l = 0; l < c.size(); ++l) {
        const Eigen::Index N = c[l].rows();
        CMatrix sh = normalised(s0[l]);
        CMatrix k = c0 * CMatrix::Identity(N, N) + ci[0] * normalised(c[l]) + ci[1] * normalised(cp[l]) +
                    ci[2] * sh + ci[3] * sh * sh;
        parts.push_back(k);
    }
    return from_components(desc, n, n, parts);
}

}  // namespace gframe
