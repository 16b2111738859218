#pragma once

#include <vector>

#include "gframe/star_algebra.hpp"

namespace gframe {

// Element of the standard module A^n.
class ModuleVector {
public:
    ModuleVector() = default;
    ModuleVector(AlgebraDescriptor desc, int rank);  // zero vector
    explicit ModuleVector(std::vector<AlgebraElement> coords);

    const AlgebraDescriptor& descriptor() const { return desc_; }
    int rank() const { return static_cast<int>(coords_.size()); }
    const std::vector<AlgebraElement>& coords() const { return coords_; }
    const AlgebraElement& operator[](int i) const { return coords_[static_cast<size_t>(i)]; }

    bool operator==(const ModuleVector&) const = default;

private:
    AlgebraDescriptor desc_;
    std::vector<AlgebraElement> coords_;
};

ModuleVector operator+(const ModuleVector& x, const ModuleVector& y);
ModuleVector operator-(const ModuleVector& x, const ModuleVector& y);
ModuleVector operator*(cplx s, const ModuleVector& x);
// Left module action a·x.
ModuleVector left_mul(const AlgebraElement& a, const ModuleVector& x);

// <x, y> = sum_i x_i y_i^*
AlgebraElement inner_product(const ModuleVector& x, const ModuleVector& y);
double scalar_norm(const ModuleVector& x);
// |x| = <x, x>^{1/2}
AlgebraElement modulus(const ModuleVector& x);

// d x (n d) row-block picture [x_1 ... x_n].
CMatrix flatten(const ModuleVector& x);
// Module vector whose row-block picture carries the row v (length n d) in one row;
// for the diagonal kind entry l of coordinate i is v(i d + l).
ModuleVector from_flat_row(AlgebraDescriptor desc, int rank, const CVector& v);

// A-linear map A^n -> A^m stored as an n x m block matrix, (Tx)_j = sum_i x_i t_ij.
class AdjointableOperator {
public:
    AdjointableOperator() = default;
    AdjointableOperator(AlgebraDescriptor desc, int in_rank, int out_rank);  // zero
    AdjointableOperator(int in_rank, int out_rank, std::vector<AlgebraElement> blocks);

    static AdjointableOperator identity(AlgebraDescriptor desc, int n);
    static AdjointableOperator scalar(AlgebraDescriptor desc, int n, cplx c);
    // Block-diagonal operator with the same block on every diagonal position.
    static AdjointableOperator block_diagonal(int n, const AlgebraElement& a);

    const AlgebraDescriptor& descriptor() const { return desc_; }
    int in_rank() const { return in_; }
    int out_rank() const { return out_; }
    const AlgebraElement& block(int i, int j) const { return blocks_[static_cast<size_t>(i * out_ + j)]; }
    const std::vector<AlgebraElement>& blocks() const { return blocks_; }

    bool operator==(const AdjointableOperator&) const = default;

private:
    AlgebraDescriptor desc_;
    int in_ = 0;
    int out_ = 0;
    std::vector<AlgebraElement> blocks_;  // row-major n x m
};

ModuleVector op_apply(const AdjointableOperator& t, const ModuleVector& x);
AdjointableOperator op_adjoint(const AdjointableOperator& t);
// s ∘ t, i.e. x -> s(t(x)); flatten(s ∘ t) = flatten(t) · flatten(s).
AdjointableOperator op_compose(const AdjointableOperator& s, const AdjointableOperator& t);
AdjointableOperator operator+(const AdjointableOperator& s, const AdjointableOperator& t);
AdjointableOperator operator-(const AdjointableOperator& s, const AdjointableOperator& t);
AdjointableOperator operator*(cplx c, const AdjointableOperator& t);
// v·T for central v: blocks t_ij v.
AdjointableOperator op_scale_central(const AlgebraElement& v, const AdjointableOperator& t);

// (n d) x (m d) matrix with block (i, j) = t_ij.
CMatrix flatten(const AdjointableOperator& t);
// Inverse of flatten; the diagonal kind reads only the diagonals of the blocks.
AdjointableOperator unflatten(AlgebraDescriptor desc, int in_rank, int out_rank, const CMatrix& m);

// Irreducible pieces: one (n d) x (m d) matrix for M_d, and for ℂ^k the k
// matrices M^(l) of size n x m with M^(l)_ij = t_ij[l].
std::vector<CMatrix> components(const AdjointableOperator& t);
AdjointableOperator from_components(AlgebraDescriptor desc, int in_rank, int out_rank,
                                    const std::vector<CMatrix>& comps);
int component_count(const AlgebraDescriptor& desc);
int component_size(const AlgebraDescriptor& desc, int rank);

double op_norm(const AdjointableOperator& t);
double bounded_below_constant(const AdjointableOperator& t);
// ||s - t|| in operator norm.
double op_distance(const AdjointableOperator& s, const AdjointableOperator& t);
double commutator_norm(const AdjointableOperator& s, const AdjointableOperator& t);

struct PositivePartChecks {
    bool self_adjoint = false;
    bool positive = false;
    bool invertible = false;
    double lower = 0.0;  // lambda_min of the Hermitian part
    double upper = 0.0;  // lambda_max of the Hermitian part
};
PositivePartChecks positive_part_checks(const AdjointableOperator& t, double tol = kDefaultPsdTol);

bool is_self_adjoint(const AdjointableOperator& t, double tol = kDefaultPsdTol);
bool is_positive(const AdjointableOperator& t, double tol = kDefaultPsdTol);

AdjointableOperator op_inverse(const AdjointableOperator& t, double cond_cap = kDefaultCondCap);
AdjointableOperator op_sqrt_positive(const AdjointableOperator& t, double tol = kDefaultPsdTol);
AdjointableOperator op_pseudo_inverse(const AdjointableOperator& t, double rel_tol = 1e-10);

}  // namespace gframe
