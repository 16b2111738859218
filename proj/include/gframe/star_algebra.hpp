#pragma once

#include <string>
#include <vector>

#include "gframe/linalg.hpp"

namespace gframe {

enum class AlgebraKind { matrix, diagonal };

// M_d(C) for kind matrix, C^k (componentwise product) for kind diagonal.
struct AlgebraDescriptor {
    AlgebraKind kind = AlgebraKind::matrix;
    int dim = 1;

    bool operator==(const AlgebraDescriptor&) const = default;
    int entry_count() const { return kind == AlgebraKind::matrix ? dim * dim : dim; }
};

std::string to_string(AlgebraKind k);
std::string to_string(const AlgebraDescriptor& d);

constexpr double kDefaultPsdTol = 1e-9;
constexpr double kDefaultCondCap = 1e12;

class AlgebraElement {
public:
    AlgebraElement() : AlgebraElement(AlgebraDescriptor{}) {}
    explicit AlgebraElement(AlgebraDescriptor desc);  // zero
    AlgebraElement(AlgebraDescriptor desc, std::vector<cplx> entries);

    static AlgebraElement zero(AlgebraDescriptor desc) { return AlgebraElement(desc); }
    static AlgebraElement identity(AlgebraDescriptor desc);
    static AlgebraElement scalar(AlgebraDescriptor desc, cplx c);
    static AlgebraElement diag(std::vector<cplx> values);
    static AlgebraElement matrix(int d, std::vector<cplx> row_major);
    // Diagonal kind keeps only the diagonal of m.
    static AlgebraElement from_dense(AlgebraDescriptor desc, const CMatrix& m);

    const AlgebraDescriptor& descriptor() const { return desc_; }
    const std::vector<cplx>& entries() const { return entries_; }
    int dim() const { return desc_.dim; }
    bool is_diagonal_kind() const { return desc_.kind == AlgebraKind::diagonal; }

    // Entry (r, c) of the d x d matrix picture (zero off the diagonal for ℂ^k).
    cplx at(int r, int c) const;
    CMatrix dense() const;

    bool operator==(const AlgebraElement& o) const = default;

private:
    AlgebraDescriptor desc_;
    std::vector<cplx> entries_;
};

enum class ArithOp { add, sub, mul, scale };

// scale ignores b and multiplies a by s.
AlgebraElement arith(const AlgebraElement& a, const AlgebraElement& b, ArithOp op, cplx s = 1.0);

AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement operator*(cplx s, const AlgebraElement& a);

AlgebraElement adjoint(const AlgebraElement& a);
double norm(const AlgebraElement& a);

// Absolute tolerance used by the positivity predicates: tol * max(1, ||a||).
double psd_threshold(const AlgebraElement& a, double tol);

bool is_hermitian(const AlgebraElement& a, double tol = kDefaultPsdTol);
bool is_positive(const AlgebraElement& a, double tol = kDefaultPsdTol);
// Lance's criterion: for t = ||a||, a >= 0 iff ||a - t·1|| <= t.
bool is_positive_by_norm_shift(const AlgebraElement& a, double tol = kDefaultPsdTol);
AlgebraElement sqrt_positive(const AlgebraElement& a, double tol = kDefaultPsdTol);
AlgebraElement invert(const AlgebraElement& a, double cond_cap = kDefaultCondCap);
bool leq(const AlgebraElement& a, const AlgebraElement& b, double tol = kDefaultPsdTol);

// Eigenvalues of the Hermitian part, ascending.
RVector hermitian_eigenvalues(const AlgebraElement& a);

// True when a lies in the centre of its algebra (scalar for M_d, anything for ℂ^k).
bool is_central(const AlgebraElement& a, double tol = kDefaultPsdTol);

}  // namespace gframe
