#include "gframe/hilbert_module.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gframe/errors.hpp"

namespace gframe {

namespace {

void require_vectors(const ModuleVector& x, const ModuleVector& y, const char* what)
{
    if (!(x.descriptor() == y.descriptor()) || x.rank() != y.rank()) {
        std::ostringstream msg;
        msg << what << ": module vectors differ in shape (" << to_string(x.descriptor()) << "^" << x.rank()
            << " vs " << to_string(y.descriptor()) << "^" << y.rank() << ")";
        throw InputError(msg.str());
    }
}

void require_same_shape(const AdjointableOperator& s, const AdjointableOperator& t, const char* what)
{
    if (!(s.descriptor() == t.descriptor()) || s.in_rank() != t.in_rank() || s.out_rank() != t.out_rank()) {
        std::ostringstream msg;
        msg << what << ": operators differ in shape (" << s.in_rank() << "->" << s.out_rank() << " vs "
            << t.in_rank() << "->" << t.out_rank() << ")";
        throw InputError(msg.str());
    }
}

}  // namespace

ModuleVector::ModuleVector(AlgebraDescriptor desc, int rank) : desc_(desc)
{
    if (rank < 1) throw InputError("module rank must be >= 1");
    coords_.assign(static_cast<size_t>(rank), AlgebraElement::zero(desc));
}

ModuleVector::ModuleVector(std::vector<AlgebraElement> coords) : coords_(std::move(coords))
{
    if (coords_.empty()) throw InputError("module rank must be >= 1");
    desc_ = coords_.front().descriptor();
    for (const auto& c : coords_)
        if (!(c.descriptor() == desc_)) throw InputError("module vector coordinates use different algebras");
}

ModuleVector operator+(const ModuleVector& x, const ModuleVector& y)
{
    require_vectors(x, y, "module sum");
    std::vector<AlgebraElement> out;
    out.reserve(x.coords().size());
    for (int i = 0; i < x.rank(); ++i) out.push_back(x[i] + y[i]);
    return ModuleVector(std::move(out));
}

ModuleVector operator-(const ModuleVector& x, const ModuleVector& y)
{
    require_vectors(x, y, "module difference");
    std::vector<AlgebraElement> out;
    out.reserve(x.coords().size());
    for (int i = 0; i < x.rank(); ++i) out.push_back(x[i] - y[i]);
    return ModuleVector(std::move(out));
}

ModuleVector operator*(cplx s, const ModuleVector& x)
{
    std::vector<AlgebraElement> out;
    out.reserve(x.coords().size());
    for (const auto& c : x.coords()) out.push_back(s * c);
    return ModuleVector(std::move(out));
}

ModuleVector left_mul(const AlgebraElement& a, const ModuleVector& x)
{
    std::vector<AlgebraElement> out;
    out.reserve(x.coords().size());
    for (const auto& c : x.coords()) out.push_back(a * c);
    return ModuleVector(std::move(out));
}

AlgebraElement inner_product(const ModuleVector& x, const ModuleVector& y)
{
    require_vectors(x, y, "inner product");
    AlgebraElement acc = AlgebraElement::zero(x.descriptor());
    for (int i = 0; i < x.rank(); ++i) acc = acc + x[i] * adjoint(y[i]);
    return acc;
}

double scalar_norm(const ModuleVector& x)
{
    return std::sqrt(norm(inner_product(x, x)));
}

AlgebraElement modulus(const ModuleVector& x)
{
    return sqrt_positive(inner_product(x, x));
}

CMatrix flatten(const ModuleVector& x)
{
    const int d = x.descriptor().dim;
    CMatrix m(d, d * x.rank());
    for (int i = 0; i < x.rank(); ++i) m.block(0, i * d, d, d) = x[i].dense();
    return m;
}

ModuleVector from_flat_row(AlgebraDescriptor desc, int rank, const CVector& v)
{
    const int d = desc.dim;
    if (v.size() != rank * d) throw InputError("flat row has the wrong length");
    std::vector<AlgebraElement> coords;
    coords.reserve(static_cast<size_t>(rank));
    for (int i = 0; i < rank; ++i) {
        CMatrix blk = CMatrix::Zero(d, d);
        if (desc.kind == AlgebraKind::diagonal) {
            for (int l = 0; l < d; ++l) blk(l, l) = v(i * d + l);
        } else {
            blk.row(0) = v.segment(i * d, d).transpose();
        }
        coords.push_back(AlgebraElement::from_dense(desc, blk));
    }
    return ModuleVector(std::move(coords));
}

AdjointableOperator::AdjointableOperator(AlgebraDescriptor desc, int in_rank, int out_rank)
    : desc_(desc), in_(in_rank), out_(out_rank)
{
    if (in_rank < 1 || out_rank < 1) throw InputError("operator ranks must be >= 1");
    blocks_.assign(static_cast<size_t>(in_rank * out_rank), AlgebraElement::zero(desc));
}

AdjointableOperator::AdjointableOperator(int in_rank, int out_rank, std::vector<AlgebraElement> blocks)
    : in_(in_rank), out_(out_rank), blocks_(std::move(blocks))
{
    if (in_rank < 1 || out_rank < 1) throw InputError("operator ranks must be >= 1");
    if (static_cast<int>(blocks_.size()) != in_rank * out_rank) throw InputError("operator block count does not match ranks");
    desc_ = blocks_.front().descriptor();
    for (const auto& b : blocks_)
        if (!(b.descriptor() == desc_)) throw InputError("operator blocks use different algebras");
}

AdjointableOperator AdjointableOperator::identity(AlgebraDescriptor desc, int n)
{
    return scalar(desc, n, 1.0);
}

AdjointableOperator AdjointableOperator::scalar(AlgebraDescriptor desc, int n, cplx c)
{
    return block_diagonal(n, AlgebraElement::scalar(desc, c));
}

AdjointableOperator AdjointableOperator::block_diagonal(int n, const AlgebraElement& a)
{
    AdjointableOperator t(a.descriptor(), n, n);
    for (int i = 0; i < n; ++i) t.blocks_[static_cast<size_t>(i * n + i)] = a;
    return t;
}

ModuleVector op_apply(const AdjointableOperator& t, const ModuleVector& x)
{
    if (!(t.descriptor() == x.descriptor()) || t.in_rank() != x.rank()) {
        std::ostringstream msg;
        msg << "apply: operator expects rank " << t.in_rank() << " over " << to_string(t.descriptor())
            << ", vector has rank " << x.rank() << " over " << to_string(x.descriptor());
        throw InputError(msg.str());
    }
    std::vector<AlgebraElement> out;
    out.reserve(static_cast<size_t>(t.out_rank()));
    for (int j = 0; j < t.out_rank(); ++j) {
        AlgebraElement acc = AlgebraElement::zero(t.descriptor());
        for (int i = 0; i < t.in_rank(); ++i) acc = acc + x[i] * t.block(i, j);
        out.push_back(std::move(acc));
    }
    return ModuleVector(std::move(out));
}

AdjointableOperator op_adjoint(const AdjointableOperator& t)
{
    std::vector<AlgebraElement> blocks;
    blocks.reserve(t.blocks().size());
    for (int j = 0; j < t.out_rank(); ++j)
        for (int i = 0; i < t.in_rank(); ++i) blocks.push_back(adjoint(t.block(i, j)));
    return AdjointableOperator(t.out_rank(), t.in_rank(), std::move(blocks));
}

AdjointableOperator op_compose(const AdjointableOperator& s, const AdjointableOperator& t)
{
    if (!(s.descriptor() == t.descriptor()) || t.out_rank() != s.in_rank()) {
        std::ostringstream msg;
        msg << "compose: inner map lands in rank " << t.out_rank() << " but outer map expects rank "
            << s.in_rank();
        throw InputError(msg.str());
    }
    const int n = t.in_rank(), m = t.out_rank(), p = s.out_rank();
    std::vector<AlgebraElement> blocks;
    blocks.reserve(static_cast<size_t>(n * p));
    for (int i = 0; i < n; ++i) {
        for (int l = 0; l < p; ++l) {
            AlgebraElement acc = AlgebraElement::zero(t.descriptor());
            for (int j = 0; j < m; ++j) acc = acc + t.block(i, j) * s.block(j, l);
            blocks.push_back(std::move(acc));
        }
    }
    return AdjointableOperator(n, p, std::move(blocks));
}

AdjointableOperator operator+(const AdjointableOperator& s, const AdjointableOperator& t)
{
    require_same_shape(s, t, "operator sum");
    std::vector<AlgebraElement> blocks;
    blocks.reserve(s.blocks().size());
    for (size_t k = 0; k < s.blocks().size(); ++k) blocks.push_back(s.blocks()[k] + t.blocks()[k]);
    return AdjointableOperator(s.in_rank(), s.out_rank(), std::move(blocks));
}

AdjointableOperator operator-(const AdjointableOperator& s, const AdjointableOperator& t)
{
    require_same_shape(s, t, "operator difference");
    std::vector<AlgebraElement> blocks;
    blocks.reserve(s.blocks().size());
    for (size_t k = 0; k < s.blocks().size(); ++k) blocks.push_back(s.blocks()[k] - t.blocks()[k]);
    return AdjointableOperator(s.in_rank(), s.out_rank(), std::move(blocks));
}

AdjointableOperator operator*(cplx c, const AdjointableOperator& t)
{
    std::vector<AlgebraElement> blocks;
    blocks.reserve(t.blocks().size());
    for (const auto& b : t.blocks()) blocks.push_back(c * b);
    return AdjointableOperator(t.in_rank(), t.out_rank(), std::move(blocks));
}

AdjointableOperator op_scale_central(const AlgebraElement& v, const AdjointableOperator& t)
{
    if (!is_central(v)) throw InputError("left scaling of an operator needs a central element");
    std::vector<AlgebraElement> blocks;
    blocks.reserve(t.blocks().size());
    for (const auto& b : t.blocks()) blocks.push_back(b * v);
    return AdjointableOperator(t.in_rank(), t.out_rank(), std::move(blocks));
}

CMatrix flatten(const AdjointableOperator& t)
{
    const int d = t.descriptor().dim;
    CMatrix m = CMatrix::Zero(t.in_rank() * d, t.out_rank() * d);
    for (int i = 0; i < t.in_rank(); ++i)
        for (int j = 0; j < t.out_rank(); ++j) m.block(i * d, j * d, d, d) = t.block(i, j).dense();
    return m;
}

AdjointableOperator unflatten(AlgebraDescriptor desc, int in_rank, int out_rank, const CMatrix& m)
{
    const int d = desc.dim;
    if (m.rows() != in_rank * d || m.cols() != out_rank * d) throw InputError("unflatten: matrix size does not match ranks");
    std::vector<AlgebraElement> blocks;
    blocks.reserve(static_cast<size_t>(in_rank * out_rank));
    for (int i = 0; i < in_rank; ++i)
        for (int j = 0; j < out_rank; ++j) blocks.push_back(AlgebraElement::from_dense(desc, m.block(i * d, j * d, d, d)));
    return AdjointableOperator(in_rank, out_rank, std::move(blocks));
}

int component_count(const AlgebraDescriptor& desc)
{
    return desc.kind == AlgebraKind::diagonal ? desc.dim : 1;
}

int component_size(const AlgebraDescriptor& desc, int rank)
{
    return desc.kind == AlgebraKind::diagonal ? rank : rank * desc.dim;
}

std::vector<CMatrix> components(const AdjointableOperator& t)
{
    const AlgebraDescriptor& desc = t.descriptor();
    if (desc.kind == AlgebraKind::matrix) return {flatten(t)};
    std::vector<CMatrix> out(static_cast<size_t>(desc.dim), CMatrix(t.in_rank(), t.out_rank()));
    for (int i = 0; i < t.in_rank(); ++i)
        for (int j = 0; j < t.out_rank(); ++j)
            for (int l = 0; l < desc.dim; ++l) out[static_cast<size_t>(l)](i, j) = t.block(i, j).entries()[static_cast<size_t>(l)];
    return out;
}

AdjointableOperator from_components(AlgebraDescriptor desc, int in_rank, int out_rank, const std::vector<CMatrix>& comps)
{
    if (static_cast<int>(comps.size()) != component_count(desc)) throw InputError("wrong number of components");
    if (desc.kind == AlgebraKind::matrix) return unflatten(desc, in_rank, out_rank, comps.front());
    std::vector<AlgebraElement> blocks;
    blocks.reserve(static_cast<size_t>(in_rank * out_rank));
    for (int i = 0; i < in_rank; ++i) {
        for (int j = 0; j < out_rank; ++j) {
            std::vector<cplx> e(static_cast<size_t>(desc.dim));
            for (int l = 0; l < desc.dim; ++l) e[static_cast<size_t>(l)] = comps[static_cast<size_t>(l)](i, j);
            blocks.emplace_back(desc, std::move(e));
        }
    }
    return AdjointableOperator(in_rank, out_rank, std::move(blocks));
}

double op_norm(const AdjointableOperator& t)
{
    return linalg::spectral_norm(flatten(t));
}

double bounded_below_constant(const AdjointableOperator& t)
{
    return linalg::sigma_min(flatten(t));
}

double op_distance(const AdjointableOperator& s, const AdjointableOperator& t)
{
    require_same_shape(s, t, "operator distance");
    return linalg::spectral_norm(flatten(s) - flatten(t));
}

double commutator_norm(const AdjointableOperator& s, const AdjointableOperator& t)
{
    return op_distance(op_compose(s, t), op_compose(t, s));
}

PositivePartChecks positive_part_checks(const AdjointableOperator& t, double tol)
{
    PositivePartChecks r;
    CMatrix f = flatten(t);
    const double scale = std::max(1.0, linalg::spectral_norm(f));
    if (f.rows() != f.cols()) return r;
    r.self_adjoint = linalg::hermitian_defect(f) <= tol * scale;
    RVector ev = linalg::hermitian_spectrum(f).values;
    r.lower = ev(0);
    r.upper = ev(ev.size() - 1);
    r.positive = r.self_adjoint && r.lower >= -tol * scale;
    r.invertible = linalg::sigma_min(f) > tol * scale;
    return r;
}

bool is_self_adjoint(const AdjointableOperator& t, double tol)
{
    return positive_part_checks(t, tol).self_adjoint;
}

bool is_positive(const AdjointableOperator& t, double tol)
{
    return positive_part_checks(t, tol).positive;
}

AdjointableOperator op_inverse(const AdjointableOperator& t, double cond_cap)
{
    if (t.in_rank() != t.out_rank()) throw InputError("inverse of a non-square operator");
    return unflatten(t.descriptor(), t.in_rank(), t.out_rank(), linalg::inverse(flatten(t), cond_cap));
}

AdjointableOperator op_sqrt_positive(const AdjointableOperator& t, double tol)
{
    if (!is_positive(t, tol)) throw DomainError("square root of a non-positive operator");
    return unflatten(t.descriptor(), t.in_rank(), t.out_rank(), linalg::psd_sqrt(flatten(t)));
}

AdjointableOperator op_pseudo_inverse(const AdjointableOperator& t, double rel_tol)
{
    return unflatten(t.descriptor(), t.out_rank(), t.in_rank(), linalg::pseudo_inverse(flatten(t), rel_tol));
}

}  // namespace gframe
