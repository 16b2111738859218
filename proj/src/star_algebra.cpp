#include "gframe/star_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gframe/errors.hpp"

namespace gframe {

namespace {

using RowMajor = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

void require_same(const AlgebraElement& a, const AlgebraElement& b, const char* what)
{
    if (!(a.descriptor() == b.descriptor())) {
        std::ostringstream msg;
        msg << what << ": descriptor mismatch (" << to_string(a.descriptor()) << " vs "
            << to_string(b.descriptor()) << ")";
        throw InputError(msg.str());
    }
}

Eigen::Map<const RowMajor> view(const AlgebraElement& a)
{
    return Eigen::Map<const RowMajor>(a.entries().data(), a.dim(), a.dim());
}

}  // namespace

std::string to_string(AlgebraKind k)
{
    return k == AlgebraKind::matrix ? "matrix" : "diagonal";
}

std::string to_string(const AlgebraDescriptor& d)
{
    return to_string(d.kind) + ":" + std::to_string(d.dim);
}

AlgebraElement::AlgebraElement(AlgebraDescriptor desc) : desc_(desc)
{
    if (desc.dim < 1) throw InputError("algebra dimension must be >= 1");
    entries_.assign(static_cast<size_t>(desc.entry_count()), cplx(0.0, 0.0));
}

AlgebraElement::AlgebraElement(AlgebraDescriptor desc, std::vector<cplx> entries)
    : desc_(desc), entries_(std::move(entries))
{
    if (desc.dim < 1) throw InputError("algebra dimension must be >= 1");
    if (static_cast<int>(entries_.size()) != desc.entry_count()) {
        std::ostringstream msg;
        msg << "algebra element of kind " << to_string(desc) << " needs " << desc.entry_count()
            << " entries, got " << entries_.size();
        throw InputError(msg.str());
    }
}

AlgebraElement AlgebraElement::identity(AlgebraDescriptor desc)
{
    return scalar(desc, 1.0);
}

AlgebraElement AlgebraElement::scalar(AlgebraDescriptor desc, cplx c)
{
    AlgebraElement e(desc);
    if (desc.kind == AlgebraKind::diagonal) {
        std::fill(e.entries_.begin(), e.entries_.end(), c);
    } else {
        for (int i = 0; i < desc.dim; ++i) e.entries_[static_cast<size_t>(i * desc.dim + i)] = c;
    }
    return e;
}

AlgebraElement AlgebraElement::diag(std::vector<cplx> values)
{
    AlgebraDescriptor d{AlgebraKind::diagonal, static_cast<int>(values.size())};
    return AlgebraElement(d, std::move(values));
}

AlgebraElement AlgebraElement::matrix(int d, std::vector<cplx> row_major)
{
    return AlgebraElement(AlgebraDescriptor{AlgebraKind::matrix, d}, std::move(row_major));
}

AlgebraElement AlgebraElement::from_dense(AlgebraDescriptor desc, const CMatrix& m)
{
    if (m.rows() != desc.dim || m.cols() != desc.dim)
        throw InputError("dense block has the wrong size for " + to_string(desc));
    AlgebraElement e(desc);
    if (desc.kind == AlgebraKind::diagonal) {
        for (int i = 0; i < desc.dim; ++i) e.entries_[static_cast<size_t>(i)] = m(i, i);
    } else {
        for (int r = 0; r < desc.dim; ++r)
            for (int c = 0; c < desc.dim; ++c) e.entries_[static_cast<size_t>(r * desc.dim + c)] = m(r, c);
    }
    return e;
}

cplx AlgebraElement::at(int r, int c) const
{
    if (desc_.kind == AlgebraKind::diagonal) return r == c ? entries_[static_cast<size_t>(r)] : cplx(0.0);
    return entries_[static_cast<size_t>(r * desc_.dim + c)];
}

CMatrix AlgebraElement::dense() const
{
    CMatrix m = CMatrix::Zero(desc_.dim, desc_.dim);
    if (desc_.kind == AlgebraKind::diagonal) {
        for (int i = 0; i < desc_.dim; ++i) m(i, i) = entries_[static_cast<size_t>(i)];
    } else {
        m = view(*this);
    }
    return m;
}

AlgebraElement arith(const AlgebraElement& a, const AlgebraElement& b, ArithOp op, cplx s)
{
    if (op == ArithOp::scale) {
        std::vector<cplx> out(a.entries());
        for (auto& v : out) v *= s;
        return AlgebraElement(a.descriptor(), std::move(out));
    }
    require_same(a, b, "arith");
    const auto& x = a.entries();
    const auto& y = b.entries();
    std::vector<cplx> out(x.size());
    switch (op) {
    case ArithOp::add:
        for (size_t i = 0; i < x.size(); ++i) out[i] = x[i] + y[i];
        break;
    case ArithOp::sub:
        for (size_t i = 0; i < x.size(); ++i) out[i] = x[i] - y[i];
        break;
    case ArithOp::mul:
        if (a.is_diagonal_kind()) {
            for (size_t i = 0; i < x.size(); ++i) out[i] = x[i] * y[i];
        } else {
            Eigen::Map<RowMajor> dst(out.data(), a.dim(), a.dim());
            dst.noalias() = view(a) * view(b);
        }
        break;
    case ArithOp::scale:
        break;
    }
    return AlgebraElement(a.descriptor(), std::move(out));
}

AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b) { return arith(a, b, ArithOp::add); }
AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b) { return arith(a, b, ArithOp::sub); }
AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) { return arith(a, b, ArithOp::mul); }
AlgebraElement operator*(cplx s, const AlgebraElement& a) { return arith(a, a, ArithOp::scale, s); }

AlgebraElement adjoint(const AlgebraElement& a)
{
    const int d = a.dim();
    std::vector<cplx> out(a.entries().size());
    if (a.is_diagonal_kind()) {
        for (size_t i = 0; i < out.size(); ++i) out[i] = std::conj(a.entries()[i]);
    } else {
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c)
                out[static_cast<size_t>(c * d + r)] = std::conj(a.entries()[static_cast<size_t>(r * d + c)]);
    }
    return AlgebraElement(a.descriptor(), std::move(out));
}

double norm(const AlgebraElement& a)
{
    if (a.is_diagonal_kind()) {
        double m = 0.0;
        for (const auto& v : a.entries()) m = std::max(m, std::abs(v));
        return m;
    }
    return linalg::spectral_norm(a.dense());
}

double psd_threshold(const AlgebraElement& a, double tol)
{
    return tol * std::max(1.0, norm(a));
}

bool is_hermitian(const AlgebraElement& a, double tol)
{
    return norm(a - adjoint(a)) <= psd_threshold(a, tol);
}

RVector hermitian_eigenvalues(const AlgebraElement& a)
{
    if (a.is_diagonal_kind()) {
        RVector v(a.dim());
        for (int i = 0; i < a.dim(); ++i) v(i) = a.entries()[static_cast<size_t>(i)].real();
        std::sort(v.data(), v.data() + v.size());
        return v;
    }
    return linalg::hermitian_spectrum(a.dense()).values;
}

bool is_positive(const AlgebraElement& a, double tol)
{
    if (tol < 0.0) throw InputError("tolerance must be non-negative");
    if (!is_hermitian(a, tol)) return false;
    return hermitian_eigenvalues(a)(0) >= -psd_threshold(a, tol);
}

bool is_positive_by_norm_shift(const AlgebraElement& a, double tol)
{
    if (!is_hermitian(a, tol)) throw InputError("norm-shift positivity test needs a Hermitian element");
    // Work with the Hermitian part so the comparison does not see the tiny
    // anti-Hermitian residue that passed the gate above.
    AlgebraElement h = 0.5 * (a + adjoint(a));
    const double t = norm(h);
    const AlgebraElement shifted = h - AlgebraElement::scalar(a.descriptor(), t);
    return norm(shifted) <= t + psd_threshold(a, tol);
}

AlgebraElement sqrt_positive(const AlgebraElement& a, double tol)
{
    if (!is_positive(a, tol)) throw DomainError("square root of a non-positive element");
    if (a.is_diagonal_kind()) {
        std::vector<cplx> out(a.entries().size());
        for (size_t i = 0; i < out.size(); ++i) out[i] = std::sqrt(std::max(0.0, a.entries()[i].real()));
        return AlgebraElement(a.descriptor(), std::move(out));
    }
    return AlgebraElement::from_dense(a.descriptor(), linalg::psd_sqrt(a.dense()));
}

AlgebraElement invert(const AlgebraElement& a, double cond_cap)
{
    if (a.is_diagonal_kind()) {
        double big = 0.0, small = std::numeric_limits<double>::infinity();
        for (const auto& v : a.entries()) {
            big = std::max(big, std::abs(v));
            small = std::min(small, std::abs(v));
        }
        if (!(small > 0.0) || small < big / cond_cap) {
            std::ostringstream msg;
            msg << "singular or ill-conditioned element (condition estimate ";
            if (small > 0.0)
                msg << big / small;
            else
                msg << "inf";
            msg << ", cap " << cond_cap << ")";
            throw DomainError(msg.str());
        }
        std::vector<cplx> out(a.entries().size());
        for (size_t i = 0; i < out.size(); ++i) out[i] = 1.0 / a.entries()[i];
        return AlgebraElement(a.descriptor(), std::move(out));
    }
    return AlgebraElement::from_dense(a.descriptor(), linalg::inverse(a.dense(), cond_cap));
}

bool leq(const AlgebraElement& a, const AlgebraElement& b, double tol)
{
    require_same(a, b, "leq");
    if (!is_hermitian(a, tol) || !is_hermitian(b, tol)) throw InputError("order comparison needs Hermitian elements");
    return is_positive(b - a, tol);
}

bool is_central(const AlgebraElement& a, double tol)
{
    if (a.is_diagonal_kind()) return true;
    const cplx c = a.at(0, 0);
    return norm(a - AlgebraElement::scalar(a.descriptor(), c)) <= tol * std::max(1.0, norm(a));
}

}  // namespace gframe
