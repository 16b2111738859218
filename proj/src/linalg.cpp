#include "gframe/linalg.hpp"

#include <cmath>
#include <sstream>

#include "gframe/errors.hpp"

namespace gframe::linalg {

HermitianSpectrum hermitian_spectrum(const CMatrix& h)
{
    CMatrix herm = 0.5 * (h + h.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(herm);
    return {es.eigenvalues(), es.eigenvectors()};
}

double hermitian_defect(const CMatrix& h)
{
    if (h.size() == 0) return 0.0;
    return spectral_norm(h - h.adjoint());
}

RVector singular_values(const CMatrix& m)
{
    if (m.size() == 0) return RVector();
    Eigen::JacobiSVD<CMatrix> svd(m);
    return svd.singularValues();
}

double spectral_norm(const CMatrix& m)
{
    if (m.size() == 0) return 0.0;
    return singular_values(m)(0);
}

double sigma_min(const CMatrix& m)
{
    if (m.size() == 0) return 0.0;
    RVector s = singular_values(m);
    // A wide or tall matrix has min(rows, cols) singular values; the smallest
    // one measures injectivity of the row action only when rows <= cols.
    if (m.rows() > m.cols()) return 0.0;
    return s(s.size() - 1);
}

CMatrix psd_sqrt(const CMatrix& h)
{
    HermitianSpectrum sp = hermitian_spectrum(h);
    RVector r = sp.values.cwiseMax(0.0).cwiseSqrt();
    return sp.vectors * r.asDiagonal() * sp.vectors.adjoint();
}

CMatrix inverse(const CMatrix& m, double cond_cap)
{
    if (m.rows() != m.cols()) throw InputError("inverse of a non-square matrix");
    Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const RVector& s = svd.singularValues();
    double smax = s.size() ? s(0) : 0.0;
    double smin = s.size() ? s(s.size() - 1) : 0.0;
    if (!(smin > 0.0) || smin < smax / cond_cap) {
        std::ostringstream msg;
        msg << "singular or ill-conditioned element (condition estimate ";
        if (smin > 0.0)
            msg << smax / smin;
        else
            msg << "inf";
        msg << ", cap " << cond_cap << ")";
        throw DomainError(msg.str());
    }
    RVector sinv = s.cwiseInverse();
    return svd.matrixV() * sinv.asDiagonal() * svd.matrixU().adjoint();
}

CMatrix pseudo_inverse(const CMatrix& m, double rel_tol)
{
    Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const RVector& s = svd.singularValues();
    double cut = s.size() ? rel_tol * s(0) : 0.0;
    RVector sinv(s.size());
    for (Eigen::Index i = 0; i < s.size(); ++i) sinv(i) = s(i) > cut ? 1.0 / s(i) : 0.0;
    return svd.matrixV() * sinv.asDiagonal() * svd.matrixU().adjoint();
}

CMatrix orthonormalize(const CMatrix& m)
{
    Eigen::HouseholderQR<CMatrix> qr(m);
    CMatrix q = qr.householderQ() * CMatrix::Identity(m.rows(), m.cols());
    // fix the phase so the factorisation is unique
    CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < std::min(m.rows(), m.cols()); ++j) {
        cplx d = r(j, j);
        double a = std::abs(d);
        if (a > 0.0) q.col(j) *= d / a;
    }
    return q;
}

}  // namespace gframe::linalg
