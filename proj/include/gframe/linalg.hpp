#pragma once

#include <complex>

#include <Eigen/Dense>

namespace gframe {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

namespace linalg {

struct HermitianSpectrum {
    RVector values;   // ascending
    CMatrix vectors;  // columns
};

// Spectrum of the Hermitian part (h + h^H)/2.
HermitianSpectrum hermitian_spectrum(const CMatrix& h);

// Spectral norm of h - h^H.
double hermitian_defect(const CMatrix& h);

RVector singular_values(const CMatrix& m);  // descending
double spectral_norm(const CMatrix& m);
double sigma_min(const CMatrix& m);

// Square root of the Hermitian part with negative eigenvalues clamped to zero.
CMatrix psd_sqrt(const CMatrix& h);

// Throws DomainError when sigma_min < ||m|| / cond_cap.
CMatrix inverse(const CMatrix& m, double cond_cap);

// Moore-Penrose inverse; singular values below rel_tol * sigma_max are dropped.
CMatrix pseudo_inverse(const CMatrix& m, double rel_tol);

// Orthonormal columns from a phase-normalised QR factorisation of m.
CMatrix orthonormalize(const CMatrix& m);

}  // namespace linalg
}  // namespace gframe
