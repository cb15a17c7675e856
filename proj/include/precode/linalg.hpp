#pragma once

#include <Eigen/Dense>
#include <complex>

#include "precode/errors.hpp"

namespace precode {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using cplx = std::complex<double>;

// Eigendecomposition of a Hermitian PSD matrix, eigenvalues sorted descending.
struct EigPair {
    CMatrix vectors;  // orthonormal columns
    RVector values;   // real, non-negative, descending
};

// a = q * r with orthonormal q and upper-triangular r whose diagonal is real
// and strictly positive.
struct QrPair {
    CMatrix q;
    CMatrix r;
};

// a must be square and Hermitian to 1e-10; eigenvalues in
// [-1e-10*lambda_max, 0) are clamped to 0.
EigPair hermitian_eig(const CMatrix& a);

// Thin QR of a square or tall matrix with the positive-real-diagonal sign
// convention. Throws SingularFactorError if the smallest |r_ii| falls below
// 1e-12 times the largest.
QrPair qr_decompose(const CMatrix& a);

// (h^H h + alpha I)^{-1} for an N x K matrix h and alpha > 0. The result is
// Hermitian-symmetrized.
CMatrix regularized_gram_inverse(const CMatrix& h, double alpha);

}  // namespace precode
