#include "precode/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <cmath>
#include <string>

namespace precode {

EigPair hermitian_eig(const CMatrix& a) {
    if (a.rows() != a.cols()) {
        throw DimensionError("hermitian_eig: matrix is not square (" +
                             std::to_string(a.rows()) + "x" +
                             std::to_string(a.cols()) + ")");
    }
    const double scale = a.norm();
    if ((a - a.adjoint()).norm() > 1e-10 * std::max(1.0, scale)) {
        throw DimensionError("hermitian_eig: matrix is not Hermitian");
    }

    Eigen::SelfAdjointEigenSolver<CMatrix> solver(a);
    const int n = static_cast<int>(a.rows());

    // Eigen sorts ascending; flip to descending.
    EigPair out;
    out.values = solver.eigenvalues().reverse();
    out.vectors = solver.eigenvectors().rowwise().reverse();

    const double lmax = std::max(out.values(0), 0.0);
    for (int i = 0; i < n; ++i) {
        if (out.values(i) < 0.0 && out.values(i) >= -1e-10 * lmax) {
            out.values(i) = 0.0;
        }
    }
    return out;
}

QrPair qr_decompose(const CMatrix& a) {
    if (a.rows() < a.cols()) {
        throw DimensionError("qr_decompose: matrix must be square or tall");
    }
    const int k = static_cast<int>(a.cols());

    Eigen::HouseholderQR<CMatrix> qr(a);
    QrPair out;
    out.q = qr.householderQ() * CMatrix::Identity(a.rows(), k);
    out.r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();

    // Force a real, strictly positive diagonal on r.
    double dmax = 0.0;
    for (int i = 0; i < k; ++i) dmax = std::max(dmax, std::abs(out.r(i, i)));
    for (int i = 0; i < k; ++i) {
        const cplx d = out.r(i, i);
        const double mag = std::abs(d);
        if (mag <= 1e-12 * dmax || dmax == 0.0) {
            throw SingularFactorError(
                "qr_decompose: singular triangular factor at column " +
                    std::to_string(i),
                i);
        }
        const cplx phase = d / mag;
        out.r.row(i) *= std::conj(phase);
        out.q.col(i) *= phase;
    }
    return out;
}

CMatrix regularized_gram_inverse(const CMatrix& h, double alpha) {
    if (!(alpha > 0.0)) {
        throw ParamError("regularized_gram_inverse: alpha must be > 0");
    }
    const int k = static_cast<int>(h.cols());
    CMatrix gram = h.adjoint() * h;
    gram.diagonal().array() += alpha;
    CMatrix inv = gram.llt().solve(CMatrix::Identity(k, k));
    // Symmetrize away the solve round-off.
    return 0.5 * (inv + inv.adjoint());
}

}  // namespace precode
