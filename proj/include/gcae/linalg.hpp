#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "gcae/common.hpp"
#include "gcae/rng.hpp"

namespace gcae {

/// Solve (A + theta*I) X = R for symmetric PSD A via LDLT.
///
/// Stands in wherever a closed form is written as an explicit inverse;
/// solving the shifted system is equivalent and numerically safer. The
/// result is verified against the residual gate
/// ||(A+theta*I)X - R||_F <= 1e-8 (||A||_F + theta) ||X||_F and a
/// NumericalError is raised instead of returning garbage when the shifted
/// matrix is effectively singular.
inline Matrix solve_smoothed(const Matrix& A, const Matrix& R, double theta) {
    require(A.rows() == A.cols(), "solve_smoothed: A must be square");
    require(R.rows() == A.rows(), "solve_smoothed: A and R row counts differ");
    require(theta >= 0.0, "solve_smoothed: theta must be non-negative");
    require_finite(A, "solve_smoothed: A");
    require_finite(R, "solve_smoothed: R");

    Matrix M = A;
    M.diagonal().array() += theta;
    Eigen::LDLT<Matrix> ldlt(M);
    if (ldlt.info() != Eigen::Success)
        throw NumericalError("solve_smoothed: factorization failed (matrix singular; theta too small)");
    if (ldlt.vectorD().cwiseAbs().maxCoeff() == 0.0)
        throw NumericalError("solve_smoothed: zero matrix is singular (theta too small)");
    Matrix X = ldlt.solve(R);
    if (!X.allFinite())
        throw NumericalError("solve_smoothed: singular system (theta too small)");

    const double residual = (M * X - R).norm();
    const double bound = 1e-8 * (A.norm() + theta) * X.norm();
    if (residual > bound && residual > 1e-12 * R.norm())
        throw NumericalError("solve_smoothed: residual gate failed (matrix effectively singular)");
    return X;
}

struct SvdResult {
    Matrix U;  // n x k, orthonormal columns
    Vector S;  // k singular values, non-increasing
    Matrix V;  // m x k, orthonormal columns
};

/// Compact SVD, k = min(n, m). Thin factors keep orthonormal columns even
/// when the input is rank-deficient.
inline SvdResult compact_svd(const Matrix& M) {
    require_finite(M, "compact_svd: input");
    Eigen::BDCSVD<Matrix> svd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
    return {svd.matrixU(), svd.singularValues(), svd.matrixV()};
}

/// Singular values below 1e-12 * S_max count as zero.
inline int effective_rank(const Vector& singular_values) {
    if (singular_values.size() == 0) return 0;
    const double cutoff = 1e-12 * singular_values(0);
    int r = 0;
    for (Eigen::Index i = 0; i < singular_values.size(); ++i)
        if (singular_values(i) > cutoff) ++r;
    return r;
}

/// Random matrix with orthonormal rows (W * W^T = I), via QR of a seeded
/// gaussian draw. Signs fixed from the R diagonal so the result is unique
/// given the draw.
inline Matrix random_row_orthonormal(int rows, int cols, Rng& rng) {
    require(rows >= 1 && cols >= 1, "random_row_orthonormal: rows and cols must be >= 1");
    require(rows <= cols, "random_row_orthonormal: rows must not exceed cols");
    Matrix G = rng.gaussian_matrix(cols, rows);
    Eigen::HouseholderQR<Matrix> qr(G);
    Matrix Q = qr.householderQ() * Matrix::Identity(cols, rows);
    Matrix Rdiag = qr.matrixQR().topRows(rows).triangularView<Eigen::Upper>();
    for (int j = 0; j < rows; ++j)
        if (Rdiag(j, j) < 0.0) Q.col(j) *= -1.0;
    return Q.transpose();
}

inline Matrix random_row_orthonormal(int rows, int cols, std::uint64_t seed) {
    Rng rng(seed);
    return random_row_orthonormal(rows, cols, rng);
}

}  // namespace gcae
