#pragma once

#include <cmath>
#include <vector>

#include "gcae/common.hpp"
#include "gcae/kernel.hpp"
#include "gcae/linalg.hpp"

namespace gcae {

/// Low-rank factor pair: the product F * G^T stands in for the N x N
/// affinity graph and bounds its rank by r.
struct FactorPair {
    Matrix F;  // N x r
    Matrix G;  // N x r
    int rank_r = 0;

    Matrix product() const { return F * G.transpose(); }
};

/// F = K G (G^T K G + theta I)^-1 with K = phi phi^T (the cached gram).
/// Block minimizer of ||phi - F G^T phi||_F^2 (+ theta ||F||^2).
inline Matrix update_factor_F(const Matrix& gram, const Matrix& G, double theta) {
    require(gram.rows() == gram.cols(), "update_factor_F: gram must be square");
    require(G.rows() == gram.rows(), "update_factor_F: G row count mismatch");
    const Matrix KG = gram * G;
    const Matrix inner = G.transpose() * KG;  // r x r, SPD
    return solve_smoothed(inner, KG.transpose(), theta).transpose();
}

/// G = F (F^T F + theta I)^-1.
inline Matrix update_factor_G(const Matrix& F, double theta) {
    require_finite(F, "update_factor_G: F");
    const Matrix inner = F.transpose() * F;
    return solve_smoothed(inner, F.transpose(), theta).transpose();
}

/// Frobenius reconstruction objective ||phi - F G^T phi||_F^2.
inline double graph_residual(const Matrix& phi, const FactorPair& fp) {
    require(fp.F.rows() == phi.rows() && fp.G.rows() == phi.rows(),
            "graph_residual: factor/phi shape mismatch");
    require(fp.F.cols() == fp.G.cols(), "graph_residual: F and G widths differ");
    return (phi - fp.F * (fp.G.transpose() * phi)).squaredNorm();
}

/// Alternate the two closed-form factor updates from a seeded random G until
/// the relative loss change drops below 1e-6 or max_iter is hit. The N x N
/// gram K = phi phi^T is formed once; it is the dominant memory object.
/// Factors are learned once per view and held fixed by the outer optimizer.
inline FactorPair learn_factors(const KernelizedView& kv, int r, double theta, int max_iter,
                                Rng& rng, std::vector<double>* loss_history = nullptr) {
    const int n = kv.n();
    require(r >= 1 && r <= n, "learn_factors: need 1 <= r <= N");
    require(max_iter >= 1, "learn_factors: max_iter must be >= 1");
    require(theta >= 0.0, "learn_factors: theta must be non-negative");

    const Matrix gram = kv.phi * kv.phi.transpose();

    Matrix G = rng.gaussian_matrix(n, r);
    for (int j = 0; j < r; ++j) {
        const double norm = G.col(j).norm();
        if (norm > 0.0) G.col(j) /= norm;
    }

    FactorPair fp{Matrix::Zero(n, r), std::move(G), r};
    double prev_loss = std::numeric_limits<double>::infinity();
    for (int it = 0; it < max_iter; ++it) {
        fp.F = update_factor_F(gram, fp.G, theta);
        fp.G = update_factor_G(fp.F, theta);
        const double loss = graph_residual(kv.phi, fp);
        if (loss_history) loss_history->push_back(loss);
        if (std::isfinite(prev_loss)) {
            const double denom = std::max(prev_loss, 1e-300);
            if (std::abs(prev_loss - loss) / denom < 1e-6) break;
        }
        prev_loss = loss;
    }
    require_finite(fp.F, "learn_factors: F");
    require_finite(fp.G, "learn_factors: G");
    return fp;
}

inline FactorPair learn_factors(const KernelizedView& kv, int r, double theta, int max_iter,
                                std::uint64_t seed, std::vector<double>* loss_history = nullptr) {
    Rng rng(seed);
    return learn_factors(kv, r, theta, max_iter, rng, loss_history);
}

}  // namespace gcae
