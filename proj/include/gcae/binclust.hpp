#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "gcae/common.hpp"
#include "gcae/rng.hpp"

namespace gcae {

/// Binary matrix-factorization clustering model: +-1 centroids Q (b x c) and
/// one-hot indicator H (c x N).
struct BinaryClusterModel {
    Matrix Q;
    Matrix H;
    int c = 0;

    /// label of sample i = argmax row of H column i
    std::vector<int> labels() const {
        std::vector<int> out(static_cast<std::size_t>(H.cols()));
        for (Eigen::Index i = 0; i < H.cols(); ++i) {
            Eigen::Index row = 0;
            H.col(i).maxCoeff(&row);
            out[static_cast<std::size_t>(i)] = static_cast<int>(row);
        }
        return out;
    }
};

/// Disagreeing positions between two +-1 vectors; equals (b - x.y)/2.
inline int hamming_distance(const Vector& x, const Vector& y) {
    require(x.size() == y.size(), "hamming_distance: length mismatch");
    int d = 0;
    for (Eigen::Index i = 0; i < x.size(); ++i)
        if (x(i) * y(i) < 0.0) ++d;
    return d;
}

/// Exact per-column minimizer of Hamming distance to the centroids; computed
/// as an inner-product argmax (one gemm, Q^T B) since for +-1 vectors
/// hamming = (b - x.y)/2. Ties break to the smallest centroid index.
inline Matrix assign_H(const Matrix& B, const Matrix& Q) {
    require(B.rows() == Q.rows(), "assign_H: code length mismatch between B and Q");
    const Eigen::Index c = Q.cols();
    const Eigen::Index n = B.cols();
    const Matrix scores = Q.transpose() * B;  // c x N, exact integers
    Matrix H = Matrix::Zero(c, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        Eigen::Index best = 0;
        double best_score = scores(0, i);
        for (Eigen::Index s = 1; s < c; ++s)
            if (scores(s, i) > best_score) {
                best_score = scores(s, i);
                best = s;
            }
        H(best, i) = 1.0;
    }
    return H;
}

/// One DPLM step on the centroids:
///   Q_next = sgn(Q - (1/mu) * grad),
///   grad   = -2 B H^T + 2 rho 1 1^T Q
/// (gradient of -2 tr(B^T Q H) + rho ||Q^T 1||^2). sgn(0) resolves to +1.
inline Matrix dplm_update_Q(const Matrix& Q_prev, const Matrix& B, const Matrix& H,
                            double rho, double mu) {
    require(mu > 0.0, "dplm_update_Q: mu must be positive");
    require(rho >= 0.0, "dplm_update_Q: rho must be non-negative");
    require(B.rows() == Q_prev.rows(), "dplm_update_Q: bit count mismatch");
    require(H.rows() == Q_prev.cols() && H.cols() == B.cols(), "dplm_update_Q: H shape mismatch");
    const Eigen::RowVectorXd col_sums = Q_prev.colwise().sum();
    Matrix grad = -2.0 * (B * H.transpose());
    grad.rowwise() += 2.0 * rho * col_sums;
    return sign_pm1(Q_prev - grad / mu);
}

/// Geometric penalty growth, capped: rho_j = min(base * growth^j, cap).
/// Stands in for the otherwise unspecified "adaptively large rho".
struct RhoSchedule {
    double base = 0.01;
    double growth = 2.0;
    double cap = 1e3;

    double at(int round) const {
        double rho = base;
        for (int j = 0; j < round && rho < cap; ++j) rho *= growth;
        return std::min(rho, cap);
    }
};

inline double qh_reconstruction_loss(const Matrix& B, const Matrix& Q, const Matrix& H) {
    return (B - Q * H).squaredNorm();
}

namespace detail {

/// Re-seed centroids that received no columns from the column farthest (in
/// Hamming distance) from the current centroid, then re-assign once.
inline void repair_empty_clusters(const Matrix& B, Matrix& Q, Matrix& H) {
    bool repaired = false;
    for (Eigen::Index s = 0; s < Q.cols(); ++s) {
        if (H.row(s).sum() > 0.0) continue;
        Eigen::Index farthest = 0;
        double worst = -1.0;
        for (Eigen::Index i = 0; i < B.cols(); ++i) {
            const double d = (Q.col(s) - B.col(i)).squaredNorm();
            if (d > worst) {
                worst = d;
                farthest = i;
            }
        }
        Q.col(s) = B.col(farthest);
        repaired = true;
    }
    if (repaired) H = assign_H(B, Q);
}

}  // namespace detail

/// Alternate DPLM centroid steps with exact Hamming assignment, growing rho
/// along the schedule, until H stabilizes or max_inner rounds pass. Returns
/// the best (Q, H) visited under ||B - QH||_F^2; assignment steps never
/// increase that loss for fixed Q.
inline BinaryClusterModel refine_QH(const Matrix& B, Matrix Q, Matrix H,
                                    const RhoSchedule& schedule, double mu, int max_inner) {
    BinaryClusterModel best{Q, H, static_cast<int>(Q.cols())};
    double best_loss = qh_reconstruction_loss(B, Q, H);
    for (int round = 0; round < max_inner; ++round) {
        Matrix Q_next = dplm_update_Q(Q, B, H, schedule.at(round), mu);
        Matrix H_next = assign_H(B, Q_next);
        detail::repair_empty_clusters(B, Q_next, H_next);
        // a fixed point of both blocks; while rho still moves Q, keep going
        const bool stable =
            (H_next - H).squaredNorm() == 0.0 && (Q_next - Q).squaredNorm() == 0.0;
        Q = std::move(Q_next);
        H = std::move(H_next);
        const double loss = qh_reconstruction_loss(B, Q, H);
        if (loss < best_loss) {
            best_loss = loss;
            best.Q = Q;
            best.H = H;
        }
        if (stable) break;
    }
    return best;
}

namespace detail {

/// Number of c-subsets of n, saturated at `cap + 1`.
inline long long subset_count_capped(int n, int c, long long cap) {
    long long count = 1;
    for (int i = 0; i < c; ++i) {
        count = count * (n - i) / (i + 1);
        if (count > cap) return cap + 1;
    }
    return count;
}

inline BinaryClusterModel seed_from_columns(const Matrix& B, const std::vector<int>& picks) {
    Matrix Q(B.rows(), static_cast<Eigen::Index>(picks.size()));
    for (std::size_t s = 0; s < picks.size(); ++s)
        Q.col(static_cast<Eigen::Index>(s)) = sign_pm1(Matrix(B.col(picks[s])));
    Matrix H = assign_H(B, Q);
    repair_empty_clusters(B, Q, H);
    return {std::move(Q), std::move(H), static_cast<int>(picks.size())};
}

}  // namespace detail

/// Full solve: centroids seeded from c distinct sampled columns of B, then
/// refined. max_inner = 0 returns the seeded model unrefined.
///
/// The DPLM alternation is a local search, so the refinement is repeated
/// from several seedings and the best reconstruction kept: every distinct
/// column subset when there are at most 32 of them, otherwise 16 sampled
/// restarts. Deterministic given the rng.
inline BinaryClusterModel solve_QH(const Matrix& B, int c, const RhoSchedule& schedule,
                                   double mu, int max_inner, Rng& rng) {
    const int n = static_cast<int>(B.cols());
    require(c >= 1, "solve_QH: c must be >= 1");
    require(c <= n, "solve_QH: c must not exceed the number of samples");
    require(max_inner >= 0, "solve_QH: max_inner must be >= 0");

    if (max_inner == 0)
        return detail::seed_from_columns(B, rng.sample_without_replacement(n, c));

    constexpr long long kEnumerateCap = 32;
    constexpr int kSampledRestarts = 16;

    BinaryClusterModel best;
    double best_loss = std::numeric_limits<double>::infinity();
    auto try_init = [&](const std::vector<int>& picks) {
        BinaryClusterModel seeded = detail::seed_from_columns(B, picks);
        BinaryClusterModel candidate =
            refine_QH(B, std::move(seeded.Q), std::move(seeded.H), schedule, mu, max_inner);
        const double loss = qh_reconstruction_loss(B, candidate.Q, candidate.H);
        if (loss < best_loss) {
            best_loss = loss;
            best = std::move(candidate);
        }
    };

    if (detail::subset_count_capped(n, c, kEnumerateCap) <= kEnumerateCap) {
        std::vector<int> picks(c);
        for (int s = 0; s < c; ++s) picks[s] = s;
        while (best_loss > 0.0) {
            try_init(picks);
            int s = c - 1;
            while (s >= 0 && picks[s] == n - c + s) --s;
            if (s < 0) break;
            ++picks[s];
            for (int j = s + 1; j < c; ++j) picks[j] = picks[j - 1] + 1;
        }
    } else {
        for (int restart = 0; restart < kSampledRestarts && best_loss > 0.0; ++restart)
            try_init(rng.sample_without_replacement(n, c));
    }
    return best;
}

inline BinaryClusterModel solve_QH(const Matrix& B, int c, const RhoSchedule& schedule,
                                   double mu, int max_inner, std::uint64_t seed) {
    Rng rng(seed);
    return solve_QH(B, c, schedule, mu, max_inner, rng);
}

}  // namespace gcae
