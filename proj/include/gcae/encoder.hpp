#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "gcae/binclust.hpp"
#include "gcae/common.hpp"
#include "gcae/dataset.hpp"
#include "gcae/graphs.hpp"
#include "gcae/kernel.hpp"
#include "gcae/linalg.hpp"

namespace gcae {

/// Tuning knobs of the whole pipeline. Defaults follow the reference
/// operating point: 128-bit codes, factor rank 100, lambda 1e-5, weight
/// exponent k = 5, smoothing theta 1e-5, and 300 anchors (clamped to N).
/// eta = 0 requests the per-view mean-squared-distance estimate.
struct Hyperparameters {
    double lambda = 1e-5;   // clustering-term weight
    int k = 5;              // view-weight exponent, must be >= 2
    int t = 300;            // anchor count (clamped to N at run time)
    double eta = 0.0;       // kernel width; 0 = estimate per view
    double theta = 1e-5;    // smoothing for the factor solves
    int bits = 128;         // code length b
    int rank = 100;         // factor rank r
    double rho = 0.01;      // balance penalty schedule base
    double mu = 1.0;        // DPLM step denominator
    int inner_iter = 80;    // factor-learning iteration budget
    int outer_iter = 30;    // outer alternation budget
    std::uint64_t seed = 0;

    void validate() const {
        require(lambda >= 0.0, "hyper: lambda must be >= 0");
        require(k >= 2, "hyper: k must be >= 2");
        require(t >= 1, "hyper: t must be >= 1");
        require(eta >= 0.0, "hyper: eta must be >= 0 (0 = auto)");
        require(theta >= 0.0, "hyper: theta must be >= 0");
        require(bits >= 1, "hyper: b must be >= 1");
        require(rank >= 1, "hyper: r must be >= 1");
        require(rho >= 0.0, "hyper: rho must be >= 0");
        require(mu > 0.0, "hyper: mu must be > 0");
        require(inner_iter >= 1, "hyper: inner_iter must be >= 1");
        require(outer_iter >= 0, "hyper: outer_iter must be >= 0");
    }
};

/// Mutable state of the alternation: per-view graphs and projections, the
/// shared code matrix and the view weights.
struct EncoderState {
    std::vector<Matrix> Z;  // per view, N x N
    std::vector<Matrix> W;  // per view, b x N row-orthonormal
    Matrix B;               // b x N, entries exactly +-1
    Vector p;               // view weights, positive, sum 1
    Hyperparameters hyper;

    int n_views() const { return static_cast<int>(Z.size()); }
};

/// Closed-form graph update, the exact minimizer of the per-view objective
///   ||F G^T - Z||_F^2 + p^k (||W Z - B||_F^2 + ||Z - W^T B||_F^2):
///   Z = (p^k W^T W + (1 + p^k) I)^-1 (F G^T + 2 p^k W^T B).
/// The system matrix has eigenvalues >= 1, so no smoothing is needed.
inline Matrix update_Z(const Matrix& FG, const Matrix& W, const Matrix& B, double p_v, int k) {
    require(p_v >= 0.0, "update_Z: view weight must be non-negative");
    require(k >= 2, "update_Z: k must be >= 2");
    require(FG.rows() == FG.cols(), "update_Z: F G^T must be square");
    require(W.cols() == FG.rows() && B.cols() == FG.rows() && W.rows() == B.rows(),
            "update_Z: shape mismatch");
    require_finite(FG, "update_Z: F G^T");
    require_finite(W, "update_Z: W");
    require_finite(B, "update_Z: B");

    const double pk = std::pow(p_v, k);
    Matrix A = pk * (W.transpose() * W);
    A.diagonal().array() += 1.0 + pk;
    const Matrix rhs = FG + 2.0 * pk * (W.transpose() * B);
    return solve_smoothed(A, rhs, 0.0);
}

/// Orthogonal-Procrustes projection update: W = V U^T from the compact SVD
/// U S V^T = Z B^T, the global maximizer of tr(W Z B^T) over row-orthonormal
/// W. Thin SVD factors stay orthonormal for rank-deficient Z B^T, so any
/// completion they pick is optimal.
inline Matrix update_W(const Matrix& Z, const Matrix& B) {
    require(B.rows() <= Z.rows(), "update_W: more bits than samples");
    require(Z.cols() == B.cols(), "update_W: Z and B column counts differ");
    const SvdResult svd = compact_svd(Z * B.transpose());
    return svd.V * svd.U.transpose();
}

/// Sign update of the code matrix, the exact maximizer of the linear
/// surrogate tr(B^T (2 sum_v p_v^k W_v Z_v + lambda Q H)) over +-1 matrices.
inline Matrix update_B(const std::vector<Matrix>& Zs, const std::vector<Matrix>& Ws,
                       const Vector& p, int k, double lambda, const Matrix& QH) {
    require(!Zs.empty() && Zs.size() == Ws.size(), "update_B: view count mismatch");
    require(static_cast<Eigen::Index>(Zs.size()) == p.size(), "update_B: weight count mismatch");
    Matrix arg = lambda * QH;
    for (std::size_t v = 0; v < Zs.size(); ++v)
        arg += 2.0 * std::pow(p(static_cast<Eigen::Index>(v)), k) * (Ws[v] * Zs[v]);
    require_finite(arg, "update_B: sign argument");
    return sign_pm1(arg);
}

/// Closed-form simplex weights p_v = a_v^{1/(1-k)} / sum_u a_u^{1/(1-k)}:
/// smaller per-view loss, larger weight. Computed in log space so scaling
/// all losses by a constant leaves the weights unchanged. Views with exactly
/// zero loss split the whole weight evenly (the limit of the formula).
inline Vector update_p(const Vector& losses, int k) {
    require(k >= 2, "update_p: k must be >= 2");
    require(losses.size() >= 1, "update_p: no views");
    for (Eigen::Index v = 0; v < losses.size(); ++v)
        require(losses(v) >= 0.0 && std::isfinite(losses(v)),
                "update_p: losses must be finite and non-negative");

    const Eigen::Index m = losses.size();
    Vector p = Vector::Zero(m);
    const int zero_count = static_cast<int>((losses.array() == 0.0).count());
    if (zero_count > 0) {
        for (Eigen::Index v = 0; v < m; ++v)
            if (losses(v) == 0.0) p(v) = 1.0 / zero_count;
        return p;
    }
    const double expo = 1.0 / (1.0 - static_cast<double>(k));
    Vector logw(m);
    for (Eigen::Index v = 0; v < m; ++v) logw(v) = expo * std::log(losses(v));
    const double shift = logw.maxCoeff();
    for (Eigen::Index v = 0; v < m; ++v) p(v) = std::exp(logw(v) - shift);
    p /= p.sum();
    return p;
}

/// One row of the loss trajectory: the full objective and its four terms.
struct LossBreakdown {
    double graph = 0.0;    // sum_v ||F G^T - Z_v||^2
    double encode = 0.0;   // sum_v p_v^k ||W_v Z_v - B||^2
    double decode = 0.0;   // sum_v p_v^k ||Z_v - W_v^T B||^2
    double cluster = 0.0;  // lambda ||B - Q H||^2

    double total() const { return graph + encode + decode + cluster; }
};

inline LossBreakdown loss_breakdown(const EncoderState& state, const std::vector<Matrix>& FGs,
                                    const Matrix& Q, const Matrix& H, double lambda, int k) {
    require(FGs.size() == state.Z.size(), "loss: factor product count mismatch");
    LossBreakdown out;
    for (std::size_t v = 0; v < state.Z.size(); ++v) {
        const double pk = std::pow(state.p(static_cast<Eigen::Index>(v)), k);
        out.graph += (FGs[v] - state.Z[v]).squaredNorm();
        out.encode += pk * (state.W[v] * state.Z[v] - state.B).squaredNorm();
        out.decode += pk * (state.Z[v] - state.W[v].transpose() * state.B).squaredNorm();
    }
    out.cluster = lambda * (state.B - Q * H).squaredNorm();
    return out;
}

/// Full objective value (non-negative).
inline double total_loss(const EncoderState& state, const std::vector<Matrix>& FGs,
                         const Matrix& Q, const Matrix& H, double lambda, int k) {
    return loss_breakdown(state, FGs, Q, H, lambda, k).total();
}

struct LossTrajectory {
    std::vector<LossBreakdown> entries;  // entries[0] = initialization

    std::size_t size() const { return entries.size(); }
};

struct GcaeResult {
    EncoderState state;
    BinaryClusterModel model;
    LossTrajectory trajectory;
};

namespace detail {

inline void abort_if_not_finite(double loss, int iteration, const std::string& step) {
    if (!std::isfinite(loss))
        throw NumericalError("run_gcae: non-finite loss after " + step + " at outer iteration " +
                             std::to_string(iteration));
}

}  // namespace detail

/// The whole pipeline: kernelize every view with shared anchors, learn the
/// low-rank factors once per view, then alternate the coordinate updates
/// Z -> W -> B -> (Q, H) -> p for outer_iter rounds, recording the loss
/// after each. The Q/H step warm-starts from the previous model and runs a
/// short DPLM/assignment alternation with the rho schedule restarted.
inline GcaeResult run_gcae(const MultiViewDataset& ds, const Hyperparameters& hyper,
                           int n_clusters) {
    hyper.validate();
    ds.validate();
    const int n = ds.n_samples();
    const int m = ds.n_views();
    require(n_clusters >= 1 && n_clusters <= n, "run_gcae: need 1 <= c <= N");
    require(hyper.bits <= n, "run_gcae: code length b must not exceed N (W is b x N row-orthonormal)");
    require(hyper.rank <= n, "run_gcae: factor rank r must not exceed N");

    constexpr int kQhRoundsPerIteration = 10;
    const int t = std::min(hyper.t, n);
    Rng rng(hyper.seed);

    // --- per-view kernelization and factor learning (fixed afterwards) ---
    const AnchorSet anchors = sample_anchors(ds, t, rng);
    std::vector<KernelizedView> kernels;
    std::vector<Matrix> FGs;
    kernels.reserve(m);
    FGs.reserve(m);
    for (int v = 0; v < m; ++v) {
        double eta = hyper.eta;
        if (eta <= 0.0) {
            const int budget = std::min(static_cast<long long>(n) * t, 20000LL);
            eta = estimate_kernel_width(ds.views[v], anchors.per_view[v],
                                        static_cast<int>(budget), rng);
        }
        kernels.push_back(rbf_map(ds.views[v], anchors.per_view[v], eta, anchors.indices));
        const FactorPair fp = learn_factors(kernels.back(), hyper.rank, hyper.theta,
                                            hyper.inner_iter, rng);
        FGs.push_back(fp.product());
    }

    // --- initialization ---
    EncoderState state;
    state.hyper = hyper;
    state.B = Matrix(hyper.bits, n);
    for (Eigen::Index i = 0; i < state.B.rows(); ++i)
        for (Eigen::Index j = 0; j < state.B.cols(); ++j)
            state.B(i, j) = rng.uniform01() < 0.5 ? -1.0 : 1.0;
    for (int v = 0; v < m; ++v) {
        state.W.push_back(random_row_orthonormal(hyper.bits, n, rng));
        state.Z.push_back(FGs[v]);
    }
    state.p = Vector::Constant(m, 1.0 / m);

    const RhoSchedule schedule{hyper.rho, 2.0, 1e3};
    BinaryClusterModel model = solve_QH(state.B, n_clusters, schedule, hyper.mu, 0, rng);

    GcaeResult result;
    result.trajectory.entries.push_back(
        loss_breakdown(state, FGs, model.Q, model.H, hyper.lambda, hyper.k));
    detail::abort_if_not_finite(result.trajectory.entries.back().total(), 0, "initialization");

    // --- outer alternation ---
    for (int iter = 1; iter <= hyper.outer_iter; ++iter) {
        for (int v = 0; v < m; ++v)
            state.Z[v] = update_Z(FGs[v], state.W[v], state.B, state.p(v), hyper.k);
        for (int v = 0; v < m; ++v) state.W[v] = update_W(state.Z[v], state.B);
        state.B = update_B(state.Z, state.W, state.p, hyper.k, hyper.lambda, model.Q * model.H);
        model = refine_QH(state.B, model.Q, model.H, schedule, hyper.mu, kQhRoundsPerIteration);

        Vector view_losses(m);
        for (int v = 0; v < m; ++v)
            view_losses(v) = (state.W[v] * state.Z[v] - state.B).squaredNorm() +
                             (state.Z[v] - state.W[v].transpose() * state.B).squaredNorm();
        state.p = update_p(view_losses, hyper.k);

        const LossBreakdown entry =
            loss_breakdown(state, FGs, model.Q, model.H, hyper.lambda, hyper.k);
        detail::abort_if_not_finite(entry.total(), iter, "the p update");
        result.trajectory.entries.push_back(entry);
    }

    result.state = std::move(state);
    result.model = std::move(model);
    return result;
}

}  // namespace gcae
