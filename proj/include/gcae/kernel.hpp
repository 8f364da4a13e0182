#pragma once

#include <cmath>
#include <vector>

#include "gcae/common.hpp"
#include "gcae/rng.hpp"

namespace gcae {

/// RBF anchor mapping of one view: phi is N x t with
/// phi(i, j) = exp(-||x_i - a_j||^2 / eta), every entry in (0, 1].
struct KernelizedView {
    Matrix phi;
    double eta = 0.0;
    std::vector<int> anchor_indices;

    int n() const { return static_cast<int>(phi.rows()); }
    int t() const { return static_cast<int>(phi.cols()); }
};

/// Squared distances are formed from explicit row differences, not the
/// expanded gram identity: the entry is exactly 1 when a sample coincides
/// with an anchor and can never exceed 1 from cancellation noise.
inline KernelizedView rbf_map(const Matrix& view, const Matrix& anchors, double eta,
                              std::vector<int> anchor_indices = {}) {
    require(eta > 0.0, "rbf_map: eta must be positive");
    require(view.cols() == anchors.cols(), "rbf_map: view and anchor dimensions differ");
    require(view.rows() >= 1 && anchors.rows() >= 1, "rbf_map: empty input");
    require_finite(view, "rbf_map: view");
    require_finite(anchors, "rbf_map: anchors");

    const Eigen::Index n = view.rows();
    const Eigen::Index t = anchors.rows();
    Matrix phi(n, t);
    for (Eigen::Index j = 0; j < t; ++j)
        phi.col(j) = (-(view.rowwise() - anchors.row(j)).rowwise().squaredNorm() / eta)
                         .array()
                         .exp();
    return {std::move(phi), eta, std::move(anchor_indices)};
}

/// Mean squared (sample, anchor) distance: the default kernel width. Exact
/// over all N*t pairs when the budget covers them, otherwise seeded sampling.
/// Falls back to 1 when every examined pair coincides.
inline double estimate_kernel_width(const Matrix& view, const Matrix& anchors,
                                    int sample_pairs, Rng& rng) {
    require(view.rows() >= 1 && view.cols() >= 1, "estimate_kernel_width: empty view");
    require(view.cols() == anchors.cols(), "estimate_kernel_width: dimension mismatch");
    require(sample_pairs >= 1, "estimate_kernel_width: sample_pairs must be >= 1");

    const int n = static_cast<int>(view.rows());
    const int t = static_cast<int>(anchors.rows());
    double sum = 0.0;
    long long count = 0;
    if (static_cast<long long>(sample_pairs) >= static_cast<long long>(n) * t) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < t; ++j) {
                sum += (view.row(i) - anchors.row(j)).squaredNorm();
                ++count;
            }
    } else {
        for (int s = 0; s < sample_pairs; ++s) {
            const int i = rng.uniform_int(n);
            const int j = rng.uniform_int(t);
            sum += (view.row(i) - anchors.row(j)).squaredNorm();
            ++count;
        }
    }
    const double mean = sum / static_cast<double>(count);
    return mean > 0.0 ? mean : 1.0;
}

inline double estimate_kernel_width(const Matrix& view, const Matrix& anchors,
                                    int sample_pairs, std::uint64_t seed) {
    Rng rng(seed);
    return estimate_kernel_width(view, anchors, sample_pairs, rng);
}

}  // namespace gcae
