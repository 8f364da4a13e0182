#pragma once

#include <vector>

#include "gcae/binclust.hpp"
#include "gcae/common.hpp"
#include "gcae/dataset.hpp"
#include "gcae/linalg.hpp"

namespace gcae {

/// Trivial comparison point: concatenate the views, center the columns,
/// project with a seeded random row-orthonormal matrix, take signs, cluster
/// the codes with the same Q/H solver. No graphs are constructed.
struct BaselineResult {
    Matrix B;
    BinaryClusterModel model;
};

inline BaselineResult run_baseline(const MultiViewDataset& ds, int bits, int n_clusters,
                                   const RhoSchedule& schedule, double mu, int max_inner,
                                   std::uint64_t seed) {
    ds.validate();
    const int n = ds.n_samples();
    require(n_clusters >= 1 && n_clusters <= n, "baseline: need 1 <= c <= N");
    Eigen::Index total_dim = 0;
    for (const Matrix& v : ds.views) total_dim += v.cols();
    require(bits >= 1 && bits <= total_dim,
            "baseline: code length must be between 1 and the concatenated dimension");

    Matrix X(n, total_dim);
    Eigen::Index col = 0;
    for (const Matrix& v : ds.views) {
        X.middleCols(col, v.cols()) = v;
        col += v.cols();
    }
    X.rowwise() -= X.colwise().mean();

    Rng rng(seed);
    const Matrix P = random_row_orthonormal(bits, static_cast<int>(total_dim), rng);
    BaselineResult out;
    out.B = sign_pm1(P * X.transpose());
    out.model = solve_QH(out.B, n_clusters, schedule, mu, max_inner, rng);
    return out;
}

}  // namespace gcae
