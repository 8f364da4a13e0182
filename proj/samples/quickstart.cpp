// Minimal end-to-end use of the library: synthesize a 3-view blob dataset,
// fit 32-bit codes, cluster them in Hamming space and score the result.

#include <cstdio>

#include "gcae/gcae.hpp"

int main() {
    const auto ds = gcae::synth_multiview(300, 4, {16, 24, 12}, /*separation=*/8.0,
                                          /*noise=*/1.0, /*seed=*/7);

    gcae::Hyperparameters hyper;
    hyper.bits = 32;
    hyper.rank = 8;
    hyper.t = 150;
    hyper.outer_iter = 15;
    hyper.seed = 7;

    const auto result = gcae::run_gcae(ds, hyper, /*n_clusters=*/4);
    const auto metrics = gcae::evaluate_all(*ds.labels, result.model.labels());

    std::printf("ACC=%.4f NMI=%.4f ARI=%.4f\n", metrics.acc, metrics.nmi, metrics.ari);
    std::printf("final loss=%.6g after %zu iterations\n",
                result.trajectory.entries.back().total(),
                result.trajectory.entries.size() - 1);
    return 0;
}
