#include <catch2/catch_amalgamated.hpp>

#include "gcae/graphs.hpp"
#include "gcae/linalg.hpp"
#include "support/oracles.hpp"

using gcae::Matrix;

namespace {

gcae::KernelizedView make_view(const Matrix& phi) { return {phi, 1.0, {}}; }

/// Well-conditioned kernel view: tight width keeps phi close to identity.
gcae::KernelizedView well_conditioned_view(int n, std::uint64_t seed) {
    gcae::Rng rng(seed);
    const Matrix data = 3.0 * rng.gaussian_matrix(n, 4);
    return gcae::rbf_map(data, data, 0.5);
}

}  // namespace

TEST_CASE("update_factor_F reconstructs the identity at full rank") {
    gcae::Rng rng(1);
    const Matrix G = Matrix::Identity(4, 4);
    Matrix K = rng.gaussian_matrix(4, 4);
    K = K * K.transpose() + Matrix::Identity(4, 4);  // invertible SPD
    const Matrix F = gcae::update_factor_F(K, G, 0.0);
    REQUIRE((F - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("update_factor_F is zero for a zero kernel") {
    const Matrix K = Matrix::Zero(3, 3);
    gcae::Rng rng(2);
    const Matrix G = rng.gaussian_matrix(3, 2);
    const Matrix F = gcae::update_factor_F(K, G, 1e-4);
    REQUIRE(F.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("update_factor_F is a local minimizer of the reconstruction loss") {
    gcae::Rng rng(3);
    const Matrix phi = rng.gaussian_matrix(8, 6);
    const Matrix gram = phi * phi.transpose();
    const Matrix G = rng.gaussian_matrix(8, 3);
    const Matrix F = gcae::update_factor_F(gram, G, 0.0);
    const double at_f = gcae::graph_residual(phi, {F, G, 3});
    for (int trial = 0; trial < 100; ++trial) {
        const Matrix delta = rng.gaussian_matrix(8, 3);
        const double perturbed = gcae::graph_residual(phi, {F + 1e-4 * delta, G, 3});
        REQUIRE(at_f <= perturbed + 1e-12);
    }
}

TEST_CASE("update_factor_G equals F when F has orthonormal columns") {
    const Matrix F = gcae::random_row_orthonormal(2, 6, std::uint64_t{9}).transpose();
    const Matrix G = gcae::update_factor_G(F, 0.0);
    REQUIRE((G - F).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("update_factor_G handles the zero factor with smoothing") {
    const Matrix F = Matrix::Zero(4, 2);
    const Matrix G = gcae::update_factor_G(F, 0.1);
    REQUIRE(G.cwiseAbs().maxCoeff() == 0.0);
    REQUIRE_THROWS_AS(gcae::update_factor_G(F, 0.0), gcae::NumericalError);
}

TEST_CASE("update_factor_G satisfies its defining linear system") {
    gcae::Rng rng(4);
    const Matrix F = rng.gaussian_matrix(6, 2);
    const double theta = 1e-5;
    const Matrix G = gcae::update_factor_G(F, theta);
    Matrix inner = F.transpose() * F;
    inner.diagonal().array() += theta;
    REQUIRE((G * inner - F).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("graph_residual matches a scalar-loop evaluation") {
    gcae::Rng rng(5);
    const Matrix phi = rng.gaussian_matrix(7, 5);
    const Matrix F = rng.gaussian_matrix(7, 2);
    const Matrix G = rng.gaussian_matrix(7, 2);
    const double fast = gcae::graph_residual(phi, {F, G, 2});
    const Matrix residual = phi - F * G.transpose() * phi;
    REQUIRE(fast == Catch::Approx(oracles::naive_squared_frobenius(residual)).margin(1e-10));
}

TEST_CASE("graph_residual trivial values") {
    const Matrix phi = Matrix::Ones(3, 2);
    const Matrix I = Matrix::Identity(3, 3);
    REQUIRE(gcae::graph_residual(phi, {I, I, 3}) == Catch::Approx(0.0).margin(1e-20));
    const Matrix zero = Matrix::Zero(3, 1);
    REQUIRE(gcae::graph_residual(phi, {zero, zero, 1}) ==
            Catch::Approx(phi.squaredNorm()).margin(1e-12));
}

TEST_CASE("full-rank factor learning reconstructs the kernel view") {
    const auto kv = well_conditioned_view(12, 6);
    const auto fp = gcae::learn_factors(kv, 12, 0.0, 80, std::uint64_t{7});
    REQUIRE(gcae::graph_residual(kv.phi, fp) <= 1e-8 * kv.phi.squaredNorm());
}

TEST_CASE("rank-1 input is reconstructed by a rank-1 factorization") {
    gcae::Rng rng(8);
    const Matrix u = rng.gaussian_matrix(10, 1);
    const Matrix w = rng.gaussian_matrix(1, 6);
    const auto kv = make_view(u * w);
    const auto fp = gcae::learn_factors(kv, 1, 0.0, 80, std::uint64_t{3});
    REQUIRE(gcae::graph_residual(kv.phi, fp) <= 1e-8 * kv.phi.squaredNorm());
}

TEST_CASE("factor-learning loss is non-increasing and bounded by the budget") {
    const auto kv = well_conditioned_view(50, 10);
    std::vector<double> losses;
    const auto fp = gcae::learn_factors(kv, 5, 1e-5, 80, std::uint64_t{4}, &losses);
    REQUIRE(losses.size() >= 1);
    REQUIRE(losses.size() <= 80);
    for (std::size_t i = 1; i < losses.size(); ++i)
        REQUIRE(losses[i] <= losses[i - 1] + 1e-9 * losses[0]);
    REQUIRE(fp.rank_r == 5);
}

TEST_CASE("factor product rank never exceeds r") {
    const auto kv = well_conditioned_view(20, 11);
    for (int r : {1, 3, 7}) {
        const auto fp = gcae::learn_factors(kv, r, 1e-5, 40, std::uint64_t{5});
        const auto svd = gcae::compact_svd(fp.product());
        REQUIRE(gcae::effective_rank(svd.S) <= r);
    }
}

TEST_CASE("block updates are stationary points of their own subproblems") {
    gcae::Rng rng(12);
    const Matrix phi = rng.gaussian_matrix(6, 6);
    const Matrix gram = phi * phi.transpose();
    Matrix G = rng.gaussian_matrix(6, 2);
    const Matrix F = gcae::update_factor_F(gram, G, 0.0);
    auto f_objective = [&](const Matrix& Fx) { return gcae::graph_residual(phi, {Fx, G, 2}); };
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 2; ++j)
            REQUIRE(std::abs(oracles::central_difference(f_objective, F, i, j)) <= 1e-6);

    const Matrix G_next = gcae::update_factor_G(F, 0.0);
    auto g_objective = [&](const Matrix& Gx) { return gcae::graph_residual(phi, {F, Gx, 2}); };
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 2; ++j)
            REQUIRE(std::abs(oracles::central_difference(g_objective, G_next, i, j)) <= 1e-6);
}

TEST_CASE("learn_factors rejects out-of-range rank") {
    const auto kv = well_conditioned_view(6, 13);
    REQUIRE_THROWS_AS(gcae::learn_factors(kv, 0, 1e-5, 10, std::uint64_t{0}),
                      gcae::ValidationError);
    REQUIRE_THROWS_AS(gcae::learn_factors(kv, 7, 1e-5, 10, std::uint64_t{0}),
                      gcae::ValidationError);
}
