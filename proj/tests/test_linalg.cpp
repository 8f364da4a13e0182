#include <catch2/catch_amalgamated.hpp>

#include "gcae/linalg.hpp"
#include "gcae/rng.hpp"

using gcae::Matrix;
using gcae::Vector;

namespace {

Matrix random_spd(int n, std::uint64_t seed) {
    gcae::Rng rng(seed);
    Matrix G = rng.gaussian_matrix(n, n);
    return G * G.transpose() + 0.1 * Matrix::Identity(n, n);
}

}  // namespace

TEST_CASE("solve_smoothed identity system") {
    const Matrix I = Matrix::Identity(3, 3);
    const Matrix X = gcae::solve_smoothed(I, I, 0.0);
    REQUIRE((X - I).norm() < 1e-12);
}

TEST_CASE("solve_smoothed pure smoothing term") {
    const Matrix A = Matrix::Zero(2, 2);
    Matrix R(2, 1);
    R << 1.0, 1.0;
    const Matrix X = gcae::solve_smoothed(A, R, 0.5);
    REQUIRE(X(0, 0) == Catch::Approx(2.0));
    REQUIRE(X(1, 0) == Catch::Approx(2.0));
}

TEST_CASE("solve_smoothed residual gate on random SPD systems") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Matrix A = random_spd(5, seed);
        gcae::Rng rng(seed + 1000);
        const Matrix R = rng.gaussian_matrix(5, 3);
        const double theta = 1e-6;
        const Matrix X = gcae::solve_smoothed(A, R, theta);
        Matrix M = A;
        M.diagonal().array() += theta;
        REQUIRE((M * X - R).norm() <= 1e-8 * (A.norm() + theta) * X.norm());
    }
}

TEST_CASE("solve_smoothed rejects singular systems instead of returning garbage") {
    const Matrix A = Matrix::Zero(2, 2);
    Matrix R(2, 1);
    R << 1.0, 1.0;
    REQUIRE_THROWS_AS(gcae::solve_smoothed(A, R, 0.0), gcae::NumericalError);
}

TEST_CASE("solve_smoothed input validation") {
    Matrix A = Matrix::Identity(2, 2);
    Matrix R = Matrix::Ones(2, 1);
    REQUIRE_THROWS_AS(gcae::solve_smoothed(A, R, -1.0), gcae::ValidationError);
    REQUIRE_THROWS_AS(gcae::solve_smoothed(Matrix::Ones(2, 3), R, 0.0), gcae::ValidationError);
    A(0, 1) = std::numeric_limits<double>::quiet_NaN();
    REQUIRE_THROWS_AS(gcae::solve_smoothed(A, R, 0.0), gcae::NumericalError);
}

TEST_CASE("compact_svd of the identity") {
    const auto svd = gcae::compact_svd(Matrix::Identity(3, 3));
    for (int i = 0; i < 3; ++i) REQUIRE(svd.S(i) == Catch::Approx(1.0));
    REQUIRE((svd.U * svd.V.transpose() - Matrix::Identity(3, 3)).norm() < 1e-12);
}

TEST_CASE("compact_svd of a singular diagonal") {
    Matrix M = Matrix::Zero(2, 2);
    M(0, 0) = 3.0;
    const auto svd = gcae::compact_svd(M);
    REQUIRE(svd.S(0) == Catch::Approx(3.0));
    REQUIRE(svd.S(1) == Catch::Approx(0.0).margin(1e-14));
    REQUIRE(gcae::effective_rank(svd.S) == 1);
}

TEST_CASE("compact_svd reconstruction and orthonormality on random input") {
    gcae::Rng rng(42);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 2 + rng.uniform_int(5);
        const int m = 2 + rng.uniform_int(5);
        const Matrix M = rng.gaussian_matrix(n, m);
        const auto svd = gcae::compact_svd(M);
        const int k = std::min(n, m);
        REQUIRE(svd.U.cols() == k);
        REQUIRE(svd.V.cols() == k);
        REQUIRE((svd.U.transpose() * svd.U - Matrix::Identity(k, k)).cwiseAbs().maxCoeff() <=
                1e-10);
        REQUIRE((svd.V.transpose() * svd.V - Matrix::Identity(k, k)).cwiseAbs().maxCoeff() <=
                1e-10);
        REQUIRE((M - svd.U * svd.S.asDiagonal() * svd.V.transpose()).norm() <= 1e-8 * M.norm());
        for (int i = 0; i + 1 < k; ++i) REQUIRE(svd.S(i) >= svd.S(i + 1));
        REQUIRE(svd.S(k - 1) >= 0.0);
    }
}

TEST_CASE("random_row_orthonormal smallest case is a sign") {
    const Matrix W = gcae::random_row_orthonormal(1, 1, std::uint64_t{3});
    REQUIRE(std::abs(std::abs(W(0, 0)) - 1.0) < 1e-12);
}

TEST_CASE("random_row_orthonormal deterministic for a fixed seed") {
    const Matrix a = gcae::random_row_orthonormal(2, 5, std::uint64_t{7});
    const Matrix b = gcae::random_row_orthonormal(2, 5, std::uint64_t{7});
    REQUIRE(a == b);
    const Matrix c = gcae::random_row_orthonormal(2, 5, std::uint64_t{8});
    REQUIRE(a != c);
}

TEST_CASE("random_row_orthonormal rows are orthonormal") {
    const Matrix W = gcae::random_row_orthonormal(3, 8, std::uint64_t{11});
    REQUIRE((W * W.transpose() - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("random_row_orthonormal rejects rows > cols") {
    REQUIRE_THROWS_AS(gcae::random_row_orthonormal(4, 2, std::uint64_t{0}),
                      gcae::ValidationError);
}

TEST_CASE("linalg operations are pure") {
    const Matrix A = random_spd(4, 5);
    gcae::Rng rng(99);
    const Matrix R = rng.gaussian_matrix(4, 2);
    REQUIRE(gcae::solve_smoothed(A, R, 1e-8) == gcae::solve_smoothed(A, R, 1e-8));
    const auto s1 = gcae::compact_svd(A);
    const auto s2 = gcae::compact_svd(A);
    REQUIRE(s1.U == s2.U);
    REQUIRE(s1.S == s2.S);
}
