#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "gcae/common.hpp"

namespace gcae {

/// The one pseudo-random generator of the library. Every stochastic choice
/// (anchor sampling, factor init, code init, synthetic data, ...) draws from
/// an instance of this class, so a run is fully determined by its seed.
///
/// Engine: std::mt19937_64, whose output sequence is pinned by the C++
/// standard. Distributions are implemented here instead of <random> because
/// the standard does not fix std::*_distribution output across
/// implementations:
///   - uniform01: top 53 bits of the engine scaled into [0, 1)
///   - gaussian:  Marsaglia polar method over uniform01
///   - uniform_int / sample_without_replacement: rejection + Fisher-Yates
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform draw in [0, 1).
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Standard normal via the polar method (rejection; log and sqrt only).
    double gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform01() - 1.0;
            v = 2.0 * uniform01() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double scale = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * scale;
        has_spare_ = true;
        return u * scale;
    }

    /// Unbiased uniform integer in [0, n).
    int uniform_int(int n) {
        require(n > 0, "uniform_int: n must be positive");
        const std::uint64_t un = static_cast<std::uint64_t>(n);
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % un;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return static_cast<int>(x % un);
    }

    /// k distinct indices from [0, n), partial Fisher-Yates order.
    std::vector<int> sample_without_replacement(int n, int k) {
        require(k >= 0 && k <= n, "sample_without_replacement: need 0 <= k <= n");
        std::vector<int> pool(n);
        for (int i = 0; i < n; ++i) pool[i] = i;
        for (int i = 0; i < k; ++i) {
            const int j = i + uniform_int(n - i);
            std::swap(pool[i], pool[j]);
        }
        pool.resize(k);
        return pool;
    }

    Matrix gaussian_matrix(int rows, int cols) {
        Matrix m(rows, cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) m(i, j) = gaussian();
        return m;
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace gcae
