#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace gcae {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Bad arguments or inconsistent data (CLI exit code 1).
struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Unreadable, missing or malformed files (CLI exit code 2).
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Singular solves, non-finite values mid-optimization (CLI exit code 3).
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw ValidationError(msg);
}

inline void require_finite(const Matrix& m, const std::string& what) {
    if (!m.allFinite()) throw NumericalError(what + " contains non-finite entries");
}

/// sgn with the fixed tie rule sgn(0) = +1.
inline double sign_pm1(double x) { return x >= 0.0 ? 1.0 : -1.0; }

inline Matrix sign_pm1(const Matrix& m) {
    return (m.array() >= 0.0).select(Matrix::Constant(m.rows(), m.cols(), 1.0),
                                     Matrix::Constant(m.rows(), m.cols(), -1.0));
}

}  // namespace gcae
