#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace bdp {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

// Dense storage only; desk-scale systems stay well below this.
inline constexpr Eigen::Index kMaxHilbertDim = 8192;

// Error taxonomy maps onto the CLI exit codes: config -> 2, numeric/capacity -> 3.
struct ShapeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct CapacityError : std::length_error {
    using std::length_error::length_error;
};

struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ConsistencyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline void require_square(const ComplexMatrix& m, const char* what) {
    if (m.rows() != m.cols())
        throw ShapeError(std::string(what) + ": matrix is not square");
}

inline void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw ShapeError(std::string(what) + ": dimension mismatch " + std::to_string(a.rows()) +
                         " vs " + std::to_string(b.rows()));
}

inline void require_capacity(Eigen::Index dim, const char* what) {
    if (dim > kMaxHilbertDim)
        throw CapacityError(std::string(what) + ": Hilbert dimension " + std::to_string(dim) +
                            " exceeds the configured maximum " + std::to_string(kMaxHilbertDim));
}

}  // namespace bdp
