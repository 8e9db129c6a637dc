#pragma once

#include "bdp/types.hpp"

namespace bdp {

struct EigenDecomposition {
    RealVector eigenvalues;  // ascending
    ComplexMatrix eigenvectors;
};

/// Dense Hermitian eigendecomposition. Uses LAPACK divide-and-conquer when
/// available, with a real-symmetric fast path for matrices with zero
/// imaginary part. Throws NumericError on solver failure.
EigenDecomposition eigh(const ComplexMatrix& m);

}  // namespace bdp
