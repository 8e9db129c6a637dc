#pragma once

#include "bdp/types.hpp"

#include <random>

namespace bdp {

using Rng = std::mt19937_64;

/// Random complex matrix with entries uniform in the unit square.
ComplexMatrix random_complex_matrix(Eigen::Index dim, Rng& rng);

/// (R + R^dag)/2 of a random complex matrix.
ComplexMatrix random_hermitian(Eigen::Index dim, Rng& rng);

}  // namespace bdp
