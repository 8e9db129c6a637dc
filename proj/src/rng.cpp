#include "bdp/rng.hpp"

namespace bdp {

ComplexMatrix random_complex_matrix(Eigen::Index dim, Rng& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    ComplexMatrix m(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i)
        for (Eigen::Index j = 0; j < dim; ++j) {
            const double re = u(rng);
            const double im = u(rng);
            m(i, j) = Complex(re, im);
        }
    return m;
}

ComplexMatrix random_hermitian(Eigen::Index dim, Rng& rng) {
    const ComplexMatrix r = random_complex_matrix(dim, rng);
    return 0.5 * (r + r.adjoint());
}

}  // namespace bdp
