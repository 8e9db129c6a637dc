#include "bdp/eigensolver.hpp"

#ifdef BDP_HAVE_LAPACKE
#include <lapacke.h>
#else
#include <Eigen/Eigenvalues>
#endif

namespace bdp {

namespace {

bool is_real(const ComplexMatrix& m) {
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            if (m(i, j).imag() != 0.0) return false;
    return true;
}

}  // namespace

#ifdef BDP_HAVE_LAPACKE

EigenDecomposition eigh(const ComplexMatrix& m) {
    require_square(m, "eigh");
    const auto n = m.rows();
    EigenDecomposition out;
    out.eigenvalues.resize(n);
    if (n == 0) {
        out.eigenvectors.resize(0, 0);
        return out;
    }
    if (is_real(m)) {
        Eigen::MatrixXd a = m.real();
        int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', int(n), a.data(), int(n),
                                  out.eigenvalues.data());
        if (info != 0)
            throw NumericError("eigh: dsyevd failed with info " + std::to_string(info));
        out.eigenvectors = a.cast<Complex>();
    } else {
        ComplexMatrix a = m;
        int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, 'V', 'L', int(n),
                                  reinterpret_cast<lapack_complex_double*>(a.data()), int(n),
                                  out.eigenvalues.data());
        if (info != 0)
            throw NumericError("eigh: zheevd failed with info " + std::to_string(info));
        out.eigenvectors = std::move(a);
    }
    return out;
}

#else

EigenDecomposition eigh(const ComplexMatrix& m) {
    require_square(m, "eigh");
    if (is_real(m)) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m.real());
        if (solver.info() != Eigen::Success)
            throw NumericError("eigh: eigensolver did not converge");
        return {solver.eigenvalues(), solver.eigenvectors().cast<Complex>()};
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m);
    if (solver.info() != Eigen::Success)
        throw NumericError("eigh: eigensolver did not converge");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

#endif

}  // namespace bdp
