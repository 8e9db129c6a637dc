#include "bdp/duhamel.hpp"

#include "bdp/eigensolver.hpp"

#include <cmath>

namespace bdp {

namespace {

void check_dim(const SpectralSystem& sys, const ComplexMatrix& a, const char* what) {
    if (a.rows() != sys.dim() || a.cols() != sys.dim()) throw ShapeError(std::string(what) + ": dimension mismatch");
}

void check_blocks(const BlockedSpectralSystem& sys, const std::vector<ComplexMatrix>& a,
                  const char* what) {
    if (a.size() != sys.blocks.size()) throw ShapeError(std::string(what) + ": block count mismatch");
}

void check_functional_range(const SpectralSystem& sys, int k) {
    if (k < 0) throw ShapeError("functional_f: k must be nonnegative");
    if (k >= 2) {
        const double spread = sys.energies()[sys.dim() - 1] - sys.energies()[0];
        const double arg = sys.beta() * spread;
        if (arg > 1.0 && double(k - 1) * std::log(arg) > 700.0)
            throw NumericError("functional_f: power factor overflow at k=" + std::to_string(k) +
                               ", beta*spread=" + std::to_string(arg));
    }
}

}  // namespace

Complex bd_inner(const SpectralSystem& sys, const ComplexMatrix& a, const ComplexMatrix& b) {
    check_dim(sys, a, "bd_inner");
    check_dim(sys, b, "bd_inner");
    const ComplexMatrix atil = to_eigenbasis(sys, a);
    const ComplexMatrix btil = to_eigenbasis(sys, b);
    return kernels::bd_inner_sum(sys.energies(), sys.weights(), sys.beta(), atil, btil);
}

Complex bd_inner(const BlockedSpectralSystem& sys, const std::vector<ComplexMatrix>& a,
                 const std::vector<ComplexMatrix>& b) {
    check_blocks(sys, a, "bd_inner");
    check_blocks(sys, b, "bd_inner");
    Complex acc = 0.0;
    for (size_t i = 0; i < sys.blocks.size(); ++i)
        acc += sys.mass[i] * bd_inner(sys.blocks[i].sys, a[i], b[i]);
    return acc;
}

Complex bd_inner_quadrature(const HermitianOperator& h, double beta, const ComplexMatrix& a,
                            const ComplexMatrix& b, int nodes) {
    if (nodes < 8) throw ShapeError("bd_inner_quadrature: nodes must be >= 8");
    require_same_dim(h.matrix(), a, "bd_inner_quadrature");
    require_same_dim(h.matrix(), b, "bd_inner_quadrature");
    EigenDecomposition ed = eigh(h.matrix());
    SpectralSystem sys(std::move(ed.eigenvalues), std::move(ed.eigenvectors), beta);
    const ComplexMatrix atil = to_eigenbasis(sys, a);
    const ComplexMatrix btil = to_eigenbasis(sys, b);
    return kernels::quadrature_sum(sys.energies(), sys.weights(), sys.beta(), atil, btil, nodes);
}

Complex bd_inner_cross_checked(const SpectralSystem& sys, const ComplexMatrix& a,
                               const ComplexMatrix& b, double tol) {
    const ComplexMatrix atil = to_eigenbasis(sys, a);
    const ComplexMatrix btil = to_eigenbasis(sys, b);
    const Complex spectral =
        kernels::bd_inner_sum(sys.energies(), sys.weights(), sys.beta(), atil, btil);
    for (int nodes = 32; nodes <= 256; nodes *= 2) {
        const Complex quad =
            kernels::quadrature_sum(sys.energies(), sys.weights(), sys.beta(), atil, btil, nodes);
        if (std::abs(quad - spectral) <= tol) return spectral;
    }
    throw ConsistencyError("bd_inner_cross_checked: spectral and quadrature routes disagree");
}

FunctionalValue functional_f(const SpectralSystem& sys, const ComplexMatrix& j, int k) {
    check_dim(sys, j, "functional_f");
    check_functional_range(sys, k);
    const ComplexMatrix jtil = to_eigenbasis(sys, j);
    const double value =
        kernels::functional_sum(sys.energies(), sys.weights(), sys.beta(), jtil, k);
    return {k, value, Route::spectral};
}

FunctionalValue functional_f(const BlockedSpectralSystem& sys,
                             const std::vector<ComplexMatrix>& j, int k) {
    check_blocks(sys, j, "functional_f");
    double acc = 0.0;
    for (size_t i = 0; i < sys.blocks.size(); ++i)
        acc += sys.mass[i] * functional_f(sys.blocks[i].sys, j[i], k).value;
    return {k, acc, Route::spectral};
}

namespace {

// 1/2 <A^dag A + A A^dag> and <A> from the eigenbasis representation
std::pair<double, Complex> second_moment_and_mean(const SpectralSystem& sys,
                                                  const ComplexMatrix& a) {
    const ComplexMatrix atil = to_eigenbasis(sys, a);
    const auto& w = sys.weights();
    double avg2 = 0.0;
    Complex mean = 0.0;
    for (Eigen::Index m = 0; m < sys.dim(); ++m) {
        for (Eigen::Index n = 0; n < sys.dim(); ++n)
            avg2 += std::norm(atil(m, n)) * 0.5 * (w[n] + w[m]);
        mean += w[m] * atil(m, m);
    }
    return {avg2, mean};
}

}  // namespace

double sym_fluctuation(const SpectralSystem& sys, const ComplexMatrix& a) {
    check_dim(sys, a, "sym_fluctuation");
    auto [avg2, mean] = second_moment_and_mean(sys, a);
    return avg2 - std::norm(mean);
}

double sym_fluctuation(const BlockedSpectralSystem& sys, const std::vector<ComplexMatrix>& a) {
    check_blocks(sys, a, "sym_fluctuation");
    double avg2 = 0.0;
    Complex mean = 0.0;
    for (size_t i = 0; i < sys.blocks.size(); ++i) {
        auto [m2, mu] = second_moment_and_mean(sys.blocks[i].sys, a[i]);
        avg2 += sys.mass[i] * m2;
        mean += sys.mass[i] * mu;
    }
    return avg2 - std::norm(mean);
}

double fluctuation_gap_coth(const SpectralSystem& sys, const ComplexMatrix& a) {
    check_dim(sys, a, "fluctuation_gap_coth");
    const ComplexMatrix atil = to_eigenbasis(sys, a);
    return kernels::gap_coth_sum(sys.energies(), sys.weights(), sys.beta(), atil);
}

double fluctuation_gap_inverse(const SpectralSystem& sys, const ComplexMatrix& a) {
    check_dim(sys, a, "fluctuation_gap_inverse");
    const ComplexMatrix atil = to_eigenbasis(sys, a);
    return kernels::gap_inverse_sum(sys.energies(), sys.weights(), sys.beta(), atil);
}

}  // namespace bdp
