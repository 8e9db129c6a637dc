#include "bdp/spectral.hpp"

#include "bdp/eigensolver.hpp"

#include <cmath>
#include <random>

namespace bdp {

namespace {

bool matrix_is_real(const ComplexMatrix& m) {
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            if (m(i, j).imag() != 0.0) return false;
    return true;
}

// Full O(D^3) validation below this dimension; spot checks above it.
constexpr Eigen::Index kFullCheckDim = 512;

void validate_decomposition(const ComplexMatrix& h, const RealVector& e, const ComplexMatrix& u) {
    const Eigen::Index n = e.size();
    const double scale = std::max(max_abs(h), 1.0);
    if (n <= kFullCheckDim) {
        const double unitarity = max_abs(ComplexMatrix(u.adjoint() * u) - identity(n));
        if (unitarity > 1e-10)
            throw NumericError("decompose: unitarity defect " + std::to_string(unitarity));
        const double residual = max_abs(u * e.asDiagonal().toDenseMatrix().cast<Complex>() *
                                            u.adjoint() -
                                        h);
        if (residual > 1e-9 * scale)
            throw NumericError("decompose: reconstruction residual " + std::to_string(residual));
    } else {
        // Sampled eigenpair residuals ||H v - E v|| and pairwise orthonormality.
        std::mt19937_64 rng(12345);
        std::uniform_int_distribution<Eigen::Index> pick(0, n - 1);
        for (int s = 0; s < 32; ++s) {
            const Eigen::Index k = pick(rng);
            const double residual = (h * u.col(k) - e[k] * u.col(k)).cwiseAbs().maxCoeff();
            if (residual > 1e-9 * scale)
                throw NumericError("decompose: eigenpair residual " + std::to_string(residual));
            const Eigen::Index l = pick(rng);
            const Complex overlap = u.col(k).dot(u.col(l));
            const double target = (k == l) ? 1.0 : 0.0;
            if (std::abs(overlap - target) > 1e-10)
                throw NumericError("decompose: orthonormality defect");
        }
    }
}

}  // namespace

SpectralSystem::SpectralSystem(RealVector energies, ComplexMatrix eigenbasis, double beta)
    : energies_(std::move(energies)), basis_(std::move(eigenbasis)), beta_(beta) {
    if (!(beta > 0.0) || !std::isfinite(beta))
        throw ShapeError("SpectralSystem: beta must be finite and positive");
    if (energies_.size() != basis_.rows() || basis_.rows() != basis_.cols())
        throw ShapeError("SpectralSystem: shape mismatch");
    const Eigen::Index n = energies_.size();
    if (n == 0) throw ShapeError("SpectralSystem: empty spectrum");
    weights_.resize(n);
    const double e0 = energies_[0];
    double z = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        weights_[i] = std::exp(-beta_ * (energies_[i] - e0));
        z += weights_[i];
    }
    weights_ /= z;
    log_partition_ = std::log(z) - beta_ * e0;
    real_basis_ = matrix_is_real(basis_);
}

SpectralSystem decompose(const HermitianOperator& h, double beta) {
    if (!(beta > 0.0) || !std::isfinite(beta))
        throw ShapeError("decompose: beta must be finite and positive");
    EigenDecomposition ed = eigh(h.matrix());
    validate_decomposition(h.matrix(), ed.eigenvalues, ed.eigenvectors);
    SpectralSystem sys(std::move(ed.eigenvalues), std::move(ed.eigenvectors), beta);
    if (std::abs(sys.weights().sum() - 1.0) > 1e-12)
        throw NumericError("decompose: Gibbs weights do not sum to one");
    return sys;
}

std::complex<double> gibbs_average(const SpectralSystem& sys, const ComplexMatrix& a) {
    if (a.rows() != sys.dim() || a.cols() != sys.dim())
        throw ShapeError("gibbs_average: dimension mismatch");
    const ComplexMatrix& u = sys.eigenbasis();
    std::complex<double> acc = 0.0;
    for (Eigen::Index k = 0; k < sys.dim(); ++k)
        acc += sys.weights()[k] * Complex(u.col(k).dot(a * u.col(k)));
    return acc;
}

double free_energy_density(const SpectralSystem& sys, double size) {
    if (!(size > 0.0)) throw ShapeError("free_energy_density: size must be positive");
    return -sys.log_partition() / (sys.beta() * size);
}

ComplexMatrix to_eigenbasis(const SpectralSystem& sys, const ComplexMatrix& a) {
    if (a.rows() != sys.dim() || a.cols() != sys.dim())
        throw ShapeError("to_eigenbasis: dimension mismatch");
    if (sys.real_basis() && matrix_is_real(a)) {
        const Eigen::MatrixXd u = sys.eigenbasis().real();
        const Eigen::MatrixXd r = u.transpose() * a.real() * u;
        return r.cast<Complex>();
    }
    return sys.eigenbasis().adjoint() * a * sys.eigenbasis();
}

Eigen::Index BlockedSpectralSystem::total_dim() const {
    Eigen::Index d = 0;
    for (const auto& b : blocks) d += b.sys.dim();
    return d;
}

BlockedSpectralSystem combine_blocks(std::vector<BlockedSpectralSystem::Block> blocks) {
    if (blocks.empty()) throw ShapeError("combine_blocks: no blocks");
    BlockedSpectralSystem out;
    out.beta = blocks.front().sys.beta();
    for (const auto& b : blocks)
        if (b.sys.beta() != out.beta) throw ShapeError("combine_blocks: mixed beta");
    // log-sum-exp over ln(d_b) + ln Z_b
    std::vector<double> lz(blocks.size());
    double top = -std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < blocks.size(); ++i) {
        lz[i] = std::log(blocks[i].multiplicity) + blocks[i].sys.log_partition();
        top = std::max(top, lz[i]);
    }
    double acc = 0.0;
    for (double v : lz) acc += std::exp(v - top);
    out.log_partition = top + std::log(acc);
    out.mass.resize(blocks.size());
    for (size_t i = 0; i < blocks.size(); ++i) out.mass[i] = std::exp(lz[i] - out.log_partition);
    out.blocks = std::move(blocks);
    return out;
}

BlockedSpectralSystem as_blocked(SpectralSystem sys) {
    std::vector<BlockedSpectralSystem::Block> blocks;
    blocks.push_back({1.0, std::move(sys)});
    return combine_blocks(std::move(blocks));
}

double free_energy_density(const BlockedSpectralSystem& sys, double size) {
    if (!(size > 0.0)) throw ShapeError("free_energy_density: size must be positive");
    return -sys.log_partition / (sys.beta * size);
}

std::complex<double> gibbs_average(const BlockedSpectralSystem& sys,
                                   const std::vector<ComplexMatrix>& a) {
    if (a.size() != sys.blocks.size())
        throw ShapeError("gibbs_average: block count mismatch");
    std::complex<double> acc = 0.0;
    for (size_t i = 0; i < sys.blocks.size(); ++i)
        acc += sys.mass[i] * gibbs_average(sys.blocks[i].sys, a[i]);
    return acc;
}

}  // namespace bdp
