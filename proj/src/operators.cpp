#include "bdp/operators.hpp"

namespace bdp {

double max_abs(const ComplexMatrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

HermitianOperator::HermitianOperator(ComplexMatrix m) : matrix_(std::move(m)) {
    require_square(matrix_, "HermitianOperator");
    require_capacity(matrix_.rows(), "HermitianOperator");
    const double scale = max_abs(matrix_);
    defect_ = max_abs(matrix_ - matrix_.adjoint());
    if (defect_ > 1e-12 * std::max(scale, 1e-300))
        throw NumericError("HermitianOperator: hermiticity defect " + std::to_string(defect_) +
                           " exceeds 1e-12 relative tolerance");
}

ComplexMatrix pauli(Axis axis) {
    ComplexMatrix m(2, 2);
    const Complex i(0.0, 1.0);
    switch (axis) {
        case Axis::x: m << 0, 1, 1, 0; break;
        case Axis::y: m << 0, -i, i, 0; break;
        case Axis::z: m << 1, 0, 0, -1; break;
    }
    return m;
}

ComplexMatrix adjoint(const ComplexMatrix& m) { return m.adjoint(); }

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_dim(a, b, "commutator");
    return a * b - b * a;
}

ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_dim(a, b, "anticommutator");
    return a * b + b * a;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_square(a, "kron");
    require_square(b, "kron");
    require_capacity(a.rows() * b.rows(), "kron");
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

ComplexMatrix identity(Eigen::Index dim) { return ComplexMatrix::Identity(dim, dim); }

ComplexMatrix site_operator(int n_spins, int site, const ComplexMatrix& op) {
    if (site < 0 || site >= n_spins) throw ShapeError("site_operator: site out of range");
    Eigen::Index left = Eigen::Index(1) << site;
    Eigen::Index right = Eigen::Index(1) << (n_spins - site - 1);
    require_capacity(left * op.rows() * right, "site_operator");
    return kron(identity(left), kron(op, identity(right)));
}

HermitianOperator collective_spin(int n_spins, Axis axis) {
    if (n_spins < 1) throw ShapeError("collective_spin: n_spins must be >= 1");
    require_capacity(Eigen::Index(1) << n_spins, "collective_spin");
    const Eigen::Index dim = Eigen::Index(1) << n_spins;
    ComplexMatrix sum = ComplexMatrix::Zero(dim, dim);
    const ComplexMatrix s = pauli(axis);
    for (int i = 0; i < n_spins; ++i) sum += site_operator(n_spins, i, s);
    return HermitianOperator(sum / double(n_spins));
}

ComplexMatrix boson_ladder(int cutoff) {
    if (cutoff < 2) throw ShapeError("boson_ladder: cutoff must be >= 2");
    require_capacity(cutoff, "boson_ladder");
    ComplexMatrix b = ComplexMatrix::Zero(cutoff, cutoff);
    for (int n = 1; n < cutoff; ++n) b(n - 1, n) = std::sqrt(double(n));
    return b;
}

}  // namespace bdp
