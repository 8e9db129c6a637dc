#pragma once

#include "bdp/types.hpp"

namespace bdp {

/// Dense Hermitian operator. Construction rejects matrices whose defect
/// max|M - M^dag| exceeds 1e-12 relative to the largest entry; operators are
/// never silently symmetrized.
class HermitianOperator {
  public:
    explicit HermitianOperator(ComplexMatrix m);

    const ComplexMatrix& matrix() const { return matrix_; }
    Eigen::Index dim() const { return matrix_.rows(); }
    double hermiticity_defect() const { return defect_; }

  private:
    ComplexMatrix matrix_;
    double defect_ = 0.0;
};

enum class Axis { x, y, z };

ComplexMatrix pauli(Axis axis);

ComplexMatrix adjoint(const ComplexMatrix& m);
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// J_N^alpha = (1/N) sum_i sigma_i^alpha on the 2^N product space.
HermitianOperator collective_spin(int n_spins, Axis axis);

/// One-site operator embedded at `site` of an n_spins chain.
ComplexMatrix site_operator(int n_spins, int site, const ComplexMatrix& op);

/// Truncated boson annihilation operator: b[n-1, n] = sqrt(n), 1 <= n < cutoff.
ComplexMatrix boson_ladder(int cutoff);

ComplexMatrix identity(Eigen::Index dim);

double max_abs(const ComplexMatrix& m);

}  // namespace bdp
