#pragma once

#include "bdp/types.hpp"

#include <cmath>

namespace bdp {

/// (1 - e^{-x}) / x, accurate for all x >= 0 including the x -> 0 limit.
inline double expm1_ratio(double x) {
    if (x == 0.0) return 1.0;
    return -std::expm1(-x) / x;
}

/// x * coth(x) with the limit value 1 at x = 0.
inline double xcothx(double x) {
    if (x == 0.0) return 1.0;
    return x / std::tanh(x);
}

/// Two-energy Gibbs kernel (e^{-beta e_m} - e^{-beta e_n}) / (beta (e_n - e_m)),
/// continued across coincidence by its limit e^{-beta e}. Symmetric in (e_m, e_n)
/// and strictly positive. Evaluated cancellation-free via expm1.
inline double duhamel_kernel(double e_m, double e_n, double beta) {
    const double lo = std::min(e_m, e_n);
    const double hi = std::max(e_m, e_n);
    return std::exp(-beta * lo) * expm1_ratio(beta * (hi - lo));
}

/// Spectral double sums over eigenpairs. `weights` are the normalized Gibbs
/// weights for ascending `energies`; matrices are already in the eigenbasis.
/// The *_serial versions in `reference` are the independent implementations
/// kept for testing and benchmarking; the unsuffixed ones run the same sums
/// with OpenMP row partitioning and a deterministic ordered reduction.
namespace kernels {

// sum_{m,n} conj(A_mn) B_mn K(m,n) with K the weight-unit Duhamel kernel
Complex bd_inner_sum(const RealVector& energies, const RealVector& weights, double beta,
                     const ComplexMatrix& atil, const ComplexMatrix& btil);

// F_k spectral sum: sum_{m,l} |J_ml|^2 |w_l - (-1)^k w_m| (beta |E_m - E_l|)^{k-1},
// with the k = 0 coincidence limit taken through the Duhamel kernel
double functional_sum(const RealVector& energies, const RealVector& weights, double beta,
                      const ComplexMatrix& jtil, int k);

// all of F_0..F_kmax in one pass with incremental powers
std::vector<double> functional_sums_upto(const RealVector& energies, const RealVector& weights,
                                         double beta, const ComplexMatrix& jtil, int kmax);

// (1/2)<A^dag A + A A^dag> - (A;A) via the x coth x - 1 form
double gap_coth_sum(const RealVector& energies, const RealVector& weights, double beta,
                    const ComplexMatrix& atil);

// same gap via the 1 - 1/(x coth x) form
double gap_inverse_sum(const RealVector& energies, const RealVector& weights, double beta,
                       const ComplexMatrix& atil);

// Gauss-Legendre integral over tau of Z^-1 Tr[e^{-beta(1-tau)H} A^dag e^{-beta tau H} B]
Complex quadrature_sum(const RealVector& energies, const RealVector& weights, double beta,
                       const ComplexMatrix& atil, const ComplexMatrix& btil, int nodes);

namespace reference {
Complex bd_inner_sum(const RealVector& energies, const RealVector& weights, double beta,
                     const ComplexMatrix& atil, const ComplexMatrix& btil);
double functional_sum(const RealVector& energies, const RealVector& weights, double beta,
                      const ComplexMatrix& jtil, int k);
double gap_coth_sum(const RealVector& energies, const RealVector& weights, double beta,
                    const ComplexMatrix& atil);
double gap_inverse_sum(const RealVector& energies, const RealVector& weights, double beta,
                       const ComplexMatrix& atil);
Complex quadrature_sum(const RealVector& energies, const RealVector& weights, double beta,
                       const ComplexMatrix& atil, const ComplexMatrix& btil, int nodes);
}  // namespace reference

}  // namespace kernels

}  // namespace bdp
