#pragma once

#include "bdp/kernels.hpp"
#include "bdp/spectral.hpp"

namespace bdp {

enum class Route { spectral, commutator_identity };

/// F_k(J;J) with the route that produced it, for cross-checking the spectral
/// sum against the commutator identities.
struct FunctionalValue {
    int k = 0;
    double value = 0.0;
    Route route = Route::spectral;
};

/// Bogoliubov-Duhamel inner product (A;B) from the spectral representation.
Complex bd_inner(const SpectralSystem& sys, const ComplexMatrix& a, const ComplexMatrix& b);
Complex bd_inner(const BlockedSpectralSystem& sys, const std::vector<ComplexMatrix>& a,
                 const std::vector<ComplexMatrix>& b);

/// Independent oracle: Gauss-Legendre quadrature over tau in [0,1] of
/// Z^-1 Tr[e^{-beta(1-tau)H} A^dag e^{-beta tau H} B], exponentials built from
/// a fresh eigendecomposition. nodes >= 8.
Complex bd_inner_quadrature(const HermitianOperator& h, double beta, const ComplexMatrix& a,
                            const ComplexMatrix& b, int nodes);

/// Spectral route with the quadrature oracle cross-check; node count starts at
/// 32 and doubles (up to 256) until the two routes agree within tol.
Complex bd_inner_cross_checked(const SpectralSystem& sys, const ComplexMatrix& a,
                               const ComplexMatrix& b, double tol = 1e-8);

/// F_k(J;J) = Z^-1 sum_{ml} |J_ml|^2 |e^{-beta E_l} - (-1)^k e^{-beta E_m}|
///            (beta |E_m - E_l|)^{k-1}, spectral route.
FunctionalValue functional_f(const SpectralSystem& sys, const ComplexMatrix& j, int k);
FunctionalValue functional_f(const BlockedSpectralSystem& sys, const std::vector<ComplexMatrix>& j,
                             int k);

/// (1/2)<A^dag A + A A^dag> - |<A>|^2; always >= 0.
double sym_fluctuation(const SpectralSystem& sys, const ComplexMatrix& a);
double sym_fluctuation(const BlockedSpectralSystem& sys, const std::vector<ComplexMatrix>& a);

/// The nonnegative gap (1/2)<A^dag A + A A^dag> - (A;A), in its two
/// algebraically equivalent spectral forms (used to cross-check each other).
double fluctuation_gap_coth(const SpectralSystem& sys, const ComplexMatrix& a);
double fluctuation_gap_inverse(const SpectralSystem& sys, const ComplexMatrix& a);

}  // namespace bdp
