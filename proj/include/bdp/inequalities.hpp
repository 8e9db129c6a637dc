#pragma once

#include "bdp/chains.hpp"

#include <functional>

namespace bdp {

enum class InequalityFamily { harris, ginibre, bpr, alt_even, alt_odd };

const char* family_name(InequalityFamily family);

/// One evaluated inequality: F_{2n} <= (1/2) F_{2n+1} <= rhs_upper, with the
/// raw slacks kept so downstream analysis can re-threshold.
struct InequalityReport {
    InequalityFamily family = InequalityFamily::harris;
    int n = 0;
    int k = 1;
    double lhs = 0.0;        // (1/2) F_{2n+1}
    double rhs_lower = 0.0;  // F_{2n}
    double rhs_upper = 0.0;
    double slack_lower = 0.0;
    double slack_upper = 0.0;
    bool pass = false;
};

/// Cached F_k values for one (system, J) pair; self-contained so tables can
/// outlive the systems they were built from.
class FunctionalTable {
  public:
    static FunctionalTable make(const SpectralSystem& sys, const ComplexMatrix& j);
    static FunctionalTable make(const BlockedSpectralSystem& sys,
                                const std::vector<ComplexMatrix>& j);

    double f(int k) const;
    /// Compute F_0..F_kmax in one spectral pass.
    void prefill(int kmax) const;
    double beta() const { return beta_; }
    /// Largest index with a finite power factor; requests beyond it throw.
    static constexpr int kMaxIndex = 64;

  private:
    struct Slice {
        double mass;
        RealVector energies;
        RealVector weights;
        ComplexMatrix jtil;
    };
    std::vector<Slice> slices_;
    double beta_ = 0.0;
    mutable std::vector<double> cache_;
    mutable int filled_ = -1;
};

InequalityReport harris_gen(const FunctionalTable& table, int n);
InequalityReport ginibre_gen(const FunctionalTable& table, int n, int k);
InequalityReport bpr_gen(const FunctionalTable& table, int n, int k);
InequalityReport alt_even(const FunctionalTable& table, int n, int k);
InequalityReport alt_odd(const FunctionalTable& table, int n, int k);

InequalityReport harris_gen(const SpectralSystem& sys, const CommutatorChain& chain, int n);
InequalityReport ginibre_gen(const SpectralSystem& sys, const CommutatorChain& chain, int n, int k);
InequalityReport bpr_gen(const SpectralSystem& sys, const CommutatorChain& chain, int n, int k);
InequalityReport alt_even(const SpectralSystem& sys, const CommutatorChain& chain, int n, int k);
InequalityReport alt_odd(const SpectralSystem& sys, const CommutatorChain& chain, int n, int k);

/// Delta_n against each family's upper-bound excess (rhs - F_{2n}), unscaled
/// by beta^{2n}; one report per (family, n, k <= k_max), n <= n_max.
std::vector<InequalityReport> bound_catalogue(const FunctionalTable& table, int n_max, int k_max);
std::vector<InequalityReport> bound_catalogue(const SpectralSystem& sys,
                                              const CommutatorChain& chain, int n_max, int k_max);

}  // namespace bdp
