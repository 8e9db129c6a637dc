#pragma once

#include "bdp/duhamel.hpp"

namespace bdp {

/// Iterated commutators R_0 = J, R_{n+1} = [H, R_n].
class CommutatorChain {
  public:
    CommutatorChain(ComplexMatrix hamiltonian, std::vector<ComplexMatrix> links)
        : hamiltonian_(std::move(hamiltonian)), links_(std::move(links)) {}

    int depth() const { return int(links_.size()) - 1; }
    const ComplexMatrix& base() const { return links_.front(); }
    const ComplexMatrix& link(int n) const;
    const ComplexMatrix& hamiltonian() const { return hamiltonian_; }

  private:
    ComplexMatrix hamiltonian_;
    std::vector<ComplexMatrix> links_;
};

/// Depth capped at 8: ||R_n|| grows like (spectral spread)^n and the chain is
/// only ever needed a few links deep.
CommutatorChain build_chain(const HermitianOperator& h, const ComplexMatrix& j, int n);

/// F_{2n} = beta^{2n-1} <[R_n^dag, R_{n-1}]>, n >= 1.
FunctionalValue f_even_via_identity(const SpectralSystem& sys, const CommutatorChain& chain,
                                    int n);

/// F_{2n+1} = beta^{2n} <R_n R_n^dag + R_n^dag R_n>, n >= 0.
FunctionalValue f_odd_via_identity(const SpectralSystem& sys, const CommutatorChain& chain,
                                   int n);

/// Delta_n = (1/2)<R_n^dag R_n + R_n R_n^dag> - (R_n; R_n); nonnegative.
double delta_n(const SpectralSystem& sys, const CommutatorChain& chain, int n);

struct ConditionsReport {
    int n_max = 0;
    double j_mean_abs = 0.0;
    std::vector<std::pair<int, double>> f_even;  // n = 1..n_max -> F_{2n}
    std::vector<std::pair<int, double>> f_odd;   // n = 0..n_max -> F_{2n+1}
};

ConditionsReport evaluate_conditions(const SpectralSystem& sys, const CommutatorChain& chain,
                                     int n_max);

/// Per-sector chains for block-diagonal Hamiltonians and observables.
struct BlockedChain {
    std::vector<CommutatorChain> blocks;
    int depth() const { return blocks.empty() ? -1 : blocks.front().depth(); }
};

BlockedChain build_chain(const std::vector<ComplexMatrix>& h_blocks,
                         const std::vector<ComplexMatrix>& j_blocks, int n);

FunctionalValue f_even_via_identity(const BlockedSpectralSystem& sys, const BlockedChain& chain,
                                    int n);
FunctionalValue f_odd_via_identity(const BlockedSpectralSystem& sys, const BlockedChain& chain,
                                   int n);
double delta_n(const BlockedSpectralSystem& sys, const BlockedChain& chain, int n);
ConditionsReport evaluate_conditions(const BlockedSpectralSystem& sys, const BlockedChain& chain,
                                     int n_max);

}  // namespace bdp
