#pragma once

#include "bdp/operators.hpp"

#include <vector>

namespace bdp {

/// Eigendecomposition of a Hamiltonian plus every thermal primitive built on
/// it. Gibbs weights are always computed with the ground-state energy
/// subtracted first, so beta up to ~50 stays well-conditioned. Immutable
/// after construction.
class SpectralSystem {
  public:
    SpectralSystem(RealVector energies, ComplexMatrix eigenbasis, double beta);

    Eigen::Index dim() const { return energies_.size(); }
    double beta() const { return beta_; }
    const RealVector& energies() const { return energies_; }
    const ComplexMatrix& eigenbasis() const { return basis_; }
    const RealVector& weights() const { return weights_; }
    /// ln Z, with the ground-state shift folded back in.
    double log_partition() const { return log_partition_; }
    double ground_energy() const { return energies_[0]; }
    bool real_basis() const { return real_basis_; }

  private:
    RealVector energies_;
    ComplexMatrix basis_;
    double beta_;
    RealVector weights_;
    double log_partition_;
    bool real_basis_ = false;
};

/// Diagonalize and validate: ascending energies, unit weight sum, unitary
/// basis (defect <= 1e-10), faithful reconstruction (<= 1e-9 relative).
SpectralSystem decompose(const HermitianOperator& h, double beta);

std::complex<double> gibbs_average(const SpectralSystem& sys, const ComplexMatrix& a);

/// -(beta * size)^-1 ln Z.
double free_energy_density(const SpectralSystem& sys, double size);

/// U^dag A U; elements[m][n] = <m|A|n>. Uses a real fast path when both the
/// basis and the operator are real.
ComplexMatrix to_eigenbasis(const SpectralSystem& sys, const ComplexMatrix& a);

using EigenbasisObservable = ComplexMatrix;

/// Direct sum of spectral systems with sector multiplicities. Thermal
/// quantities combine blockwise with Gibbs mass fractions, which is exact for
/// Hamiltonians that are block diagonal in a conserved-sector decomposition.
struct BlockedSpectralSystem {
    struct Block {
        double multiplicity;
        SpectralSystem sys;
    };

    std::vector<Block> blocks;
    std::vector<double> mass;  // multiplicity-weighted Gibbs mass per block, sums to 1
    double log_partition = 0.0;
    double beta = 0.0;

    Eigen::Index total_dim() const;
};

BlockedSpectralSystem combine_blocks(std::vector<BlockedSpectralSystem::Block> blocks);

/// Wrap a single full-space system as a one-block ensemble.
BlockedSpectralSystem as_blocked(SpectralSystem sys);

double free_energy_density(const BlockedSpectralSystem& sys, double size);

std::complex<double> gibbs_average(const BlockedSpectralSystem& sys,
                                   const std::vector<ComplexMatrix>& a);

}  // namespace bdp
