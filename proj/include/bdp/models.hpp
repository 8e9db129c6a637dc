#pragma once

#include "bdp/spectral.hpp"

#include <array>

namespace bdp {

enum class Representation { full, blocked };

/// Infinitely coordinated anisotropic Heisenberg model. The Hamiltonian is
/// normalized by k_B T, so every thermal call uses beta = 1 and temperature
/// lives inside the couplings.
struct HeisenbergSpec {
    int n_spins = 2;
    double g_x = 1.0;  // > 0
    double g_y = 1.0;  // > 0
    std::array<double, 3> h = {0.0, 0.0, 0.0};
    Representation representation = Representation::full;
};

/// Single-mode Dicke model in the rotating wave approximation on a truncated
/// Fock space. volume <= 0 means the V = n_spins convention.
struct DickeSpec {
    int n_spins = 2;
    double volume = 0.0;
    double epsilon = 1.0;
    double omega = 1.0;  // > 0
    double lambda = 0.0;
    int fock_cutoff = 16;  // >= 2
    bool symmetric_sector_only = false;  // maximal-spin sector approximation for large N
};

double dicke_volume(const DickeSpec& spec);

// --- total-spin sector machinery ---

std::uint64_t binomial(int n, int k);

/// Number of copies of the spin-S irrep (two_s = 2S) in N spin-1/2 sites.
double spin_multiplicity(int n_spins, int two_s);

struct SpinMatrices {
    ComplexMatrix sx, sy, sz;  // spin-S representation, dimension two_s + 1
};
SpinMatrices spin_matrices(int two_s);

/// Spin-sector block decomposition of a collective Hamiltonian.
struct SpinBlock {
    int two_s = 0;
    double multiplicity = 1.0;
    ComplexMatrix hamiltonian;
};
struct BlockedSystem {
    int n_spins = 0;
    std::vector<SpinBlock> blocks;  // sum of multiplicity * (two_s+1) == 2^N
};

// --- Heisenberg builders ---

/// beta H_N = -N g_x (J^x)^2 - N g_y (J^y)^2 - N h . J on the full 2^N space.
HermitianOperator build_heisenberg(const HeisenbergSpec& spec);
BlockedSystem build_heisenberg_blocked(const HeisenbergSpec& spec);

/// H0(a) = T - N sum_s g_s (a_s A_s + a_s^* A_s - |a_s|^2) with the two
/// self-adjoint channels A_1 = J^x, A_2 = J^y; T carries the field term.
HermitianOperator build_heisenberg_approximating(const HeisenbergSpec& spec,
                                                 std::array<Complex, 2> a);

/// H(nu) = H - N sum_s (nu_s A_s + nu_s^* A_s) on the full space.
HermitianOperator add_sources(const HermitianOperator& h, const HeisenbergSpec& spec,
                              std::array<Complex, 2> nu);

/// Closed-form free energy density of the approximating Hamiltonian: the
/// linearized model is a paramagnet in the effective field, so no
/// diagonalization beyond a single site is needed.
double heisenberg_approx_free_energy(const HeisenbergSpec& spec, std::array<Complex, 2> a,
                                     std::array<Complex, 2> nu = {});

/// Diagonalized model plus the per-block observables every measurement needs.
struct HeisenbergSystem {
    HeisenbergSpec spec;
    BlockedSpectralSystem sys;
    std::vector<ComplexMatrix> hamiltonian;
    std::vector<ComplexMatrix> jx, jy, jz;
    double size = 0.0;  // N
};
HeisenbergSystem prepare_heisenberg(const HeisenbergSpec& spec, std::array<Complex, 2> nu = {});

// --- Dicke builders ---

/// H = T (x) I + I (x) omega b^dag b + V^{1/2} lambda (A^dag (x) b + A (x) b^dag)
/// with T = (epsilon/2) sum sigma^z, A = (1/V) sum sigma^+, on the full
/// 2^N * cutoff product space.
HermitianOperator build_dicke(const DickeSpec& spec);

/// Approximating Hamiltonian with shifted bosons:
/// H0(eta) = omega btil^dag btil + T - V (lambda^2/omega)(eta A^dag + eta^* A - |eta|^2).
HermitianOperator build_dicke_approximating(const DickeSpec& spec, Complex eta);

/// H(nu) = H - V^{1/2} (nu^* b + nu b^dag).
HermitianOperator add_sources(const HermitianOperator& h, const DickeSpec& spec, Complex nu);

/// Matter and boson factors of H0(eta, nu); their free energies add, which is
/// what makes the variational search cheap.
struct DickeApproxParts {
    std::vector<SpinBlock> matter;  // blocked matter factor
    ComplexMatrix boson;            // Fock-space factor
};
DickeApproxParts dicke_approx_parts(const DickeSpec& spec, int cutoff, Complex eta,
                                    Complex nu = 0.0);
double dicke_approx_free_energy(const DickeSpec& spec, double beta, int cutoff, Complex eta,
                                Complex nu = 0.0);

/// Diagonalized Dicke model, block diagonal over total-spin sectors (exact
/// unless symmetric_sector_only is set). Records the cutoff actually used.
struct DickeSystem {
    DickeSpec spec;
    int cutoff = 0;
    double volume = 0.0;
    BlockedSpectralSystem sys;
    std::vector<ComplexMatrix> hamiltonian;
    std::vector<ComplexMatrix> b, a, t;  // per-block boson and matter observables
};
DickeSystem prepare_dicke(const DickeSpec& spec, double beta, int cutoff, Complex nu = 0.0);

}  // namespace bdp
