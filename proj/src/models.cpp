#include "bdp/models.hpp"

#include "bdp/eigensolver.hpp"
#include "bdp/operators.hpp"

#include <cmath>

namespace bdp {

namespace {

void validate(const HeisenbergSpec& spec) {
    if (spec.n_spins < 1) throw ConfigError("heisenberg: n_spins must be >= 1");
    if (!(spec.g_x > 0.0) || !(spec.g_y > 0.0))
        throw ConfigError("heisenberg: couplings g_x, g_y must be positive");
}

void validate(const DickeSpec& spec) {
    if (spec.n_spins < 1) throw ConfigError("dicke: n_spins must be >= 1");
    if (!(spec.omega > 0.0)) throw ConfigError("dicke: omega must be positive");
    if (spec.fock_cutoff < 2) throw ConfigError("dicke: fock_cutoff must be >= 2");
}

ComplexMatrix sigma_plus() {
    ComplexMatrix sp(2, 2);
    sp << 0, 1, 0, 0;
    return sp;
}

}  // namespace

double dicke_volume(const DickeSpec& spec) {
    return spec.volume > 0.0 ? spec.volume : double(spec.n_spins);
}

std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * std::uint64_t(n - k + i) / std::uint64_t(i);
    return r;
}

double spin_multiplicity(int n_spins, int two_s) {
    if (two_s < 0 || two_s > n_spins || (n_spins - two_s) % 2 != 0) return 0.0;
    const int r = (n_spins - two_s) / 2;
    return double(binomial(n_spins, r)) - double(r >= 1 ? binomial(n_spins, r - 1) : 0);
}

SpinMatrices spin_matrices(int two_s) {
    if (two_s < 0) throw ShapeError("spin_matrices: two_s must be >= 0");
    const int dim = two_s + 1;
    const double s = 0.5 * two_s;
    ComplexMatrix sz = ComplexMatrix::Zero(dim, dim);
    ComplexMatrix sp = ComplexMatrix::Zero(dim, dim);
    for (int r = 0; r < dim; ++r) {
        const double m = s - r;  // descending magnetization
        sz(r, r) = m;
        if (r >= 1) sp(r - 1, r) = std::sqrt(s * (s + 1) - m * (m + 1));
    }
    const ComplexMatrix sm = sp.adjoint();
    SpinMatrices out;
    out.sx = 0.5 * (sp + sm);
    out.sy = Complex(0, -0.5) * (sp - sm);
    out.sz = sz;
    return out;
}

namespace {

// beta-folded collective Hamiltonian from J operators and source fields
ComplexMatrix heisenberg_from_ops(const HeisenbergSpec& spec, const ComplexMatrix& jx,
                                  const ComplexMatrix& jy, const ComplexMatrix& jz,
                                  std::array<Complex, 2> nu) {
    const double n = spec.n_spins;
    ComplexMatrix h = -n * spec.g_x * (jx * jx) - n * spec.g_y * (jy * jy) -
                      n * (spec.h[0] * jx + spec.h[1] * jy + spec.h[2] * jz);
    h -= 2.0 * n * nu[0].real() * jx;
    h -= 2.0 * n * nu[1].real() * jy;
    return h;
}

}  // namespace

HermitianOperator build_heisenberg(const HeisenbergSpec& spec) {
    validate(spec);
    require_capacity(Eigen::Index(1) << spec.n_spins, "build_heisenberg");
    const ComplexMatrix jx = collective_spin(spec.n_spins, Axis::x).matrix();
    const ComplexMatrix jy = collective_spin(spec.n_spins, Axis::y).matrix();
    const ComplexMatrix jz = collective_spin(spec.n_spins, Axis::z).matrix();
    return HermitianOperator(heisenberg_from_ops(spec, jx, jy, jz, {}));
}

BlockedSystem build_heisenberg_blocked(const HeisenbergSpec& spec) {
    validate(spec);
    BlockedSystem out;
    out.n_spins = spec.n_spins;
    double dim_check = 0.0;
    for (int two_s = spec.n_spins % 2; two_s <= spec.n_spins; two_s += 2) {
        const double mult = spin_multiplicity(spec.n_spins, two_s);
        if (mult <= 0.0) continue;
        const SpinMatrices s = spin_matrices(two_s);
        const double scale = 2.0 / spec.n_spins;  // J^alpha = (2/N) S^alpha
        out.blocks.push_back(
            {two_s, mult,
             heisenberg_from_ops(spec, scale * s.sx, scale * s.sy, scale * s.sz, {})});
        dim_check += mult * (two_s + 1);
    }
    if (dim_check != std::pow(2.0, spec.n_spins))
        throw NumericError("build_heisenberg_blocked: sector dimensions do not sum to 2^N");
    return out;
}

HermitianOperator build_heisenberg_approximating(const HeisenbergSpec& spec,
                                                 std::array<Complex, 2> a) {
    validate(spec);
    const double n = spec.n_spins;
    const ComplexMatrix jx = collective_spin(spec.n_spins, Axis::x).matrix();
    const ComplexMatrix jy = collective_spin(spec.n_spins, Axis::y).matrix();
    const ComplexMatrix jz = collective_spin(spec.n_spins, Axis::z).matrix();
    ComplexMatrix h0 = -n * (spec.h[0] * jx + spec.h[1] * jy + spec.h[2] * jz);
    h0 -= n * spec.g_x * (2.0 * a[0].real() * jx - std::norm(a[0]) * identity(jx.rows()));
    h0 -= n * spec.g_y * (2.0 * a[1].real() * jy - std::norm(a[1]) * identity(jy.rows()));
    return HermitianOperator(std::move(h0));
}

HermitianOperator add_sources(const HermitianOperator& h, const HeisenbergSpec& spec,
                              std::array<Complex, 2> nu) {
    const double n = spec.n_spins;
    const ComplexMatrix jx = collective_spin(spec.n_spins, Axis::x).matrix();
    const ComplexMatrix jy = collective_spin(spec.n_spins, Axis::y).matrix();
    require_same_dim(h.matrix(), jx, "add_sources");
    return HermitianOperator(h.matrix() - 2.0 * n * nu[0].real() * jx -
                             2.0 * n * nu[1].real() * jy);
}

double heisenberg_approx_free_energy(const HeisenbergSpec& spec, std::array<Complex, 2> a,
                                     std::array<Complex, 2> nu) {
    validate(spec);
    // single-site effective field of the linearized model, beta = 1
    const double hx = spec.h[0] + 2.0 * spec.g_x * a[0].real() + 2.0 * nu[0].real();
    const double hy = spec.h[1] + 2.0 * spec.g_y * a[1].real() + 2.0 * nu[1].real();
    const double hz = spec.h[2];
    const double field = std::sqrt(hx * hx + hy * hy + hz * hz);
    const double ln2cosh = field + std::log1p(std::exp(-2.0 * field));  // log(2 cosh), overflow-safe
    return spec.g_x * std::norm(a[0]) + spec.g_y * std::norm(a[1]) - ln2cosh;
}

HeisenbergSystem prepare_heisenberg(const HeisenbergSpec& spec, std::array<Complex, 2> nu) {
    validate(spec);
    HeisenbergSystem out;
    out.spec = spec;
    out.size = spec.n_spins;
    std::vector<BlockedSpectralSystem::Block> blocks;
    if (spec.representation == Representation::full) {
        out.jx.push_back(collective_spin(spec.n_spins, Axis::x).matrix());
        out.jy.push_back(collective_spin(spec.n_spins, Axis::y).matrix());
        out.jz.push_back(collective_spin(spec.n_spins, Axis::z).matrix());
        out.hamiltonian.push_back(
            heisenberg_from_ops(spec, out.jx[0], out.jy[0], out.jz[0], nu));
        blocks.push_back({1.0, decompose(HermitianOperator(out.hamiltonian[0]), 1.0)});
    } else {
        for (int two_s = spec.n_spins % 2; two_s <= spec.n_spins; two_s += 2) {
            const double mult = spin_multiplicity(spec.n_spins, two_s);
            if (mult <= 0.0) continue;
            const SpinMatrices s = spin_matrices(two_s);
            const double scale = 2.0 / spec.n_spins;
            out.jx.push_back(scale * s.sx);
            out.jy.push_back(scale * s.sy);
            out.jz.push_back(scale * s.sz);
            out.hamiltonian.push_back(
                heisenberg_from_ops(spec, out.jx.back(), out.jy.back(), out.jz.back(), nu));
            blocks.push_back({mult, decompose(HermitianOperator(out.hamiltonian.back()), 1.0)});
        }
    }
    out.sys = combine_blocks(std::move(blocks));
    return out;
}

namespace {

struct DickeMatter {
    std::vector<double> multiplicity;
    std::vector<ComplexMatrix> t;  // (epsilon/2) sum sigma^z per block
    std::vector<ComplexMatrix> a;  // (1/V) sum sigma^+ per block
};

DickeMatter dicke_matter_blocks(const DickeSpec& spec) {
    const double v = dicke_volume(spec);
    DickeMatter out;
    if (spec.symmetric_sector_only) {
        const SpinMatrices s = spin_matrices(spec.n_spins);
        out.multiplicity.push_back(1.0);
        out.t.push_back(spec.epsilon * s.sz);
        out.a.push_back((s.sx + Complex(0, 1) * s.sy) / v);
        return out;
    }
    for (int two_s = spec.n_spins % 2; two_s <= spec.n_spins; two_s += 2) {
        const double mult = spin_multiplicity(spec.n_spins, two_s);
        if (mult <= 0.0) continue;
        const SpinMatrices s = spin_matrices(two_s);
        out.multiplicity.push_back(mult);
        out.t.push_back(spec.epsilon * s.sz);                  // T = epsilon S^z
        out.a.push_back((s.sx + Complex(0, 1) * s.sy) / v);    // sum sigma^+ = S^+
    }
    return out;
}

ComplexMatrix dicke_block_hamiltonian(const DickeSpec& spec, const ComplexMatrix& t,
                                      const ComplexMatrix& a, int cutoff, Complex nu) {
    const double v = dicke_volume(spec);
    const ComplexMatrix b = boson_ladder(cutoff);
    const ComplexMatrix number = b.adjoint() * b;
    const Eigen::Index md = t.rows();
    ComplexMatrix h = kron(t, identity(cutoff)) + spec.omega * kron(identity(md), number) +
                      std::sqrt(v) * spec.lambda *
                          (kron(a.adjoint(), b) + kron(a, b.adjoint()));
    if (nu != Complex(0.0)) {
        h -= std::sqrt(v) * (std::conj(nu) * kron(identity(md), b) +
                             nu * kron(identity(md), b.adjoint()));
    }
    return h;
}

}  // namespace

HermitianOperator build_dicke(const DickeSpec& spec) {
    validate(spec);
    const int n = spec.n_spins;
    const double v = dicke_volume(spec);
    const Eigen::Index matter_dim = Eigen::Index(1) << n;
    require_capacity(matter_dim * spec.fock_cutoff, "build_dicke");
    ComplexMatrix t = ComplexMatrix::Zero(matter_dim, matter_dim);
    ComplexMatrix a = ComplexMatrix::Zero(matter_dim, matter_dim);
    for (int i = 0; i < n; ++i) {
        t += 0.5 * spec.epsilon * site_operator(n, i, pauli(Axis::z));
        a += site_operator(n, i, sigma_plus()) / v;
    }
    return HermitianOperator(dicke_block_hamiltonian(spec, t, a, spec.fock_cutoff, 0.0));
}

HermitianOperator build_dicke_approximating(const DickeSpec& spec, Complex eta) {
    validate(spec);
    const int n = spec.n_spins;
    const double v = dicke_volume(spec);
    const Eigen::Index matter_dim = Eigen::Index(1) << n;
    require_capacity(matter_dim * spec.fock_cutoff, "build_dicke_approximating");
    ComplexMatrix t = ComplexMatrix::Zero(matter_dim, matter_dim);
    ComplexMatrix a = ComplexMatrix::Zero(matter_dim, matter_dim);
    for (int i = 0; i < n; ++i) {
        t += 0.5 * spec.epsilon * site_operator(n, i, pauli(Axis::z));
        a += site_operator(n, i, sigma_plus()) / v;
    }
    const ComplexMatrix b = boson_ladder(spec.fock_cutoff);
    const Complex shift = std::sqrt(v) * (spec.lambda / spec.omega) * eta;
    const ComplexMatrix btil = b + shift * identity(spec.fock_cutoff);
    const double g = v * spec.lambda * spec.lambda / spec.omega;
    ComplexMatrix matter = t - g * (eta * a.adjoint() + std::conj(eta) * a -
                                    std::norm(eta) * identity(matter_dim));
    return HermitianOperator(kron(matter, identity(spec.fock_cutoff)) +
                             spec.omega * kron(identity(matter_dim), btil.adjoint() * btil));
}

HermitianOperator add_sources(const HermitianOperator& h, const DickeSpec& spec, Complex nu) {
    const double v = dicke_volume(spec);
    const Eigen::Index matter_dim = h.dim() / spec.fock_cutoff;
    if (matter_dim * spec.fock_cutoff != h.dim())
        throw ShapeError("add_sources: operator dimension is not matter x cutoff");
    const ComplexMatrix b = kron(identity(matter_dim), boson_ladder(spec.fock_cutoff));
    return HermitianOperator(h.matrix() -
                             std::sqrt(v) * (std::conj(nu) * b + nu * b.adjoint()));
}

DickeApproxParts dicke_approx_parts(const DickeSpec& spec, int cutoff, Complex eta, Complex nu) {
    validate(spec);
    const double v = dicke_volume(spec);
    const DickeMatter matter = dicke_matter_blocks(spec);
    DickeApproxParts parts;
    const double g = v * spec.lambda * spec.lambda / spec.omega;
    for (size_t i = 0; i < matter.t.size(); ++i) {
        const Eigen::Index md = matter.t[i].rows();
        ComplexMatrix m = matter.t[i] - g * (eta * matter.a[i].adjoint() +
                                             std::conj(eta) * matter.a[i] -
                                             std::norm(eta) * identity(md));
        parts.matter.push_back({int(md) - 1, matter.multiplicity[i], std::move(m)});
    }
    const ComplexMatrix b = boson_ladder(cutoff);
    const Complex shift = std::sqrt(v) * (spec.lambda / spec.omega) * eta;
    const ComplexMatrix btil = b + shift * identity(cutoff);
    parts.boson = spec.omega * (btil.adjoint() * btil);
    if (nu != Complex(0.0))
        parts.boson -= std::sqrt(v) * (std::conj(nu) * b + nu * b.adjoint());
    return parts;
}

double dicke_approx_free_energy(const DickeSpec& spec, double beta, int cutoff, Complex eta,
                                Complex nu) {
    const DickeApproxParts parts = dicke_approx_parts(spec, cutoff, eta, nu);
    std::vector<BlockedSpectralSystem::Block> blocks;
    for (const auto& m : parts.matter)
        blocks.push_back({m.multiplicity, decompose(HermitianOperator(m.hamiltonian), beta)});
    const BlockedSpectralSystem matter = combine_blocks(std::move(blocks));
    const SpectralSystem boson = decompose(HermitianOperator(parts.boson), beta);
    // free energies of commuting tensor factors add
    const double v = dicke_volume(spec);
    return -(matter.log_partition + boson.log_partition()) / (beta * v);
}

DickeSystem prepare_dicke(const DickeSpec& spec, double beta, int cutoff, Complex nu) {
    validate(spec);
    if (cutoff < 2) throw ConfigError("prepare_dicke: cutoff must be >= 2");
    DickeSystem out;
    out.spec = spec;
    out.cutoff = cutoff;
    out.volume = dicke_volume(spec);
    const DickeMatter matter = dicke_matter_blocks(spec);
    const ComplexMatrix bf = boson_ladder(cutoff);
    std::vector<BlockedSpectralSystem::Block> blocks;
    for (size_t i = 0; i < matter.t.size(); ++i) {
        const Eigen::Index md = matter.t[i].rows();
        require_capacity(md * cutoff, "prepare_dicke");
        out.hamiltonian.push_back(
            dicke_block_hamiltonian(spec, matter.t[i], matter.a[i], cutoff, nu));
        out.b.push_back(kron(identity(md), bf));
        out.a.push_back(kron(matter.a[i], identity(cutoff)));
        out.t.push_back(kron(matter.t[i], identity(cutoff)));
        blocks.push_back(
            {matter.multiplicity[i], decompose(HermitianOperator(out.hamiltonian.back()), beta)});
    }
    out.sys = combine_blocks(std::move(blocks));
    return out;
}

}  // namespace bdp
