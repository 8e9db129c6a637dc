#include "bdp/chains.hpp"

#include <cmath>

namespace bdp {

namespace {

constexpr int kMaxChainDepth = 8;

double pow_int(double x, int n) {
    double r = 1.0;
    for (int i = 0; i < n; ++i) r *= x;
    return r;
}

double real_checked(Complex z, const char* what) {
    if (std::abs(z.imag()) > 1e-9 * std::max(1.0, std::abs(z.real())))
        throw ConsistencyError(std::string(what) + ": imaginary part " +
                               std::to_string(z.imag()) + " beyond tolerance");
    return z.real();
}

}  // namespace

const ComplexMatrix& CommutatorChain::link(int n) const {
    if (n < 0 || n > depth()) throw ShapeError("CommutatorChain: link index out of range");
    return links_[size_t(n)];
}

CommutatorChain build_chain(const HermitianOperator& h, const ComplexMatrix& j, int n) {
    if (n < 0 || n > kMaxChainDepth) throw ShapeError("build_chain: depth out of range");
    require_same_dim(h.matrix(), j, "build_chain");
    std::vector<ComplexMatrix> links;
    links.reserve(size_t(n) + 1);
    links.push_back(j);
    for (int i = 0; i < n; ++i) links.push_back(commutator(h.matrix(), links.back()));
    return CommutatorChain(h.matrix(), std::move(links));
}

FunctionalValue f_even_via_identity(const SpectralSystem& sys, const CommutatorChain& chain,
                                    int n) {
    if (n < 1 || n > chain.depth()) throw ShapeError("f_even_via_identity: need chain depth >= n");
    const Complex avg =
        gibbs_average(sys, commutator(adjoint(chain.link(n)), chain.link(n - 1)));
    const double value = pow_int(sys.beta(), 2 * n - 1) * real_checked(avg, "f_even_via_identity");
    return {2 * n, value, Route::commutator_identity};
}

FunctionalValue f_odd_via_identity(const SpectralSystem& sys, const CommutatorChain& chain,
                                   int n) {
    if (n < 0 || n > chain.depth()) throw ShapeError("f_odd_via_identity: need chain depth >= n");
    const Complex avg =
        gibbs_average(sys, anticommutator(adjoint(chain.link(n)), chain.link(n)));
    const double value = pow_int(sys.beta(), 2 * n) * real_checked(avg, "f_odd_via_identity");
    return {2 * n + 1, value, Route::commutator_identity};
}

double delta_n(const SpectralSystem& sys, const CommutatorChain& chain, int n) {
    if (n < 0 || n > chain.depth()) throw ShapeError("delta_n: need chain depth >= n");
    const ComplexMatrix& r = chain.link(n);
    const Complex sym = gibbs_average(sys, anticommutator(adjoint(r), r));
    const Complex inner = bd_inner(sys, r, r);
    const double value = 0.5 * real_checked(sym, "delta_n") - inner.real();
    if (value < -1e-10 * std::max(1.0, std::abs(sym.real())))
        throw ConsistencyError("delta_n: negative gap " + std::to_string(value));
    return value;
}

ConditionsReport evaluate_conditions(const SpectralSystem& sys, const CommutatorChain& chain,
                                     int n_max) {
    if (n_max < 0 || n_max > chain.depth())
        throw ShapeError("evaluate_conditions: need chain depth >= n_max");
    ConditionsReport report;
    report.n_max = n_max;
    report.j_mean_abs = std::abs(gibbs_average(sys, chain.base()));
    for (int n = 1; n <= n_max; ++n)
        report.f_even.emplace_back(n, functional_f(sys, chain.base(), 2 * n).value);
    for (int n = 0; n <= n_max; ++n)
        report.f_odd.emplace_back(n, functional_f(sys, chain.base(), 2 * n + 1).value);
    return report;
}

BlockedChain build_chain(const std::vector<ComplexMatrix>& h_blocks,
                         const std::vector<ComplexMatrix>& j_blocks, int n) {
    if (h_blocks.size() != j_blocks.size()) throw ShapeError("build_chain: block count mismatch");
    BlockedChain chain;
    for (size_t i = 0; i < h_blocks.size(); ++i)
        chain.blocks.push_back(build_chain(HermitianOperator(h_blocks[i]), j_blocks[i], n));
    return chain;
}

namespace {

template <typename PerBlock>
Complex mass_combine(const BlockedSpectralSystem& sys, const BlockedChain& chain, PerBlock&& fn) {
    if (chain.blocks.size() != sys.blocks.size())
        throw ShapeError("blocked chain: block count mismatch");
    Complex acc = 0.0;
    for (size_t i = 0; i < sys.blocks.size(); ++i)
        acc += sys.mass[i] * fn(sys.blocks[i].sys, chain.blocks[i]);
    return acc;
}

}  // namespace

FunctionalValue f_even_via_identity(const BlockedSpectralSystem& sys, const BlockedChain& chain,
                                    int n) {
    if (n < 1 || n > chain.depth()) throw ShapeError("f_even_via_identity: need chain depth >= n");
    const Complex avg = mass_combine(sys, chain, [&](const SpectralSystem& s, const CommutatorChain& c) {
        return gibbs_average(s, commutator(adjoint(c.link(n)), c.link(n - 1)));
    });
    const double value = pow_int(sys.beta, 2 * n - 1) * real_checked(avg, "f_even_via_identity");
    return {2 * n, value, Route::commutator_identity};
}

FunctionalValue f_odd_via_identity(const BlockedSpectralSystem& sys, const BlockedChain& chain,
                                   int n) {
    if (n < 0 || n > chain.depth()) throw ShapeError("f_odd_via_identity: need chain depth >= n");
    const Complex avg = mass_combine(sys, chain, [&](const SpectralSystem& s, const CommutatorChain& c) {
        return gibbs_average(s, anticommutator(adjoint(c.link(n)), c.link(n)));
    });
    const double value = pow_int(sys.beta, 2 * n) * real_checked(avg, "f_odd_via_identity");
    return {2 * n + 1, value, Route::commutator_identity};
}

double delta_n(const BlockedSpectralSystem& sys, const BlockedChain& chain, int n) {
    if (n < 0 || n > chain.depth()) throw ShapeError("delta_n: need chain depth >= n");
    const Complex sym = mass_combine(sys, chain, [&](const SpectralSystem& s, const CommutatorChain& c) {
        return gibbs_average(s, anticommutator(adjoint(c.link(n)), c.link(n)));
    });
    const Complex inner = mass_combine(sys, chain, [&](const SpectralSystem& s, const CommutatorChain& c) {
        return bd_inner(s, c.link(n), c.link(n));
    });
    const double value = 0.5 * real_checked(sym, "delta_n") - inner.real();
    if (value < -1e-10 * std::max(1.0, std::abs(sym.real())))
        throw ConsistencyError("delta_n: negative gap " + std::to_string(value));
    return value;
}

ConditionsReport evaluate_conditions(const BlockedSpectralSystem& sys, const BlockedChain& chain,
                                     int n_max) {
    if (n_max < 0 || n_max > chain.depth())
        throw ShapeError("evaluate_conditions: need chain depth >= n_max");
    ConditionsReport report;
    report.n_max = n_max;
    std::vector<ComplexMatrix> base;
    for (const auto& c : chain.blocks) base.push_back(c.base());
    report.j_mean_abs = std::abs(gibbs_average(sys, base));
    for (int n = 1; n <= n_max; ++n)
        report.f_even.emplace_back(n, functional_f(sys, base, 2 * n).value);
    for (int n = 0; n <= n_max; ++n)
        report.f_odd.emplace_back(n, functional_f(sys, base, 2 * n + 1).value);
    return report;
}

}  // namespace bdp
