#include "bdp/inequalities.hpp"

#include <cmath>

namespace bdp {

namespace {

double checked_pow(double base, double exponent, const char* what) {
    if (base < -1e-12)
        throw ConsistencyError(std::string(what) + ": negative base " + std::to_string(base) +
                               " for fractional power");
    return std::pow(std::max(base, 0.0), exponent);
}

InequalityReport finish(InequalityFamily family, int n, int k, double lhs, double rhs_lower,
                        double rhs_upper) {
    InequalityReport r;
    r.family = family;
    r.n = n;
    r.k = k;
    r.lhs = lhs;
    r.rhs_lower = rhs_lower;
    r.rhs_upper = rhs_upper;
    r.slack_lower = lhs - rhs_lower;
    r.slack_upper = rhs_upper - lhs;
    const double tol = 1e-10 * std::max(1.0, std::abs(lhs));
    r.pass = r.slack_lower >= -tol && r.slack_upper >= -tol;
    return r;
}

}  // namespace

const char* family_name(InequalityFamily family) {
    switch (family) {
        case InequalityFamily::harris: return "harris";
        case InequalityFamily::ginibre: return "ginibre";
        case InequalityFamily::bpr: return "bpr";
        case InequalityFamily::alt_even: return "alt_even";
        case InequalityFamily::alt_odd: return "alt_odd";
    }
    return "?";
}

FunctionalTable FunctionalTable::make(const SpectralSystem& sys, const ComplexMatrix& j) {
    FunctionalTable t;
    t.beta_ = sys.beta();
    t.slices_.push_back({1.0, sys.energies(), sys.weights(), to_eigenbasis(sys, j)});
    t.cache_.assign(kMaxIndex + 1, 0.0);
    return t;
}

FunctionalTable FunctionalTable::make(const BlockedSpectralSystem& sys,
                                      const std::vector<ComplexMatrix>& j) {
    if (j.size() != sys.blocks.size()) throw ShapeError("FunctionalTable: block count mismatch");
    FunctionalTable t;
    t.beta_ = sys.beta;
    for (size_t i = 0; i < sys.blocks.size(); ++i) {
        const auto& s = sys.blocks[i].sys;
        t.slices_.push_back({sys.mass[i], s.energies(), s.weights(), to_eigenbasis(s, j[i])});
    }
    t.cache_.assign(kMaxIndex + 1, 0.0);
    return t;
}

void FunctionalTable::prefill(int kmax) const {
    if (kmax < 0 || kmax > kMaxIndex) throw ShapeError("FunctionalTable: index out of range");
    if (kmax <= filled_) return;
    std::fill(cache_.begin(), cache_.end(), 0.0);
    for (const auto& s : slices_) {
        if (kmax >= 2) {
            const double spread = s.energies[s.energies.size() - 1] - s.energies[0];
            const double arg = beta_ * spread;
            if (arg > 1.0 && double(kmax - 1) * std::log(arg) > 700.0)
                throw NumericError("FunctionalTable: power overflow at k=" + std::to_string(kmax) +
                                   ", beta*spread=" + std::to_string(arg));
        }
        const std::vector<double> sums =
            kernels::functional_sums_upto(s.energies, s.weights, beta_, s.jtil, kmax);
        for (int k = 0; k <= kmax; ++k) cache_[size_t(k)] += s.mass * sums[size_t(k)];
    }
    filled_ = kmax;
}

double FunctionalTable::f(int k) const {
    if (k < 0 || k > kMaxIndex) throw ShapeError("FunctionalTable: index out of range");
    if (k > filled_) prefill(k);
    return cache_[size_t(k)];
}

InequalityReport harris_gen(const FunctionalTable& t, int n) {
    const double lhs = 0.5 * t.f(2 * n + 1);
    const double f2n = t.f(2 * n);
    return finish(InequalityFamily::harris, n, 1, lhs, f2n, f2n + t.f(2 * n + 2) / 12.0);
}

InequalityReport ginibre_gen(const FunctionalTable& t, int n, int k) {
    if (k < 1) throw ShapeError("ginibre_gen: k must be >= 1");
    const double lhs = 0.5 * t.f(2 * n + 1);
    const double f2n = t.f(2 * n);
    const double term = 0.5 * checked_pow(t.f(0), double(2 * k - 1) / (2 * k), "ginibre_gen") *
                        checked_pow(t.f(2 * k * (2 * n + 1)), 1.0 / (2 * k), "ginibre_gen");
    return finish(InequalityFamily::ginibre, n, k, lhs, f2n, f2n + term);
}

InequalityReport bpr_gen(const FunctionalTable& t, int n, int k) {
    if (k < 1) throw ShapeError("bpr_gen: k must be >= 1");
    const double lhs = 0.5 * t.f(2 * n + 1);
    const double f2n = t.f(2 * n);
    const int idx = 2 * (2 * n * k + n + k) + 1;
    const double term = 0.5 * checked_pow(t.f(0), double(2 * k) / (2 * k + 1), "bpr_gen") *
                        checked_pow(t.f(idx), 1.0 / (2 * k + 1), "bpr_gen");
    return finish(InequalityFamily::bpr, n, k, lhs, f2n, f2n + term);
}

InequalityReport alt_even(const FunctionalTable& t, int n, int k) {
    if (k < 1) throw ShapeError("alt_even: k must be >= 1");
    const double lhs = 0.5 * t.f(2 * n + 1);
    const double f2n = t.f(2 * n);
    const double term = 0.5 * checked_pow(f2n, double(2 * k - 1) / (2 * k), "alt_even") *
                        checked_pow(t.f(2 * (n + k)), 1.0 / (2 * k), "alt_even");
    return finish(InequalityFamily::alt_even, n, k, lhs, f2n, f2n + term);
}

InequalityReport alt_odd(const FunctionalTable& t, int n, int k) {
    if (k < 1) throw ShapeError("alt_odd: k must be >= 1");
    const double lhs = 0.5 * t.f(2 * n + 1);
    const double f2n = t.f(2 * n);
    const double term = 0.5 * checked_pow(f2n, double(2 * k) / (2 * k + 1), "alt_odd") *
                        checked_pow(t.f(2 * (n + k) + 1), 1.0 / (2 * k + 1), "alt_odd");
    return finish(InequalityFamily::alt_odd, n, k, lhs, f2n, f2n + term);
}

namespace {

FunctionalTable table_for(const SpectralSystem& sys, const CommutatorChain& chain, int n) {
    if (n > chain.depth()) throw ShapeError("inequality: need chain depth >= n");
    return FunctionalTable::make(sys, chain.base());
}

}  // namespace

InequalityReport harris_gen(const SpectralSystem& sys, const CommutatorChain& chain, int n) {
    return harris_gen(table_for(sys, chain, n), n);
}
InequalityReport ginibre_gen(const SpectralSystem& sys, const CommutatorChain& chain, int n,
                             int k) {
    return ginibre_gen(table_for(sys, chain, n), n, k);
}
InequalityReport bpr_gen(const SpectralSystem& sys, const CommutatorChain& chain, int n, int k) {
    return bpr_gen(table_for(sys, chain, n), n, k);
}
InequalityReport alt_even(const SpectralSystem& sys, const CommutatorChain& chain, int n, int k) {
    return alt_even(table_for(sys, chain, n), n, k);
}
InequalityReport alt_odd(const SpectralSystem& sys, const CommutatorChain& chain, int n, int k) {
    return alt_odd(table_for(sys, chain, n), n, k);
}

std::vector<InequalityReport> bound_catalogue(const FunctionalTable& t, int n_max, int k_max) {
    std::vector<InequalityReport> out;
    for (int n = 0; n <= n_max; ++n) {
        const double scale = std::pow(t.beta(), -2.0 * n);
        const double delta = scale * (0.5 * t.f(2 * n + 1) - t.f(2 * n));
        auto emit = [&](const InequalityReport& base) {
            InequalityReport r = base;
            r.lhs = delta;
            r.rhs_lower = 0.0;
            r.rhs_upper = scale * (base.rhs_upper - base.rhs_lower);
            r.slack_lower = r.lhs;
            r.slack_upper = r.rhs_upper - r.lhs;
            const double tol = 1e-10 * std::max(1.0, std::abs(r.lhs));
            r.pass = r.slack_lower >= -tol && r.slack_upper >= -tol;
            out.push_back(r);
        };
        emit(harris_gen(t, n));
        for (int k = 1; k <= k_max; ++k) {
            emit(ginibre_gen(t, n, k));
            emit(bpr_gen(t, n, k));
            emit(alt_even(t, n, k));
            emit(alt_odd(t, n, k));
        }
    }
    return out;
}

std::vector<InequalityReport> bound_catalogue(const SpectralSystem& sys,
                                              const CommutatorChain& chain, int n_max, int k_max) {
    if (n_max > chain.depth()) throw ShapeError("bound_catalogue: need chain depth >= n_max");
    return bound_catalogue(FunctionalTable::make(sys, chain.base()), n_max, k_max);
}

}  // namespace bdp
