#include "bdp/kernels.hpp"

#include "bdp/quadrature.hpp"

#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace bdp::kernels {

namespace {

// weight-unit Duhamel kernel; energies ascending, so min index holds the
// larger weight and the ratio argument is nonnegative
inline double weight_kernel(const RealVector& e, const RealVector& w, double beta,
                            Eigen::Index m, Eigen::Index n) {
    const Eigen::Index i = std::min(m, n);
    const Eigen::Index j = std::max(m, n);
    return w[i] * expm1_ratio(beta * (e[j] - e[i]));
}

inline double functional_factor(const RealVector& e, const RealVector& w, double beta,
                                Eigen::Index m, Eigen::Index l, int k) {
    if (k == 0) return weight_kernel(e, w, beta, m, l);
    const double amp = (k % 2 == 0) ? std::abs(w[l] - w[m]) : (w[l] + w[m]);
    if (k == 1) return amp;
    const double t = beta * std::abs(e[m] - e[l]);
    return amp * std::pow(t, k - 1);
}

bool inside_parallel_region() {
#ifdef _OPENMP
    return omp_in_parallel() != 0;
#else
    return false;
#endif
}

template <typename RowFn>
Complex row_parallel_sum(Eigen::Index dim, RowFn&& row) {
    // per-row partials combined in index order: deterministic for any thread count
    std::vector<Complex> partial(dim);
#pragma omp parallel for schedule(static)
    for (Eigen::Index m = 0; m < dim; ++m) partial[m] = row(m);
    Complex acc = 0.0;
    for (Eigen::Index m = 0; m < dim; ++m) acc += partial[m];
    return acc;
}

}  // namespace

namespace reference {

Complex bd_inner_sum(const RealVector& e, const RealVector& w, double beta,
                     const ComplexMatrix& atil, const ComplexMatrix& btil) {
    const Eigen::Index dim = e.size();
    Complex acc = 0.0;
    for (Eigen::Index m = 0; m < dim; ++m)
        for (Eigen::Index n = 0; n < dim; ++n)
            acc += std::conj(atil(m, n)) * btil(m, n) * weight_kernel(e, w, beta, m, n);
    return acc;
}

double functional_sum(const RealVector& e, const RealVector& w, double beta,
                      const ComplexMatrix& jtil, int k) {
    const Eigen::Index dim = e.size();
    double acc = 0.0;
    for (Eigen::Index m = 0; m < dim; ++m)
        for (Eigen::Index l = 0; l < dim; ++l)
            acc += std::norm(jtil(m, l)) * functional_factor(e, w, beta, m, l, k);
    return acc;
}

double gap_coth_sum(const RealVector& e, const RealVector& w, double beta,
                    const ComplexMatrix& atil) {
    const Eigen::Index dim = e.size();
    double acc = 0.0;
    for (Eigen::Index m = 0; m < dim; ++m)
        for (Eigen::Index n = 0; n < dim; ++n) {
            const double x = 0.5 * beta * (e[m] - e[n]);
            acc += std::norm(atil(m, n)) * weight_kernel(e, w, beta, m, n) * (xcothx(x) - 1.0);
        }
    return acc;
}

double gap_inverse_sum(const RealVector& e, const RealVector& w, double beta,
                       const ComplexMatrix& atil) {
    const Eigen::Index dim = e.size();
    double acc = 0.0;
    for (Eigen::Index m = 0; m < dim; ++m)
        for (Eigen::Index n = 0; n < dim; ++n) {
            const double x = 0.5 * beta * (e[m] - e[n]);
            acc += std::norm(atil(m, n)) * 0.5 * (w[n] + w[m]) * (1.0 - 1.0 / xcothx(x));
        }
    return acc;
}

Complex quadrature_sum(const RealVector& e, const RealVector& w, double beta,
                       const ComplexMatrix& atil, const ComplexMatrix& btil, int nodes) {
    const Eigen::Index dim = e.size();
    const QuadratureRule rule = gauss_legendre_01(nodes);
    const double e0 = e[0];
    const double inv_zshift = w[0];  // 1/Z' with the ground-state shift
    Complex acc = 0.0;
    std::vector<double> row_exp(dim), col_exp(dim);
    for (int q = 0; q < nodes; ++q) {
        const double tau = rule.nodes[q];
        for (Eigen::Index i = 0; i < dim; ++i) {
            row_exp[i] = std::exp(-beta * tau * (e[i] - e0));
            col_exp[i] = std::exp(-beta * (1.0 - tau) * (e[i] - e0));
        }
        Complex g = 0.0;
        for (Eigen::Index m = 0; m < dim; ++m) {
            Complex inner = 0.0;
            for (Eigen::Index n = 0; n < dim; ++n)
                inner += std::conj(atil(m, n)) * btil(m, n) * col_exp[n];
            g += row_exp[m] * inner;
        }
        acc += rule.weights[q] * g;
    }
    return acc * inv_zshift;
}

}  // namespace reference

Complex bd_inner_sum(const RealVector& e, const RealVector& w, double beta,
                     const ComplexMatrix& atil, const ComplexMatrix& btil) {
    if (inside_parallel_region()) return reference::bd_inner_sum(e, w, beta, atil, btil);
    return row_parallel_sum(e.size(), [&](Eigen::Index m) {
        Complex acc = 0.0;
        for (Eigen::Index n = 0; n < e.size(); ++n)
            acc += std::conj(atil(m, n)) * btil(m, n) * weight_kernel(e, w, beta, m, n);
        return acc;
    });
}

double functional_sum(const RealVector& e, const RealVector& w, double beta,
                      const ComplexMatrix& jtil, int k) {
    if (inside_parallel_region()) return reference::functional_sum(e, w, beta, jtil, k);
    return row_parallel_sum(e.size(), [&](Eigen::Index m) {
        double acc = 0.0;
        for (Eigen::Index l = 0; l < e.size(); ++l)
            acc += std::norm(jtil(m, l)) * functional_factor(e, w, beta, m, l, k);
        return Complex(acc, 0.0);
    }).real();
}

std::vector<double> functional_sums_upto(const RealVector& e, const RealVector& w, double beta,
                                         const ComplexMatrix& jtil, int kmax) {
    const Eigen::Index dim = e.size();
    const int nk = kmax + 1;
    std::vector<std::vector<double>> partial(size_t(dim), std::vector<double>(nk, 0.0));
#pragma omp parallel for schedule(static) if (!inside_parallel_region())
    for (Eigen::Index m = 0; m < dim; ++m) {
        auto& row = partial[size_t(m)];
        for (Eigen::Index l = 0; l < dim; ++l) {
            const double j2 = std::norm(jtil(m, l));
            if (j2 == 0.0) continue;
            row[0] += j2 * weight_kernel(e, w, beta, m, l);
            const double amp_even = std::abs(w[l] - w[m]);
            const double amp_odd = w[l] + w[m];
            const double t = beta * std::abs(e[m] - e[l]);
            double p = 1.0;  // t^{k-1} at k = 1
            for (int k = 1; k < nk; ++k) {
                row[k] += j2 * (k % 2 == 0 ? amp_even : amp_odd) * p;
                p *= t;
            }
        }
    }
    std::vector<double> out(nk, 0.0);
    for (Eigen::Index m = 0; m < dim; ++m)
        for (int k = 0; k < nk; ++k) out[k] += partial[size_t(m)][k];
    return out;
}

double gap_coth_sum(const RealVector& e, const RealVector& w, double beta,
                    const ComplexMatrix& atil) {
    if (inside_parallel_region()) return reference::gap_coth_sum(e, w, beta, atil);
    return row_parallel_sum(e.size(), [&](Eigen::Index m) {
        double acc = 0.0;
        for (Eigen::Index n = 0; n < e.size(); ++n) {
            const double x = 0.5 * beta * (e[m] - e[n]);
            acc += std::norm(atil(m, n)) * weight_kernel(e, w, beta, m, n) * (xcothx(x) - 1.0);
        }
        return Complex(acc, 0.0);
    }).real();
}

double gap_inverse_sum(const RealVector& e, const RealVector& w, double beta,
                       const ComplexMatrix& atil) {
    if (inside_parallel_region()) return reference::gap_inverse_sum(e, w, beta, atil);
    return row_parallel_sum(e.size(), [&](Eigen::Index m) {
        double acc = 0.0;
        for (Eigen::Index n = 0; n < e.size(); ++n) {
            const double x = 0.5 * beta * (e[m] - e[n]);
            acc += std::norm(atil(m, n)) * 0.5 * (w[n] + w[m]) * (1.0 - 1.0 / xcothx(x));
        }
        return Complex(acc, 0.0);
    }).real();
}

Complex quadrature_sum(const RealVector& e, const RealVector& w, double beta,
                       const ComplexMatrix& atil, const ComplexMatrix& btil, int nodes) {
    if (inside_parallel_region())
        return reference::quadrature_sum(e, w, beta, atil, btil, nodes);
    const Eigen::Index dim = e.size();
    const QuadratureRule rule = gauss_legendre_01(nodes);
    const double e0 = e[0];
    std::vector<Complex> partial(nodes);
#pragma omp parallel for schedule(static)
    for (int q = 0; q < nodes; ++q) {
        const double tau = rule.nodes[q];
        Complex g = 0.0;
        for (Eigen::Index m = 0; m < dim; ++m) {
            const double row_exp = std::exp(-beta * tau * (e[m] - e0));
            Complex inner = 0.0;
            for (Eigen::Index n = 0; n < dim; ++n)
                inner += std::conj(atil(m, n)) * btil(m, n) *
                         std::exp(-beta * (1.0 - tau) * (e[n] - e0));
            g += row_exp * inner;
        }
        partial[q] = rule.weights[q] * g;
    }
    Complex acc = 0.0;
    for (int q = 0; q < nodes; ++q) acc += partial[q];
    return acc * w[0];
}

}  // namespace bdp::kernels
