#pragma once

#include "bdp/models.hpp"

#include <functional>
#include <optional>

namespace bdp {

struct VariationalResult {
    std::vector<Complex> params_opt;
    double f_approx_min = 0.0;
    double f_model = 0.0;
    double gap = 0.0;  // f_approx_min - f_model, >= -1e-9 at the optimum
    int iterations = 0;
    bool converged = false;
};

struct GridSpec {
    double lo = -2.0;
    double hi = 2.0;
    double step = 0.25;
};

/// Derivative-free minimizer: coarse grid then coordinate pattern search down
/// to parameter tolerance 1e-6; converged when the last improvement < 1e-10.
struct MinimizeOutcome {
    std::vector<double> x;
    double value = 0.0;
    int iterations = 0;
    bool converged = false;
};
MinimizeOutcome minimize_pattern(const std::function<double(const std::vector<double>&)>& f,
                                 std::vector<std::vector<double>> grid_axes, double step0,
                                 int max_iterations = 10000);

// --- Heisenberg ---

double free_energy_gap(const HeisenbergSpec& spec, std::array<Complex, 2> a,
                       std::array<Complex, 2> nu = {});

VariationalResult minimize_gap(const HeisenbergSpec& spec, std::array<Complex, 2> nu = {},
                               GridSpec grid = {});

/// Upper bound on the optimal gap: sum_s g_s <(A_s - <A_s>)(A_s - <A_s>)^dag>
/// in the source-dressed ensemble.
double heisenberg_gap_upper_bound(const HeisenbergSpec& spec, std::array<Complex, 2> nu = {});

// --- Dicke ---

double free_energy_gap(const DickeSpec& spec, double beta, int cutoff, Complex eta,
                       Complex nu = 0.0);

VariationalResult minimize_gap(const DickeSpec& spec, double beta, int cutoff, Complex nu = 0.0,
                               GridSpec grid = {});

// --- susceptibility relation ---

struct SusceptibilityCheck {
    int channel = 0;
    double second_derivative_fd = 0.0;  // d^2 f / d nu^* d nu, five-point stencils
    double duhamel_value = 0.0;         // (delta A; delta A)
    double scale = 0.0;                 // beta * size factor of the relation
    double residual = 0.0;              // |fd + scale * duhamel|
    double relative_residual = 0.0;
};

SusceptibilityCheck susceptibility_check(const HeisenbergSpec& spec, int channel,
                                         std::array<Complex, 2> nu0 = {}, double step = 1e-3);
SusceptibilityCheck susceptibility_check(const DickeSpec& spec, double beta, int cutoff,
                                         Complex nu0 = 0.0, double step = 1e-3);

// --- Dicke identity and bound suite ---

struct CheckLine {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct DickeSuiteReport {
    int cutoff = 0;
    std::vector<CheckLine> lines;
    bool pass = false;
};

/// Evaluate, after Fock-cutoff convergence, the exact relations tying the
/// boson and matter Duhamel products together, plus the Harris bound on b.
/// Throws NumericError when the cutoff ladder is exhausted before convergence.
DickeSuiteReport dicke_identity_suite(const DickeSpec& spec, double beta, int cutoff_start = 16,
                                      int cutoff_cap = 128);

/// |<V^{-1/2} b^dag A>| <= <V^{-1} b^dag b>^{1/2} <A A^dag>^{1/2} on one system.
CheckLine schwarz_bound_check(const DickeSystem& system);

/// Escalating-cutoff evaluation: quantities from eval(d) and eval(d+4) must
/// agree within tol before the values are accepted. Returns the accepted
/// cutoff; throws NumericError naming the failure otherwise.
int converge_cutoff(int start, int cap, double tol,
                    const std::function<std::vector<double>(int)>& eval);

}  // namespace bdp
