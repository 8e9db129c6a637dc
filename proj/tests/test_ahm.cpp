#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bdp/ahm.hpp"
#include "bdp/duhamel.hpp"
#include "bdp/rng.hpp"

#include <cmath>

using namespace bdp;

namespace {

HeisenbergSpec default_spec(int n) {
    HeisenbergSpec spec;
    spec.n_spins = n;
    spec.g_x = 0.35;
    spec.g_y = 0.2;
    spec.h = {0.5, 0.0, 0.4};
    spec.representation = Representation::blocked;
    return spec;
}

}  // namespace

TEST_CASE("pattern minimizer recovers a quadratic minimum") {
    auto cost = [](const std::vector<double>& x) {
        return (x[0] - 0.37) * (x[0] - 0.37) + 2.0 * (x[1] + 0.61) * (x[1] + 0.61);
    };
    std::vector<double> axis;
    for (double v = -2.0; v <= 2.0 + 1e-12; v += 0.25) axis.push_back(v);
    const MinimizeOutcome out = minimize_pattern(cost, {axis, axis}, 0.25);
    CHECK(out.converged);
    CHECK(std::abs(out.x[0] - 0.37) < 1e-6);
    CHECK(std::abs(out.x[1] + 0.61) < 1e-6);
}

TEST_CASE("gap vanishes when there is nothing to approximate") {
    // tiny couplings, zero optimal parameters: the approximant differs from
    // the model only through the quadratic terms, which scale with g
    HeisenbergSpec spec = default_spec(3);
    spec.g_x = 1e-9;
    spec.g_y = 1e-9;
    spec.h = {0.0, 0.0, 0.3};
    CHECK(std::abs(free_energy_gap(spec, {})) < 1e-8);
}

TEST_CASE("gap at the self-consistent point obeys the fluctuation bound") {
    const HeisenbergSpec spec = default_spec(5);
    const HeisenbergSystem model = prepare_heisenberg(spec);
    const Complex ax = gibbs_average(model.sys, model.jx);
    const Complex ay = gibbs_average(model.sys, model.jy);
    const double gap = free_energy_gap(spec, {ax, ay});
    CHECK(gap >= -1e-9);
    CHECK(gap <= heisenberg_gap_upper_bound(spec) + 1e-9);
}

TEST_CASE("optimal gap: nonnegative, below the bound, decreasing in N") {
    double previous = std::numeric_limits<double>::infinity();
    for (int n = 2; n <= 8; ++n) {
        const VariationalResult res = minimize_gap(default_spec(n));
        CHECK(res.converged);
        CHECK(res.gap >= -1e-9);
        CHECK(res.gap <= heisenberg_gap_upper_bound(default_spec(n)) + 1e-9);
        CHECK(res.gap <= previous + 1e-10);
        previous = res.gap;
    }
}

TEST_CASE("symmetric phase optimum sits at zero") {
    HeisenbergSpec spec = default_spec(4);
    spec.g_x = 0.1;
    spec.g_y = 0.1;
    spec.h = {0.0, 0.0, 0.2};
    const VariationalResult res = minimize_gap(spec);
    CHECK(std::abs(res.params_opt[0]) < 1e-4);
    CHECK(std::abs(res.params_opt[1]) < 1e-4);
}

TEST_CASE("probing around the optimum never improves the approximant") {
    const HeisenbergSpec spec = default_spec(4);
    const VariationalResult res = minimize_gap(spec);
    const double delta = 1e-3;
    for (int dir = 0; dir < 8; ++dir) {
        std::array<Complex, 2> probe{res.params_opt[0], res.params_opt[1]};
        const int channel = dir / 4;
        const bool imag_part = (dir / 2) % 2 == 1;
        const double sign = dir % 2 == 0 ? 1.0 : -1.0;
        probe[size_t(channel)] += imag_part ? Complex(0.0, sign * delta) : Complex(sign * delta, 0.0);
        CHECK(heisenberg_approx_free_energy(spec, probe) >= res.f_approx_min - 1e-8);
    }
}

TEST_CASE("gap nonnegativity across random draws") {
    Rng rng(5);
    std::uniform_real_distribution<double> u(0.05, 0.9);
    for (int t = 0; t < 50; ++t) {
        HeisenbergSpec spec;
        spec.n_spins = 4;
        spec.g_x = u(rng);
        spec.g_y = u(rng);
        spec.h = {u(rng) - 0.5, 0.0, u(rng) - 0.5};
        spec.representation = Representation::blocked;
        GridSpec grid;
        grid.step = 0.5;
        CHECK(minimize_gap(spec, {}, grid).gap >= -1e-9);
    }
}

TEST_CASE("dicke gap vanishes identically at lambda = 0") {
    DickeSpec spec;
    spec.n_spins = 2;
    spec.lambda = 0.0;
    CHECK(std::abs(free_energy_gap(spec, 1.0, 16, 0.0)) < 1e-12);
}

TEST_CASE("dicke variational gap is nonnegative and shrinks with V") {
    DickeSpec spec;
    spec.n_spins = 2;
    spec.lambda = 0.4;
    const VariationalResult small = minimize_gap(spec, 1.0, 24);
    spec.n_spins = 4;
    const VariationalResult large = minimize_gap(spec, 1.0, 24);
    CHECK(small.gap >= -1e-9);
    CHECK(large.gap >= -1e-9);
    CHECK(large.gap < small.gap);
}

TEST_CASE("susceptibility relation for the collective model") {
    const SusceptibilityCheck check = susceptibility_check(default_spec(5), 0);
    CHECK(check.relative_residual < 1e-4);
    CHECK(check.duhamel_value > 0.0);
    // decoupled channel: second derivative reduces to the plain variance form
    HeisenbergSpec flat = default_spec(3);
    flat.g_x = 1e-12;
    flat.g_y = 1e-12;
    flat.h = {0.0, 0.0, 0.4};
    const SusceptibilityCheck decoupled = susceptibility_check(flat, 0);
    CHECK(decoupled.relative_residual < 1e-4);
}

TEST_CASE("susceptibility relation for the boson channel") {
    DickeSpec spec;
    spec.n_spins = 2;
    spec.lambda = 0.4;
    const SusceptibilityCheck check = susceptibility_check(spec, 1.0, 24);
    CHECK(check.relative_residual < 1e-4);
    CHECK(check.scale == doctest::Approx(1.0));  // the volume factors cancel
}

TEST_CASE("cutoff convergence ladder accepts stable evaluations") {
    int calls = 0;
    const int accepted = converge_cutoff(16, 128, 1e-8, [&](int) {
        ++calls;
        return std::vector<double>{1.0, 2.0};
    });
    CHECK(accepted == 20);
    CHECK(calls == 2);
}

TEST_CASE("cutoff convergence failure names the cap") {
    int budget = 2;
    CHECK_THROWS_AS((void)converge_cutoff(budget, budget, 1e-8,
                                          [&](int d) {
                                              return std::vector<double>{1.0 / d};
                                          }),
                    NumericError);
}

TEST_CASE("under-resolved strong-coupling run fails cutoff convergence") {
    DickeSpec spec;
    spec.n_spins = 2;
    spec.lambda = 1.0;
    CHECK_THROWS_AS((void)dicke_identity_suite(spec, 1.0, 2, 2), NumericError);
}

TEST_CASE("dicke identity suite at weak and strong coupling") {
    for (double lambda : {0.2, 1.0}) {
        DickeSpec spec;
        spec.n_spins = 2;
        spec.lambda = lambda;
        const DickeSuiteReport report = dicke_identity_suite(spec, 1.0);
        CHECK(report.pass);
        for (const CheckLine& line : report.lines) CHECK(line.pass);
        CHECK(report.cutoff >= 16);
    }
}

TEST_CASE("free mode: (b;b) equals 1/(beta omega)") {
    DickeSpec spec;
    spec.n_spins = 2;
    spec.lambda = 0.0;
    spec.omega = 1.4;
    const double beta = 0.9;
    const DickeSystem m = prepare_dicke(spec, beta, 48);
    CHECK(bd_inner(m.sys, m.b, m.b).real() ==
          doctest::Approx(1.0 / (beta * spec.omega)).epsilon(1e-8));
}

TEST_CASE("schwarz bound: decoupled zero and strict slack at coupling") {
    DickeSpec spec;
    spec.n_spins = 2;
    spec.lambda = 0.0;
    const CheckLine free_line = schwarz_bound_check(prepare_dicke(spec, 1.0, 16));
    CHECK(free_line.lhs < 1e-13);
    CHECK(free_line.pass);
    for (int n = 2; n <= 8; n += 2) {
        DickeSpec s;
        s.n_spins = n;
        s.lambda = 0.45;
        const CheckLine line = schwarz_bound_check(prepare_dicke(s, 1.0, 24));
        CHECK(line.pass);
        CHECK(line.rhs - line.lhs > 1e-6);  // never saturated at finite coupling
        CHECK(line.rhs < 1.0);              // O(1) across the sweep
    }
}

TEST_CASE("source-dressed decomposition bound at gamma = 1/3") {
    const double gamma = 1.0 / 3.0;
    const Complex nu(0.05, 0.02);
    const double beta = 1.0;
    for (int n : {2, 3, 4}) {
        DickeSpec spec;
        spec.n_spins = n;
        spec.lambda = 0.4;
        const double v = dicke_volume(spec);
        const VariationalResult res = minimize_gap(spec, beta, 24, nu);
        const DickeSystem m = prepare_dicke(spec, beta, 24, nu);
        const Complex amean = gibbs_average(m.sys, m.a);
        const Complex bmean = gibbs_average(m.sys, m.b);
        std::vector<ComplexMatrix> da2, db2;
        for (size_t i = 0; i < m.a.size(); ++i) {
            const ComplexMatrix da = m.a[i] - amean * identity(m.a[i].rows());
            const ComplexMatrix db = m.b[i] - bmean * identity(m.b[i].rows());
            da2.push_back(da.adjoint() * da);
            db2.push_back(db.adjoint() * db);
        }
        const double bound =
            std::pow(v, -0.5 - gamma) * spec.lambda * spec.lambda / spec.omega *
                gibbs_average(m.sys, da2).real() +
            std::pow(v, -0.5 + gamma) * spec.omega * gibbs_average(m.sys, db2).real();
        CHECK(res.gap <= bound + 1e-9);
    }
}

TEST_CASE("boson occupation stays extensive when (A;A) is bounded") {
    const double beta = 1.0, omega = 1.0;
    for (int n = 2; n <= 8; n += 2) {
        DickeSpec spec;
        spec.n_spins = n;
        spec.lambda = 0.5;
        const DickeSystem m = prepare_dicke(spec, beta, 32);
        std::vector<ComplexMatrix> number;
        for (const auto& b : m.b) number.push_back(b.adjoint() * b);
        const double nbar = gibbs_average(m.sys, number).real();
        const double aa = bd_inner(m.sys, m.a, m.a).real();
        // chain of the Harris bound and the boson-matter product relation
        const double budget = 1.0 / (beta * omega) + m.volume * spec.lambda * spec.lambda /
                                                         (omega * omega) * aa +
                              beta * omega / 12.0;
        CHECK(nbar <= budget);
        CHECK(nbar / m.volume <= budget / m.volume + 1e-12);
    }
}
