#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bdp/chains.hpp"
#include "bdp/models.hpp"
#include "bdp/rng.hpp"

#include <cmath>

using namespace bdp;

namespace {

const Complex I_UNIT(0.0, 1.0);

}

TEST_CASE("depth-zero chain is just the base observable") {
    Rng rng(3);
    const HermitianOperator h(random_hermitian(5, rng));
    const ComplexMatrix j = random_complex_matrix(5, rng);
    const CommutatorChain chain = build_chain(h, j, 0);
    CHECK(chain.depth() == 0);
    CHECK(max_abs(chain.base() - j) == 0.0);
    CHECK_THROWS_AS((void)chain.link(1), ShapeError);
    CHECK_THROWS_AS((void)build_chain(h, j, 9), ShapeError);
}

TEST_CASE("two-level chain: R_1 = 2i sigma_y, R_2 = 4 sigma_x") {
    const HermitianOperator h(pauli(Axis::z));
    const CommutatorChain chain = build_chain(h, pauli(Axis::x), 2);
    CHECK(max_abs(chain.link(1) - 2.0 * I_UNIT * pauli(Axis::y)) == 0.0);
    CHECK(max_abs(chain.link(2) - 4.0 * pauli(Axis::x)) == 0.0);
}

TEST_CASE("chain composition holds exactly as computed") {
    Rng rng(7);
    const HermitianOperator h(random_hermitian(6, rng));
    const ComplexMatrix j = random_complex_matrix(6, rng);
    const CommutatorChain full = build_chain(h, j, 6);
    for (int n = 0; n <= 3; ++n) {
        const CommutatorChain tail = build_chain(h, full.link(n), 3);
        CHECK(max_abs(tail.link(3) - full.link(n + 3)) == 0.0);
    }
}

TEST_CASE("links above the base have zero Gibbs average") {
    Rng rng(11);
    const HermitianOperator h(random_hermitian(6, rng));
    const SpectralSystem sys = decompose(h, 1.2);
    const CommutatorChain chain = build_chain(h, random_complex_matrix(6, rng), 4);
    for (int n = 1; n <= 4; ++n)
        CHECK(std::abs(gibbs_average(sys, chain.link(n))) <
              1e-10 * std::max(1.0, max_abs(chain.link(n))));
}

TEST_CASE("even identity route: two-level F_2 and the commuting case") {
    const HermitianOperator h(pauli(Axis::z));
    const SpectralSystem sys = decompose(h, 1.0);
    const CommutatorChain chain = build_chain(h, pauli(Axis::x), 2);
    const FunctionalValue f2 = f_even_via_identity(sys, chain, 1);
    CHECK(f2.route == Route::commutator_identity);
    CHECK(f2.k == 2);
    CHECK(f2.value == doctest::Approx(4.0 * std::tanh(1.0)).epsilon(1e-13));

    // J commuting with H: R_1 = 0, so every even value vanishes
    const CommutatorChain flat = build_chain(h, pauli(Axis::z), 2);
    CHECK(f_even_via_identity(sys, flat, 1).value == 0.0);
    CHECK(f_even_via_identity(sys, flat, 2).value == 0.0);
}

TEST_CASE("odd identity route: base case and two-level value") {
    const HermitianOperator h(pauli(Axis::z));
    const SpectralSystem sys = decompose(h, 1.0);
    const CommutatorChain chain = build_chain(h, pauli(Axis::x), 1);
    const double f1 = f_odd_via_identity(sys, chain, 0).value;
    CHECK(f1 == doctest::Approx(gibbs_average(sys, anticommutator(pauli(Axis::x),
                                                                  pauli(Axis::x)))
                                    .real())
                    .epsilon(1e-14));
    CHECK(f_odd_via_identity(sys, chain, 1).value == doctest::Approx(8.0).epsilon(1e-13));
}

TEST_CASE("spectral and identity routes agree to 1e-9 relative for k <= 7") {
    Rng rng(13);
    for (int t = 0; t < 8; ++t) {
        const HermitianOperator h(random_hermitian(6, rng));
        const SpectralSystem sys = decompose(h, 0.4 + 0.3 * t);
        const ComplexMatrix j = random_complex_matrix(6, rng);
        const CommutatorChain chain = build_chain(h, j, 3);
        for (int n = 1; n <= 3; ++n) {
            const double spectral = functional_f(sys, j, 2 * n).value;
            const double identity_route = f_even_via_identity(sys, chain, n).value;
            CHECK(std::abs(spectral - identity_route) <=
                  1e-9 * std::max({std::abs(spectral), std::abs(identity_route), 1e-12}));
        }
        for (int n = 0; n <= 3; ++n) {
            const double spectral = functional_f(sys, j, 2 * n + 1).value;
            const double identity_route = f_odd_via_identity(sys, chain, n).value;
            CHECK(std::abs(spectral - identity_route) <=
                  1e-9 * std::max({std::abs(spectral), std::abs(identity_route), 1e-12}));
        }
    }
}

TEST_CASE("delta_n: identity observable, two-level value, nonnegativity") {
    const HermitianOperator h(pauli(Axis::z));
    const SpectralSystem sys = decompose(h, 1.0);
    const CommutatorChain flat = build_chain(h, identity(2), 3);
    for (int n = 0; n <= 3; ++n) CHECK(std::abs(delta_n(sys, flat, n)) < 1e-14);

    const CommutatorChain chain = build_chain(h, pauli(Axis::x), 2);
    CHECK(delta_n(sys, chain, 0) == doctest::Approx(1.0 - std::tanh(1.0)).epsilon(1e-13));

    Rng rng(17);
    for (int t = 0; t < 5; ++t) {
        const HermitianOperator hr(random_hermitian(6, rng));
        const SpectralSystem rsys = decompose(hr, 2.0);
        const CommutatorChain rchain = build_chain(hr, random_complex_matrix(6, rng), 2);
        for (int n = 0; n <= 2; ++n) CHECK(delta_n(rsys, rchain, n) >= -1e-10);
    }
}

TEST_CASE("delta matches the functional form beta^{-2n}(F_{2n+1}/2 - F_{2n})") {
    Rng rng(19);
    const HermitianOperator h(random_hermitian(6, rng));
    const double beta = 1.6;
    const SpectralSystem sys = decompose(h, beta);
    const ComplexMatrix j = random_complex_matrix(6, rng);
    const CommutatorChain chain = build_chain(h, j, 2);
    for (int n = 0; n <= 2; ++n) {
        const double from_f = std::pow(beta, -2.0 * n) *
                              (0.5 * functional_f(sys, j, 2 * n + 1).value -
                               functional_f(sys, j, 2 * n).value);
        CHECK(delta_n(sys, chain, n) == doctest::Approx(from_f).epsilon(1e-9));
    }
}

TEST_CASE("substitution property: Delta_n(J) = Delta_0(R_n(J))") {
    Rng rng(23);
    const HermitianOperator h(random_hermitian(6, rng));
    const SpectralSystem sys = decompose(h, 1.0);
    const CommutatorChain chain = build_chain(h, random_complex_matrix(6, rng), 3);
    for (int n = 0; n <= 3; ++n) {
        const CommutatorChain sub = build_chain(h, chain.link(n), 0);
        CHECK(delta_n(sys, chain, n) ==
              doctest::Approx(delta_n(sys, sub, 0)).epsilon(1e-12));
    }
}

TEST_CASE("collective-spin chain link matches the hand-derived closed form") {
    HeisenbergSpec spec;
    spec.n_spins = 4;
    spec.g_x = 0.6;
    spec.g_y = 0.25;
    spec.h = {0.15, 0.3, 0.45};
    const HermitianOperator h = build_heisenberg(spec);
    const ComplexMatrix jx = collective_spin(4, Axis::x).matrix();
    const ComplexMatrix jy = collective_spin(4, Axis::y).matrix();
    const ComplexMatrix jz = collective_spin(4, Axis::z).matrix();
    const CommutatorChain chain = build_chain(h, jx, 1);
    const ComplexMatrix closed =
        2.0 * I_UNIT *
        (spec.g_y * (jy * jz + jz * jy) + spec.h[1] * jz - spec.h[2] * jy);
    CHECK(max_abs(chain.link(1) - closed) < 1e-12);
}

TEST_CASE("conditions report collects means and functional values") {
    const HermitianOperator h(pauli(Axis::z));
    const SpectralSystem sys = decompose(h, 1.0);
    const CommutatorChain chain = build_chain(h, pauli(Axis::x), 2);
    const ConditionsReport report = evaluate_conditions(sys, chain, 2);
    CHECK(report.n_max == 2);
    CHECK(report.j_mean_abs < 1e-14);
    REQUIRE(report.f_even.size() == 2);
    REQUIRE(report.f_odd.size() == 3);
    CHECK(report.f_even[0].second == doctest::Approx(4.0 * std::tanh(1.0)).epsilon(1e-12));
    CHECK(report.f_odd[1].second == doctest::Approx(8.0).epsilon(1e-12));
    for (const auto& [n, value] : report.f_even) CHECK(value >= 0.0);
    for (const auto& [n, value] : report.f_odd) CHECK(value >= 0.0);
}

TEST_CASE("blocked chain measurements match the full representation") {
    HeisenbergSpec spec;
    spec.n_spins = 5;
    spec.g_x = 0.4;
    spec.g_y = 0.3;
    spec.h = {0.2, 0.0, 0.35};
    spec.representation = Representation::full;
    const HeisenbergSystem full = prepare_heisenberg(spec);
    spec.representation = Representation::blocked;
    const HeisenbergSystem blocked = prepare_heisenberg(spec);

    const CommutatorChain fchain =
        build_chain(HermitianOperator(full.hamiltonian[0]), full.jx[0], 2);
    const BlockedChain bchain = build_chain(blocked.hamiltonian, blocked.jx, 2);
    const SpectralSystem& fsys = full.sys.blocks[0].sys;

    for (int n = 1; n <= 2; ++n)
        CHECK(f_even_via_identity(blocked.sys, bchain, n).value ==
              doctest::Approx(f_even_via_identity(fsys, fchain, n).value).epsilon(1e-10));
    for (int n = 0; n <= 2; ++n) {
        CHECK(f_odd_via_identity(blocked.sys, bchain, n).value ==
              doctest::Approx(f_odd_via_identity(fsys, fchain, n).value).epsilon(1e-10));
        CHECK(delta_n(blocked.sys, bchain, n) ==
              doctest::Approx(delta_n(fsys, fchain, n)).epsilon(1e-9));
    }
    const ConditionsReport fr = evaluate_conditions(fsys, fchain, 2);
    const ConditionsReport br = evaluate_conditions(blocked.sys, bchain, 2);
    CHECK(br.j_mean_abs == doctest::Approx(fr.j_mean_abs).epsilon(1e-10));
    for (size_t i = 0; i < fr.f_odd.size(); ++i)
        CHECK(br.f_odd[i].second == doctest::Approx(fr.f_odd[i].second).epsilon(1e-9));
}
