#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "qel/attacks.hpp"
#include "qel/infotheory.hpp"
#include "qel/optics.hpp"

using namespace qel;
using std::numbers::pi;

TEST_CASE("PNS information") {
    for (double p : {0.0, 0.3, 0.8}) CHECK(pns_information(p, 0.0) == doctest::Approx(p));
    for (double d : {0.0, 0.1, 0.4}) {
        CHECK(pns_information(1.0, d) == doctest::Approx(1.0));
        CHECK(pns_information(0.0, d) == doctest::Approx(fuchs_information(d)).epsilon(1e-15));
    }
    CHECK(matched_two_photon_fraction(1.0) == 1.0);
    CHECK(matched_two_photon_fraction(0.0) == 0.5);
    CHECK(matched_two_photon_fraction(0.2) == doctest::Approx(1.0 / 1.8));
    CHECK(pns_information_matched(0.9, 0.0) == doctest::Approx(1.0 / 1.1));
    for (double d : {0.0, 0.05, 0.3}) CHECK(pns_information_matched(1.0, d) == doctest::Approx(1.0));

    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 200; ++t) {
        const double eta = u(rng), d = 0.5 * u(rng);
        CHECK(std::abs(pns_information_matched(eta, d) - pns_information(matched_two_photon_fraction(eta), d)) <= 1e-14);
    }
}

TEST_CASE("matched PNS information is monotone") {
    for (double d : {0.05, 0.2, 0.45})
        for (int i = 0; i < 20; ++i)
            CHECK(pns_information_matched(0.05 * (i + 1), d) > pns_information_matched(0.05 * i, d));
    for (double eta : {0.1, 0.5, 0.9})
        for (int i = 0; i < 50; ++i)
            CHECK(pns_information_matched(eta, 0.01 * (i + 1)) >= pns_information_matched(eta, 0.01 * i));
}

TEST_CASE("strategy A unitary") {
    SUBCASE("beta = 0 leaves the signal untouched") {
        const Operator u = strategy_a_unitary(CloneAParams(0.0));
        for (const auto& s : all_signals()) {
            const Ket in = tensor(symmetric_encode(s).ket(), Ket::basis(4, 0));
            const Ket expected = tensor(symmetric_encode(s).ket(), bell_phi_plus());
            CHECK(std::abs(std::abs((u * in).inner(expected)) - 1.0) < 1e-12);
        }
    }
    SUBCASE("norm preserved and Bob stays symmetric") {
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> u01(0.0, 1.0 / std::sqrt(8.0));
        for (double beta : {0.2, u01(rng), u01(rng), u01(rng)}) {
            const Operator u = strategy_a_unitary(CloneAParams(beta));
            for (const auto& s : all_signals()) {
                const Ket out = u * tensor(symmetric_encode(s).ket(), Ket::basis(4, 0));
                CHECK(out.norm() == doctest::Approx(1.0).epsilon(1e-13));
                const Operator bob = partial_trace(Operator::projector(out), Subsystem::a, 4, 4);
                CHECK(std::abs(singlet_weight(bob)) < 1e-12);
            }
        }
    }
    CHECK_THROWS_AS(CloneAParams(0.5), std::invalid_argument);
}

TEST_CASE("strategy A disturbance calibration") {
    CHECK(strategy_a_disturbance_for_beta(0.0) == doctest::Approx(0.0));
    for (double d : {0.01, 0.1, 1.0 / 6.0, 0.25}) {
        const double beta = strategy_a_beta_for_disturbance(d);
        CHECK(strategy_a_disturbance_for_beta(beta) == doctest::Approx(d).epsilon(1e-10));
    }
    for (int i = 1; i < 20; ++i)
        CHECK(strategy_a_disturbance_for_beta(0.0175 * (i + 1)) > strategy_a_disturbance_for_beta(0.0175 * i));
}

TEST_CASE("strategy A probes and information") {
    const ProbePair p0 = strategy_a_probe_states(0.0);
    const Operator phi_plus = Operator::projector(bell_phi_plus());
    CHECK(max_abs_diff(p0.rho_plus, phi_plus) < 1e-15);
    CHECK(max_abs_diff(p0.rho_minus, phi_plus) < 1e-15);
    CHECK(strategy_a_probe_overlap(1.0 / 6.0) == doctest::Approx(0.0).epsilon(1e-15));

    for (int i = 0; i <= 24; ++i) {
        const double d = 0.01 * i;
        const ProbePair p = strategy_a_probe_states(d);
        CHECK(check_density(p.rho_plus));
        CHECK(check_density(p.rho_minus));
        if (d < 0.25) {
            // Overlap of the pure components from the closed form.
            const BlockRestriction r = restrict_to_block(p.rho_plus, p.rho_minus, bell_phi_plus(), bell_psi_plus());
            const double c0 = std::sqrt(r.block0(0, 0).real()), s0 = std::sqrt(r.block0(1, 1).real());
            const double c1 = std::sqrt(r.block1(0, 0).real()), s1 = std::sqrt(r.block1(1, 1).real());
            const double sign = r.block1(0, 1).real() < 0 ? -1.0 : 1.0;
            CHECK(std::abs(c0 * c1 + sign * s0 * s1 - strategy_a_probe_overlap(d)) <= 1e-12);
        }
    }
    CHECK(strategy_a_information(0.0) == 0.0);
    CHECK(strategy_a_information(0.25) == doctest::Approx(0.5));
    CHECK(strategy_a_information(0.1) == doctest::Approx(0.7163368778677841).epsilon(1e-12));
}

TEST_CASE("strategy B maps") {
    const CloneBParams g0(0.0);
    const Operator v = strategy_b_v_map(g0);
    CHECK(std::abs(v(0, 0) - 1.0) < 1e-15);  // V|00>|0> = |000>
    const double s = 1.0 / std::sqrt(2.0);
    const Ket psi_plus_in = tensor(bell_psi_plus(), Ket::basis(2, 0));
    const Ket out = v * psi_plus_in;
    const Ket expected = (Ket::basis(8, 2) + Ket::basis(8, 4)) * s;  // (|010> + |100>)/sqrt2
    CHECK(std::abs(out.inner(expected) - 1.0) < 1e-12);

    // Bit-flip relation on basis states.
    const CloneBParams g(1.0);
    const Operator vb = strategy_b_v_map(g), vt = strategy_b_v_tilde_map(g);
    Eigen::MatrixXcd x(2, 2);
    x << 0, 1, 1, 0;
    const Operator xx = Operator(x);
    const Operator x3 = tensor(tensor(xx, xx), xx);
    const Operator xxi = tensor(tensor(xx, xx), Operator::identity(2));
    CHECK(max_abs_diff(vt, x3 * vb * xxi) < 1e-15);

    // Isometry on random inputs from the symmetric subspace with the probe at |00>.
    const Operator u = strategy_b_unitary(g);
    std::mt19937_64 rng(3);
    std::normal_distribution<double> n;
    for (int t = 0; t < 10; ++t) {
        const Ket sym = (Ket::basis(4, 0) * cplx(n(rng), n(rng)) + bell_psi_plus() * cplx(n(rng), n(rng)) +
                         Ket::basis(4, 3) * cplx(n(rng), n(rng)))
                            .normalized();
        CHECK((u * tensor(sym, Ket::basis(4, 0))).norm() == doctest::Approx(1.0).epsilon(1e-13));
    }
    CHECK_THROWS_AS(CloneBParams(-0.1), std::invalid_argument);
    CHECK_THROWS_AS(CloneBParams(3.2), std::invalid_argument);
}

TEST_CASE("strategy B coefficients") {
    const StrategyBCoefficients k0 = strategy_b_coefficients(0.0);
    CHECK(k0.a == doctest::Approx(8.0));
    CHECK(k0.b == doctest::Approx(8.0));
    CHECK(k0.c == doctest::Approx(8.0));
    CHECK(std::abs(k0.d) < 1e-14);
    CHECK(std::abs(k0.e) < 1e-14);
    CHECK(std::abs(k0.f) < 1e-14);

    const StrategyBCoefficients k = strategy_b_coefficients(pi / 2);
    const double r2 = std::sqrt(2.0);
    CHECK(k.a == doctest::Approx(5 + 2 * r2).epsilon(1e-13));
    CHECK(k.c == doctest::Approx(5 - 2 * r2).epsilon(1e-13));
    CHECK(k.d == doctest::Approx(3 + 2 * r2).epsilon(1e-13));
    CHECK(k.f == doctest::Approx(3 - 2 * r2).epsilon(1e-13));

    for (int i = 0; i <= 40; ++i) {
        const double g = pi * i / 40;
        const StrategyBCoefficients p = strategy_b_coefficients(g), m = strategy_b_coefficients(-g);
        CHECK(p.c == doctest::Approx(m.a).epsilon(1e-12));
        CHECK(p.f == doctest::Approx(m.d).epsilon(1e-12));
        CHECK((p.a + p.c + p.d + p.f) / 16.0 == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("strategy B probe states") {
    const ProbePair p0 = strategy_b_probe_states(0.0);
    const auto ev = hermitian_eigenvalues(p0.rho_plus);
    CHECK(ev[3] == doctest::Approx(1.0));
    CHECK(std::abs(ev[2]) < 1e-12);

    const auto pm = diagonal_product_basis();
    for (int i = 0; i <= 30; ++i) {
        const double g = pi * i / 30;
        const ProbePair p = strategy_b_probe_states(g);
        CHECK(check_density(p.rho_plus));
        CHECK(check_density(p.rho_minus));
        // rho_- is rho_+ with a<->c and d<->f.
        CHECK(p.rho_minus.expectation(pm[0]) == doctest::Approx(p.rho_plus.expectation(pm[3])).epsilon(1e-12));
        CHECK(p.rho_minus.expectation(pm[1]) == doctest::Approx(p.rho_plus.expectation(pm[2])).epsilon(1e-12));
    }
}

TEST_CASE("strategy B disturbance and information") {
    CHECK(strategy_b_disturbance(0.0) == doctest::Approx(0.0));
    CHECK(strategy_b_disturbance(pi / 2) == doctest::Approx(0.25).epsilon(1e-15));
    for (int i = 0; i < 100; ++i)
        CHECK(strategy_b_disturbance(pi / 2 * (i + 1) / 100) > strategy_b_disturbance(pi / 2 * i / 100));
    for (double d : {0.0, 0.01, 0.1, 0.2, 0.25})
        CHECK(std::abs(strategy_b_disturbance(strategy_b_gamma_for_disturbance(d)) - d) <= 1e-10);

    CHECK(strategy_b_information(0.0) == 0.0);
    CHECK(strategy_b_information(pi / 2) == doctest::Approx(0.4579238268224637).epsilon(1e-12));
    double best = 0.0;
    for (int i = 0; i <= 2000; ++i) best = std::max(best, strategy_b_information(pi * i / 2000));
    CHECK(best < 1.0);

    // Closed form equals blockwise Levitin on the two blocks.
    const auto pm = diagonal_product_basis();
    for (int i = 1; i <= 30; ++i) {
        const double g = pi * i / 31;
        const ProbePair p = strategy_b_probe_states(g);
        std::vector<InformationBlock> blocks;
        for (auto [x, y] : {std::pair{0, 3}, std::pair{1, 2}}) {
            const BlockRestriction r = restrict_to_block(p.rho_plus, p.rho_minus, pm[x], pm[y]);
            blocks.push_back({r.weight0, TwoStateEnsemble(r.block0, r.block1)});
        }
        CHECK(std::abs(blockwise_information(blocks) - strategy_b_information(g)) <= 1e-12);
    }
}

TEST_CASE("information curves") {
    const std::vector<double> grid = uniform_grid(0.0, 0.5, kDefaultCurvePoints);
    CHECK(grid.size() == 500);
    for (double eta : {0.1, 0.2, 0.9}) {
        const auto pts = information_curves(eta, grid);
        REQUIRE(pts.size() == grid.size());
        CHECK(pts[0].i_pns == doctest::Approx(1.0 / (2.0 - eta)));
        CHECK(*pts[0].i_a == 0.0);
        CHECK(*pts[0].i_b == doctest::Approx(0.0).epsilon(1e-9));
        for (const auto& p : pts) {
            CHECK(p.i_a.has_value() == (p.d <= 0.25));
            CHECK(p.i_b.has_value() == (p.d <= 0.25));
        }
    }
    const auto a = information_curves(0.2, grid), b = information_curves(0.7, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(a[i].i_a == b[i].i_a);
        CHECK(a[i].i_b == b[i].i_b);
    }
    bool a_wins = false;
    for (const auto& p : a) a_wins = a_wins || (p.i_a && *p.i_a > p.i_pns);
    CHECK(a_wins);

    CHECK_THROWS_AS(uniform_grid(0.0, 0.5, 1), std::invalid_argument);
    CHECK_THROWS_AS(uniform_grid(0.5, 0.0, 10), std::invalid_argument);
    const std::vector<double> bad{0.1, 0.6};
    CHECK_THROWS_AS(information_curves(0.2, bad), std::invalid_argument);
    CHECK_FALSE(cloning_information(CloningStrategy::a, 0.3).has_value());
}
