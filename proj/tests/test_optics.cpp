#include <cmath>

#include "doctest.h"
#include "qel/optics.hpp"

using namespace qel;

TEST_CASE("Poisson photon statistics") {
    const PhotonDistribution vac = poisson_photon_dist(0.0);
    CHECK(vac.probs[0] == 1.0);
    for (std::size_t n = 1; n < vac.probs.size(); ++n) CHECK(vac.probs[n] == 0.0);

    CHECK(poisson_photon_dist(0.1).probs[0] == doctest::Approx(std::exp(-0.1)).epsilon(1e-15));
    CHECK(std::abs(poisson_photon_dist(1.0, 20).total() - 1.0) <= 1e-15);

    // Truncation error at cutoff N is at most mu^(N+1)/(N+1)! for mu <= 1.
    for (double mu : {0.1, 0.5, 1.0})
        for (int n : {3, 5, 8}) {
            const PhotonDistribution p = poisson_photon_dist(mu, n);
            double missing = 0.0;  // summed directly; 1 - total() would be dominated by rounding
            for (int k = n + 1; k < n + 60; ++k) missing += std::exp(-mu) * std::pow(mu, k) / std::tgamma(k + 1);
            CHECK(missing <= std::pow(mu, n + 1) / std::tgamma(n + 2));
            CHECK(missing <= p.tail_bound * (1 + 1e-12));
            CHECK(std::abs((1.0 - p.total()) - missing) <= 1e-15);
        }

    CHECK_THROWS_AS(poisson_photon_dist(-0.1), std::invalid_argument);
}

TEST_CASE("signal kets") {
    const Ket r0 = signal_ket({Basis::rectilinear, 0});
    CHECK(std::abs(r0[0] - 1.0) == 0.0);
    CHECK(std::abs(r0[1]) == 0.0);
    const Ket d0 = signal_ket({Basis::diagonal, 0});
    CHECK(d0[0].real() == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(d0[1].real() == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(std::abs(d0.inner(signal_ket({Basis::diagonal, 1}))) < 1e-15);
}

TEST_CASE("symmetric two-photon encoding") {
    CHECK(std::abs(symmetric_encode({Basis::rectilinear, 0}).ket()[0] - 1.0) == 0.0);
    const Ket pp = symmetric_encode({Basis::diagonal, 0}).ket();
    for (std::size_t i = 0; i < 4; ++i) CHECK(pp[i].real() == doctest::Approx(0.5));
    for (const auto& s : all_signals()) CHECK(std::abs(symmetric_encode(s).ket().inner(bell_psi_minus())) < 1e-15);
    CHECK_THROWS_AS(SymmetricTwoQubit{bell_psi_minus()}, std::invalid_argument);
}

TEST_CASE("Fock occupations of two-photon states") {
    const TwoPhotonOccupation a = fock_from_symmetric(symmetric_encode({Basis::rectilinear, 0}), Basis::rectilinear);
    CHECK(a.p20 == doctest::Approx(1.0));
    const TwoPhotonOccupation b = fock_from_symmetric(symmetric_encode({Basis::diagonal, 0}), Basis::rectilinear);
    CHECK(b.p20 == doctest::Approx(0.25));
    CHECK(b.p11 == doctest::Approx(0.5));
    CHECK(b.p02 == doctest::Approx(0.25));
    const TwoPhotonOccupation c = fock_from_symmetric(SymmetricTwoQubit(bell_psi_plus()), Basis::rectilinear);
    CHECK(c.p11 == doctest::Approx(1.0));

    for (const auto& s : all_signals()) {
        const TwoPhotonOccupation o = fock_from_symmetric(symmetric_encode(s), s.basis);
        CHECK(o.p20 + o.p02 == doctest::Approx(1.0));
        CHECK((s.bit == 0 ? o.p20 : o.p02) == doctest::Approx(1.0));
    }
}

TEST_CASE("Fock occupations are covariant under the basis rotation") {
    const Operator hh = tensor(hadamard(), hadamard());
    const Ket psi = (Ket{0.6, 0.0, 0.0, 0.0} + bell_psi_plus() * cplx(0.0, 0.48) + Ket{0.0, 0.0, 0.0, 0.64}).normalized();
    const SymmetricTwoQubit s(psi);
    const SymmetricTwoQubit rotated(hh * psi);
    for (Basis b : {Basis::rectilinear, Basis::diagonal}) {
        const TwoPhotonOccupation x = fock_from_symmetric(s, b);
        const TwoPhotonOccupation y = fock_from_symmetric(rotated, other_basis(b));
        CHECK(x.p20 == doctest::Approx(y.p20).epsilon(1e-12));
        CHECK(x.p11 == doctest::Approx(y.p11).epsilon(1e-12));
        CHECK(x.p02 == doctest::Approx(y.p02).epsilon(1e-12));
    }
    const Operator rho = Operator::projector(psi);
    const TwoPhotonOccupation z = fock_from_symmetric(rho, Basis::diagonal);
    const TwoPhotonOccupation w = fock_from_symmetric(s, Basis::diagonal);
    CHECK(z.p11 == doctest::Approx(w.p11).epsilon(1e-12));
    CHECK_THROWS_AS(fock_from_symmetric(Operator::projector(bell_psi_minus()), Basis::rectilinear), std::invalid_argument);
}
