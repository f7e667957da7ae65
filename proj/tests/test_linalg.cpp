#include <random>

#include "doctest.h"
#include "qel/linalg.hpp"
#include "qel/optics.hpp"

using namespace qel;

namespace {

Operator random_hermitian(std::mt19937_64& rng, int n) {
    std::normal_distribution<double> g;
    Eigen::MatrixXcd m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = cplx(g(rng), g(rng));
    return Operator((m + m.adjoint()) / 2.0);
}

Operator random_density(std::mt19937_64& rng, int n) {
    std::normal_distribution<double> g;
    Eigen::MatrixXcd a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = cplx(g(rng), g(rng));
    Eigen::MatrixXcd rho = a * a.adjoint();
    return Operator(rho / rho.trace());
}

}  // namespace

TEST_CASE("tensor of identities and basis kets") {
    CHECK(max_abs_diff(tensor(Operator::identity(2), Operator::identity(2)), Operator::identity(4)) == 0.0);
    const Ket k = tensor(Ket::basis(2, 0), Ket::basis(2, 1));
    REQUIRE(k.dim() == 4);
    for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(k[i] - cplx(i == 1 ? 1.0 : 0.0)) == 0.0);
}

TEST_CASE("trace is multiplicative under tensor") {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 10; ++t) {
        const Operator a = random_hermitian(rng, 2), b = random_hermitian(rng, 3);
        CHECK(std::abs(tensor(a, b).trace() - a.trace() * b.trace()) < 1e-12);
    }
}

TEST_CASE("tensor is associative") {
    std::mt19937_64 rng(4);
    const Operator a = random_hermitian(rng, 2), b = random_hermitian(rng, 3), c = random_hermitian(rng, 2);
    const Operator left = tensor(tensor(a, b), c), right = tensor(a, tensor(b, c));
    CHECK(left.dim() == 12);
    CHECK(max_abs_diff(left, right) < 1e-14);
}

TEST_CASE("partial trace") {
    std::mt19937_64 rng(5);
    SUBCASE("product state returns each factor") {
        const Operator ra = random_density(rng, 2), rb = random_density(rng, 3);
        CHECK(max_abs_diff(partial_trace(tensor(ra, rb), Subsystem::a, 2, 3), ra) <= 1e-12);
        CHECK(max_abs_diff(partial_trace(tensor(ra, rb), Subsystem::b, 2, 3), rb) <= 1e-12);
    }
    SUBCASE("Bell state marginals are maximally mixed") {
        const Operator bell = Operator::projector(bell_phi_plus());
        const Operator half = Operator::identity(2) * 0.5;
        CHECK(max_abs_diff(partial_trace(bell, Subsystem::a, 2, 2), half) < 1e-15);
        CHECK(max_abs_diff(partial_trace(bell, Subsystem::b, 2, 2), half) < 1e-15);
    }
    SUBCASE("unit trace survives on random 4x4 states") {
        for (int t = 0; t < 20; ++t) {
            const Operator rho = random_density(rng, 4);
            CHECK(std::abs(partial_trace(rho, Subsystem::a, 2, 2).trace() - 1.0) < 1e-12);
            CHECK(check_density(partial_trace(rho, Subsystem::b, 2, 2)));
        }
    }
    SUBCASE("dimension mismatch throws") {
        CHECK_THROWS_AS(partial_trace(Operator::identity(4), Subsystem::a, 2, 3), std::invalid_argument);
    }
}

TEST_CASE("check_density") {
    CHECK(check_density(Operator::identity(2) * 0.5));
    Eigen::MatrixXcd m(2, 2);
    m << 1.0, 0.0, 0.0, -1e-3;
    CHECK_FALSE(check_density(Operator(m), 1e-9));
    CHECK_FALSE(check_density(Operator::identity(2)));  // trace 2
    Eigen::MatrixXcd nh(2, 2);
    nh << 0.5, 0.1, 0.0, 0.5;
    CHECK_FALSE(check_density(Operator(nh)));
}

TEST_CASE("ket algebra") {
    const Ket a{1.0, 0.0};
    const Ket b{0.0, cplx(0.0, 1.0)};
    CHECK(std::abs(a.inner(b)) == 0.0);
    CHECK(std::abs(b.inner(b) - 1.0) == 0.0);
    CHECK(std::abs(((a + b) * (1.0 / std::sqrt(2.0))).norm() - 1.0) < 1e-15);
    CHECK(std::abs(Ket{3.0, 4.0}.normalized().norm() - 1.0) < 1e-15);
    const Operator p = Operator::projector(b);
    CHECK(p.expectation(b) == doctest::Approx(1.0));
    CHECK(hermiticity_defect(p) == 0.0);
    const auto ev = hermitian_eigenvalues(p);
    CHECK(ev[0] == doctest::Approx(0.0));
    CHECK(ev[1] == doctest::Approx(1.0));
}
