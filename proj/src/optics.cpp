#include "qel/optics.hpp"

#include <cmath>
#include <stdexcept>

namespace qel {

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

TwoPhotonOccupation occupation_of(const Operator& rho, Basis basis) {
    const Ket b0 = basis_ket(basis, 0);
    const Ket b1 = basis_ket(basis, 1);
    const Ket both0 = tensor(b0, b0);
    const Ket mixed = (tensor(b0, b1) + tensor(b1, b0)) * kInvSqrt2;
    const Ket both1 = tensor(b1, b1);
    return {rho.expectation(both0), rho.expectation(mixed), rho.expectation(both1)};
}

}  // namespace

std::string_view to_string(Basis b) { return b == Basis::rectilinear ? "rectilinear" : "diagonal"; }

Basis other_basis(Basis b) { return b == Basis::rectilinear ? Basis::diagonal : Basis::rectilinear; }

const std::array<Bb84Signal, 4>& all_signals() {
    static const std::array<Bb84Signal, 4> signals{{
        {Basis::rectilinear, 0},
        {Basis::rectilinear, 1},
        {Basis::diagonal, 0},
        {Basis::diagonal, 1},
    }};
    return signals;
}

double PhotonDistribution::total() const {
    double s = 0.0;
    for (double p : probs) s += p;
    return s;
}

PhotonDistribution poisson_photon_dist(double mu, int cutoff) {
    if (!(mu >= 0.0)) throw std::invalid_argument("poisson_photon_dist: mu must be non-negative");
    if (cutoff < 0) throw std::invalid_argument("poisson_photon_dist: cutoff must be non-negative");
    PhotonDistribution d;
    d.mu = mu;
    d.cutoff = cutoff;
    d.probs.resize(static_cast<std::size_t>(cutoff) + 1);
    double term = std::exp(-mu);
    for (int n = 0; n <= cutoff; ++n) {
        d.probs[static_cast<std::size_t>(n)] = term;
        term *= mu / (n + 1);
    }
    // Tail sum_{n>N} P(n) <= P(N+1) / (1 - mu/(N+2)) when mu < N+2; `term` is now P(N+1).
    const double ratio = mu / (cutoff + 2.0);
    d.tail_bound = ratio < 1.0 ? term / (1.0 - ratio) : 1.0;
    return d;
}

Ket basis_ket(Basis basis, int bit) {
    if (bit != 0 && bit != 1) throw std::invalid_argument("basis_ket: bit must be 0 or 1");
    if (basis == Basis::rectilinear) return Ket::basis(2, static_cast<std::size_t>(bit));
    return bit == 0 ? Ket{kInvSqrt2, kInvSqrt2} : Ket{kInvSqrt2, -kInvSqrt2};
}

Ket signal_ket(const Bb84Signal& s) { return basis_ket(s.basis, s.bit); }

Ket bell_phi_plus() { return Ket{kInvSqrt2, 0.0, 0.0, kInvSqrt2}; }
Ket bell_phi_minus() { return Ket{kInvSqrt2, 0.0, 0.0, -kInvSqrt2}; }
Ket bell_psi_plus() { return Ket{0.0, kInvSqrt2, kInvSqrt2, 0.0}; }
Ket bell_psi_minus() { return Ket{0.0, kInvSqrt2, -kInvSqrt2, 0.0}; }

std::array<Ket, 4> diagonal_product_basis() {
    const Ket p = basis_ket(Basis::diagonal, 0);
    const Ket m = basis_ket(Basis::diagonal, 1);
    return {tensor(p, p), tensor(p, m), tensor(m, p), tensor(m, m)};
}

SymmetricTwoQubit::SymmetricTwoQubit(Ket k) : ket_(std::move(k)) {
    if (ket_.dim() != 4) throw std::invalid_argument("SymmetricTwoQubit: expected a 4-dimensional ket");
    if (std::norm(bell_psi_minus().inner(ket_)) > kSymmetricTol)
        throw std::invalid_argument("SymmetricTwoQubit: state has a singlet component");
}

SymmetricTwoQubit symmetric_encode(const Bb84Signal& s) {
    const Ket k = signal_ket(s);
    return SymmetricTwoQubit(tensor(k, k));
}

TwoPhotonOccupation fock_from_symmetric(const SymmetricTwoQubit& psi, Basis basis) {
    return occupation_of(Operator::projector(psi.ket()), basis);
}

double singlet_weight(const Operator& rho) {
    if (rho.dim() != 4) throw std::invalid_argument("singlet_weight: expected a 4x4 operator");
    return rho.expectation(bell_psi_minus());
}

TwoPhotonOccupation fock_from_symmetric(const Operator& rho, Basis basis) {
    if (rho.dim() != 4) throw std::invalid_argument("fock_from_symmetric: expected a 4x4 operator");
    if (std::abs(singlet_weight(rho)) > kSymmetricTol)
        throw std::invalid_argument("fock_from_symmetric: state has a singlet component");
    return occupation_of(rho, basis);
}

Operator hadamard() {
    Eigen::MatrixXcd h(2, 2);
    h << kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2;
    return Operator(std::move(h));
}

}  // namespace qel
