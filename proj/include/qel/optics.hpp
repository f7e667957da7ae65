#pragma once

#include <array>
#include <string_view>
#include <vector>

#include "qel/linalg.hpp"

namespace qel {

enum class Basis { rectilinear, diagonal };

std::string_view to_string(Basis b);
Basis other_basis(Basis b);

/// One of the four BB84 polarization states.
struct Bb84Signal {
    Basis basis = Basis::rectilinear;
    int bit = 0;

    friend bool operator==(const Bb84Signal&, const Bb84Signal&) = default;
};

const std::array<Bb84Signal, 4>& all_signals();

// Fock cutoff used for single-pulse photon statistics (tail < 1e-19 for mu <= 1).
inline constexpr int kDefaultFockCutoff = 20;

/// Truncated Poisson photon-number distribution.
struct PhotonDistribution {
    double mu = 0.0;
    int cutoff = 0;
    std::vector<double> probs;  // probs[n], n = 0..cutoff
    double tail_bound = 0.0;    // upper bound on the discarded mass

    double total() const;
};

/// probs[n] = exp(-mu) mu^n / n!. Throws std::invalid_argument for mu < 0 or cutoff < 0.
PhotonDistribution poisson_photon_dist(double mu, int cutoff = kDefaultFockCutoff);

/// |0>,|1> for the rectilinear basis; |+>,|-> = (|0> +- |1>)/sqrt2 for the diagonal one.
Ket basis_ket(Basis basis, int bit);
Ket signal_ket(const Bb84Signal& s);

// Two-qubit Bell states in the computational ordering |q1 q2>.
Ket bell_phi_plus();
Ket bell_phi_minus();
Ket bell_psi_plus();
Ket bell_psi_minus();

/// The ordered basis (|++>, |+->, |-+>, |-->).
std::array<Ket, 4> diagonal_product_basis();

// Tolerance on the singlet component for a state to count as symmetric.
inline constexpr double kSymmetricTol = 1e-9;

/// Two-qubit state confined to the symmetric (two-photon, single-mode) subspace.
class SymmetricTwoQubit {
public:
    /// Throws std::invalid_argument if the singlet weight exceeds kSymmetricTol
    /// or the ket is not 4-dimensional.
    explicit SymmetricTwoQubit(Ket k);

    const Ket& ket() const { return ket_; }

private:
    Ket ket_;
};

SymmetricTwoQubit symmetric_encode(const Bb84Signal& s);

/// Probability of two, one, or zero photons in the bit-0 mode of a basis.
/// The first index counts photons in the bit-0 mode.
struct TwoPhotonOccupation {
    double p20 = 0.0;
    double p11 = 0.0;
    double p02 = 0.0;

    double total() const { return p20 + p11 + p02; }
};

TwoPhotonOccupation fock_from_symmetric(const SymmetricTwoQubit& psi, Basis basis);
/// Density-operator form; rejects inputs whose singlet weight exceeds kSymmetricTol.
TwoPhotonOccupation fock_from_symmetric(const Operator& rho, Basis basis);

/// Singlet weight <psi-|rho|psi->.
double singlet_weight(const Operator& rho);

/// Single-qubit Hadamard.
Operator hadamard();

}  // namespace qel
