#pragma once

#include <span>

#include "qel/linalg.hpp"

namespace qel {

/// Phi(x) = (1+x) log2(1+x) + (1-x) log2(1-x), with 0 log 0 = 0.
/// Arguments within 1e-12 outside [-1, 1] are clamped; anything further throws.
double phi(double x);

/// Eve's maximal Shannon information from the optimal individual attack on
/// single photons at disturbance D in [0, 1/2]: Phi(2 sqrt(D(1-D))) / 2.
double fuchs_information(double disturbance);

/// Two equiprobable density operators of equal dimension.
class TwoStateEnsemble {
public:
    /// Throws std::invalid_argument if either operator fails check_density or
    /// the dimensions differ.
    TwoStateEnsemble(Operator rho0, Operator rho1);

    const Operator& rho0() const { return rho0_; }
    const Operator& rho1() const { return rho1_; }
    std::size_t dim() const { return rho0_.dim(); }

private:
    Operator rho0_;
    Operator rho1_;
};

// Two states "have the same invariants" when their determinants agree to this.
inline constexpr double kDeterminantTol = 1e-9;

/// Accessible information of two equiprobable qubit states with equal
/// determinant d: Phi(sqrt(1 - r - 2d)) / 2 with r = tr(rho0 rho1).
/// Throws std::invalid_argument for non-qubit ensembles or unequal determinants.
double levitin_information(const TwoStateEnsemble& ens);

struct InformationBlock {
    double weight = 0.0;
    TwoStateEnsemble ensemble;
};

/// Weighted sum of levitin_information over orthogonal blocks. Weight not
/// covered by the blocks contributes one bit per unit when
/// `leftover_distinguishable` is set, nothing otherwise.
double blockwise_information(std::span<const InformationBlock> blocks, bool leftover_distinguishable = false);

/// Restriction of a pair of states to the 2-dimensional subspace spanned by
/// orthonormal kets v0, v1.
struct BlockRestriction {
    double weight0 = 0.0;  // tr(P rho0)
    double weight1 = 0.0;  // tr(P rho1)
    Operator block0;       // normalized 2x2 restriction of rho0
    Operator block1;
};

/// Throws std::invalid_argument if either state has no weight in the block.
BlockRestriction restrict_to_block(const Operator& rho0, const Operator& rho1, const Ket& v0, const Ket& v1);

}  // namespace qel
