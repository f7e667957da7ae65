#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "qel/attacks.hpp"
#include "qel/infotheory.hpp"
#include "qel/oracle.hpp"
#include "qel/random.hpp"

namespace qel {

struct SuiteResult {
    std::string name;
    std::vector<Check> checks;

    bool passed() const;
};

struct VerificationReport {
    std::uint64_t seed = 0;
    std::vector<SuiteResult> suites;

    bool passed() const;
    std::vector<std::string> failing_checks() const;  // "suite/check"
};

struct VerifyOptions {
    // Closed-form coefficients checked against the simulated probes. Swappable
    // so a deliberately corrupted table can be shown to fail.
    std::function<StrategyBCoefficients(double)> coefficients = strategy_b_coefficients;
    std::uint64_t seed = 1;
    std::size_t mc_pulses = kDefaultPulses;
};

inline constexpr int kGammaGridPoints = 50;
inline constexpr int kBetaGridPoints = 12;
inline constexpr int kRandomEnsembles = 200;

// Operating point of the double-click suite; chosen so the matching-basis
// cloning signature is resolvable with 1e6 pulses.
inline constexpr double kDoubleClickMu = 0.5;
inline constexpr double kDoubleClickEtaDet = 0.2;
inline constexpr double kDoubleClickLossDb = 3.0;
inline constexpr double kDoubleClickDisturbance = 0.1;

/// Uniformly random pair of qubit states with equal Bloch radius (hence equal
/// determinants), the precondition of levitin_information.
TwoStateEnsemble random_equal_determinant_ensemble(Rng& rng);

/// Runs every oracle grid: isometry, probe-A, probe-B/AppendixB, D-maps,
/// Levitin, double-click, endpoints/POVM.
VerificationReport run_verification(const VerifyOptions& options = {});

}  // namespace qel
