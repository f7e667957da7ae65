#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qel/attacks.hpp"
#include "qel/channel.hpp"
#include "qel/linalg.hpp"

namespace qel {

/// One named comparison between a simulated and a closed-form quantity.
struct Check {
    std::string name;
    double delta = 0.0;
    double tolerance = 0.0;

    bool passed() const { return delta <= tolerance; }
};

/// Outcome of driving a cloning unitary explicitly and comparing everything
/// derived from it with the closed forms of the attacks module.
struct SimulationReport {
    std::string strategy;       // "A" or "B"
    double parameter = 0.0;     // beta or gamma
    double eta_det = 1.0;
    std::uint64_t seed = 0;

    double disturbance = 0.0;              // exact sifted error rate from the unitary
    double disturbance_closed_form = 0.0;  // B: D(gamma) closed form; A: no closed form, equals `disturbance`
    double mc_disturbance = 0.0;           // sampled with random double-click assignment
    double mc_stderr = 0.0;
    std::size_t mc_samples = 0;

    ProbePair probes{Operator::zero(4), Operator::zero(4)};  // Eve's states for |++>, |-->
    double information_numeric = 0.0;  // measurement-search lower bound, blockwise
    double information_closed_form = 0.0;
    StrategyBCoefficients measured_coefficients;  // B only: 16 x probe entries in the +- basis

    std::vector<Check> checks;

    bool passed() const;
};

inline constexpr std::size_t kDefaultOracleSamples = 20000;

SimulationReport simulate_strategy_a(double beta, double eta_det, std::uint64_t seed,
                                     std::size_t mc_samples = kDefaultOracleSamples);
SimulationReport simulate_strategy_b(double gamma, double eta_det, std::uint64_t seed,
                                     std::size_t mc_samples = kDefaultOracleSamples);

/// Maximal Shannon mutual information between a uniform bit and the outcome
/// of an orthogonal projective measurement on a qubit, found by an angle grid
/// of `grid_size` points followed by golden-section refinement.
double numeric_two_state_info(const Operator& rho0, const Operator& rho1, int grid_size = 720);

enum class Attack { pns, clone_a, clone_b };

std::string_view to_string(Attack a);

/// Bob's two-photon state after the cloner at disturbance D, for a signal of
/// either basis. Strategy B is applied in a frame where both BB84 bases are
/// equatorial for the cloner.
Operator cloned_bob_state(Attack attack, double disturbance, const Bb84Signal& s);

struct RateEstimate {
    double value = 0.0;
    double stderr_ = 0.0;

    friend bool operator==(const RateEstimate&, const RateEstimate&) = default;
};

/// Per-pulse simulation of the full channel scenario. Pulses with n >= 3
/// photons always undergo photon-number splitting; two-photon pulses are
/// split (PNS) or cloned (clone_a/clone_b); single photons are forwarded with
/// the probability that reproduces the expected click rate, under the optimal
/// individual attack at disturbance D.
struct ProtocolStatistics {
    Attack attack = Attack::pns;
    double disturbance = 0.0;
    std::uint64_t seed = 0;
    std::size_t pulses = 0;

    std::size_t clicks = 0;
    std::size_t matching_clicks = 0;  // sifted
    std::size_t errors = 0;
    std::size_t double_clicks = 0;
    std::size_t double_clicks_matching = 0;
    std::size_t double_clicks_mismatched = 0;

    RateEstimate raw_click_rate;
    RateEstimate sifted_error_rate;
    RateEstimate double_click_rate;
    RateEstimate double_click_rate_matching;
    RateEstimate double_click_rate_mismatched;

    // Exact expectations of the simulated process from the detection model.
    double analytic_click_rate = 0.0;
    double analytic_sifted_error_rate = 0.0;
    double analytic_double_click_rate = 0.0;
    double analytic_double_click_rate_matching = 0.0;

    double single_forward_probability = 0.0;
    double two_photon_admission = 1.0;
    bool rate_matched = true;  // false when Eve cannot reproduce P_exp

    friend bool operator==(const ProtocolStatistics&, const ProtocolStatistics&) = default;
};

inline constexpr std::size_t kDefaultPulses = 1'000'000;

/// Throws std::invalid_argument for n_pulses == 0 or D outside the attack's
/// domain, InvalidRegime for scenarios below the transmission window.
ProtocolStatistics monte_carlo_protocol(const ChannelScenario& scen, Attack attack, double disturbance,
                                        std::size_t n_pulses, std::uint64_t seed);

}  // namespace qel
