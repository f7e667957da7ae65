#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "qel/attacks.hpp"

namespace qel {

/// Raised when a scenario lies outside the regime where the multi-photon
/// PNS analysis applies (P_exp <= P_arr^multi).
class InvalidRegime : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Photon-number series cutoff for all scenario math (tail < 1e-40 for mu <= 1).
inline constexpr int kScenarioCutoff = 40;

double loss_db_from_transmission(double eta_t);
double transmission_from_loss_db(double loss_db);

/// Source mean photon number, detector efficiency, and channel transmission.
struct ChannelScenario {
    double mu = 0.1;
    double eta_det = 0.2;
    double eta_t = 1.0;

    /// Throws std::invalid_argument unless mu > 0, eta_det in (0,1], eta_t in (0,1].
    ChannelScenario(double mu, double eta_det, double eta_t);
    static ChannelScenario from_loss_db(double mu, double eta_det, double loss_db);

    double loss_db() const { return loss_db_from_transmission(eta_t); }
};

/// Probability that a pulse with n >= 2 photons survives the PNS attack
/// (one photon removed, the rest forwarded losslessly) and clicks:
/// sum_{n>=2} P(n, mu) [1 - (1-eta_det)^(n-1)].
double p_arr_multi(double mu, double eta_det, int cutoff = kScenarioCutoff);

/// Expected click rate on the attacked-free channel: 1 - exp(-mu eta_det eta_t).
double p_exp(double mu, double eta_det, double eta_t);

/// P_exp - P_arr^multi. Throws InvalidRegime when negative.
double p_arr_single(const ChannelScenario& scen);

/// e = (P_arr^single / P_exp) D, from the series-based probabilities.
double observed_error_from_disturbance(const ChannelScenario& scen, double disturbance);

/// The same map from its closed form, evaluated with expm1 to avoid cancellation:
/// e = e^{-mu}(eta e^{x} + e^{mu}(1-eta) - e^{mu(1-eta(1-eta_t))}) / ((1-eta)(1-e^{x})) D,
/// x = mu eta eta_t. Requires eta_det < 1.
double observed_error_closed_form(const ChannelScenario& scen, double disturbance);

/// Inverse of observed_error_from_disturbance. Throws InvalidRegime if the
/// required D exceeds 1/2.
double disturbance_for_error(const ChannelScenario& scen, double observed_error);

/// Range of channel transmission for which Eve can attack all multi-photon
/// pulses while single photons still have to reach Bob:
///   P_exp <= eta_det P(1,mu) + P_arr^multi   (upper bound on eta_t)
///   P_exp >  P_arr^multi                     (lower bound on eta_t)
struct TransmissionWindow {
    double eta_t_lower = 0.0;
    double eta_t_upper = 0.0;
    double loss_db_min = 0.0;  // at eta_t_upper
    double loss_db_max = 0.0;  // at eta_t_lower
    bool empty = true;

    bool contains(double eta_t) const { return !empty && eta_t > eta_t_lower && eta_t <= eta_t_upper; }
};

TransmissionWindow eta_t_bounds(double mu, double eta_det);

enum class StrategyChoice { a, b, best };

/// Smallest loss in the transmission window at which the cloning strategy
/// yields Eve more information than the matched PNS process for observed
/// error e. Resolution 0.01 dB. Empty if no such loss exists or the window is empty.
std::optional<double> crossover_loss(double mu, double eta_det, double observed_error, StrategyChoice strategy);

}  // namespace qel
