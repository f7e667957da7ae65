#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "qel/linalg.hpp"
#include "qel/optics.hpp"

namespace qel {

// ---------------------------------------------------------------------------
// Photon-number splitting baseline
// ---------------------------------------------------------------------------

/// Eve's information when a fraction p of pulses carries two photons (one is
/// kept, one forwarded) and the rest are single photons under the optimal
/// individual attack at disturbance D.
double pns_information(double p, double disturbance);

/// Two-photon fraction giving the cloning processes the same raw click rate
/// as the PNS process: 1 / (2 - eta_det).
double matched_two_photon_fraction(double eta_det);

/// pns_information at the matched two-photon fraction.
double pns_information_matched(double eta_det, double disturbance);

// ---------------------------------------------------------------------------
// Strategy A: universal asymmetric 2 -> 3 cloner
// ---------------------------------------------------------------------------

/// Cloner weight beta; alpha = sqrt(1 - 8 beta^2).
class CloneAParams {
public:
    /// Throws std::invalid_argument unless 0 <= 8 beta^2 <= 1.
    explicit CloneAParams(double beta);

    double beta() const { return beta_; }
    double alpha() const { return alpha_; }

private:
    double beta_;
    double alpha_;
};

/// 16x16 unitary on (Bob's two qubits) (x) (Eve's two qubits), qubit order
/// |b1 b2 e1 e2>. Its action on symmetric inputs with the probe in |00> is
///   alpha |s>|phi+> + beta (sz~|s>|phi-> + sx~|s>|psi+> + i sy~|s>|psi->),
/// sk~ = sk (x) 1 + 1 (x) sk; the remaining columns are an orthonormal completion.
Operator strategy_a_unitary(const CloneAParams& params);

/// Bob's sifted error rate (double clicks assigned at random) after the
/// cloner, computed by forwarding the unitary's output to the detector model.
double strategy_a_disturbance_for_beta(double beta);

/// Inverse of strategy_a_disturbance_for_beta on beta in [0, 1/sqrt 8] by bisection.
/// Throws std::invalid_argument for D outside [0, 1/4].
double strategy_a_beta_for_disturbance(double disturbance);

struct ProbePair {
    Operator rho_plus;
    Operator rho_minus;
};

/// Eve's probe for the inputs |++>, |-->:
/// rho_+- = 2D |-+>,|+-> projector + (1-2D) |varphi_+-><varphi_+-|.
/// Throws std::invalid_argument for D outside [0, 1/4].
ProbePair strategy_a_probe_states(double disturbance);

/// <varphi_+|varphi_-> = (1 - 6D) / (1 - 2D).
double strategy_a_probe_overlap(double disturbance);

/// 2D + (1-2D)/2 * Phi(sqrt(8D(1-4D)) / (1-2D)), D in [0, 1/4].
double strategy_a_information(double disturbance);

// ---------------------------------------------------------------------------
// Strategy B: phase-covariant 2 -> 3 cloner
// ---------------------------------------------------------------------------

class CloneBParams {
public:
    /// Throws std::invalid_argument unless 0 <= gamma <= pi.
    explicit CloneBParams(double gamma);

    double gamma() const { return gamma_; }

private:
    double gamma_;
};

/// 8x8 matrix of V on three qubits |q1 q2 a>. Only the columns for symmetric
/// inputs with the ancilla in |0> are populated:
///   V|00>|0>    = |000>
///   V|psi+>|0>  = (cos g (|010>+|100>) + sin g |001>) / sqrt(1+cos^2 g)
///   V|11>|0>    = (cos g |110> + sin g (|011>+|101>)) / sqrt(1+sin^2 g)
Operator strategy_b_v_map(const CloneBParams& params);

/// V~ = X^{(x)3} V X^{(x)2}: V with every bit flipped on both sides.
Operator strategy_b_v_tilde_map(const CloneBParams& params);

/// 16x16 unitary, qubit order |b1 b2 e1 e2>, whose action on symmetric
/// inputs with the probe in |00> is (V|s>|0>|0> + V~|s>|0>|1>) / sqrt 2.
/// Remaining columns are an orthonormal completion.
Operator strategy_b_unitary(const CloneBParams& params);

struct StrategyBCoefficients {
    double a = 0.0, b = 0.0, c = 0.0, d = 0.0, e = 0.0, f = 0.0;
};

/// Closed-form entries (times 16) of Eve's probe in the (|++>,|+->,|-+>,|-->) basis.
StrategyBCoefficients strategy_b_coefficients(double gamma);

/// Probe pair assembled from coefficients (divided by 16), in the computational basis.
ProbePair strategy_b_probe_states_from(const StrategyBCoefficients& k);
ProbePair strategy_b_probe_states(double gamma);

/// Bob's sifted error rate for equatorial signals:
/// (1/2) {1 - (cos g + 1/sqrt(1+sin^2 g)) / sqrt(2(1+cos^2 g))}.
double strategy_b_disturbance(double gamma);

/// Branch inverse on gamma in [0, pi/2]; |D(gamma) - D| <= 1e-10.
/// Throws std::invalid_argument for D outside [0, 1/4].
double strategy_b_gamma_for_disturbance(double disturbance);

/// (1/32) {(a+c) Phi((a-c)/(a+c)) + (d+f) Phi((d-f)/(d+f))}; an empty block contributes 0.
double strategy_b_information_from(const StrategyBCoefficients& k);
double strategy_b_information(double gamma);

// ---------------------------------------------------------------------------
// Curves
// ---------------------------------------------------------------------------

/// Eve's information versus D for the three processes. i_a and i_b are empty
/// for D > 1/4, where the cloners have no parameter reaching that disturbance.
struct AttackCurvePoint {
    double d = 0.0;
    double i_pns = 0.0;
    std::optional<double> i_a;
    std::optional<double> i_b;
};

inline constexpr int kDefaultCurvePoints = 500;

/// `steps` evenly spaced values from lo to hi inclusive; steps >= 2.
std::vector<double> uniform_grid(double lo, double hi, int steps);

/// Throws std::invalid_argument if eta_det is outside [0,1] or a grid value is outside [0, 1/2].
std::vector<AttackCurvePoint> information_curves(double eta_det, std::span<const double> d_grid);

enum class CloningStrategy { a, b };

/// Eve's information for a cloning strategy at disturbance D, empty outside [0, 1/4].
std::optional<double> cloning_information(CloningStrategy s, double disturbance);

}  // namespace qel
