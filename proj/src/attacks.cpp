#include "qel/attacks.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qel/detection.hpp"
#include "qel/infotheory.hpp"
#include "qel/parallel.hpp"
#include "qel/roots.hpp"

namespace qel {

namespace {

using std::numbers::pi;

const double kMaxBeta = 1.0 / std::sqrt(8.0);
constexpr double kInversionTol = 1e-10;

void require_disturbance(double d, double hi, const char* who) {
    if (!(d >= 0.0 && d <= hi)) throw std::invalid_argument(std::string(who) + ": disturbance out of range");
}

Operator pauli(char k) {
    Eigen::MatrixXcd m(2, 2);
    switch (k) {
        case 'x': m << 0, 1, 1, 0; break;
        case 'y': m << 0, cplx(0, -1), cplx(0, 1), 0; break;
        default: m << 1, 0, 0, -1; break;
    }
    return Operator(std::move(m));
}

Operator collective(char k) {
    const Operator s = pauli(k);
    const Operator id = Operator::identity(2);
    return tensor(s, id) + tensor(id, s);
}

// Orthonormal basis of C^n whose leading columns are the given orthonormal vectors.
Eigen::MatrixXcd complete_basis(const std::vector<Ket>& leading, std::size_t n) {
    const auto dim = static_cast<Eigen::Index>(n);
    Eigen::MatrixXcd basis = Eigen::MatrixXcd::Zero(dim, dim);
    Eigen::Index filled = 0;
    for (const auto& k : leading) basis.col(filled++) = k.vec();
    for (Eigen::Index e = 0; e < dim && filled < dim; ++e) {
        Eigen::VectorXcd v = Eigen::VectorXcd::Unit(dim, e);
        for (int pass = 0; pass < 2; ++pass)
            for (Eigen::Index j = 0; j < filled; ++j) v -= basis.col(j).dot(v) * basis.col(j);
        const double nv = v.norm();
        if (nv > 1e-6) basis.col(filled++) = v / nv;
    }
    return basis;
}

// Unitary sending inputs[i] to outputs[i]; both lists must be orthonormal.
Operator isometry_extension(const std::vector<Ket>& inputs, const std::vector<Ket>& outputs) {
    const std::size_t n = inputs.front().dim();
    const Eigen::MatrixXcd in = complete_basis(inputs, n);
    const Eigen::MatrixXcd out = complete_basis(outputs, n);
    return Operator(out * in.adjoint());
}

std::vector<Ket> symmetric_inputs_with_probe() {
    const Ket probe = Ket::basis(4, 0);
    return {tensor(Ket::basis(4, 0), probe), tensor(bell_psi_plus(), probe), tensor(Ket::basis(4, 3), probe)};
}

Ket three_qubits(int q1, int q2, int q3) {
    return Ket::basis(8, static_cast<std::size_t>(q1 * 4 + q2 * 2 + q3));
}

}  // namespace

// --- PNS ---------------------------------------------------------------------

double pns_information(double p, double d) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("pns_information: p must lie in [0, 1]");
    require_disturbance(d, 0.5, "pns_information");
    return p + (1.0 - p) * fuchs_information(d);
}

double matched_two_photon_fraction(double eta_det) {
    if (!(eta_det >= 0.0 && eta_det <= 1.0))
        throw std::invalid_argument("matched_two_photon_fraction: eta_det must lie in [0, 1]");
    return 1.0 / (2.0 - eta_det);
}

double pns_information_matched(double eta_det, double d) {
    if (!(eta_det >= 0.0 && eta_det <= 1.0))
        throw std::invalid_argument("pns_information_matched: eta_det must lie in [0, 1]");
    require_disturbance(d, 0.5, "pns_information_matched");
    return (1.0 + (1.0 - eta_det) * fuchs_information(d)) / (2.0 - eta_det);
}

// --- Strategy A --------------------------------------------------------------

CloneAParams::CloneAParams(double beta) : beta_(beta), alpha_(0.0) {
    const double eight_b2 = 8.0 * beta * beta;
    if (!(eight_b2 >= 0.0 && eight_b2 <= 1.0 + 1e-15))
        throw std::invalid_argument("CloneAParams: 8 beta^2 must lie in [0, 1]");
    alpha_ = std::sqrt(std::max(0.0, 1.0 - eight_b2));
}

Operator strategy_a_unitary(const CloneAParams& params) {
    const Operator sz = collective('z');
    const Operator sx = collective('x');
    const Operator sy = collective('y');
    const std::vector<Ket> bob_inputs{Ket::basis(4, 0), bell_psi_plus(), Ket::basis(4, 3)};
    std::vector<Ket> outputs;
    for (const auto& s : bob_inputs) {
        Ket out = tensor(s, bell_phi_plus()) * params.alpha();
        out = out + tensor(sz * s, bell_phi_minus()) * params.beta();
        out = out + tensor(sx * s, bell_psi_plus()) * params.beta();
        out = out + tensor(sy * s, bell_psi_minus()) * cplx(0.0, params.beta());
        outputs.push_back(out);
    }
    return isometry_extension(symmetric_inputs_with_probe(), outputs);
}

double strategy_a_disturbance_for_beta(double beta) {
    const Operator u = strategy_a_unitary(CloneAParams(beta));
    const DetectorModel ideal(1.0);
    double total = 0.0;
    for (const auto& s : all_signals()) {
        const Ket out = u * tensor(symmetric_encode(s).ket(), Ket::basis(4, 0));
        const Operator bob = partial_trace(Operator::projector(out), Subsystem::a, 4, 4);
        total += sifted_error_rate(outcome_distribution(bob, s.basis, ideal), s.bit);
    }
    return total / 4.0;
}

double strategy_a_beta_for_disturbance(double d) {
    require_disturbance(d, 0.25, "strategy_a_beta_for_disturbance");
    if (d == 0.0) return 0.0;
    // The simulated D at kMaxBeta can land a few ulps below 1/4.
    if (strategy_a_disturbance_for_beta(kMaxBeta) <= d) return kMaxBeta;
    return bisect([d](double b) { return strategy_a_disturbance_for_beta(b) - d; }, 0.0, kMaxBeta, 1e-15,
                  1e-14);
}

double strategy_a_probe_overlap(double d) {
    require_disturbance(d, 0.25, "strategy_a_probe_overlap");
    return (1.0 - 6.0 * d) / (1.0 - 2.0 * d);
}

ProbePair strategy_a_probe_states(double d) {
    require_disturbance(d, 0.25, "strategy_a_probe_states");
    const auto pm = diagonal_product_basis();  // ++, +-, -+, --
    const double norm = 1.0 / std::sqrt(1.0 - 2.0 * d);
    const Ket lead = bell_phi_plus() * (norm * std::sqrt(1.0 - 4.0 * d));
    const Ket tail = bell_psi_plus() * (norm * std::sqrt(2.0 * d));
    const Ket varphi_plus = lead + tail;
    const Ket varphi_minus = lead - tail;
    return {
        Operator::projector(pm[2]) * (2.0 * d) + Operator::projector(varphi_plus) * (1.0 - 2.0 * d),
        Operator::projector(pm[1]) * (2.0 * d) + Operator::projector(varphi_minus) * (1.0 - 2.0 * d),
    };
}

double strategy_a_information(double d) {
    require_disturbance(d, 0.25, "strategy_a_information");
    const double x = std::sqrt(std::max(0.0, 8.0 * d * (1.0 - 4.0 * d))) / (1.0 - 2.0 * d);
    return 2.0 * d + 0.5 * (1.0 - 2.0 * d) * phi(x);
}

// --- Strategy B --------------------------------------------------------------

CloneBParams::CloneBParams(double gamma) : gamma_(gamma) {
    if (!(gamma >= 0.0 && gamma <= pi)) throw std::invalid_argument("CloneBParams: gamma must lie in [0, pi]");
}

Operator strategy_b_v_map(const CloneBParams& params) {
    const double c = std::cos(params.gamma());
    const double s = std::sin(params.gamma());
    const Ket v00 = three_qubits(0, 0, 0);
    const Ket vpsi =
        ((three_qubits(0, 1, 0) + three_qubits(1, 0, 0)) * c + three_qubits(0, 0, 1) * s) * (1.0 / std::sqrt(1.0 + c * c));
    const Ket v11 =
        (three_qubits(1, 1, 0) * c + (three_qubits(0, 1, 1) + three_qubits(1, 0, 1)) * s) * (1.0 / std::sqrt(1.0 + s * s));
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(8, 8);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    m.col(0) = v00.vec();                   // |00>|0>
    m.col(2) = vpsi.vec() * inv_sqrt2;      // |01>|0>
    m.col(4) = vpsi.vec() * inv_sqrt2;      // |10>|0>
    m.col(6) = v11.vec();                   // |11>|0>
    return Operator(std::move(m));
}

Operator strategy_b_v_tilde_map(const CloneBParams& params) {
    const Operator x = pauli('x');
    const Operator x3 = tensor(tensor(x, x), x);
    const Operator x2_on_inputs = tensor(tensor(x, x), Operator::identity(2));
    return x3 * strategy_b_v_map(params) * x2_on_inputs;
}

Operator strategy_b_unitary(const CloneBParams& params) {
    const Operator v = strategy_b_v_map(params);
    const Operator vt = strategy_b_v_tilde_map(params);
    const Ket anc0 = Ket::basis(2, 0);
    const Ket anc1 = Ket::basis(2, 1);
    const std::vector<Ket> bob_inputs{Ket::basis(4, 0), bell_psi_plus(), Ket::basis(4, 3)};
    std::vector<Ket> outputs;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (const auto& s : bob_inputs) {
        const Ket in = tensor(s, anc0);
        outputs.push_back((tensor(v * in, anc0) + tensor(vt * in, anc1)) * inv_sqrt2);
    }
    return isometry_extension(symmetric_inputs_with_probe(), outputs);
}

StrategyBCoefficients strategy_b_coefficients(double gamma) {
    const double s = std::sin(gamma);
    const double c = std::cos(gamma);
    const double s2g = std::sin(2.0 * gamma);
    const double c2g = std::cos(2.0 * gamma);
    const double q = std::sqrt(3.0 + c2g);
    const double r = std::sqrt(1.0 + s * s);
    const double cos_terms = c * c * (8.0 / (1.0 + c * c) + 1.0 / (1.0 + s * s));
    const double sin_terms = 4.0 * s * s * (1.0 / (3.0 + c2g) + 1.0 / (1.0 + s * s));

    StrategyBCoefficients k;
    k.a = 1.0 + 4.0 * s / q + 10.0 * s2g / (q * r) + 2.0 * c / r + cos_terms + sin_terms;
    k.b = 1.0 + 2.0 * c / r + 8.0 * s * s * (9.0 + c2g) / (-17.0 + std::cos(4.0 * gamma)) + cos_terms;
    k.c = 1.0 - 4.0 * s / q - 10.0 * s2g / (q * r) + 2.0 * c / r + cos_terms + sin_terms;
    k.d = 1.0 + 4.0 * s * s / (3.0 + c2g) + c * c / (1.0 + s * s) - 2.0 * c / r + 4.0 * s * (-c + r) / (q * r);
    k.e = 1.0 - 4.0 * s * s / (3.0 + c2g) + c * c / (1.0 + s * s) - 2.0 * c / r;
    k.f = 1.0 - 4.0 * s / q + 4.0 * s * s / (3.0 + c2g) + c * c / (1.0 + s * s) - 2.0 * c / r +
          2.0 * s2g / (q * r);
    return k;
}

ProbePair strategy_b_probe_states_from(const StrategyBCoefficients& k) {
    const auto pm = diagonal_product_basis();
    Eigen::MatrixXcd basis(4, 4);
    for (Eigen::Index i = 0; i < 4; ++i) basis.col(i) = pm[static_cast<std::size_t>(i)].vec();
    Eigen::MatrixXcd plus(4, 4), minus(4, 4);
    plus << k.a, 0, 0, k.b,
            0, k.d, k.e, 0,
            0, k.e, k.f, 0,
            k.b, 0, 0, k.c;
    minus << k.c, 0, 0, k.b,
             0, k.f, k.e, 0,
             0, k.e, k.d, 0,
             k.b, 0, 0, k.a;
    return {Operator(basis * (plus / 16.0) * basis.adjoint()), Operator(basis * (minus / 16.0) * basis.adjoint())};
}

ProbePair strategy_b_probe_states(double gamma) {
    CloneBParams check(gamma);
    return strategy_b_probe_states_from(strategy_b_coefficients(check.gamma()));
}

double strategy_b_disturbance(double gamma) {
    CloneBParams check(gamma);
    const double c = std::cos(gamma);
    const double s = std::sin(gamma);
    return 0.5 * (1.0 - (c + 1.0 / std::sqrt(1.0 + s * s)) / std::sqrt(2.0 * (1.0 + c * c)));
}

double strategy_b_gamma_for_disturbance(double d) {
    require_disturbance(d, 0.25, "strategy_b_gamma_for_disturbance");
    if (d == 0.0) return 0.0;
    return bisect([d](double g) { return strategy_b_disturbance(g) - d; }, 0.0, pi / 2.0, 1e-15, kInversionTol);
}

double strategy_b_information_from(const StrategyBCoefficients& k) {
    auto term = [](double u, double v) { return u + v > 0.0 ? (u + v) * phi((u - v) / (u + v)) : 0.0; };
    return (term(k.a, k.c) + term(k.d, k.f)) / 32.0;
}

double strategy_b_information(double gamma) {
    CloneBParams check(gamma);
    return strategy_b_information_from(strategy_b_coefficients(gamma));
}

// --- Curves ------------------------------------------------------------------

std::vector<double> uniform_grid(double lo, double hi, int steps) {
    if (steps < 2) throw std::invalid_argument("uniform_grid: need at least 2 steps");
    if (!(lo < hi)) throw std::invalid_argument("uniform_grid: min must be below max");
    std::vector<double> g(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) g[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (steps - 1);
    g.back() = hi;
    return g;
}

std::optional<double> cloning_information(CloningStrategy s, double d) {
    if (!(d >= 0.0 && d <= 0.25)) return std::nullopt;
    if (s == CloningStrategy::a) return strategy_a_information(d);
    return strategy_b_information(strategy_b_gamma_for_disturbance(d));
}

std::vector<AttackCurvePoint> information_curves(double eta_det, std::span<const double> d_grid) {
    if (!(eta_det >= 0.0 && eta_det <= 1.0)) throw std::invalid_argument("information_curves: eta_det out of range");
    for (double d : d_grid)
        if (!(d >= 0.0 && d <= 0.5)) throw std::invalid_argument("information_curves: grid value outside [0, 1/2]");
    std::vector<AttackCurvePoint> out(d_grid.size());
    parallel_for(d_grid.size(), [&](std::size_t i) {
        const double d = d_grid[i];
        out[i] = {d, pns_information_matched(eta_det, d), cloning_information(CloningStrategy::a, d),
                  cloning_information(CloningStrategy::b, d)};
    });
    return out;
}

}  // namespace qel
