#include "qel/detection.hpp"

#include <cmath>
#include <stdexcept>

namespace qel {

namespace {

constexpr double kNormTol = 1e-12;

}  // namespace

DetectorModel::DetectorModel(double eta, int cut) : eta_det(eta), cutoff(cut) {
    if (!(eta >= 0.0 && eta <= 1.0)) throw std::invalid_argument("DetectorModel: eta_det must lie in [0, 1]");
    if (cut < 2) throw std::invalid_argument("DetectorModel: cutoff must be at least 2");
}

std::string_view to_string(DetectionOutcome o) {
    switch (o) {
        case DetectionOutcome::vacuum: return "vacuum";
        case DetectionOutcome::click0: return "click0";
        case DetectionOutcome::click1: return "click1";
        case DetectionOutcome::double_click: return "double";
    }
    return "?";
}

std::string_view to_string(SiftResult r) {
    switch (r) {
        case SiftResult::correct: return "correct";
        case SiftResult::error: return "error";
        case SiftResult::discarded_vacuum: return "discarded_vacuum";
        case SiftResult::mismatched_basis: return "mismatched_basis";
    }
    return "?";
}

double povm_weight(DetectionOutcome o, int n, int m, const DetectorModel& model) {
    const double eb = model.eta_bar();
    const double miss_n = std::pow(eb, n);
    const double miss_m = std::pow(eb, m);
    switch (o) {
        case DetectionOutcome::vacuum: return miss_n * miss_m;
        case DetectionOutcome::click0: return (1.0 - miss_n) * miss_m;
        case DetectionOutcome::click1: return (1.0 - miss_m) * miss_n;
        case DetectionOutcome::double_click: return (1.0 - miss_n) * (1.0 - miss_m);
    }
    return 0.0;
}

Povm povm_elements(Basis basis, const DetectorModel& model) {
    const int side = model.cutoff + 1;
    const auto dim = static_cast<Eigen::Index>(side * side);
    Povm povm{basis, model.cutoff, {Operator::zero(1), Operator::zero(1), Operator::zero(1), Operator::zero(1)}};
    for (std::size_t k = 0; k < 4; ++k) {
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
        for (int n = 0; n < side; ++n)
            for (int mm = 0; mm < side; ++mm) {
                const auto idx = static_cast<Eigen::Index>(n * side + mm);
                m(idx, idx) = povm_weight(static_cast<DetectionOutcome>(k), n, mm, model);
            }
        povm.elements[k] = Operator(std::move(m));
    }
    return povm;
}

OccupationDistribution::OccupationDistribution(int cut) : cutoff(cut) {
    if (cut < 0) throw std::invalid_argument("OccupationDistribution: negative cutoff");
    probs.assign(static_cast<std::size_t>((cut + 1) * (cut + 1)), 0.0);
}

double& OccupationDistribution::at(int n, int m) {
    if (n < 0 || m < 0 || n > cutoff || m > cutoff) throw std::out_of_range("OccupationDistribution: index");
    return probs[static_cast<std::size_t>(n * (cutoff + 1) + m)];
}

double OccupationDistribution::at(int n, int m) const {
    if (n < 0 || m < 0 || n > cutoff || m > cutoff) throw std::out_of_range("OccupationDistribution: index");
    return probs[static_cast<std::size_t>(n * (cutoff + 1) + m)];
}

double OccupationDistribution::total() const {
    double s = 0.0;
    for (double p : probs) s += p;
    return s;
}

OccupationDistribution OccupationDistribution::single_photon(int bit) {
    OccupationDistribution d(2);
    if (bit == 0)
        d.at(1, 0) = 1.0;
    else if (bit == 1)
        d.at(0, 1) = 1.0;
    else
        throw std::invalid_argument("single_photon: bit must be 0 or 1");
    return d;
}

OccupationDistribution OccupationDistribution::from_two_photon(const TwoPhotonOccupation& occ) {
    OccupationDistribution d(2);
    d.at(2, 0) = occ.p20;
    d.at(1, 1) = occ.p11;
    d.at(0, 2) = occ.p02;
    return d;
}

OutcomeDistribution outcome_distribution(const OccupationDistribution& input, const DetectorModel& model) {
    double total = 0.0;
    for (double p : input.probs) {
        if (p < -kNormTol) throw std::invalid_argument("outcome_distribution: negative occupation probability");
        total += p;
    }
    if (std::abs(total - 1.0) > kNormTol) throw std::invalid_argument("outcome_distribution: input not normalized");

    OutcomeDistribution out;
    for (int n = 0; n <= input.cutoff; ++n)
        for (int m = 0; m <= input.cutoff; ++m) {
            const double w = input.at(n, m);
            if (w == 0.0) continue;
            for (std::size_t k = 0; k < 4; ++k)
                out.p[k] += w * povm_weight(static_cast<DetectionOutcome>(k), n, m, model);
        }
    return out;
}

OutcomeDistribution outcome_distribution(const SymmetricTwoQubit& psi, Basis measured, const DetectorModel& model) {
    return outcome_distribution(OccupationDistribution::from_two_photon(fock_from_symmetric(psi, measured)), model);
}

OutcomeDistribution outcome_distribution(const Operator& rho, Basis measured, const DetectorModel& model) {
    if (!check_density(rho)) throw std::invalid_argument("outcome_distribution: not a density operator");
    return outcome_distribution(OccupationDistribution::from_two_photon(fock_from_symmetric(rho, measured)), model);
}

SiftResult sifted_outcome(DetectionOutcome out, const Bb84Signal& sent, Basis measured, Rng& rng) {
    if (out == DetectionOutcome::vacuum) return SiftResult::discarded_vacuum;
    if (measured != sent.basis) return SiftResult::mismatched_basis;
    int bit = 0;
    switch (out) {
        case DetectionOutcome::click0: bit = 0; break;
        case DetectionOutcome::click1: bit = 1; break;
        case DetectionOutcome::double_click: bit = bernoulli(rng, 0.5) ? 1 : 0; break;
        case DetectionOutcome::vacuum: break;
    }
    return bit == sent.bit ? SiftResult::correct : SiftResult::error;
}

double sifted_error_rate(const OutcomeDistribution& dist, int sent_bit) {
    const double clicks = dist.click_probability();
    if (clicks <= 0.0) return 0.0;
    const double wrong = sent_bit == 0 ? dist[DetectionOutcome::click1] : dist[DetectionOutcome::click0];
    return (wrong + 0.5 * dist[DetectionOutcome::double_click]) / clicks;
}

}  // namespace qel
