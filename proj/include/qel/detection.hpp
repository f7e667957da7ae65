#pragma once

#include <array>
#include <cstddef>
#include <string_view>
#include <vector>

#include "qel/linalg.hpp"
#include "qel/optics.hpp"
#include "qel/random.hpp"

namespace qel {

/// Bob's analyzer: two identical threshold detectors of efficiency eta_det,
/// on a two-mode Fock space truncated at `cutoff` photons per mode.
struct DetectorModel {
    double eta_det = 1.0;
    int cutoff = 2;

    DetectorModel() = default;
    /// Throws std::invalid_argument unless 0 <= eta_det <= 1 and cutoff >= 2.
    DetectorModel(double eta_det, int cutoff = 2);

    double eta_bar() const { return 1.0 - eta_det; }
};

enum class DetectionOutcome { vacuum = 0, click0 = 1, click1 = 2, double_click = 3 };

std::string_view to_string(DetectionOutcome o);

/// Four-outcome POVM of one measurement basis. Operators act on the space
/// spanned by |n,m>_basis, 0 <= n,m <= cutoff, at index n*(cutoff+1)+m.
struct Povm {
    Basis basis = Basis::rectilinear;
    int cutoff = 0;
    std::array<Operator, 4> elements;

    const Operator& operator[](DetectionOutcome o) const { return elements[static_cast<std::size_t>(o)]; }
};

Povm povm_elements(Basis basis, const DetectorModel& model);

/// Diagonal entry <n,m|F_o|n,m> of the POVM element for outcome o.
double povm_weight(DetectionOutcome o, int n, int m, const DetectorModel& model);

/// Distribution over two-mode occupations |n,m>, 0 <= n,m <= cutoff.
struct OccupationDistribution {
    int cutoff = 0;
    std::vector<double> probs;  // index n*(cutoff+1)+m

    explicit OccupationDistribution(int cutoff);
    double& at(int n, int m);
    double at(int n, int m) const;
    double total() const;

    static OccupationDistribution single_photon(int bit);
    static OccupationDistribution from_two_photon(const TwoPhotonOccupation& occ);
};

struct OutcomeDistribution {
    std::array<double, 4> p{};

    double operator[](DetectionOutcome o) const { return p[static_cast<std::size_t>(o)]; }
    double total() const { return p[0] + p[1] + p[2] + p[3]; }
    double click_probability() const { return 1.0 - p[0]; }
};

/// Throws std::invalid_argument if probabilities are negative or do not sum to 1.
OutcomeDistribution outcome_distribution(const OccupationDistribution& input, const DetectorModel& model);
OutcomeDistribution outcome_distribution(const SymmetricTwoQubit& psi, Basis measured, const DetectorModel& model);
/// Two-photon density operator in the symmetric subspace.
OutcomeDistribution outcome_distribution(const Operator& rho, Basis measured, const DetectorModel& model);

enum class SiftResult { correct, error, discarded_vacuum, mismatched_basis };

std::string_view to_string(SiftResult r);

/// Sifting rule: vacuum is discarded, a basis mismatch is discarded, and a
/// double click is assigned a uniformly random bit drawn from `rng`.
SiftResult sifted_outcome(DetectionOutcome out, const Bb84Signal& sent, Basis measured, Rng& rng);

/// Expected sifted error probability for a matching-basis measurement, with
/// double clicks counted as errors half of the time. Zero when no click occurs.
double sifted_error_rate(const OutcomeDistribution& dist, int sent_bit);

}  // namespace qel
