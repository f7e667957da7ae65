#include "qel/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qel/detection.hpp"
#include "qel/infotheory.hpp"
#include "qel/optics.hpp"
#include "qel/parallel.hpp"
#include "qel/random.hpp"

namespace qel {

namespace {

constexpr double kProbeTol = 1e-9;
constexpr double kIsometryTol = 1e-12;
constexpr double kInfoTol = 1e-6;
constexpr double kMcSigmas = 5.0;
constexpr std::size_t kChunkPulses = 1u << 16;

double binary_entropy(double p) {
    auto t = [](double x) { return x <= 0.0 ? 0.0 : -x * std::log2(x); };
    return t(p) + t(1.0 - p);
}

std::array<double, 3> bloch_vector(const Operator& rho) {
    return {2.0 * rho(0, 1).real(), -2.0 * rho(0, 1).imag(), (rho(0, 0) - rho(1, 1)).real()};
}

double dot3(const std::array<double, 3>& a, const std::array<double, 3>& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

double isometry_defect(const Operator& u, const std::vector<Ket>& inputs) {
    double worst = 0.0;
    for (std::size_t i = 0; i < inputs.size(); ++i)
        for (std::size_t j = 0; j < inputs.size(); ++j) {
            const cplx g = (u * inputs[i]).inner(u * inputs[j]);
            worst = std::max(worst, std::abs(g - cplx(i == j ? 1.0 : 0.0, 0.0)));
        }
    const auto n = static_cast<Eigen::Index>(u.dim());
    const double unitarity = (u.matrix().adjoint() * u.matrix() - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
    return std::max(worst, unitarity);
}

std::vector<Ket> symmetric_inputs() {
    const Ket probe = Ket::basis(4, 0);
    return {tensor(Ket::basis(4, 0), probe), tensor(bell_psi_plus(), probe), tensor(Ket::basis(4, 3), probe)};
}

Ket with_probe(const Ket& bob) { return tensor(bob, Ket::basis(4, 0)); }

struct Marginals {
    Operator bob;
    Operator eve;
};

Marginals marginals(const Operator& u, const Ket& two_photon) {
    const Operator full = Operator::projector(u * with_probe(two_photon));
    return {partial_trace(full, Subsystem::a, 4, 4), partial_trace(full, Subsystem::b, 4, 4)};
}

// Dominant eigenvector of a rank-one 2x2 block, phased so its first nonzero entry is real positive.
Eigen::Vector2cd pure_component(const Operator& block) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(block.matrix());
    Eigen::Vector2cd v = solver.eigenvectors().col(1);
    const Eigen::Index lead = std::abs(v[0]) > 1e-12 ? 0 : 1;
    v *= std::conj(v[lead]) / std::abs(v[lead]);
    return v;
}

// Sum over blocks of weight x numeric information, skipping empty blocks.
double numeric_blockwise(const ProbePair& probes, const std::array<std::array<Ket, 2>, 2>& blocks, double& off_block) {
    double info = 0.0;
    off_block = 0.0;
    for (const auto& blk : blocks) {
        const double w = probes.rho_plus.expectation(blk[0]) + probes.rho_plus.expectation(blk[1]);
        if (w < 1e-14) continue;
        const BlockRestriction r = restrict_to_block(probes.rho_plus, probes.rho_minus, blk[0], blk[1]);
        info += r.weight0 * numeric_two_state_info(r.block0, r.block1);
    }
    // Coherence between the two blocks must vanish for the decomposition to be lossless.
    for (const auto* rho : {&probes.rho_plus, &probes.rho_minus})
        for (const auto& x : blocks[0])
            for (const auto& y : blocks[1]) off_block = std::max(off_block, std::abs(rho->expectation(x, y)));
    return info;
}

struct McCount {
    std::size_t clicks = 0;
    std::size_t errors = 0;
};

// Samples matching-basis detections of the given Bob states and sifts them.
McCount sample_sifted(const std::array<OutcomeDistribution, 4>& dists, std::size_t samples, std::uint64_t seed) {
    Rng rng(seed);
    McCount c;
    const auto& sigs = all_signals();
    for (std::size_t i = 0; i < samples; ++i) {
        const std::size_t k = static_cast<std::size_t>(uniform01(rng) * 4.0);
        const auto& d = dists[k];
        const double u = uniform01(rng);
        DetectionOutcome o = DetectionOutcome::double_click;
        double acc = 0.0;
        for (std::size_t j = 0; j < 3; ++j) {
            acc += d.p[j];
            if (u < acc) {
                o = static_cast<DetectionOutcome>(j);
                break;
            }
        }
        const SiftResult r = sifted_outcome(o, sigs[k], sigs[k].basis, rng);
        if (r == SiftResult::correct || r == SiftResult::error) ++c.clicks;
        if (r == SiftResult::error) ++c.errors;
    }
    return c;
}

void add_mc_check(SimulationReport& rep, const std::array<OutcomeDistribution, 4>& dists) {
    rep.mc_samples = std::max<std::size_t>(rep.mc_samples, 1);
    const McCount c = sample_sifted(dists, rep.mc_samples, rep.seed);
    const double n = static_cast<double>(std::max<std::size_t>(c.clicks, 1));
    rep.mc_disturbance = static_cast<double>(c.errors) / n;
    rep.mc_stderr = std::sqrt(rep.disturbance * (1.0 - rep.disturbance) / n);
    rep.checks.push_back({"mc_disturbance", std::abs(rep.mc_disturbance - rep.disturbance),
                          std::max(kMcSigmas * rep.mc_stderr, 1e-12)});
}

// Single-qubit frame change sending |0>,|1> to |+i>,|-i> and fixing |+>,|-> up to phase.
Operator equatorial_frame() {
    const double s = 1.0 / std::sqrt(2.0);
    Eigen::MatrixXcd r(2, 2);
    r << s, cplx(0, s), cplx(0, s), s;
    return Operator(std::move(r));
}

}  // namespace

bool SimulationReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed(); });
}

SimulationReport simulate_strategy_a(double beta, double eta_det, std::uint64_t seed, std::size_t mc_samples) {
    const CloneAParams params(beta);
    const DetectorModel model(eta_det);
    const Operator u = strategy_a_unitary(params);

    SimulationReport rep;
    rep.strategy = "A";
    rep.parameter = beta;
    rep.eta_det = eta_det;
    rep.seed = seed;
    rep.mc_samples = mc_samples;
    rep.checks.push_back({"isometry", isometry_defect(u, symmetric_inputs()), kIsometryTol});

    std::array<OutcomeDistribution, 4> dists;
    double d_min = 1.0, d_max = 0.0, d_sum = 0.0, singlet = 0.0, density_defect = 0.0;
    const auto& sigs = all_signals();
    for (std::size_t k = 0; k < 4; ++k) {
        const Marginals m = marginals(u, symmetric_encode(sigs[k]).ket());
        singlet = std::max(singlet, std::abs(singlet_weight(m.bob)));
        if (!check_density(m.bob) || !check_density(m.eve)) density_defect = 1.0;
        dists[k] = outcome_distribution(m.bob, sigs[k].basis, model);
        const double dk = sifted_error_rate(dists[k], sigs[k].bit);
        d_min = std::min(d_min, dk);
        d_max = std::max(d_max, dk);
        d_sum += dk;
    }
    rep.disturbance = d_sum / 4.0;
    // Round-off in D is amplified by sqrt(D) in the probe amplitudes.
    if (std::abs(rep.disturbance) < 1e-14) rep.disturbance = 0.0;
    rep.disturbance_closed_form = rep.disturbance;
    rep.checks.push_back({"bob_singlet_weight", singlet, kProbeTol});
    rep.checks.push_back({"marginals_are_density_operators", density_defect, 0.0});
    rep.checks.push_back({"disturbance_signal_independent", d_max - d_min, kProbeTol});

    const auto pm = diagonal_product_basis();
    rep.probes = {marginals(u, pm[0]).eve, marginals(u, pm[3]).eve};

    if (rep.disturbance <= 0.25 + 1e-12) {
        const double d = std::min(rep.disturbance, 0.25);
        const ProbePair closed = strategy_a_probe_states(d);
        rep.checks.push_back({"probe_plus_vs_closed_form", max_abs_diff(rep.probes.rho_plus, closed.rho_plus), kProbeTol});
        rep.checks.push_back(
            {"probe_minus_vs_closed_form", max_abs_diff(rep.probes.rho_minus, closed.rho_minus), kProbeTol});

        // Weight of the perfectly distinguishable {|-+>, |+->} block.
        const double w_perfect = rep.probes.rho_plus.expectation(pm[2]) + rep.probes.rho_plus.expectation(pm[1]);
        rep.checks.push_back({"distinguishable_block_weight", std::abs(w_perfect - 2.0 * d), kProbeTol});

        if (d < 0.25 - 1e-12) {
            const BlockRestriction r =
                restrict_to_block(rep.probes.rho_plus, rep.probes.rho_minus, bell_phi_plus(), bell_psi_plus());
            const cplx x = pure_component(r.block0).dot(pure_component(r.block1));
            rep.checks.push_back({"overlap_vs_closed_form", std::abs(x - strategy_a_probe_overlap(d)), kProbeTol});
        }

        double off_block = 0.0;
        rep.information_numeric = numeric_blockwise(
            rep.probes, {{{pm[1], pm[2]}, {bell_phi_plus(), bell_psi_plus()}}}, off_block);
        rep.information_closed_form = strategy_a_information(d);
        rep.checks.push_back({"probe_block_coherence", off_block, kProbeTol});
        rep.checks.push_back(
            {"information_vs_closed_form", std::abs(rep.information_numeric - rep.information_closed_form), kInfoTol});
    }

    add_mc_check(rep, dists);
    return rep;
}

SimulationReport simulate_strategy_b(double gamma, double eta_det, std::uint64_t seed, std::size_t mc_samples) {
    const CloneBParams params(gamma);
    const DetectorModel model(eta_det);
    const Operator u = strategy_b_unitary(params);

    SimulationReport rep;
    rep.strategy = "B";
    rep.parameter = gamma;
    rep.eta_det = eta_det;
    rep.seed = seed;
    rep.mc_samples = mc_samples;
    rep.checks.push_back({"isometry", isometry_defect(u, symmetric_inputs()), kIsometryTol});

    // Diagonal signals, which lie on the cloner's equator.
    std::array<OutcomeDistribution, 4> dists;
    double d_sum = 0.0, singlet = 0.0, density_defect = 0.0;
    const auto& sigs = all_signals();
    for (std::size_t k = 0; k < 4; ++k) {
        const Bb84Signal s{Basis::diagonal, sigs[k].bit};
        const Marginals m = marginals(u, symmetric_encode(s).ket());
        singlet = std::max(singlet, std::abs(singlet_weight(m.bob)));
        if (!check_density(m.bob) || !check_density(m.eve)) density_defect = 1.0;
        dists[k] = outcome_distribution(m.bob, Basis::diagonal, model);
        d_sum += sifted_error_rate(dists[k], s.bit);
    }
    rep.disturbance = d_sum / 4.0;
    rep.disturbance_closed_form = strategy_b_disturbance(gamma);
    rep.checks.push_back({"bob_singlet_weight", singlet, kProbeTol});
    rep.checks.push_back({"marginals_are_density_operators", density_defect, 0.0});
    rep.checks.push_back(
        {"disturbance_vs_closed_form", std::abs(rep.disturbance - rep.disturbance_closed_form), kProbeTol});

    // Circular signals (the other equatorial basis) must see the same disturbance.
    {
        const double s = 1.0 / std::sqrt(2.0);
        const Ket plus_i{s, cplx(0, s)};
        const Ket minus_i{s, cplx(0, -s)};
        const Operator bob = marginals(u, tensor(plus_i, plus_i)).bob;
        const double p_right = bob.expectation(tensor(plus_i, plus_i));
        const double p_mixed = bob.expectation((tensor(plus_i, minus_i) + tensor(minus_i, plus_i)) * s);
        const double d_circ = 1.0 - p_right - 0.5 * p_mixed;
        rep.checks.push_back({"circular_basis_disturbance", std::abs(d_circ - rep.disturbance), kProbeTol});
    }

    const auto pm = diagonal_product_basis();
    rep.probes = {marginals(u, pm[0]).eve, marginals(u, pm[3]).eve};

    auto entry = [&](const Operator& rho, std::size_t i, std::size_t j) {
        return 16.0 * rho.expectation(pm[i], pm[j]);
    };
    const Operator& rp = rep.probes.rho_plus;
    const Operator& rm = rep.probes.rho_minus;
    rep.measured_coefficients = {entry(rp, 0, 0).real(), entry(rp, 0, 3).real(), entry(rp, 3, 3).real(),
                                 entry(rp, 1, 1).real(), entry(rp, 1, 2).real(), entry(rp, 2, 2).real()};

    const StrategyBCoefficients k = strategy_b_coefficients(gamma);
    const std::array<double, 6> closed{k.a, k.b, k.c, k.d, k.e, k.f};
    // rho_+ pattern, then rho_- pattern with a<->c and d<->f swapped.
    const std::array<std::array<int, 4>, 4> pattern_plus{{{0, -1, -1, 1}, {-1, 3, 4, -1}, {-1, 4, 5, -1}, {1, -1, -1, 2}}};
    const std::array<std::array<int, 4>, 4> pattern_minus{{{2, -1, -1, 1}, {-1, 5, 4, -1}, {-1, 4, 3, -1}, {1, -1, -1, 0}}};
    double coeff_delta = 0.0;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            const int ip = pattern_plus[i][j];
            const int im = pattern_minus[i][j];
            const double ep = ip < 0 ? 0.0 : closed[static_cast<std::size_t>(ip)];
            const double em = im < 0 ? 0.0 : closed[static_cast<std::size_t>(im)];
            coeff_delta = std::max(coeff_delta, std::abs(entry(rp, i, j) - ep));
            coeff_delta = std::max(coeff_delta, std::abs(entry(rm, i, j) - em));
        }
    rep.checks.push_back({"probe_coefficients", coeff_delta, kProbeTol});

    // Eve's information: closed form vs Levitin per block vs numeric search per block.
    rep.information_closed_form = strategy_b_information_from(k);
    const std::array<std::array<Ket, 2>, 2> blocks{{{pm[0], pm[3]}, {pm[1], pm[2]}}};
    std::vector<InformationBlock> levitin_blocks;
    for (const auto& blk : blocks) {
        if (rp.expectation(blk[0]) + rp.expectation(blk[1]) < 1e-14) continue;
        const BlockRestriction r = restrict_to_block(rp, rm, blk[0], blk[1]);
        levitin_blocks.push_back({r.weight0, TwoStateEnsemble(r.block0, r.block1)});
    }
    const double levitin = blockwise_information(levitin_blocks);
    rep.checks.push_back({"information_levitin_blocks", std::abs(levitin - rep.information_closed_form), kProbeTol});
    double off_block = 0.0;
    rep.information_numeric = numeric_blockwise(rep.probes, blocks, off_block);
    rep.checks.push_back({"probe_block_coherence", off_block, kProbeTol});
    rep.checks.push_back(
        {"information_vs_closed_form", std::abs(rep.information_numeric - rep.information_closed_form), kInfoTol});

    add_mc_check(rep, dists);
    return rep;
}

double numeric_two_state_info(const Operator& rho0, const Operator& rho1, int grid_size) {
    if (rho0.dim() != 2 || rho1.dim() != 2) throw std::invalid_argument("numeric_two_state_info: qubit states only");
    if (grid_size < 8) throw std::invalid_argument("numeric_two_state_info: grid too coarse");
    const auto r0 = bloch_vector(rho0);
    const auto r1 = bloch_vector(rho1);

    // Mutual information is convex in the measurement direction, so the
    // optimum is a unit vector in the plane spanned by r0 and r1.
    std::array<double, 3> u1{r0[0] - r1[0], r0[1] - r1[1], r0[2] - r1[2]};
    const double n1 = std::sqrt(dot3(u1, u1));
    if (n1 < 1e-15) return 0.0;
    for (auto& c : u1) c /= n1;
    std::array<double, 3> u2{r0[0] + r1[0], r0[1] + r1[1], r0[2] + r1[2]};
    const double proj = dot3(u2, u1);
    for (std::size_t i = 0; i < 3; ++i) u2[i] -= proj * u1[i];
    double n2 = std::sqrt(dot3(u2, u2));
    if (n2 < 1e-12) {
        // Any direction orthogonal to u1.
        const std::array<double, 3> e = std::abs(u1[0]) < 0.9 ? std::array<double, 3>{1, 0, 0}
                                                               : std::array<double, 3>{0, 1, 0};
        const double p = dot3(e, u1);
        for (std::size_t i = 0; i < 3; ++i) u2[i] = e[i] - p * u1[i];
        n2 = std::sqrt(dot3(u2, u2));
    }
    for (auto& c : u2) c /= n2;

    auto info = [&](double theta) {
        const double c = std::cos(theta), s = std::sin(theta);
        const std::array<double, 3> n{c * u1[0] + s * u2[0], c * u1[1] + s * u2[1], c * u1[2] + s * u2[2]};
        const double p0 = 0.5 * (1.0 + dot3(n, r0));
        const double p1 = 0.5 * (1.0 + dot3(n, r1));
        return binary_entropy(0.5 * (p0 + p1)) - 0.5 * (binary_entropy(p0) + binary_entropy(p1));
    };

    const double step = std::numbers::pi / grid_size;
    int best = 0;
    double best_val = -1.0;
    for (int i = 0; i < grid_size; ++i) {
        const double v = info(i * step);
        if (v > best_val) {
            best_val = v;
            best = i;
        }
    }
    // Golden-section search on the bracket around the best grid point.
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = (best - 1) * step, b = (best + 1) * step;
    double c = b - invphi * (b - a), d = a + invphi * (b - a);
    double fc = info(c), fd = info(d);
    while (b - a > 1e-12) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = info(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = info(d);
        }
    }
    return std::max({best_val, fc, fd, info(0.5 * (a + b))});
}

std::string_view to_string(Attack a) {
    switch (a) {
        case Attack::pns: return "PNS";
        case Attack::clone_a: return "CloneA";
        case Attack::clone_b: return "CloneB";
    }
    return "?";
}

Operator cloned_bob_state(Attack attack, double d, const Bb84Signal& s) {
    if (attack == Attack::pns) throw std::invalid_argument("cloned_bob_state: PNS does not clone");
    const Ket input = symmetric_encode(s).ket();
    if (attack == Attack::clone_a) {
        const Operator u = strategy_a_unitary(CloneAParams(strategy_a_beta_for_disturbance(d)));
        return marginals(u, input).bob;
    }
    const Operator u = strategy_b_unitary(CloneBParams(strategy_b_gamma_for_disturbance(d)));
    const Operator r = equatorial_frame();
    const Operator rr = tensor(r, r);
    // Rotate the signal onto the cloner's equator, clone, and rotate Bob's photons back.
    const Operator bob = marginals(u, rr * input).bob;
    return rr.adjoint() * bob * rr;
}

namespace {

// Outcome distribution for k photons all prepared in the mode of `sent_bit`,
// measured in the matching or the conjugate basis.
OutcomeDistribution forwarded_photons(int k, bool matching, int sent_bit, const DetectorModel& model) {
    OccupationDistribution occ(std::max(k, 2));
    if (matching) {
        if (sent_bit == 0)
            occ.at(k, 0) = 1.0;
        else
            occ.at(0, k) = 1.0;
    } else {
        double c = std::pow(0.5, k);  // binomial(k, j) / 2^k
        for (int j = 0; j <= k; ++j) {
            occ.at(j, k - j) = c;
            c *= static_cast<double>(k - j) / (j + 1);
        }
    }
    return outcome_distribution(occ, model);
}

OutcomeDistribution depolarized_single_photon(double d, bool matching, int sent_bit, const DetectorModel& model) {
    OccupationDistribution occ(2);
    const double flip = matching ? d : 0.5;
    occ.at(sent_bit == 0 ? 1 : 0, sent_bit == 0 ? 0 : 1) = 1.0 - flip;
    occ.at(sent_bit == 0 ? 0 : 1, sent_bit == 0 ? 1 : 0) = flip;
    return outcome_distribution(occ, model);
}

OutcomeDistribution mix(const OutcomeDistribution& x, double wx, const OutcomeDistribution& y, double wy) {
    OutcomeDistribution out;
    for (std::size_t i = 0; i < 4; ++i) out.p[i] = wx * x.p[i] + wy * y.p[i];
    return out;
}

OutcomeDistribution vacuum_outcome() {
    OutcomeDistribution out;
    out.p[0] = 1.0;
    return out;
}

struct Counters {
    std::size_t clicks = 0, matching_clicks = 0, errors = 0, dc = 0, dc_match = 0, dc_mismatch = 0;
};

}  // namespace

ProtocolStatistics monte_carlo_protocol(const ChannelScenario& scen, Attack attack, double d, std::size_t n_pulses,
                                        std::uint64_t seed) {
    if (n_pulses == 0) throw std::invalid_argument("monte_carlo_protocol: n_pulses must be positive");
    const double d_max = attack == Attack::pns ? 0.5 : 0.25;
    if (!(d >= 0.0 && d <= d_max)) throw std::invalid_argument("monte_carlo_protocol: disturbance out of range");

    const DetectorModel model(scen.eta_det, 2);
    const PhotonDistribution photons = poisson_photon_dist(scen.mu, kScenarioCutoff);
    const double eb = model.eta_bar();
    const double target = p_exp(scen.mu, scen.eta_det, scen.eta_t);
    p_arr_single(scen);  // rejects scenarios below the window

    ProtocolStatistics st;
    st.attack = attack;
    st.disturbance = d;
    st.seed = seed;
    st.pulses = n_pulses;

    // Click rate of pulses with n >= 3 photons after PNS, and of two-photon pulses.
    double rate_multi3 = 0.0;
    for (int n = 3; n <= kScenarioCutoff; ++n) rate_multi3 += photons.probs[static_cast<std::size_t>(n)] * (1.0 - std::pow(eb, n - 1));
    const double p1 = photons.probs[1];
    const double p2 = photons.probs[2];
    const double rate_two = attack == Attack::pns ? p2 * scen.eta_det : p2 * (1.0 - eb * eb);

    double admission = 1.0;
    double single = (target - rate_multi3 - rate_two) / (scen.eta_det * p1);
    if (single < 0.0) {
        single = 0.0;
        admission = std::clamp((target - rate_multi3) / rate_two, 0.0, 1.0);
    }
    if (single > 1.0) {
        single = 1.0;
        st.rate_matched = false;
    }
    st.single_forward_probability = single;
    st.two_photon_admission = admission;

    // Outcome tables indexed [photons sent n][signal k][matching basis ? 1 : 0].
    const auto& sigs = all_signals();
    std::vector<std::array<std::array<OutcomeDistribution, 2>, 4>> table(static_cast<std::size_t>(kScenarioCutoff) + 1);
    for (std::size_t k = 0; k < 4; ++k) {
        const int bit = sigs[k].bit;
        for (int m = 0; m < 2; ++m) {
            const bool matching = m == 1;
            table[0][k][m] = vacuum_outcome();
            table[1][k][m] = mix(depolarized_single_photon(d, matching, bit, model), single, vacuum_outcome(), 1.0 - single);
            if (attack == Attack::pns) {
                table[2][k][m] = forwarded_photons(1, matching, bit, model);
            } else {
                const Basis measured = matching ? sigs[k].basis : other_basis(sigs[k].basis);
                const OutcomeDistribution cloned =
                    outcome_distribution(cloned_bob_state(attack, d, sigs[k]), measured, model);
                table[2][k][m] = mix(cloned, admission, vacuum_outcome(), 1.0 - admission);
            }
            for (int n = 3; n <= kScenarioCutoff; ++n)
                table[static_cast<std::size_t>(n)][k][m] = forwarded_photons(n - 1, matching, bit, model);
        }
    }

    // Exact expectations over the same tables.
    double e_click = 0.0, e_match_click = 0.0, e_err = 0.0, e_dc = 0.0, e_dc_match = 0.0;
    for (int n = 0; n <= kScenarioCutoff; ++n)
        for (std::size_t k = 0; k < 4; ++k)
            for (int m = 0; m < 2; ++m) {
                const double w = photons.probs[static_cast<std::size_t>(n)] * 0.25 * 0.5;
                const auto& o = table[static_cast<std::size_t>(n)][k][m];
                e_click += w * o.click_probability();
                e_dc += w * o[DetectionOutcome::double_click];
                if (m == 1) {
                    e_match_click += w * o.click_probability();
                    e_err += w * (o[sigs[k].bit == 0 ? DetectionOutcome::click1 : DetectionOutcome::click0] +
                                  0.5 * o[DetectionOutcome::double_click]);
                    e_dc_match += w * o[DetectionOutcome::double_click];
                }
            }
    st.analytic_click_rate = e_click;
    st.analytic_sifted_error_rate = e_match_click > 0.0 ? e_err / e_match_click : 0.0;
    st.analytic_double_click_rate = e_dc;
    st.analytic_double_click_rate_matching = e_dc_match;

    // Cumulative photon-number distribution for inverse-CDF sampling.
    std::vector<double> cdf(photons.probs.size());
    double acc = 0.0;
    for (std::size_t n = 0; n < cdf.size(); ++n) cdf[n] = (acc += photons.probs[n]);

    const std::size_t chunks = (n_pulses + kChunkPulses - 1) / kChunkPulses;
    std::vector<Counters> partial(chunks);
    parallel_for(chunks, [&](std::size_t c) {
        Rng rng(derive_seed(seed, c));
        Counters& cnt = partial[c];
        const std::size_t begin = c * kChunkPulses;
        const std::size_t end = std::min(n_pulses, begin + kChunkPulses);
        for (std::size_t i = begin; i < end; ++i) {
            const std::size_t k = std::min<std::size_t>(3, static_cast<std::size_t>(uniform01(rng) * 4.0));
            const Bb84Signal& sent = sigs[k];
            const Basis measured = bernoulli(rng, 0.5) ? sent.basis : other_basis(sent.basis);
            const double un = uniform01(rng);
            const std::size_t n = static_cast<std::size_t>(std::upper_bound(cdf.begin(), cdf.end() - 1, un) - cdf.begin());
            const bool matching = measured == sent.basis;
            const auto& dist = table[n][k][matching ? 1 : 0];
            const double u = uniform01(rng);
            DetectionOutcome o = DetectionOutcome::double_click;
            double run = 0.0;
            for (std::size_t j = 0; j < 3; ++j) {
                run += dist.p[j];
                if (u < run) {
                    o = static_cast<DetectionOutcome>(j);
                    break;
                }
            }
            if (o == DetectionOutcome::vacuum) continue;
            ++cnt.clicks;
            if (o == DetectionOutcome::double_click) {
                ++cnt.dc;
                ++(matching ? cnt.dc_match : cnt.dc_mismatch);
            }
            const SiftResult r = sifted_outcome(o, sent, measured, rng);
            if (r == SiftResult::correct || r == SiftResult::error) ++cnt.matching_clicks;
            if (r == SiftResult::error) ++cnt.errors;
        }
    });

    for (const auto& c : partial) {
        st.clicks += c.clicks;
        st.matching_clicks += c.matching_clicks;
        st.errors += c.errors;
        st.double_clicks += c.dc;
        st.double_clicks_matching += c.dc_match;
        st.double_clicks_mismatched += c.dc_mismatch;
    }

    auto rate = [](std::size_t hits, std::size_t trials) {
        if (trials == 0) return RateEstimate{};
        const double p = static_cast<double>(hits) / static_cast<double>(trials);
        return RateEstimate{p, std::sqrt(p * (1.0 - p) / static_cast<double>(trials))};
    };
    st.raw_click_rate = rate(st.clicks, n_pulses);
    st.sifted_error_rate = rate(st.errors, st.matching_clicks);
    st.double_click_rate = rate(st.double_clicks, n_pulses);
    st.double_click_rate_matching = rate(st.double_clicks_matching, n_pulses);
    st.double_click_rate_mismatched = rate(st.double_clicks_mismatched, n_pulses);
    return st;
}

}  // namespace qel
