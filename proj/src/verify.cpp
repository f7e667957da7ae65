#include "qel/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qel/channel.hpp"
#include "qel/detection.hpp"
#include "qel/optics.hpp"

namespace qel {

namespace {

constexpr double kExactTol = 1e-9;

std::array<double, 3> random_direction(Rng& rng) {
    const double z = 2.0 * uniform01(rng) - 1.0;
    const double phi = 2.0 * std::numbers::pi * uniform01(rng);
    const double s = std::sqrt(1.0 - z * z);
    return {s * std::cos(phi), s * std::sin(phi), z};
}

Operator from_bloch(double r, const std::array<double, 3>& n) {
    Eigen::MatrixXcd m(2, 2);
    m << 0.5 * (1.0 + r * n[2]), 0.5 * r * cplx(n[0], -n[1]), 0.5 * r * cplx(n[0], n[1]), 0.5 * (1.0 - r * n[2]);
    return Operator(std::move(m));
}

void append(std::vector<Check>& to, const std::string& prefix, const std::vector<Check>& from,
            const std::vector<std::string>& names) {
    for (const auto& c : from)
        if (std::find(names.begin(), names.end(), c.name) != names.end()) to.push_back({prefix + c.name, c.delta, c.tolerance});
}

// Passes iff the rate lies at least five standard errors above zero.
Check significance(const std::string& name, const RateEstimate& r) {
    const double ratio = r.value > 0.0 ? 5.0 * r.stderr_ / r.value : std::numeric_limits<double>::infinity();
    return {name, ratio, 1.0};
}

}  // namespace

bool SuiteResult::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed(); });
}

bool VerificationReport::passed() const {
    return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.passed(); });
}

std::vector<std::string> VerificationReport::failing_checks() const {
    std::vector<std::string> out;
    for (const auto& s : suites)
        for (const auto& c : s.checks)
            if (!c.passed()) out.push_back(s.name + "/" + c.name);
    return out;
}

TwoStateEnsemble random_equal_determinant_ensemble(Rng& rng) {
    const double r = uniform01(rng);
    return TwoStateEnsemble(from_bloch(r, random_direction(rng)), from_bloch(r, random_direction(rng)));
}

VerificationReport run_verification(const VerifyOptions& options) {
    VerificationReport rep;
    rep.seed = options.seed;
    SuiteResult isometry{"isometry", {}};
    SuiteResult probe_a{"probe-A", {}};
    SuiteResult probe_b{"probe-B/AppendixB", {}};
    SuiteResult dmaps{"D-maps", {}};
    SuiteResult levitin{"Levitin", {}};
    SuiteResult double_click{"double-click", {}};
    SuiteResult endpoints{"endpoints/POVM", {}};

    const std::vector<std::string> structural{"isometry", "bob_singlet_weight", "marginals_are_density_operators"};

    // Strategy A at calibration points spanning D in [0, 0.21].
    const double beta_max = 1.0 / std::sqrt(8.0);
    for (int i = 0; i < kBetaGridPoints; ++i) {
        const double beta = beta_max * i / kBetaGridPoints;
        const SimulationReport r = simulate_strategy_a(beta, 0.2, derive_seed(options.seed, 100 + i));
        const std::string tag = "beta=" + std::to_string(beta) + ":";
        append(isometry.checks, "A " + tag, r.checks, structural);
        append(probe_a.checks, tag, r.checks,
               {"probe_plus_vs_closed_form", "probe_minus_vs_closed_form", "overlap_vs_closed_form",
                "distinguishable_block_weight", "probe_block_coherence", "information_vs_closed_form"});
        append(dmaps.checks, "A " + tag, r.checks, {"disturbance_signal_independent", "mc_disturbance"});
        if (beta > 0.0)
            dmaps.checks.push_back({"A " + tag + "beta_round_trip",
                                    std::abs(strategy_a_beta_for_disturbance(r.disturbance) - beta), 1e-9});
    }

    // Strategy B on a gamma grid over [0, pi].
    for (int i = 0; i < kGammaGridPoints; ++i) {
        const double gamma = std::numbers::pi * i / (kGammaGridPoints - 1);
        const SimulationReport r = simulate_strategy_b(gamma, 0.2, derive_seed(options.seed, 200 + i));
        const std::string tag = "gamma=" + std::to_string(gamma) + ":";
        append(isometry.checks, "B " + tag, r.checks, structural);

        const StrategyBCoefficients k = options.coefficients(gamma);
        const auto& m = r.measured_coefficients;
        const double delta = std::max({std::abs(m.a - k.a), std::abs(m.b - k.b), std::abs(m.c - k.c),
                                       std::abs(m.d - k.d), std::abs(m.e - k.e), std::abs(m.f - k.f)});
        probe_b.checks.push_back({tag + "coefficients", delta, kExactTol});
        append(probe_b.checks, tag, r.checks, {"probe_coefficients", "probe_block_coherence"});

        append(dmaps.checks, "B " + tag, r.checks,
               {"disturbance_vs_closed_form", "circular_basis_disturbance", "mc_disturbance"});
        if (gamma <= std::numbers::pi / 2.0)
            dmaps.checks.push_back(
                {"B " + tag + "gamma_round_trip",
                 std::abs(strategy_b_disturbance(strategy_b_gamma_for_disturbance(r.disturbance_closed_form)) -
                          r.disturbance_closed_form),
                 1e-10});

        levitin.checks.push_back(
            {"B " + tag + "closed_form_vs_simulated_blocks",
             std::abs(strategy_b_information_from(k) - r.information_numeric), 1e-6});
        append(levitin.checks, "B " + tag, r.checks, {"information_levitin_blocks"});
    }

    {
        Rng rng(derive_seed(options.seed, 300));
        for (int i = 0; i < kRandomEnsembles; ++i) {
            const TwoStateEnsemble e = random_equal_determinant_ensemble(rng);
            levitin.checks.push_back({"random_ensemble_" + std::to_string(i),
                                      std::abs(levitin_information(e) - numeric_two_state_info(e.rho0(), e.rho1())),
                                      1e-6});
        }
    }

    // Observed error map: closed form vs composition on in-window scenarios.
    {
        Rng rng(derive_seed(options.seed, 400));
        double worst = 0.0;
        int count = 0;
        while (count < 1000) {
            const double mu = 0.01 + 0.99 * uniform01(rng);
            const double eta = 0.05 + 0.9 * uniform01(rng);
            const TransmissionWindow w = eta_t_bounds(mu, eta);
            if (w.empty) continue;
            const double lo = std::log(w.eta_t_lower), hi = std::log(w.eta_t_upper);
            const double eta_t = std::exp(lo + (hi - lo) * (0.001 + 0.998 * uniform01(rng)));
            const ChannelScenario scen(mu, eta, eta_t);
            const double composed = observed_error_from_disturbance(scen, 0.1);
            worst = std::max(worst, std::abs(observed_error_closed_form(scen, 0.1) - composed) / composed);
            ++count;
        }
        dmaps.checks.push_back({"observed_error_closed_form_vs_composition", worst, 1e-12});
    }

    // Double-click signatures at D = 0.1.
    {
        const ChannelScenario scen =
            ChannelScenario::from_loss_db(kDoubleClickMu, kDoubleClickEtaDet, kDoubleClickLossDb);
        for (Attack a : {Attack::pns, Attack::clone_a, Attack::clone_b}) {
            const ProtocolStatistics st = monte_carlo_protocol(scen, a, kDoubleClickDisturbance, options.mc_pulses,
                                                               derive_seed(options.seed, 500 + static_cast<int>(a)));
            const std::string name(to_string(a));
            if (a == Attack::pns) {
                double_click.checks.push_back(
                    {name + ":matching_basis_double_clicks", static_cast<double>(st.double_clicks_matching), 0.0});
            } else {
                double_click.checks.push_back(significance(name + ":matching_rate_5sigma", st.double_click_rate_matching));
                double_click.checks.push_back(
                    significance(name + ":mismatched_rate_5sigma", st.double_click_rate_mismatched));
            }
            const auto& c = st.raw_click_rate;
            double_click.checks.push_back({name + ":click_rate_vs_analytic", std::abs(c.value - st.analytic_click_rate),
                                           5.0 * c.stderr_});
            const auto& e = st.sifted_error_rate;
            double_click.checks.push_back({name + ":sifted_error_vs_analytic",
                                           std::abs(e.value - st.analytic_sifted_error_rate), 5.0 * e.stderr_});
            const double dc_se = std::sqrt(st.analytic_double_click_rate / static_cast<double>(st.pulses));
            double_click.checks.push_back({name + ":double_click_rate_vs_analytic",
                                           std::abs(st.double_click_rate.value - st.analytic_double_click_rate),
                                           5.0 * dc_se + 1e-15});
        }
    }

    // POVM completeness and exact endpoints.
    {
        Rng rng(derive_seed(options.seed, 600));
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            const Basis b = bernoulli(rng, 0.5) ? Basis::rectilinear : Basis::diagonal;
            const DetectorModel model(uniform01(rng), 2 + static_cast<int>(uniform01(rng) * 3.0));
            const Povm p = povm_elements(b, model);
            Operator sum = p.elements[0] + p.elements[1] + p.elements[2] + p.elements[3];
            worst = std::max(worst, max_abs_diff(sum, Operator::identity(sum.dim())));
        }
        endpoints.checks.push_back({"povm_completeness", worst, 1e-12});
        endpoints.checks.push_back({"phi(0)", std::abs(phi(0.0)), 0.0});
        endpoints.checks.push_back({"phi(1)", std::abs(phi(1.0) - 2.0), 0.0});
        endpoints.checks.push_back({"fuchs(0)", std::abs(fuchs_information(0.0)), 0.0});
        endpoints.checks.push_back({"fuchs(1/2)", std::abs(fuchs_information(0.5) - 1.0), 0.0});
        endpoints.checks.push_back({"strategy_b_D(pi/2)", std::abs(strategy_b_disturbance(std::numbers::pi / 2) - 0.25), 1e-15});
        endpoints.checks.push_back({"pns_matched(eta, 0)", std::abs(pns_information_matched(0.2, 0.0) - 1.0 / 1.8), 1e-15});
    }

    rep.suites = {std::move(isometry), std::move(probe_a), std::move(probe_b), std::move(dmaps),
                  std::move(levitin),  std::move(double_click), std::move(endpoints)};
    return rep;
}

}  // namespace qel
