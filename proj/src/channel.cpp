#include "qel/channel.hpp"

#include <cmath>
#include <limits>

#include "qel/optics.hpp"
#include "qel/roots.hpp"

namespace qel {

namespace {

constexpr double kLossResolutionDb = 0.01;
constexpr double kScanStepDb = 0.05;

// (expm1(y) - y) / y, accurate for small y.
double expm1_minus_linear_over(double y) {
    if (std::abs(y) < 1e-4) return y / 2.0 + y * y / 6.0 + y * y * y / 24.0;
    return (std::expm1(y) - y) / y;
}

// expm1(y) / y with the removable singularity at 0 filled in.
double expm1_over(double y) { return y == 0.0 ? 1.0 : std::expm1(y) / y; }

}  // namespace

double loss_db_from_transmission(double eta_t) { return -10.0 * std::log10(eta_t); }

double transmission_from_loss_db(double loss_db) { return std::pow(10.0, -loss_db / 10.0); }

ChannelScenario::ChannelScenario(double m, double eta, double t) : mu(m), eta_det(eta), eta_t(t) {
    if (!(m > 0.0)) throw std::invalid_argument("ChannelScenario: mu must be positive");
    if (!(eta > 0.0 && eta <= 1.0)) throw std::invalid_argument("ChannelScenario: eta_det must lie in (0, 1]");
    if (!(t > 0.0 && t <= 1.0)) throw std::invalid_argument("ChannelScenario: eta_t must lie in (0, 1]");
}

ChannelScenario ChannelScenario::from_loss_db(double mu, double eta_det, double loss_db) {
    if (!(loss_db >= 0.0)) throw std::invalid_argument("ChannelScenario: loss must be non-negative");
    return ChannelScenario(mu, eta_det, transmission_from_loss_db(loss_db));
}

double p_arr_multi(double mu, double eta_det, int cutoff) {
    const PhotonDistribution dist = poisson_photon_dist(mu, cutoff);
    const double eta_bar = 1.0 - eta_det;
    double sum = 0.0;
    double miss = eta_bar;  // eta_bar^(n-1) at n = 2
    for (int n = 2; n <= cutoff; ++n) {
        sum += dist.probs[static_cast<std::size_t>(n)] * (1.0 - miss);
        miss *= eta_bar;
    }
    return sum;
}

double p_exp(double mu, double eta_det, double eta_t) { return -std::expm1(-mu * eta_det * eta_t); }

double p_arr_single(const ChannelScenario& scen) {
    const double single = p_exp(scen.mu, scen.eta_det, scen.eta_t) - p_arr_multi(scen.mu, scen.eta_det);
    if (single < 0.0)
        throw InvalidRegime("P_exp < P_arr^multi: transmission is below the lower bound of the PNS window");
    return single;
}

double observed_error_from_disturbance(const ChannelScenario& scen, double d) {
    if (!(d >= 0.0 && d <= 0.5)) throw std::invalid_argument("observed_error_from_disturbance: D out of range");
    return p_arr_single(scen) / p_exp(scen.mu, scen.eta_det, scen.eta_t) * d;
}

double observed_error_closed_form(const ChannelScenario& scen, double d) {
    if (!(d >= 0.0 && d <= 0.5)) throw std::invalid_argument("observed_error_closed_form: D out of range");
    const double mu = scen.mu;
    const double eta = scen.eta_det;
    if (!(eta < 1.0)) throw std::invalid_argument("observed_error_closed_form: eta_det must be below 1");
    // e^{-mu}(eta e^x + e^mu (1-eta) - e^{mu - mu eta + x})
    //   = -expm1(x - mu eta) + eta expm1(x - mu)
    // The two terms cancel near the lower window edge, so this is evaluated
    // in extended precision.
    using ld = long double;
    const ld m = mu, h = eta;
    const ld x = m * h * static_cast<ld>(scen.eta_t);
    const ld numerator = -std::expm1(x - m * h) + h * std::expm1(x - m);
    const ld denominator = -(1.0L - h) * std::expm1(x);
    const double ratio = static_cast<double>(numerator / denominator);
    if (ratio < 0.0) throw InvalidRegime("closed form: scenario below the lower bound of the PNS window");
    return ratio * d;
}

double disturbance_for_error(const ChannelScenario& scen, double e) {
    if (!(e >= 0.0)) throw std::invalid_argument("disturbance_for_error: e must be non-negative");
    if (e == 0.0) return 0.0;
    const double single = p_arr_single(scen);
    if (single <= 0.0) throw InvalidRegime("no single-photon contribution: every error rate is unattainable");
    const double d = e * p_exp(scen.mu, scen.eta_det, scen.eta_t) / single;
    if (d > 0.5) throw InvalidRegime("observed error unattainable: required disturbance exceeds 1/2");
    return d;
}

TransmissionWindow eta_t_bounds(double mu, double eta_det) {
    if (!(mu > 0.0)) throw std::invalid_argument("eta_t_bounds: mu must be positive");
    if (!(eta_det > 0.0 && eta_det <= 1.0)) throw std::invalid_argument("eta_t_bounds: eta_det must lie in (0, 1]");
    const double eb = 1.0 - eta_det;
    const double y = mu * eb;
    // Upper bound: -ln[e^{-mu}(e^{mu eb} - eta(1 + mu eb)) / eb] / (mu eta),
    // with the bracket rewritten as mu (expm1(y)-y)/y + 1 + mu eb.
    const double upper_arg = std::exp(-mu) * (mu * expm1_minus_linear_over(y) + 1.0 + mu * eb);
    // Lower bound: -ln[(e^{-mu eta} - eta e^{-mu}) / eb] / (mu eta),
    // with the bracket rewritten as e^{-mu}(mu expm1(y)/y + 1).
    const double lower_arg = std::exp(-mu) * (mu * expm1_over(y) + 1.0);

    TransmissionWindow w;
    w.eta_t_upper = std::min(1.0, -std::log(upper_arg) / (mu * eta_det));
    w.eta_t_lower = -std::log(lower_arg) / (mu * eta_det);
    w.empty = !(w.eta_t_lower < w.eta_t_upper);
    w.loss_db_min = loss_db_from_transmission(w.eta_t_upper);
    w.loss_db_max = loss_db_from_transmission(w.eta_t_lower);
    return w;
}

std::optional<double> crossover_loss(double mu, double eta_det, double e, StrategyChoice strategy) {
    if (!(e >= 0.0)) throw std::invalid_argument("crossover_loss: e must be non-negative");
    const TransmissionWindow w = eta_t_bounds(mu, eta_det);
    if (w.empty) return std::nullopt;

    // Strategy advantage over matched PNS at a given loss; negative when the
    // cloner cannot reach the required disturbance.
    auto advantage = [&](double loss_db) {
        const ChannelScenario scen = ChannelScenario::from_loss_db(mu, eta_det, loss_db);
        double d = 0.0;
        try {
            d = disturbance_for_error(scen, e);
        } catch (const InvalidRegime&) {
            return -1.0;
        }
        const double pns = pns_information_matched(eta_det, d);
        double best = -std::numeric_limits<double>::infinity();
        if (strategy != StrategyChoice::b)
            if (auto ia = cloning_information(CloningStrategy::a, d)) best = std::max(best, *ia);
        if (strategy != StrategyChoice::a)
            if (auto ib = cloning_information(CloningStrategy::b, d)) best = std::max(best, *ib);
        return std::isfinite(best) ? best - pns : -1.0;
    };

    const double lo = w.loss_db_min;
    // The upper loss edge is excluded: there P_arr^single vanishes.
    const double hi = w.loss_db_max - 1e-9;
    if (advantage(lo) > 0.0) return lo;
    double prev = lo;
    for (double loss = lo + kScanStepDb;; loss += kScanStepDb) {
        const double at = std::min(loss, hi);
        if (advantage(at) > 0.0)
            return bisect([&](double l) { return advantage(l); }, prev, at, kLossResolutionDb / 4.0);
        if (at >= hi) break;
        prev = at;
    }
    return std::nullopt;
}

}  // namespace qel
