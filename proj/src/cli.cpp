#include "qel/cli.hpp"

#include <algorithm>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qel/attacks.hpp"
#include "qel/channel.hpp"
#include "qel/report.hpp"
#include "qel/verify.hpp"

namespace qel {

namespace {

const std::vector<std::string> kSubcommands{"info-curves", "error-map", "bounds", "crossover", "verify", "coefficients"};

struct RunConfig {
    std::string format = "csv";
    std::string output;
    std::string config;  // consumed before parsing; declared for --help
    std::vector<double> eta_dets{0.2};
    double eta_det = 0.2;
    double mu = 0.1;
    std::optional<double> eta_t;
    std::optional<double> loss_db;
    double error = 0.01;
    double d_min = 0.0, d_max = 0.5;
    int steps = 0;
    double loss_min = 1.0, loss_max = 13.0;
    int loss_steps = 13;
    double gamma_min = 0.0, gamma_max = std::numbers::pi;
    std::uint64_t seed = 1;
    std::size_t pulses = kDefaultPulses;
};

std::string flag_name(std::string key) {
    std::replace(key.begin(), key.end(), '_', '-');
    return "--" + key;
}

bool given(const std::vector<std::string>& args, const std::string& flag) {
    return std::any_of(args.begin(), args.end(),
                       [&](const std::string& a) { return a == flag || a.rfind(flag + "=", 0) == 0; });
}

std::string scalar_token(const nlohmann::json& v) {
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

// Expands a JSON config file into flag tokens. Keys that also appear on the
// command line are skipped so that explicit flags win.
std::vector<std::string> config_tokens(const std::string& path, const std::vector<std::string>& cmdline) {
    std::ifstream in(path);
    if (!in) throw CLI::ValidationError("--config", "cannot open " + path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw CLI::ValidationError("--config", e.what());
    }
    if (!j.is_object()) throw CLI::ValidationError("--config", "top level must be an object");
    const bool pinned_transmission = given(cmdline, "--eta-t") || given(cmdline, "--loss-db");
    std::vector<std::string> tokens;
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string flag = flag_name(it.key());
        if (flag == "--subcommand" || flag == "--command" || flag == "--config") continue;
        if (given(cmdline, flag)) continue;
        if ((flag == "--eta-t" || flag == "--loss-db") && pinned_transmission) continue;
        const auto& v = it.value();
        if (v.is_boolean()) {
            if (v.get<bool>()) tokens.push_back(flag);
        } else if (v.is_array()) {
            tokens.push_back(flag);
            for (const auto& x : v) tokens.push_back(scalar_token(x));
        } else {
            tokens.push_back(flag);
            tokens.push_back(scalar_token(v));
        }
    }
    return tokens;
}

// Pulls --config out of the arguments and splices its expansion in right
// after the subcommand.
std::vector<std::string> expand_config(std::vector<std::string> args) {
    std::optional<std::string> path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config") {
            if (i + 1 >= args.size()) throw CLI::ArgumentMismatch("--config needs a file name");
            path = args[i + 1];
            args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
            break;
        }
        if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
            args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
            break;
        }
    }
    if (!path) return args;
    const auto sub = std::find_if(args.begin(), args.end(), [](const std::string& a) {
        return std::find(kSubcommands.begin(), kSubcommands.end(), a) != kSubcommands.end();
    });
    if (sub == args.end()) throw CLI::RequiredError("a subcommand");
    const auto tokens = config_tokens(*path, args);
    args.insert(sub + 1, tokens.begin(), tokens.end());
    return args;
}

void add_common(CLI::App* sub, RunConfig& cfg, bool tabular) {
    sub->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    sub->add_option("--output,-o", cfg.output, "Write to this file instead of stdout");
    sub->add_option("--config", cfg.config, "JSON file of flag values; explicit flags take precedence");
    if (tabular) sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
}

Table info_curves_table(const RunConfig& cfg) {
    Table t{{"eta_det", "D", "i_pns", "i_a", "i_b"}, {}};
    const std::vector<double> grid = uniform_grid(cfg.d_min, cfg.d_max, cfg.steps);
    auto opt = [](const std::optional<double>& v) { return v ? Cell{*v} : Cell{}; };
    for (double eta : cfg.eta_dets)
        for (const auto& p : information_curves(eta, grid)) t.rows.push_back({eta, p.d, p.i_pns, opt(p.i_a), opt(p.i_b)});
    return t;
}

Table error_map_table(const RunConfig& cfg) {
    std::vector<double> losses;
    if (cfg.eta_t || cfg.loss_db) {
        const ChannelScenario scen = cfg.eta_t ? ChannelScenario(cfg.mu, cfg.eta_det, *cfg.eta_t)
                                               : ChannelScenario::from_loss_db(cfg.mu, cfg.eta_det, *cfg.loss_db);
        // A single pinned scenario must lie in the window; grids flag rows instead.
        if (!eta_t_bounds(cfg.mu, cfg.eta_det).contains(scen.eta_t))
            throw InvalidRegime("transmission " + format_number(scen.eta_t) + " (" + format_number(scen.loss_db()) +
                                " dB) lies outside the PNS window");
        losses.push_back(scen.loss_db());
    } else {
        losses = uniform_grid(cfg.loss_min, cfg.loss_max, cfg.loss_steps);
    }
    const std::vector<double> ds = uniform_grid(cfg.d_min, cfg.d_max, cfg.steps);
    const TransmissionWindow w = eta_t_bounds(cfg.mu, cfg.eta_det);

    Table t{{"loss_db", "D", "e", "valid"}, {}};
    for (double loss : losses) {
        const ChannelScenario scen = ChannelScenario::from_loss_db(cfg.mu, cfg.eta_det, loss);
        const bool valid = w.contains(scen.eta_t);
        for (double d : ds) {
            Cell e;
            if (valid) e = observed_error_from_disturbance(scen, d);
            t.rows.push_back({loss, d, e, valid});
        }
    }
    return t;
}

Table coefficients_table(const RunConfig& cfg) {
    Table t{{"gamma", "a", "b", "c", "d", "e", "f", "D", "i_b"}, {}};
    for (double g : uniform_grid(cfg.gamma_min, cfg.gamma_max, cfg.steps)) {
        const CloneBParams params(g);
        const StrategyBCoefficients k = strategy_b_coefficients(params.gamma());
        t.rows.push_back({g, k.a, k.b, k.c, k.d, k.e, k.f, strategy_b_disturbance(g), strategy_b_information_from(k)});
    }
    return t;
}

Json crossover_json(const RunConfig& cfg) {
    const TransmissionWindow w = eta_t_bounds(cfg.mu, cfg.eta_det);
    const auto a = crossover_loss(cfg.mu, cfg.eta_det, cfg.error, StrategyChoice::a);
    const auto b = crossover_loss(cfg.mu, cfg.eta_det, cfg.error, StrategyChoice::b);
    const auto best = crossover_loss(cfg.mu, cfg.eta_det, cfg.error, StrategyChoice::best);
    auto opt = [](const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); };
    Json j;
    j["schema"] = kSchema;
    j["command"] = "crossover";
    j["mu"] = cfg.mu;
    j["eta_det"] = cfg.eta_det;
    j["error"] = cfg.error;
    j["window_lower_db"] = w.empty ? Json(nullptr) : Json(w.loss_db_min);
    j["window_upper_db"] = w.empty ? Json(nullptr) : Json(w.loss_db_max);
    j["strategy_a_db"] = opt(a);
    j["strategy_b_db"] = opt(b);
    j["best_db"] = opt(best);
    if (!best)
        j["best_strategy"] = nullptr;
    else
        j["best_strategy"] = (a && (!b || *a <= *b)) ? "A" : "B";
    return j;
}

void emit_table(std::ostream& os, const std::string& command, const Table& t, const std::string& format) {
    if (format == "json")
        write_json(os, table_json(command, t));
    else
        write_csv(os, t);
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Eavesdropping analysis for weak-pulse BB84: PNS versus two-photon cloning attacks", "qel"};
    app.require_subcommand(1);
    app.failure_message(CLI::FailureMessage::help);

    auto* curves = app.add_subcommand("info-curves", "Eve's information versus disturbance (PNS, strategy A, strategy B)");
    add_common(curves, cfg, true);
    curves->add_option("--eta-det", cfg.eta_dets, "Detector efficiencies, one curve each")
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    curves->add_option("--d-min", cfg.d_min);
    curves->add_option("--d-max", cfg.d_max);
    curves->add_option("--steps", cfg.steps, "Number of grid points");

    auto* emap = app.add_subcommand("error-map", "Observed error rate versus disturbance and loss");
    add_common(emap, cfg, true);
    emap->add_option("--mu", cfg.mu);
    emap->add_option("--eta-det", cfg.eta_det);
    auto* eta_t = emap->add_option("--eta-t", cfg.eta_t, "Single channel transmission");
    auto* loss = emap->add_option("--loss-db", cfg.loss_db, "Single channel loss");
    eta_t->excludes(loss);
    loss->excludes(eta_t);
    emap->add_option("--loss-min", cfg.loss_min);
    emap->add_option("--loss-max", cfg.loss_max);
    emap->add_option("--loss-steps", cfg.loss_steps);
    emap->add_option("--d-min", cfg.d_min);
    emap->add_option("--d-max", cfg.d_max);
    emap->add_option("--steps", cfg.steps, "Number of D grid points");

    auto* bounds = app.add_subcommand("bounds", "Transmission window in which the PNS analysis applies");
    add_common(bounds, cfg, false);
    bounds->add_option("--mu", cfg.mu);
    bounds->add_option("--eta-det", cfg.eta_det);

    auto* cross = app.add_subcommand("crossover", "Loss above which cloning beats the PNS process");
    add_common(cross, cfg, false);
    cross->add_option("--mu", cfg.mu);
    cross->add_option("--eta-det", cfg.eta_det);
    cross->add_option("--error,-e", cfg.error, "Observed error rate");

    auto* verify = app.add_subcommand("verify", "Run every oracle cross-check");
    add_common(verify, cfg, false);
    verify->add_option("--seed", cfg.seed);
    verify->add_option("--pulses", cfg.pulses, "Monte Carlo pulses per attack")->check(CLI::PositiveNumber);

    auto* coeffs = app.add_subcommand("coefficients", "Probe coefficients of strategy B on a gamma grid");
    add_common(coeffs, cfg, true);
    coeffs->add_option("--gamma-min", cfg.gamma_min);
    coeffs->add_option("--gamma-max", cfg.gamma_max);
    coeffs->add_option("--steps", cfg.steps, "Number of grid points");

    try {
        std::vector<std::string> args(argv + 1, argv + argc);
        args = expand_config(std::move(args));
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitUsage;
    }

    std::ostringstream buf;
    int status = kExitOk;
    try {
        if (curves->parsed()) {
            if (cfg.steps == 0) cfg.steps = kDefaultCurvePoints;
            emit_table(buf, "info-curves", info_curves_table(cfg), cfg.format);
        } else if (emap->parsed()) {
            if (cfg.steps == 0) cfg.steps = 11;
            emit_table(buf, "error-map", error_map_table(cfg), cfg.format);
        } else if (bounds->parsed()) {
            write_json(buf, window_json(cfg.mu, cfg.eta_det, eta_t_bounds(cfg.mu, cfg.eta_det)));
        } else if (cross->parsed()) {
            write_json(buf, crossover_json(cfg));
        } else if (verify->parsed()) {
            VerifyOptions opts;
            opts.seed = cfg.seed;
            opts.mc_pulses = cfg.pulses;
            const VerificationReport report = run_verification(opts);
            write_json(buf, verification_json(report));
            if (!report.passed()) {
                err << "verification failed:\n";
                for (const auto& name : report.failing_checks()) err << "  " << name << "\n";
                status = kExitVerifyFailed;
            }
        } else if (coeffs->parsed()) {
            if (cfg.steps == 0) cfg.steps = kGammaGridPoints;
            emit_table(buf, "coefficients", coefficients_table(cfg), cfg.format);
        }
    } catch (const InvalidRegime& e) {
        err << "invalid regime: " << e.what() << "\n";
        return kExitInvalidRegime;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }

    if (cfg.output.empty()) {
        out << buf.str();
    } else {
        std::ofstream file(cfg.output, std::ios::binary);
        if (!file) {
            err << "cannot write " << cfg.output << "\n";
            return kExitUsage;
        }
        file << buf.str();
    }
    return status;
}

}  // namespace qel
