// bbtv: seasonal SIS simulation and ABC inference on plantation networks.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bbtv/abc.hpp"
#include "bbtv/diagnostics.hpp"
#include "bbtv/error.hpp"
#include "bbtv/forecast.hpp"
#include "bbtv/io.hpp"
#include "bbtv/network.hpp"
#include "bbtv/observation.hpp"
#include "bbtv/sis.hpp"
#include "bbtv/summary.hpp"
#include "bbtv/validation.hpp"

namespace fs = std::filesystem;
using namespace bbtv;

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kData = 2, kNumerical = 3 };

// Options that do not change results and are left out of the config digest.
const std::set<std::string> kDigestExcluded{"workers", "out", "out-dir", "summary-out", "config", "rejects"};

std::string config_digest(const CLI::App& cmd) {
    std::istringstream in(cmd.config_to_str(true, false));
    std::string line, kept;
    while (std::getline(in, line)) {
        const auto eq = line.find('=');
        const std::string key{trim(std::string_view(line).substr(0, eq == std::string::npos ? line.size() : eq))};
        if (kDigestExcluded.count(key)) continue;
        kept += line;
        kept += '\n';
    }
    return "fnv1a:" + hex64(fnv1a64(kept));
}

Metadata make_metadata(const CLI::App& cmd, std::optional<std::uint64_t> seed = std::nullopt) {
    Metadata m;
    m.fields["command"] = cmd.get_name();
    m.fields["config"] = config_digest(cmd);
    if (seed) m.fields["seed"] = std::to_string(*seed);
    return m;
}

std::ofstream open_output(const std::string& path, const Metadata& meta) {
    const fs::path p(path);
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write '" + path + "'");
    out << meta.line() << '\n';
    return out;
}

std::ifstream open_input(const std::string& path, const char* what) {
    std::ifstream in(path);
    if (!in) throw DataError(std::string("cannot open ") + what + " '" + path + "'");
    return in;
}

/// "3,7,24-32" -> {3,7,24,...,32}
std::vector<NodeId> parse_node_list(const std::string& spec) {
    std::vector<NodeId> out;
    if (trim(spec).empty()) return out;
    for (auto part : split_csv(spec)) {
        const auto dash = part.find('-');
        if (dash == std::string_view::npos) {
            out.push_back(static_cast<NodeId>(parse_int(part)));
            continue;
        }
        const auto lo = parse_int(part.substr(0, dash));
        const auto hi = parse_int(part.substr(dash + 1));
        if (lo < 0 || hi < lo) throw ConfigError("bad node range '" + std::string(part) + "'");
        for (auto n = lo; n <= hi; ++n) out.push_back(static_cast<NodeId>(n));
    }
    return out;
}

struct NetworkArgs {
    std::string network;
    std::string nodes;
    std::string footprints;

    void add(CLI::App* cmd, bool footprints_required = false) {
        cmd->add_option("--network", network, "Edge list file (u,v per line)")->required();
        cmd->add_option("--nodes", nodes, "Node metadata file (id,planted)")->required();
        auto* fp = cmd->add_option("--footprints", footprints, "Footprint polygon file");
        if (footprints_required) fp->required();
    }

    [[nodiscard]] Network load() const {
        return load_network_files(network, nodes,
                                  footprints.empty() ? std::nullopt : std::optional<std::string>(footprints));
    }
};

ObservationSeries load_series(const std::string& path, const Network& net) {
    auto in = open_input(path, "snapshot matrix");
    auto series = read_series(in);
    if (series.node_count() != net.node_count())
        throw DataError("snapshot matrix '" + path + "' has " + std::to_string(series.node_count()) +
                        " rows, network has " + std::to_string(net.node_count()) + " nodes");
    return series;
}

/// Training part of an observed series (the first T - holdout snapshots).
ObservationSeries training_part(const ObservationSeries& series, std::size_t holdout) {
    if (holdout + 2 > series.snapshot_count())
        throw DataError("hold-out of " + std::to_string(holdout) + " leaves fewer than 2 training snapshots");
    return series.slice(0, series.snapshot_count() - holdout);
}

ParamSet param_set(const std::vector<double>& v, const char* what) {
    if (v.size() != ParamSet::size) throw ConfigError(std::string(what) + " needs 6 values");
    ParamSet p;
    for (std::size_t i = 0; i < ParamSet::size; ++i) p[i] = v[i];
    if (!p.valid()) throw ConfigError(std::string(what) + " values must lie in [0,1]");
    return p;
}

std::vector<PosteriorDraw> load_draws(const std::string& path) {
    auto in = open_input(path, "draw file");
    auto file = read_draws(in);
    if (file.draws.empty()) throw DataError("draw file '" + path + "' has no draws");
    return file.draws;
}

// ---------------------------------------------------------------------------

struct SimulateCmd {
    NetworkArgs net;
    std::string initial_file;
    std::string infected;
    std::string start = "2014-12";
    std::size_t horizon = 37;
    std::vector<double> params;
    std::string season_mode = "calendar";
    std::uint64_t seed = 0;
    std::string out;
    std::string summary_out;

    void add(CLI::App& app) {
        auto* c = app.add_subcommand("simulate", "Forward-simulate the seasonal SIS model");
        net.add(c);
        auto* init = c->add_option("--initial", initial_file, "Snapshot matrix whose first column is the initial state");
        c->add_option("--infected", infected, "Initially infected nodes, e.g. 3,7,24-32")->excludes(init);
        c->add_option("--start", start, "Month of the initial snapshot (YYYY-MM)")->capture_default_str();
        c->add_option("--horizon", horizon, "Months to simulate")->capture_default_str();
        c->add_option("--params", params,
                      "recovery_summer,recovery_winter,near_summer,near_winter,far_summer,far_winter")
            ->required()
            ->expected(6)
            ->delimiter(',');
        c->add_option("--season-mode", season_mode, "calendar | all-summer | all-winter")->capture_default_str();
        c->add_option("--seed", seed, "Master seed")->required();
        c->add_option("--out", out, "Trajectory matrix output")->required();
        c->add_option("--summary-out", summary_out, "Also write the summary vector CSV");
        c->callback([this, c] { run(*c); });
    }

    void run(const CLI::App& cmd) const {
        const Network network = net.load();
        std::vector<std::uint8_t> mask(network.node_count(), 0);
        YearMonth start_month = YearMonth::parse(start);
        if (!initial_file.empty()) {
            const auto series = load_series(initial_file, network);
            mask = series.column(0);
            if (!cmd.get_option("--start")->count()) start_month = series.months().front();
        } else {
            for (NodeId n : parse_node_list(infected)) {
                if (n >= network.node_count()) throw ConfigError("infected node " + std::to_string(n) + " out of range");
                mask[n] = 1;
            }
        }
        const State initial(network, mask);
        RandomStream rng = RandomStream::derive(seed, 0);
        const auto tr = simulate(network, param_set(params, "--params"), initial, start_month, horizon, rng,
                                 parse_season_mode(season_mode));
        const auto meta = make_metadata(cmd, seed);
        auto os = open_output(out, meta);
        write_series(os, tr.to_series());
        if (!summary_out.empty()) {
            auto ss = open_output(summary_out, meta);
            write_summary_csv(ss, summarize(tr, network));
        }
        const auto last = tr.snapshot(tr.snapshot_count() - 1);
        std::size_t final_infected = 0;
        for (auto v : last) final_infected += v;
        std::cout << "months=" << tr.snapshot_count() << " final_infected=" << final_infected << '\n';
    }
};

struct InferCmd {
    NetworkArgs net;
    std::string observed;
    std::size_t holdout = 0;
    std::string mode = "mcmc";
    std::optional<double> epsilon;
    std::size_t draws = 100000;
    std::size_t iterations = 10'000'000;
    std::size_t burn_in = 100'000;
    std::size_t thin = 200;
    std::vector<double> proposal_sd{0.02, 0.02, 0.005, 0.005, 0.005, 0.005};
    std::vector<double> prior_lower{0, 0, 0, 0, 0, 0};
    std::vector<double> prior_upper{1, 1, 1, 1, 1, 1};
    std::size_t pilot_sims = 10000;
    std::uint64_t seed = 0;
    unsigned workers = 1;
    std::string out_dir;

    void add(CLI::App& app) {
        auto* c = app.add_subcommand("infer", "Estimate parameters by ABC rejection or ABC-MCMC");
        net.add(c);
        c->add_option("--observed", observed, "Observed snapshot matrix")->required();
        c->add_option("--holdout", holdout, "Trailing snapshots reserved for validation")->capture_default_str();
        c->add_option("--mode", mode, "rejection | mcmc | pilot")
            ->check(CLI::IsMember({"rejection", "mcmc", "pilot"}))
            ->capture_default_str();
        c->add_option("--epsilon", epsilon, "ABC tolerance (default 23 for mcmc on 44-element summaries)");
        c->add_option("--draws", draws, "Prior draws for rejection sampling")->capture_default_str();
        c->add_option("--iterations", iterations, "MCMC iterations")->capture_default_str();
        c->add_option("--burn-in", burn_in, "MCMC burn-in")->capture_default_str();
        c->add_option("--thin", thin, "MCMC thinning factor")->capture_default_str();
        c->add_option("--proposal-sd", proposal_sd, "Random-walk sd per parameter")->expected(6)->delimiter(',')
            ->capture_default_str();
        c->add_option("--prior-lower", prior_lower, "Uniform prior lower bounds")->expected(6)->delimiter(',')
            ->capture_default_str();
        c->add_option("--prior-upper", prior_upper, "Uniform prior upper bounds")->expected(6)->delimiter(',')
            ->capture_default_str();
        c->add_option("--pilot-sims", pilot_sims, "Prior-predictive simulations in pilot mode")->capture_default_str();
        c->add_option("--seed", seed, "Master seed")->required();
        c->add_option("--workers", workers, "Worker threads")->capture_default_str();
        c->add_option("--out-dir", out_dir, "Output directory")->required();
        c->callback([this, c] { run(*c); });
    }

    void run(const CLI::App& cmd) const {
        const Network network = net.load();
        const auto series = training_part(load_series(observed, network), holdout);
        const AbcModel model(network, series);
        Prior prior;
        for (std::size_t i = 0; i < ParamSet::size; ++i) {
            prior.lower[i] = prior_lower.at(i);
            prior.upper[i] = prior_upper.at(i);
        }
        prior.validate();
        Metadata meta = make_metadata(cmd, seed);
        fs::create_directories(out_dir);
        const auto t0 = std::chrono::steady_clock::now();
        auto elapsed = [&] {
            return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        };

        if (mode == "pilot") {
            auto d = pilot_discrepancies(model, prior, pilot_sims, seed, workers);
            auto os = open_output(out_dir + "/pilot.csv", meta);
            os << "quantile,discrepancy\n";
            for (double q : {0.0001, 0.001, 0.005, 0.01, 0.05, 0.1, 0.25, 0.5}) os << q << ',' << format_double(quantile(d, q)) << '\n';
            auto rs = open_output(out_dir + "/report.txt", meta);
            rs << "mode = \"pilot\"\nsimulations = " << pilot_sims << "\nsummary_length = " << model.observed_summary().size()
               << "\nmax_discrepancy = " << format_double(model.max_discrepancy()) << "\nseed = " << seed
               << "\nwall_seconds = " << elapsed() << '\n';
            std::cout << "pilot quantiles written to " << out_dir << "/pilot.csv\n";
            return;
        }

        double eps = 0.0;
        if (epsilon) {
            eps = *epsilon;
        } else if (mode == "mcmc" && model.observed_summary().size() == 44) {
            eps = 23.0;
        } else {
            throw ConfigError("--epsilon is required for this dataset (summary length " +
                              std::to_string(model.observed_summary().size()) + "); run --mode pilot to choose one");
        }
        meta.fields["epsilon"] = format_double(eps);
        meta.fields["mode"] = mode;

        std::ostringstream report;
        report << "mode = \"" << mode << "\"\nepsilon = " << format_double(eps) << "\nseed = " << seed
               << "\nsummary_length = " << model.observed_summary().size() << '\n';
        if (mode == "rejection") {
            const auto res = rejection_sample(model, prior, draws, eps, seed, workers);
            auto os = open_output(out_dir + "/draws.csv", meta);
            write_draws(os, res.accepted);
            report << "attempted = " << res.attempted << "\naccepted = " << res.accepted.size()
                   << "\nacceptance_rate = " << format_double(res.acceptance_rate()) << '\n';
            if (!res.diagnostic.empty()) {
                report << "diagnostic = \"" << res.diagnostic << "\"\n";
                std::cerr << "warning: " << res.diagnostic << '\n';
            }
        } else {
            McmcConfig cfg;
            cfg.iterations = iterations;
            cfg.burn_in = burn_in;
            cfg.thin = thin;
            cfg.epsilon = eps;
            for (std::size_t i = 0; i < ParamSet::size; ++i) cfg.proposal_sd[i] = proposal_sd.at(i);
            cfg.master_seed = seed;
            cfg.validate();
            std::vector<PosteriorDraw> kept;
            kept.reserve(thinned_length(iterations, burn_in, thin));
            const auto stats = mcmc_run(model, prior, cfg, [&](const PosteriorDraw& d) {
                if (d.iteration >= burn_in && (d.iteration - burn_in) % thin == 0) kept.push_back(d);
            });
            auto os = open_output(out_dir + "/draws.csv", meta);
            write_draws(os, kept);
            report << "iterations = " << stats.iterations << "\nburn_in = " << burn_in << "\nthin = " << thin
                   << "\nretained = " << kept.size() << "\ninit_attempts = " << stats.init_attempts
                   << "\nproposals_in_bounds = " << stats.proposals_in_bounds
                   << "\nproposals_accepted = " << stats.proposals_accepted
                   << "\nacceptance_rate = " << format_double(stats.acceptance_rate()) << '\n';
        }
        report << "wall_seconds = " << elapsed() << '\n';
        auto rs = open_output(out_dir + "/report.txt", meta);
        rs << report.str();
        std::cout << report.str();
    }
};

struct DiagnoseCmd {
    std::string draws;
    std::string out_dir;
    std::size_t max_lag = 50;
    std::size_t bins = 20;
    std::vector<double> epsilons;

    void add(CLI::App& app) {
        auto* c = app.add_subcommand("diagnose", "Posterior summary, autocorrelation, ESS, densities, tolerance sensitivity");
        c->add_option("--draws", draws, "Draw file from infer or filter")->required();
        c->add_option("--out-dir", out_dir, "Output directory")->required();
        c->add_option("--max-lag", max_lag, "Largest autocorrelation lag")->capture_default_str();
        c->add_option("--bins", bins, "Histogram bins per parameter")->capture_default_str();
        c->add_option("--epsilons", epsilons, "Descending tolerances for the sensitivity table")->delimiter(',');
        c->callback([this, c] { run(*c); });
    }

    void run(const CLI::App& cmd) const {
        auto in = open_input(draws, "draw file");
        const auto file = read_draws(in);
        const auto& d = file.draws;
        Metadata meta = make_metadata(cmd);
        if (file.metadata.has("seed")) meta.fields["seed"] = file.metadata.at("seed");
        fs::create_directories(out_dir);

        const auto report = posterior_summary(d);
        {
            auto os = open_output(out_dir + "/summary.txt", meta);
            write_report(os, report);
            os << "\n[ess]\n";
            std::vector<double> column(d.size());
            for (std::size_t p = 0; p < ParamSet::size; ++p) {
                for (std::size_t i = 0; i < d.size(); ++i) column[i] = d[i].params[p];
                double ess = 0.0;
                try {
                    ess = effective_sample_size(column);
                } catch (const DataError&) {
                    ess = std::numeric_limits<double>::quiet_NaN();
                }
                os << kParamNames[p] << " = " << format_double(ess) << '\n';
            }
        }
        {
            auto os = open_output(out_dir + "/table.txt", meta);
            write_seasonal_table(os, report);
        }
        {
            auto os = open_output(out_dir + "/trace.csv", meta);
            write_trace_csv(os, d);
        }
        {
            auto os = open_output(out_dir + "/autocorrelation.csv", meta);
            write_autocorrelation_csv(os, d, std::min(max_lag, d.size() - 1));
        }
        {
            auto os = open_output(out_dir + "/density.csv", meta);
            write_density_csv(os, pairwise_density_grid(d, bins));
        }
        if (!epsilons.empty()) {
            const auto gen = file.epsilon();
            if (!gen) throw DataError("draw file records no generation epsilon; cannot run tolerance sensitivity");
            auto os = open_output(out_dir + "/tolerance.csv", meta);
            write_tolerance_csv(os, tolerance_sensitivity(d, epsilons, *gen));
        }
        write_seasonal_table(std::cout, report);
    }
};

struct FilterCmd {
    std::string draws;
    double epsilon = 0.0;
    std::string out;

    void add(CLI::App& app) {
        auto* c = app.add_subcommand("filter", "Keep draws whose discrepancy is within a smaller tolerance");
        c->add_option("--draws", draws, "Draw file")->required();
        c->add_option("--epsilon", epsilon, "Filter tolerance (<= generation tolerance)")->required();
        c->add_option("--out", out, "Filtered draw file")->required();
        c->callback([this] { run(); });
    }

    void run() const {
        auto in = open_input(draws, "draw file");
        auto file = read_draws(in);
        const auto gen = file.epsilon();
        if (!gen) throw DataError("draw file records no generation epsilon");
        const auto kept = threshold_filter(file.draws, epsilon, *gen);
        Metadata meta = file.metadata;
        if (epsilon < *gen) meta.fields["filtered"] = format_double(epsilon);
        auto os = open_output(out, meta);
        write_draws(os, kept);
        std::cout << "retained " << kept.size() << " of " << file.draws.size() << " draws\n";
    }
};

struct ForecastCmd {
    NetworkArgs net;
    std::string observed;
    std::size_t holdout = 0;
    std::string draws;
    std::string season_mode = "calendar";
    std::string clear;
    std::size_t horizon = 6;
    std::size_t replicates = 10000;
    std::uint64_t seed = 0;
    unsigned workers = 1;
    std::string out;

    void add(CLI::App& app) {
        auto* c = app.add_subcommand("forecast", "Posterior predictive forecast from the last training snapshot");
        net.add(c);
        c->add_option("--observed", observed, "Observed snapshot matrix")->required();
        c->add_option("--holdout", holdout, "Trailing snapshots to ignore")->capture_default_str();
        c->add_option("--draws", draws, "Posterior draw file")->required();
        c->add_option("--season-mode", season_mode, "calendar | all-summer | all-winter")->capture_default_str();
        c->add_option("--clear", clear, "Nodes frozen susceptible, e.g. 24-32");
        c->add_option("--horizon", horizon, "Months to forecast")->capture_default_str();
        c->add_option("--replicates", replicates, "Monte-Carlo replicates")->capture_default_str();
        c->add_option("--seed", seed, "Master seed")->required();
        c->add_option("--workers", workers, "Worker threads")->capture_default_str();
        c->add_option("--out", out, "Forecast CSV")->required();
        c->callback([this, c] { run(*c); });
    }

    void run(const CLI::App& cmd) const {
        const Network network = net.load();
        const auto series = training_part(load_series(observed, network), holdout);
        const auto posterior = params_of(load_draws(draws));
        Scenario sc;
        sc.season_mode = parse_season_mode(season_mode);
        sc.cleared_nodes = parse_node_list(clear);
        sc.horizon = horizon;
        sc.start_month = series.months().back();
        sc.initial = series.column(series.snapshot_count() - 1);
        const auto result = posterior_forecast(network, posterior, sc, {replicates, seed, workers});
        auto os = open_output(out, make_metadata(cmd, seed));
        write_forecast_csv(os, result);
        std::cout << "steady_state=" << format_double(result.steady_state()) << '\n';
    }
};

struct CompareCmd {
    std::string baseline;
    std::string variant;
    std::string out;

    void add(CLI::App& app) {
        auto* c = app.add_subcommand("compare", "Per-node probability differences between two forecasts");
        c->add_option("--baseline", baseline, "Baseline forecast CSV")->required();
        c->add_option("--variant", variant, "Variant forecast CSV")->required();
        c->add_option("--out", out, "Comparison CSV")->required();
        c->callback([this, c] { run(*c); });
    }

    void run(const CLI::App& cmd) const {
        auto bi = open_input(baseline, "forecast file");
        auto vi = open_input(variant, "forecast file");
        const auto b = read_forecast_csv(bi);
        const auto v = read_forecast_csv(vi);
        const auto cmp = compare_scenarios(b, v);
        auto os = open_output(out, make_metadata(cmd));
        write_comparison_csv(os, cmp, b.start);
        std::cout << "final_mean_delta=" << format_double(cmp.mean_delta.back()) << '\n';
    }
};

struct ValidateCmd {
    NetworkArgs net;
    std::string observed;
    std::size_t holdout = 7;
    std::string draws;
    std::size_t replicates = 10000;
    std::uint64_t seed = 0;
    unsigned workers = 1;
    std::string out_dir;

    void add(CLI::App& app) {
        auto* c = app.add_subcommand("validate", "Hold-out deviance loss and ROC/AUC");
        net.add(c);
        c->add_option("--observed", observed, "Snapshot matrix including the hold-out months")->required();
        c->add_option("--holdout", holdout, "Trailing hold-out snapshots")->capture_default_str();
        c->add_option("--draws", draws, "Posterior draw file")->required();
        c->add_option("--replicates", replicates, "Monte-Carlo replicates per month")->capture_default_str();
        c->add_option("--seed", seed, "Master seed")->required();
        c->add_option("--workers", workers, "Worker threads")->capture_default_str();
        c->add_option("--out-dir", out_dir, "Output directory")->required();
        c->callback([this, c] { run(*c); });
    }

    void run(const CLI::App& cmd) const {
        const Network network = net.load();
        const auto series = load_series(observed, network);
        const auto posterior = params_of(load_draws(draws));
        const auto check = predictive_check(network, posterior, series, holdout, {replicates, seed, workers});
        const auto meta = make_metadata(cmd, seed);
        fs::create_directories(out_dir);
        {
            auto os = open_output(out_dir + "/records.csv", meta);
            write_records_csv(os, check);
        }
        {
            auto os = open_output(out_dir + "/node_loss.csv", meta);
            write_node_loss_csv(os, check);
        }
        std::optional<RocCurve> roc;
        try {
            roc = roc_curve(check.records);
            auto os = open_output(out_dir + "/roc.csv", meta);
            write_roc_csv(os, *roc);
        } catch (const DataError& e) {
            std::cerr << "warning: " << e.what() << '\n';
        }
        std::ostringstream s;
        s << "records = " << check.records.size() << "\nmean_loss = " << format_double(check.mean_loss)
          << "\nrandom_baseline = " << format_double(random_baseline_loss())
          << "\nclamp_delta = " << format_double(check.clamp_delta) << "\nlog_base = \"e\"\n";
        if (roc) s << "auc = " << format_double(roc->auc) << '\n';
        auto os = open_output(out_dir + "/summary.txt", meta);
        os << s.str();
        std::cout << s.str();
    }
};

struct BinCmd {
    NetworkArgs net;
    std::string points;
    std::string start = "2014-12";
    std::size_t snapshots = 0;
    std::string out;
    std::string rejects;

    void add(CLI::App& app) {
        auto* c = app.add_subcommand("bin", "Bin infection points to subsections");
        net.add(c, true);
        c->add_option("--points", points, "Points file (x,y,snapshot)")->required();
        c->add_option("--start", start, "Month of snapshot 0")->capture_default_str();
        c->add_option("--snapshots", snapshots, "Number of snapshots")->required();
        c->add_option("--out", out, "Snapshot matrix output")->required();
        c->add_option("--rejects", rejects, "Report of points outside every footprint");
        c->callback([this, c] { run(*c); });
    }

    void run(const CLI::App& cmd) const {
        const Network network = net.load();
        auto in = open_input(points, "points file");
        const auto pts = read_points(in);
        const auto res = bin_points(pts, network, YearMonth::parse(start), snapshots);
        const auto meta = make_metadata(cmd);
        auto os = open_output(out, meta);
        write_series(os, res.series);
        if (!rejects.empty()) {
            auto rs = open_output(rejects, meta);
            rs << "point,x,y,snapshot\n";
            for (auto i : res.rejects)
                rs << i << ',' << format_double(pts[i].x) << ',' << format_double(pts[i].y) << ','
                   << pts[i].snapshot_index << '\n';
        }
        std::cout << "binned " << pts.size() - res.rejects.size() << " points, rejected " << res.rejects.size() << '\n';
    }
};

struct NetStatsCmd {
    NetworkArgs net;
    std::string out_dir;

    void add(CLI::App& app) {
        auto* c = app.add_subcommand("net-stats", "Degree histogram and per-node neighbourhood counts");
        net.add(c);
        c->add_option("--out-dir", out_dir, "Output directory");
        c->callback([this, c] { run(*c); });
    }

    void run(const CLI::App& cmd) const {
        const Network network = net.load();
        const auto hist = network.degree_histogram();
        std::cout << "degree,count\n";
        for (const auto& [d, c] : hist) std::cout << d << ',' << c << '\n';
        if (out_dir.empty()) return;
        const auto meta = make_metadata(cmd);
        fs::create_directories(out_dir);
        auto hs = open_output(out_dir + "/degree_histogram.csv", meta);
        hs << "degree,count\n";
        for (const auto& [d, c] : hist) hs << d << ',' << c << '\n';
        auto ns = open_output(out_dir + "/node_stats.csv", meta);
        ns << "node,planted,degree,non_neighbors\n";
        for (NodeId n = 0; n < network.node_count(); ++n)
            ns << n << ',' << (network.planted(n) ? 1 : 0) << ',' << network.degree(n) << ','
               << network.non_neighbor_count(n) << '\n';
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Seasonal SIS simulation and ABC inference on plantation subsection networks", "bbtv"};
    app.set_version_flag("--version", std::string(kToolVersion));
    app.set_config("--config", "", "TOML/INI config file; command-line flags override its values");
    app.require_subcommand(1);

    SimulateCmd simulate_cmd;
    InferCmd infer_cmd;
    DiagnoseCmd diagnose_cmd;
    FilterCmd filter_cmd;
    ForecastCmd forecast_cmd;
    CompareCmd compare_cmd;
    ValidateCmd validate_cmd;
    BinCmd bin_cmd;
    NetStatsCmd net_stats_cmd;
    simulate_cmd.add(app);
    infer_cmd.add(app);
    diagnose_cmd.add(app);
    filter_cmd.add(app);
    forecast_cmd.add(app);
    compare_cmd.add(app);
    validate_cmd.add(app);
    bin_cmd.add(app);
    net_stats_cmd.add(app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kUsage;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return kData;
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return kNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kData;
    }
    return kOk;
}
