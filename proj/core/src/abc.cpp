#include "bbtv/abc.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>

#include "bbtv/error.hpp"
#include "bbtv/parallel.hpp"

namespace bbtv {

void Prior::validate() const {
    for (std::size_t i = 0; i < ParamSet::size; ++i) {
        if (!(lower[i] >= 0.0 && upper[i] <= 1.0 && lower[i] < upper[i]))
            throw ConfigError("prior bounds for " + std::string(kParamNames[i]) + " must satisfy 0 <= lower < upper <= 1");
    }
}

bool Prior::contains(const ParamSet& p) const {
    for (std::size_t i = 0; i < ParamSet::size; ++i)
        if (!(p[i] >= lower[i] && p[i] <= upper[i])) return false;
    return true;
}

ParamSet Prior::sample(RandomStream& rng) const {
    ParamSet p;
    for (std::size_t i = 0; i < ParamSet::size; ++i) p[i] = lower[i] + (upper[i] - lower[i]) * rng.uniform();
    return p;
}

AbcModel::AbcModel(const Network& net, const ObservationSeries& observed)
    : net_(&net),
      initial_(net, observed.column(0)),
      start_(observed.months().front()),
      horizon_(observed.snapshot_count() - 1) {
    if (observed.node_count() != net.node_count())
        throw DataError("observed series has " + std::to_string(observed.node_count()) + " rows, network has " +
                        std::to_string(net.node_count()) + " nodes");
    observed_summary_ = summarize(Trajectory::from_series(observed), net);
    for (std::size_t t = 0; t < horizon_; ++t)
        (start_.plus(static_cast<int>(t)).season() == Season::Summer ? summer_transitions_ : winter_transitions_) += 1;
}

AbcModel::Workspace::Workspace(const AbcModel& model) : simulator_(model.network()) {}

double AbcModel::simulate_discrepancy(const ParamSet& params, RandomStream& rng, Workspace& ws) const {
    ws.simulator_.run(params, initial_, start_, horizon_, rng, ws.trajectory_);
    ws.scratch_.summarize_into(ws.trajectory_, *net_, ws.summary_);
    return discrepancy(ws.summary_, observed_summary_);
}

double AbcModel::max_discrepancy() const {
    double sum = 0.0;
    for (double v : observed_summary_.s1) sum += std::pow(std::max(v, 1.0 - v), 2);
    const auto obs = observed_summary_.counts();
    const double n = static_cast<double>(net_->node_count());
    for (std::size_t i = 0; i < obs.size(); ++i) {
        const double cap = n * static_cast<double>(i % 2 == 0 ? summer_transitions_ : winter_transitions_);
        const double o = static_cast<double>(obs[i]);
        sum += std::pow(std::max(o, cap - o), 2);
    }
    return sum / static_cast<double>(observed_summary_.size());
}

double abc_likelihood(const AbcModel& model, const ParamSet& params, std::size_t n, double epsilon,
                      RandomStream& rng) {
    if (n == 0) throw ConfigError("ABC likelihood needs n >= 1 simulations");
    if (!(epsilon >= 0.0)) throw ConfigError("ABC tolerance must not be negative");
    AbcModel::Workspace ws(model);
    std::size_t hits = 0;
    for (std::size_t i = 0; i < n; ++i) hits += model.simulate_discrepancy(params, rng, ws) <= epsilon ? 1 : 0;
    return static_cast<double>(hits) / static_cast<double>(n);
}

namespace {

std::vector<AbcModel::Workspace> make_workspaces(const AbcModel& model, unsigned workers) {
    std::vector<AbcModel::Workspace> ws;
    ws.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) ws.emplace_back(model);
    return ws;
}

}  // namespace

RejectionResult rejection_sample(const AbcModel& model, const Prior& prior, std::size_t n_draws, double epsilon,
                                 std::uint64_t master_seed, unsigned workers) {
    if (n_draws == 0) throw ConfigError("rejection sampling needs n_draws >= 1");
    if (!(epsilon > 0.0)) throw ConfigError("ABC tolerance must be positive");
    prior.validate();
    workers = std::max(1u, workers);

    std::vector<PosteriorDraw> all(n_draws);
    std::vector<std::uint8_t> keep(n_draws, 0);
    auto ws = make_workspaces(model, workers);
    parallel_for(n_draws, workers, [&](std::size_t i, unsigned w) {
        RandomStream rng = RandomStream::derive(master_seed, i);
        const ParamSet p = prior.sample(rng);
        const double d = model.simulate_discrepancy(p, rng, ws[w]);
        all[i] = {p, d, i, true};
        keep[i] = d <= epsilon ? 1 : 0;
    });

    RejectionResult result;
    result.attempted = n_draws;
    for (std::size_t i = 0; i < n_draws; ++i)
        if (keep[i]) result.accepted.push_back(all[i]);
    if (result.accepted.empty()) {
        const double best = std::min_element(all.begin(), all.end(), [](const auto& a, const auto& b) {
                                return a.discrepancy < b.discrepancy;
                            })->discrepancy;
        result.diagnostic = "no draw accepted out of " + std::to_string(n_draws) + " at epsilon " +
                            format_double(epsilon) + "; smallest discrepancy was " + format_double(best);
    }
    return result;
}

std::vector<double> pilot_discrepancies(const AbcModel& model, const Prior& prior, std::size_t n,
                                        std::uint64_t master_seed, unsigned workers) {
    prior.validate();
    workers = std::max(1u, workers);
    std::vector<double> out(n);
    auto ws = make_workspaces(model, workers);
    parallel_for(n, workers, [&](std::size_t i, unsigned w) {
        RandomStream rng = RandomStream::derive(master_seed, i);
        out[i] = model.simulate_discrepancy(prior.sample(rng), rng, ws[w]);
    });
    return out;
}

void McmcConfig::validate() const {
    if (iterations == 0) throw ConfigError("MCMC needs at least one iteration");
    if (burn_in >= iterations) throw ConfigError("burn-in must be smaller than the number of iterations");
    if (thin == 0) throw ConfigError("thinning factor must be at least 1");
    if (!(epsilon > 0.0)) throw ConfigError("ABC tolerance must be positive");
    for (std::size_t i = 0; i < proposal_sd.size(); ++i)
        if (!(proposal_sd[i] > 0.0))
            throw ConfigError("proposal sd for " + std::string(kParamNames[i]) + " must be positive");
    if (init_attempt_cap == 0) throw ConfigError("initialization attempt cap must be positive");
}

McmcStats mcmc_run(const AbcModel& model, const Prior& prior, const McmcConfig& config,
                   const std::function<void(const PosteriorDraw&)>& visit) {
    config.validate();
    prior.validate();
    RandomStream rng = RandomStream::derive(config.master_seed, 0);
    AbcModel::Workspace ws(model);
    McmcStats stats;

    PosteriorDraw current;
    bool initialized = false;
    for (std::size_t a = 0; a < config.init_attempt_cap; ++a) {
        ++stats.init_attempts;
        const ParamSet p = prior.sample(rng);
        const double d = model.simulate_discrepancy(p, rng, ws);
        if (d <= config.epsilon) {
            current = {p, d, 0, true};
            initialized = true;
            break;
        }
    }
    if (!initialized)
        throw NumericalError("ABC-MCMC initialization found no prior draw within epsilon " +
                             format_double(config.epsilon) + " after " + std::to_string(config.init_attempt_cap) +
                             " attempts; use a larger epsilon");
    stats.iterations = 1;
    visit(current);

    for (std::size_t it = 1; it < config.iterations; ++it) {
        ParamSet proposal = current.params;
        for (std::size_t i = 0; i < ParamSet::size; ++i) proposal[i] += config.proposal_sd[i] * rng.normal();
        bool accepted = false;
        if (prior.contains(proposal)) {
            ++stats.proposals_in_bounds;
            const double d = model.simulate_discrepancy(proposal, rng, ws);
            if (d <= config.epsilon) {
                current.params = proposal;
                current.discrepancy = d;
                accepted = true;
                ++stats.proposals_accepted;
            }
        }
        current.iteration = it;
        current.accepted_proposal = accepted;
        ++stats.iterations;
        visit(current);
    }
    return stats;
}

McmcResult mcmc_chain(const AbcModel& model, const Prior& prior, const McmcConfig& config) {
    McmcResult result;
    result.chain.reserve(config.iterations);
    result.stats = mcmc_run(model, prior, config, [&](const PosteriorDraw& d) { result.chain.push_back(d); });
    return result;
}

std::size_t thinned_length(std::size_t length, std::size_t burn_in, std::size_t thin) {
    if (thin == 0) throw ConfigError("thinning factor must be at least 1");
    if (burn_in >= length) throw ConfigError("burn-in must be smaller than the chain length");
    return (length - burn_in + thin - 1) / thin;
}

std::vector<PosteriorDraw> thin_and_burn(std::span<const PosteriorDraw> chain, std::size_t burn_in, std::size_t thin) {
    std::vector<PosteriorDraw> out;
    out.reserve(thinned_length(chain.size(), burn_in, thin));
    for (std::size_t i = burn_in; i < chain.size(); i += thin) out.push_back(chain[i]);
    return out;
}

std::vector<PosteriorDraw> threshold_filter(std::span<const PosteriorDraw> draws, double epsilon_prime,
                                            double generation_epsilon) {
    if (epsilon_prime > generation_epsilon)
        throw ConfigError("filter tolerance " + format_double(epsilon_prime) + " exceeds the generation tolerance " +
                          format_double(generation_epsilon));
    std::vector<PosteriorDraw> out;
    for (const auto& d : draws)
        if (d.discrepancy <= epsilon_prime) out.push_back(d);
    return out;
}

std::optional<double> DrawFile::epsilon() const {
    if (!metadata.has("epsilon")) return std::nullopt;
    return parse_double(metadata.at("epsilon"));
}

namespace {

std::string draws_header() {
    std::string h = "iteration";
    for (auto n : kParamNames) {
        h += ',';
        h += n;
    }
    h += ",discrepancy,accepted_proposal";
    return h;
}

}  // namespace

void write_draws(std::ostream& out, std::span<const PosteriorDraw> draws) {
    out << draws_header() << '\n';
    std::string row;
    for (const auto& d : draws) {
        row = std::to_string(d.iteration);
        for (double v : d.params.values) {
            row += ',';
            row += format_double(v);
        }
        row += ',';
        row += format_double(d.discrepancy);
        row += d.accepted_proposal ? ",1\n" : ",0\n";
        out << row;
    }
}

DrawFile read_draws(std::istream& in) {
    DrawFile file;
    std::string line, comment;
    if (!next_data_line(in, line, &comment)) throw DataError("draw file is empty");
    if (!comment.empty()) file.metadata = Metadata::parse(comment);

    const auto header = split_csv(line);
    const auto expected_line = draws_header();
    const auto expected = split_csv(expected_line);
    for (std::size_t i = 0; i < expected.size(); ++i) {
        if (i >= header.size()) throw DataError("draw file is missing column '" + std::string(expected[i]) + "'");
        if (header[i] != expected[i])
            throw DataError("draw file column " + std::to_string(i + 1) + " is '" + std::string(header[i]) +
                            "', expected '" + std::string(expected[i]) + "'");
    }
    if (header.size() > expected.size())
        throw DataError("draw file has unexpected column '" + std::string(header[expected.size()]) + "'");

    while (next_data_line(in, line)) {
        const auto f = split_csv(line);
        if (f.size() != expected.size()) throw DataError("draw row '" + line + "' has the wrong number of columns");
        PosteriorDraw d;
        d.iteration = static_cast<std::uint64_t>(parse_int(f[0]));
        for (std::size_t i = 0; i < ParamSet::size; ++i) d.params[i] = parse_double(f[1 + i]);
        d.discrepancy = parse_double(f[7]);
        const auto acc = parse_int(f[8]);
        if (acc != 0 && acc != 1) throw DataError("column 'accepted_proposal' must be 0 or 1");
        d.accepted_proposal = acc == 1;
        file.draws.push_back(d);
    }
    return file;
}

std::vector<ParamSet> params_of(std::span<const PosteriorDraw> draws) {
    std::vector<ParamSet> out;
    out.reserve(draws.size());
    for (const auto& d : draws) out.push_back(d.params);
    return out;
}

}  // namespace bbtv
