#include "bbtv/sis.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include "bbtv/error.hpp"
#include "bbtv/parallel.hpp"

namespace bbtv {

State::State(const Network& net, std::vector<std::uint8_t> infected_mask, std::span<const NodeId> cleared_nodes)
    : infected(std::move(infected_mask)), cleared(net.node_count(), 0) {
    if (infected.size() != net.node_count())
        throw DataError("state has " + std::to_string(infected.size()) + " nodes, network has " +
                        std::to_string(net.node_count()));
    for (std::size_t n = 0; n < net.node_count(); ++n) {
        infected[n] = infected[n] ? 1 : 0;
        if (!net.planted_mask()[n]) cleared[n] = 1;
    }
    for (NodeId n : cleared_nodes) {
        if (n >= net.node_count()) throw DataError("cleared node " + std::to_string(n) + " out of range");
        cleared[n] = 1;
    }
    for (std::size_t n = 0; n < net.node_count(); ++n)
        if (infected[n] && cleared[n])
            throw DataError("node " + std::to_string(n) + " is infected but cleared or unplanted");
}

std::size_t State::infected_count() const {
    return static_cast<std::size_t>(std::count(infected.begin(), infected.end(), std::uint8_t{1}));
}

Season season_for(SeasonMode mode, YearMonth source_month) {
    switch (mode) {
        case SeasonMode::AllSummer: return Season::Summer;
        case SeasonMode::AllWinter: return Season::Winter;
        case SeasonMode::Calendar: break;
    }
    return source_month.season();
}

Trajectory::Trajectory(std::size_t node_count, YearMonth start, std::size_t snapshots) {
    reset(node_count, start, snapshots);
}

void Trajectory::reset(std::size_t node_count, YearMonth start, std::size_t snapshots) {
    node_count_ = node_count;
    snapshots_ = snapshots;
    start_ = start;
    data_.assign(node_count * snapshots, 0);
}

ObservationSeries Trajectory::to_series() const {
    std::vector<YearMonth> months;
    for (std::size_t t = 0; t < snapshots_; ++t) months.push_back(month(t));
    return {node_count_, std::move(months), data_};
}

Trajectory Trajectory::from_series(const ObservationSeries& series) {
    Trajectory tr(series.node_count(), series.months().front(), series.snapshot_count());
    tr.data_ = series.raw();
    return tr;
}

Simulator::Simulator(const Network& net) : net_(&net) {
    for (int s = 0; s < 2; ++s) {
        near_pow_[s].assign(net.node_count() + 1, 1.0);
        far_pow_[s].assign(net.node_count() + 1, 1.0);
    }
}

void Simulator::build_tables(const ParamSet& params) {
    for (int s = 0; s < 2; ++s) {
        const Season season = s == 0 ? Season::Summer : Season::Winter;
        recovery_[s] = params.recovery(season);
        const double qn = 1.0 - params.near(season);
        const double qf = 1.0 - params.far(season);
        auto& np = near_pow_[s];
        auto& fp = far_pow_[s];
        np[0] = fp[0] = 1.0;
        for (std::size_t k = 1; k < np.size(); ++k) {
            np[k] = np[k - 1] * qn;
            fp[k] = fp[k - 1] * qf;
        }
    }
}

void Simulator::advance(std::span<const std::uint8_t> from, std::span<std::uint8_t> to, Season season,
                        std::span<const std::uint8_t> cleared, RandomStream& rng) {
    const int s = season == Season::Summer ? 0 : 1;
    const double recovery = recovery_[s];
    const double* near_pow = near_pow_[s].data();
    const double* far_pow = far_pow_[s].data();
    const auto offsets = net_->offsets();
    const auto adjacency = net_->adjacency();
    const std::size_t n_nodes = from.size();

    std::size_t total_infected = 0;
    for (std::size_t n = 0; n < n_nodes; ++n) total_infected += from[n];

    // Outcomes are random, so the update is written without data-dependent
    // branches; the draw order (one uniform per uncleared node) is unchanged.
    for (std::size_t n = 0; n < n_nodes; ++n) {
        if (cleared[n]) {
            to[n] = 0;
            continue;
        }
        const double u = rng.uniform();
        std::size_t m = 0;
        for (std::uint32_t k = offsets[n]; k < offsets[n + 1]; ++k) m += from[adjacency[k]];
        const double escape = near_pow[m] * far_pow[total_infected - m];
        const bool stays = !(u < recovery);
        const bool catches = u < 1.0 - escape;
        to[n] = static_cast<std::uint8_t>(from[n] ? stays : catches);
    }
}

void Simulator::run(const ParamSet& params, const State& initial, YearMonth start, std::size_t horizon,
                    RandomStream& rng, Trajectory& out, SeasonMode mode) {
    const std::size_t n_nodes = net_->node_count();
    if (out.node_count() != n_nodes || out.snapshot_count() != horizon + 1 || out.start() != start)
        out.reset(n_nodes, start, horizon + 1);
    build_tables(params);
    std::copy(initial.infected.begin(), initial.infected.end(), out.snapshot(0).begin());
    for (std::size_t t = 0; t < horizon; ++t) {
        const Season season = season_for(mode, start.plus(static_cast<int>(t)));
        advance(out.snapshot(t), out.snapshot(t + 1), season, initial.cleared, rng);
    }
}

State step(const State& state, const Network& net, const ParamSet& params, Season season, RandomStream& rng) {
    Simulator sim(net);
    Trajectory tr;
    const SeasonMode mode = season == Season::Summer ? SeasonMode::AllSummer : SeasonMode::AllWinter;
    sim.run(params, state, YearMonth{2000, 1}, 1, rng, tr, mode);
    State next = state;
    const auto snap = tr.snapshot(1);
    next.infected.assign(snap.begin(), snap.end());
    return next;
}

Trajectory simulate(const Network& net, const ParamSet& params, const State& initial, YearMonth start,
                    std::size_t horizon, RandomStream& rng, SeasonMode mode) {
    if (horizon < 1) throw ConfigError("simulation horizon must be at least 1 month");
    if (initial.size() != net.node_count()) throw DataError("initial state does not match the network");
    Simulator sim(net);
    Trajectory tr;
    sim.run(params, initial, start, horizon, rng, tr, mode);
    return tr;
}

double EnsembleResult::frequency(std::size_t node, std::size_t t) const {
    return static_cast<double>(counts[t * node_count + node]) / static_cast<double>(runs);
}

double EnsembleResult::sd(std::size_t node, std::size_t t) const {
    if (runs < 2) return 0.0;
    const double c = counts[t * node_count + node];
    const double n = static_cast<double>(runs);
    return std::sqrt(c * (n - c) / (n * (n - 1.0)));
}

double EnsembleResult::quantile(std::size_t node, std::size_t t, double q) const {
    return binary_quantile(counts[t * node_count + node], runs, q);
}

double binary_quantile(std::size_t ones, std::size_t n, double q) {
    if (n == 0) return 0.0;
    // Sorted sample: (n - ones) zeros followed by ones.
    const double h = static_cast<double>(n - 1) * q;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const auto hi = static_cast<std::size_t>(std::ceil(h));
    const std::size_t zeros = n - ones;
    const double vlo = lo < zeros ? 0.0 : 1.0;
    const double vhi = hi < zeros ? 0.0 : 1.0;
    return vlo + (h - static_cast<double>(lo)) * (vhi - vlo);
}

EnsembleResult simulate_ensemble(const Network& net, std::span<const ParamSet> draws, const State& initial,
                                 YearMonth start, std::size_t horizon, const EnsembleOptions& options) {
    if (draws.empty()) throw ConfigError("ensemble needs at least one parameter set");
    if (options.runs == 0) throw ConfigError("ensemble needs at least one run");
    if (horizon < 1) throw ConfigError("simulation horizon must be at least 1 month");
    if (initial.size() != net.node_count()) throw DataError("initial state does not match the network");

    const std::size_t n_nodes = net.node_count();
    const std::size_t cells = n_nodes * (horizon + 1);
    EnsembleResult result{n_nodes, horizon + 1, options.runs, start, std::vector<std::uint32_t>(cells, 0)};

    const unsigned workers = std::max(1u, options.workers);
    struct Local {
        Simulator sim;
        Trajectory tr;
        std::vector<std::uint32_t> counts;
    };
    std::vector<Local> locals;
    locals.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) locals.push_back({Simulator(net), Trajectory(), std::vector<std::uint32_t>(cells, 0)});

    parallel_for(options.runs, workers, [&](std::size_t r, unsigned w) {
        auto& L = locals[w];
        RandomStream rng = RandomStream::derive(options.master_seed, r);
        const std::size_t pick = draws.size() == 1 ? 0 : static_cast<std::size_t>(rng.below(draws.size()));
        L.sim.run(draws[pick], initial, start, horizon, rng, L.tr, options.season_mode);
        const auto* data = L.tr.snapshot(0).data();
        for (std::size_t c = 0; c < cells; ++c) L.counts[c] += data[c];
    });
    for (const auto& L : locals)
        for (std::size_t c = 0; c < cells; ++c) result.counts[c] += L.counts[c];
    return result;
}

}  // namespace bbtv
