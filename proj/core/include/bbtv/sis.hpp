#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "bbtv/calendar.hpp"
#include "bbtv/network.hpp"
#include "bbtv/observation.hpp"
#include "bbtv/params.hpp"
#include "bbtv/random.hpp"

namespace bbtv {

/// Infection state of every node at one snapshot.
///
/// `cleared` marks nodes frozen susceptible; unplanted nodes are always
/// cleared. The constructor enforces cleared ∩ infected = ∅.
struct State {
    std::vector<std::uint8_t> infected;
    std::vector<std::uint8_t> cleared;

    State() = default;
    /// Builds a state on `net`: unplanted nodes and `cleared_nodes` are
    /// marked cleared. Throws DataError if a cleared node is infected.
    State(const Network& net, std::vector<std::uint8_t> infected_mask, std::span<const NodeId> cleared_nodes = {});

    [[nodiscard]] std::size_t size() const { return infected.size(); }
    [[nodiscard]] std::size_t infected_count() const;
    friend bool operator==(const State&, const State&) = default;
};

/// How the season of each transition is chosen.
enum class SeasonMode { Calendar, AllSummer, AllWinter };

Season season_for(SeasonMode mode, YearMonth source_month);

/// Sequence of monthly snapshots (snapshot-major flat storage).
class Trajectory {
public:
    Trajectory() = default;
    Trajectory(std::size_t node_count, YearMonth start, std::size_t snapshots);

    [[nodiscard]] std::size_t node_count() const { return node_count_; }
    [[nodiscard]] std::size_t snapshot_count() const { return snapshots_; }
    [[nodiscard]] YearMonth start() const { return start_; }
    [[nodiscard]] YearMonth month(std::size_t t) const { return start_.plus(static_cast<int>(t)); }

    [[nodiscard]] bool infected(std::size_t node, std::size_t t) const { return data_[t * node_count_ + node] != 0; }
    [[nodiscard]] std::span<const std::uint8_t> snapshot(std::size_t t) const {
        return {data_.data() + t * node_count_, node_count_};
    }
    std::span<std::uint8_t> snapshot(std::size_t t) { return {data_.data() + t * node_count_, node_count_}; }

    void reset(std::size_t node_count, YearMonth start, std::size_t snapshots);

    [[nodiscard]] ObservationSeries to_series() const;
    static Trajectory from_series(const ObservationSeries& series);

    friend bool operator==(const Trajectory&, const Trajectory&) = default;

private:
    std::size_t node_count_{0};
    std::size_t snapshots_{0};
    YearMonth start_{};
    std::vector<std::uint8_t> data_;
};

/// One synchronous transition from `state` under the given season.
///
/// Infected nodes recover with probability recovery(season). Susceptible,
/// uncleared nodes become infected with probability
///   1 - (1 - near)^m (1 - far)^f
/// where m / f count infected neighbours / non-neighbours at t. A node that
/// recovers in this step is not reinfected in it. One uniform draw per
/// planted node, so increasing any parameter never removes an event under
/// a shared stream.
State step(const State& state, const Network& net, const ParamSet& params, Season season, RandomStream& rng);

/// Reusable forward simulator bound to one network. Holds scratch buffers,
/// so one instance per thread.
class Simulator {
public:
    explicit Simulator(const Network& net);

    /// Fills `out` with horizon + 1 snapshots starting at `initial`.
    void run(const ParamSet& params, const State& initial, YearMonth start, std::size_t horizon, RandomStream& rng,
             Trajectory& out, SeasonMode mode = SeasonMode::Calendar);

    [[nodiscard]] const Network& network() const { return *net_; }

private:
    void build_tables(const ParamSet& params);
    void advance(std::span<const std::uint8_t> from, std::span<std::uint8_t> to, Season season,
                 std::span<const std::uint8_t> cleared, RandomStream& rng);

    const Network* net_;
    std::vector<double> near_pow_[2];  // (1-near)^k per season
    std::vector<double> far_pow_[2];   // (1-far)^k per season
    double recovery_[2]{};
};

/// Throws ConfigError if horizon < 1.
Trajectory simulate(const Network& net, const ParamSet& params, const State& initial, YearMonth start,
                    std::size_t horizon, RandomStream& rng, SeasonMode mode = SeasonMode::Calendar);

struct EnsembleResult {
    std::size_t node_count{0};
    std::size_t snapshots{0};
    std::size_t runs{0};
    YearMonth start{};
    /// counts[t * node_count + n] = runs with node n infected at snapshot t
    std::vector<std::uint32_t> counts;

    [[nodiscard]] double frequency(std::size_t node, std::size_t t) const;
    /// Sample standard deviation of the 0/1 indicator across runs.
    [[nodiscard]] double sd(std::size_t node, std::size_t t) const;
    /// Type-7 quantile of the 0/1 indicator across runs.
    [[nodiscard]] double quantile(std::size_t node, std::size_t t, double q) const;
};

struct EnsembleOptions {
    std::size_t runs{10000};
    std::uint64_t master_seed{0};
    unsigned workers{1};
    SeasonMode season_mode{SeasonMode::Calendar};
};

/// Runs `runs` independent trajectories. Run r uses RandomStream::derive(seed, r),
/// picks a parameter set uniformly from `draws` (with replacement), and
/// simulates once. Throws ConfigError if `draws` is empty or runs == 0.
EnsembleResult simulate_ensemble(const Network& net, std::span<const ParamSet> draws, const State& initial,
                                 YearMonth start, std::size_t horizon, const EnsembleOptions& options);

/// Type-7 quantile of a sample holding `ones` ones and `n - ones` zeros.
double binary_quantile(std::size_t ones, std::size_t n, double q);

}  // namespace bbtv
