#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "bbtv/calendar.hpp"
#include "bbtv/network.hpp"
#include "bbtv/params.hpp"
#include "bbtv/sis.hpp"

namespace bbtv {

SeasonMode parse_season_mode(std::string_view s);
std::string_view to_string(SeasonMode m);

/// What-if forecast setup. `initial` is the last observed snapshot.
struct Scenario {
    SeasonMode season_mode{SeasonMode::Calendar};
    std::vector<NodeId> cleared_nodes;
    std::size_t horizon{6};
    YearMonth start_month{};
    std::vector<std::uint8_t> initial;

    /// Throws ConfigError/DataError on horizon 0, bad node ids, or an
    /// initial vector of the wrong length.
    void validate(const Network& net) const;
};

enum class NodeGroup { InfectedAtStart, SusceptibleAtStart, Excluded };
std::string_view to_string(NodeGroup g);

struct ForecastResult {
    EnsembleResult ensemble;
    std::vector<NodeGroup> groups;
    /// Nodes frozen susceptible (unplanted or cleared by the scenario).
    std::vector<std::uint8_t> excluded;

    [[nodiscard]] double probability(NodeId n, std::size_t month) const { return ensemble.frequency(n, month); }
    /// Mean probability over planted, uncleared nodes at the final month.
    [[nodiscard]] double steady_state() const;
    [[nodiscard]] std::size_t months() const { return ensemble.snapshots; }
};

struct ForecastOptions {
    std::size_t replicates{10000};
    std::uint64_t master_seed{0};
    unsigned workers{1};
};

/// Draw-then-simulate posterior predictive forecast: each replicate picks
/// a posterior draw uniformly at random and simulates one trajectory.
/// Throws ConfigError on an empty posterior.
ForecastResult posterior_forecast(const Network& net, std::span<const ParamSet> posterior, const Scenario& scenario,
                                  const ForecastOptions& options);

/// One-month forecast; groups partition planted, uncleared nodes by their
/// state in `initial`.
ForecastResult one_month_map(const Network& net, std::span<const ParamSet> posterior,
                             std::span<const std::uint8_t> initial, YearMonth month,
                             std::span<const NodeId> cleared, const ForecastOptions& options,
                             SeasonMode mode = SeasonMode::Calendar);

/// Exact one-step infection probability of a susceptible node with m
/// infected neighbours and f infected non-neighbours.
double one_step_infection_probability(double near, double far, std::size_t m, std::size_t f);

struct ScenarioComparison {
    std::size_t node_count{0};
    std::size_t months{0};
    /// delta[t * node_count + n] = variant - baseline
    std::vector<double> delta;
    /// Nodes excluded in the variant (reported absent).
    std::vector<std::uint8_t> absent;
    /// Per-month mean delta over nodes present in the variant.
    std::vector<double> mean_delta;

    [[nodiscard]] double at(NodeId n, std::size_t t) const { return delta[t * node_count + n]; }
};

/// Throws DataError when the two forecasts differ in shape or start month.
ScenarioComparison compare_scenarios(const ForecastResult& baseline, const ForecastResult& variant);

/// node,month_label,group,probability,sd,q05,q95
void write_forecast_csv(std::ostream& out, const ForecastResult& result);
/// node,month_label,delta (absent nodes omitted) followed by mean rows
void write_comparison_csv(std::ostream& out, const ScenarioComparison& cmp, YearMonth start);

struct ForecastTable {
    std::size_t node_count{0};
    YearMonth start{};
    std::size_t months{0};
    std::vector<double> probability;
    std::vector<std::uint8_t> excluded;
};
ForecastTable read_forecast_csv(std::istream& in);
ScenarioComparison compare_scenarios(const ForecastTable& baseline, const ForecastTable& variant);

}  // namespace bbtv
