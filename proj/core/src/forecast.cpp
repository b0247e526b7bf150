#include "bbtv/forecast.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>

#include "bbtv/error.hpp"
#include "bbtv/io.hpp"

namespace bbtv {

SeasonMode parse_season_mode(std::string_view s) {
    if (s == "calendar") return SeasonMode::Calendar;
    if (s == "all-summer") return SeasonMode::AllSummer;
    if (s == "all-winter") return SeasonMode::AllWinter;
    throw ConfigError("unknown season mode '" + std::string(s) + "' (calendar, all-summer, all-winter)");
}

std::string_view to_string(SeasonMode m) {
    switch (m) {
        case SeasonMode::AllSummer: return "all-summer";
        case SeasonMode::AllWinter: return "all-winter";
        case SeasonMode::Calendar: break;
    }
    return "calendar";
}

std::string_view to_string(NodeGroup g) {
    switch (g) {
        case NodeGroup::InfectedAtStart: return "infected-at-start";
        case NodeGroup::SusceptibleAtStart: return "susceptible-at-start";
        case NodeGroup::Excluded: break;
    }
    return "excluded";
}

void Scenario::validate(const Network& net) const {
    if (horizon < 1) throw ConfigError("forecast horizon must be at least 1 month");
    if (initial.size() != net.node_count())
        throw DataError("initial state has " + std::to_string(initial.size()) + " nodes, network has " +
                        std::to_string(net.node_count()));
    for (NodeId n : cleared_nodes)
        if (n >= net.node_count()) throw ConfigError("cleared node " + std::to_string(n) + " out of range");
}

double ForecastResult::steady_state() const {
    const std::size_t last = ensemble.snapshots - 1;
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t n = 0; n < ensemble.node_count; ++n) {
        if (excluded[n]) continue;
        sum += ensemble.frequency(n, last);
        ++count;
    }
    return count ? sum / static_cast<double>(count) : 0.0;
}

ForecastResult posterior_forecast(const Network& net, std::span<const ParamSet> posterior, const Scenario& scenario,
                                  const ForecastOptions& options) {
    if (posterior.empty()) throw ConfigError("posterior forecast needs at least one posterior draw");
    scenario.validate(net);

    // Clearing removes the plants, so a cleared node starts susceptible.
    std::vector<std::uint8_t> start = scenario.initial;
    for (NodeId n : scenario.cleared_nodes) start[n] = 0;
    const State initial(net, start, scenario.cleared_nodes);

    ForecastResult result;
    result.ensemble = simulate_ensemble(net, posterior, initial, scenario.start_month, scenario.horizon,
                                        {options.replicates, options.master_seed, options.workers, scenario.season_mode});
    result.excluded = initial.cleared;
    result.groups.resize(net.node_count());
    for (std::size_t n = 0; n < net.node_count(); ++n)
        result.groups[n] = initial.cleared[n]   ? NodeGroup::Excluded
                           : initial.infected[n] ? NodeGroup::InfectedAtStart
                                                 : NodeGroup::SusceptibleAtStart;
    return result;
}

ForecastResult one_month_map(const Network& net, std::span<const ParamSet> posterior,
                             std::span<const std::uint8_t> initial, YearMonth month, std::span<const NodeId> cleared,
                             const ForecastOptions& options, SeasonMode mode) {
    Scenario sc;
    sc.season_mode = mode;
    sc.cleared_nodes.assign(cleared.begin(), cleared.end());
    sc.horizon = 1;
    sc.start_month = month;
    sc.initial.assign(initial.begin(), initial.end());
    return posterior_forecast(net, posterior, sc, options);
}

double one_step_infection_probability(double near, double far, std::size_t m, std::size_t f) {
    return 1.0 - std::pow(1.0 - near, static_cast<double>(m)) * std::pow(1.0 - far, static_cast<double>(f));
}

namespace {

ScenarioComparison compare_tables(std::size_t nodes, std::size_t months, std::span<const double> base,
                                  std::span<const double> variant, std::span<const std::uint8_t> variant_excluded) {
    ScenarioComparison cmp;
    cmp.node_count = nodes;
    cmp.months = months;
    cmp.absent.assign(variant_excluded.begin(), variant_excluded.end());
    cmp.delta.resize(nodes * months);
    cmp.mean_delta.assign(months, 0.0);
    std::size_t present = 0;
    for (std::size_t n = 0; n < nodes; ++n) present += cmp.absent[n] ? 0 : 1;
    for (std::size_t t = 0; t < months; ++t) {
        double sum = 0.0;
        for (std::size_t n = 0; n < nodes; ++n) {
            const std::size_t c = t * nodes + n;
            cmp.delta[c] = variant[c] - base[c];
            if (!cmp.absent[n]) sum += cmp.delta[c];
        }
        cmp.mean_delta[t] = present ? sum / static_cast<double>(present) : 0.0;
    }
    return cmp;
}

std::vector<double> probabilities(const EnsembleResult& e) {
    std::vector<double> p(e.counts.size());
    for (std::size_t c = 0; c < p.size(); ++c) p[c] = static_cast<double>(e.counts[c]) / static_cast<double>(e.runs);
    return p;
}

}  // namespace

ScenarioComparison compare_scenarios(const ForecastResult& baseline, const ForecastResult& variant) {
    const auto& b = baseline.ensemble;
    const auto& v = variant.ensemble;
    if (b.node_count != v.node_count || b.snapshots != v.snapshots || b.start != v.start)
        throw DataError("forecasts differ in node count, month count or start month");
    return compare_tables(b.node_count, b.snapshots, probabilities(b), probabilities(v), variant.excluded);
}

ScenarioComparison compare_scenarios(const ForecastTable& baseline, const ForecastTable& variant) {
    if (baseline.node_count != variant.node_count || baseline.months != variant.months ||
        baseline.start != variant.start)
        throw DataError("forecasts differ in node count, month count or start month");
    return compare_tables(baseline.node_count, baseline.months, baseline.probability, variant.probability,
                          variant.excluded);
}

void write_forecast_csv(std::ostream& out, const ForecastResult& result) {
    const auto& e = result.ensemble;
    out << "node,month_label,group,probability,sd,q05,q95\n";
    for (std::size_t n = 0; n < e.node_count; ++n)
        for (std::size_t t = 0; t < e.snapshots; ++t)
            out << n << ',' << e.start.plus(static_cast<int>(t)).label() << ',' << to_string(result.groups[n]) << ','
                << format_double(e.frequency(n, t)) << ',' << format_double(e.sd(n, t)) << ','
                << format_double(e.quantile(n, t, 0.05)) << ',' << format_double(e.quantile(n, t, 0.95)) << '\n';
}

void write_comparison_csv(std::ostream& out, const ScenarioComparison& cmp, YearMonth start) {
    out << "node,month_label,delta\n";
    for (std::size_t n = 0; n < cmp.node_count; ++n) {
        if (cmp.absent[n]) continue;
        for (std::size_t t = 0; t < cmp.months; ++t)
            out << n << ',' << start.plus(static_cast<int>(t)).label() << ',' << format_double(cmp.at(static_cast<NodeId>(n), t))
                << '\n';
    }
    for (std::size_t t = 0; t < cmp.months; ++t)
        out << "mean," << start.plus(static_cast<int>(t)).label() << ',' << format_double(cmp.mean_delta[t]) << '\n';
}

ForecastTable read_forecast_csv(std::istream& in) {
    std::string line;
    if (!next_data_line(in, line)) throw DataError("forecast file is empty");
    const auto header = split_csv(line);
    static constexpr std::array<std::string_view, 7> expected{"node", "month_label", "group", "probability",
                                                              "sd",   "q05",         "q95"};
    for (std::size_t i = 0; i < expected.size(); ++i)
        if (i >= header.size() || header[i] != expected[i])
            throw DataError("forecast file column " + std::to_string(i + 1) + " should be '" +
                            std::string(expected[i]) + "'");

    struct Row {
        std::size_t node;
        int month;
        bool excluded;
        double p;
    };
    std::vector<Row> rows;
    std::size_t nodes = 0;
    int first = 0, last = 0;
    while (next_data_line(in, line)) {
        const auto f = split_csv(line);
        if (f.size() != expected.size()) throw DataError("forecast row '" + line + "' has the wrong number of columns");
        Row r{static_cast<std::size_t>(parse_int(f[0])), YearMonth::parse(f[1]).index(), f[2] == "excluded",
              parse_double(f[3])};
        if (rows.empty()) first = last = r.month;
        first = std::min(first, r.month);
        last = std::max(last, r.month);
        nodes = std::max(nodes, r.node + 1);
        rows.push_back(r);
    }
    if (rows.empty()) throw DataError("forecast file has no rows");
    ForecastTable table;
    table.node_count = nodes;
    table.start = YearMonth::from_index(first);
    table.months = static_cast<std::size_t>(last - first + 1);
    if (rows.size() != nodes * table.months) throw DataError("forecast file is not a complete node x month table");
    table.probability.assign(nodes * table.months, 0.0);
    table.excluded.assign(nodes, 0);
    for (const auto& r : rows) {
        table.probability[static_cast<std::size_t>(r.month - first) * nodes + r.node] = r.p;
        if (r.excluded) table.excluded[r.node] = 1;
    }
    return table;
}

}  // namespace bbtv
