#include "bbtv/validation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "bbtv/error.hpp"
#include "bbtv/io.hpp"

namespace bbtv {

double clamp_probability(double p, double delta) { return std::clamp(p, delta, 1.0 - delta); }

double deviance_loss(bool actual, double predicted_p) {
    const double log_odds = std::log(predicted_p) - std::log1p(-predicted_p);
    // log(1 + e^P), evaluated without overflow.
    const double softplus = log_odds > 0.0 ? log_odds + std::log1p(std::exp(-log_odds)) : std::log1p(std::exp(log_odds));
    return (actual ? log_odds : 0.0) - softplus;
}

double random_baseline_loss() { return -std::log(2.0); }

PredictiveCheck score_predictions(std::vector<PredictionRecord> records, double clamp_delta) {
    PredictiveCheck check;
    check.clamp_delta = clamp_delta;
    check.records = std::move(records);
    check.losses.reserve(check.records.size());
    std::size_t max_node = 0;
    for (const auto& r : check.records) max_node = std::max<std::size_t>(max_node, r.node + 1);
    std::vector<double> sums(max_node, 0.0);
    std::vector<std::size_t> counts(max_node, 0);
    double total = 0.0;
    for (const auto& r : check.records) {
        const double loss = deviance_loss(r.actual, clamp_probability(r.predicted_p, clamp_delta));
        check.losses.push_back(loss);
        sums[r.node] += loss;
        ++counts[r.node];
        total += loss;
    }
    for (std::size_t n = 0; n < max_node; ++n)
        if (counts[n]) check.per_node.push_back({static_cast<NodeId>(n), counts[n], sums[n] / static_cast<double>(counts[n])});
    check.mean_loss = check.records.empty() ? 0.0 : total / static_cast<double>(check.records.size());
    return check;
}

PredictiveCheck predictive_check(const Network& net, std::span<const ParamSet> posterior,
                                 const ObservationSeries& observed, std::size_t holdout,
                                 const ForecastOptions& options) {
    if (holdout == 0) throw DataError("predictive check needs at least one hold-out month");
    if (holdout >= observed.snapshot_count())
        throw DataError("hold-out of " + std::to_string(holdout) + " months leaves no training snapshot in a series of " +
                        std::to_string(observed.snapshot_count()));
    if (observed.node_count() != net.node_count()) throw DataError("observed series does not match the network");

    std::vector<PredictionRecord> records;
    const std::size_t first_target = observed.snapshot_count() - holdout;
    for (std::size_t target = first_target; target < observed.snapshot_count(); ++target) {
        const std::size_t source = target - 1;
        ForecastOptions opt = options;
        opt.master_seed = RandomStream::derive(options.master_seed, target)();
        const auto fc = one_month_map(net, posterior, observed.column(source), observed.months()[source], {}, opt);
        for (NodeId n = 0; n < net.node_count(); ++n) {
            if (!net.planted(n)) continue;
            records.push_back({n, observed.months()[target], fc.probability(n, 1), observed.infected(n, target)});
        }
    }
    return score_predictions(std::move(records), 1.0 / (2.0 * static_cast<double>(options.replicates)));
}

RocCurve roc_curve(std::span<const PredictionRecord> records) {
    std::size_t pos = 0;
    for (const auto& r : records) pos += r.actual ? 1 : 0;
    const std::size_t neg = records.size() - pos;
    if (pos == 0 || neg == 0) throw DataError("ROC curve needs at least one positive and one negative record");

    std::vector<std::size_t> order(records.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return records[a].predicted_p > records[b].predicted_p; });

    RocCurve roc;
    roc.points.push_back({std::numeric_limits<double>::infinity(), 0.0, 0.0});
    std::size_t tp = 0, fp = 0;
    for (std::size_t i = 0; i < order.size();) {
        const double threshold = records[order[i]].predicted_p;
        while (i < order.size() && records[order[i]].predicted_p == threshold) {
            (records[order[i]].actual ? tp : fp) += 1;
            ++i;
        }
        const RocPoint pt{threshold, static_cast<double>(fp) / static_cast<double>(neg),
                          static_cast<double>(tp) / static_cast<double>(pos)};
        const auto& prev = roc.points.back();
        roc.auc += (pt.fpr - prev.fpr) * (pt.tpr + prev.tpr) / 2.0;
        roc.points.push_back(pt);
    }
    return roc;
}

void write_records_csv(std::ostream& out, const PredictiveCheck& check) {
    out << "node,month,predicted_p,actual,loss\n";
    for (std::size_t i = 0; i < check.records.size(); ++i) {
        const auto& r = check.records[i];
        out << r.node << ',' << r.month.label() << ',' << format_double(r.predicted_p) << ',' << (r.actual ? 1 : 0)
            << ',' << format_double(check.losses[i]) << '\n';
    }
}

void write_node_loss_csv(std::ostream& out, const PredictiveCheck& check) {
    out << "node,predictions,mean_loss,random_baseline\n";
    for (const auto& n : check.per_node)
        out << n.node << ',' << n.predictions << ',' << format_double(n.mean_loss) << ','
            << format_double(random_baseline_loss()) << '\n';
}

void write_roc_csv(std::ostream& out, const RocCurve& roc) {
    out << "threshold,fpr,tpr\n";
    for (const auto& p : roc.points)
        out << (std::isinf(p.threshold) ? std::string("inf") : format_double(p.threshold)) << ','
            << format_double(p.fpr) << ',' << format_double(p.tpr) << '\n';
}

}  // namespace bbtv
