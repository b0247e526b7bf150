#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "bbtv/calendar.hpp"
#include "bbtv/forecast.hpp"
#include "bbtv/network.hpp"
#include "bbtv/observation.hpp"

namespace bbtv {

struct PredictionRecord {
    NodeId node{0};
    YearMonth month{};
    double predicted_p{0.5};
    bool actual{false};
};

/// Clamps p into [delta, 1 - delta].
double clamp_probability(double p, double delta);

/// y P - log(1 + e^P) with P the log-odds of p (natural log). p must lie
/// strictly inside (0,1); callers clamp first.
double deviance_loss(bool actual, double predicted_p);

/// Loss of a random (p = 0.5) prediction: -log 2.
double random_baseline_loss();

struct NodeLoss {
    NodeId node{0};
    std::size_t predictions{0};
    double mean_loss{0.0};
};

struct PredictiveCheck {
    std::vector<PredictionRecord> records;
    std::vector<double> losses;
    std::vector<NodeLoss> per_node;
    double mean_loss{0.0};
    double clamp_delta{0.0};
};

/// Scores a list of predictions (clamping with `clamp_delta`).
PredictiveCheck score_predictions(std::vector<PredictionRecord> records, double clamp_delta);

/// For each hold-out snapshot t+1 (the last `holdout` snapshots of
/// `observed`), forecasts one month from the observed state at t and scores
/// it against the observed state at t+1. Unplanted nodes are skipped.
/// The clamp is 1 / (2 * replicates). Throws DataError if holdout is 0 or
/// not smaller than the series length.
PredictiveCheck predictive_check(const Network& net, std::span<const ParamSet> posterior,
                                 const ObservationSeries& observed, std::size_t holdout,
                                 const ForecastOptions& options);

struct RocPoint {
    double threshold{0.0};
    double fpr{0.0};
    double tpr{0.0};
};

struct RocCurve {
    std::vector<RocPoint> points;
    double auc{0.0};
};

/// Thresholds sweep the distinct scores in descending order; tied scores
/// share one point. Starts at (0,0) with an infinite threshold and ends at
/// (1,1). AUC by trapezoidal rule. Throws DataError without both classes.
RocCurve roc_curve(std::span<const PredictionRecord> records);

void write_records_csv(std::ostream& out, const PredictiveCheck& check);
void write_node_loss_csv(std::ostream& out, const PredictiveCheck& check);
void write_roc_csv(std::ostream& out, const RocCurve& roc);

}  // namespace bbtv
