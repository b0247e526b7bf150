#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "bbtv/abc.hpp"
#include "bbtv/params.hpp"

namespace bbtv {

struct ParamSummary {
    double mean{0.0};
    double sd{0.0};
    double q025{0.0};
    double q50{0.0};
    double q975{0.0};
};

/// Per-parameter posterior statistics plus seasonal differences.
struct PosteriorReport {
    std::size_t draws{0};
    std::array<ParamSummary, ParamSet::size> params{};

    /// winter - summer mean for recovery, near, far (Table-1 style delta).
    [[nodiscard]] std::array<double, 3> seasonal_deltas() const;
};

/// Linear-interpolation (type 7) quantile of an unsorted sample.
double quantile(std::vector<double> values, double q);

/// Throws DataError for fewer than 2 draws.
PosteriorReport posterior_summary(std::span<const PosteriorDraw> draws);

/// TOML-style text; one [section] per parameter and a [delta] section.
void write_report(std::ostream& out, const PosteriorReport& report);

/// Table rows "family  summer%  winter%  delta%", delta = winter - summer.
void write_seasonal_table(std::ostream& out, const PosteriorReport& report);

/// Biased sample autocorrelation for lags 0..max_lag. Throws DataError for
/// a constant series or length <= max_lag.
std::vector<double> autocorrelation(std::span<const double> series, std::size_t max_lag);

/// n / (1 + 2 sum rho_k), summing lags k >= 1 until the first rho_k <= 0.
/// Throws DataError for a constant series.
double effective_sample_size(std::span<const double> series);

/// Probability-mass histograms on the prior box.
struct DensityGrid {
    std::size_t bins{0};
    Prior bounds;
    /// marginal[p][b]
    std::array<std::vector<double>, ParamSet::size> marginal;
    /// pairs[(i,j)] for i < j, row-major [bi * bins + bj]
    struct Pair {
        std::size_t i;
        std::size_t j;
        std::vector<double> mass;
    };
    std::vector<Pair> pairs;

    [[nodiscard]] double bin_center(std::size_t param, std::size_t b) const;
    [[nodiscard]] const Pair& pair(std::size_t i, std::size_t j) const;
};

/// Throws ConfigError for bins < 2, DataError for empty draws.
DensityGrid pairwise_density_grid(std::span<const PosteriorDraw> draws, std::size_t bins, const Prior& bounds = {});

struct ToleranceRow {
    double epsilon{0.0};
    std::size_t retained{0};
    std::array<double, ParamSet::size> mean{};
    std::array<double, ParamSet::size> q025{};
    std::array<double, ParamSet::size> q975{};
};

/// threshold_filter + summary for each tolerance. The list must be sorted
/// descending and bounded by the generation tolerance (ConfigError
/// otherwise). Rows with no retained draws carry NaN statistics.
std::vector<ToleranceRow> tolerance_sensitivity(std::span<const PosteriorDraw> draws,
                                                std::span<const double> epsilons, double generation_epsilon);

void write_trace_csv(std::ostream& out, std::span<const PosteriorDraw> draws);
void write_autocorrelation_csv(std::ostream& out, std::span<const PosteriorDraw> draws, std::size_t max_lag);
void write_density_csv(std::ostream& out, const DensityGrid& grid);
void write_tolerance_csv(std::ostream& out, std::span<const ToleranceRow> rows);

}  // namespace bbtv
