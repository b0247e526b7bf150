#include "bbtv/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numeric>
#include <ostream>

#include "bbtv/error.hpp"
#include "bbtv/io.hpp"

namespace bbtv {

double quantile(std::vector<double> values, double q) {
    if (values.empty()) throw DataError("quantile of an empty sample");
    if (!(q >= 0.0 && q <= 1.0)) throw ConfigError("quantile level " + format_double(q) + " is outside [0,1]");
    std::sort(values.begin(), values.end());
    const double h = static_cast<double>(values.size() - 1) * q;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const auto hi = std::min(lo + 1, values.size() - 1);
    return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

std::array<double, 3> PosteriorReport::seasonal_deltas() const {
    return {params[1].mean - params[0].mean, params[3].mean - params[2].mean, params[5].mean - params[4].mean};
}

PosteriorReport posterior_summary(std::span<const PosteriorDraw> draws) {
    if (draws.size() < 2) throw DataError("posterior summary needs at least 2 draws, got " + std::to_string(draws.size()));
    PosteriorReport report;
    report.draws = draws.size();
    std::vector<double> column(draws.size());
    for (std::size_t p = 0; p < ParamSet::size; ++p) {
        for (std::size_t i = 0; i < draws.size(); ++i) column[i] = draws[i].params[p];
        std::sort(column.begin(), column.end());
        // Summation over sorted values makes the result independent of draw order.
        const double n = static_cast<double>(column.size());
        const double mean = std::accumulate(column.begin(), column.end(), 0.0) / n;
        double ss = 0.0;
        for (double v : column) ss += (v - mean) * (v - mean);
        auto& s = report.params[p];
        s.mean = mean;
        s.sd = std::sqrt(ss / (n - 1.0));
        s.q025 = quantile(column, 0.025);
        s.q50 = quantile(column, 0.5);
        s.q975 = quantile(column, 0.975);
    }
    return report;
}

void write_report(std::ostream& out, const PosteriorReport& report) {
    out << "draws = " << report.draws << "\n";
    for (std::size_t p = 0; p < ParamSet::size; ++p) {
        const auto& s = report.params[p];
        out << "\n[" << kParamNames[p] << "]\n"
            << "mean = " << format_double(s.mean) << "\n"
            << "sd = " << format_double(s.sd) << "\n"
            << "q025 = " << format_double(s.q025) << "\n"
            << "q50 = " << format_double(s.q50) << "\n"
            << "q975 = " << format_double(s.q975) << "\n";
    }
    const auto d = report.seasonal_deltas();
    out << "\n[delta_winter_minus_summer]\n"
        << "recovery = " << format_double(d[0]) << "\n"
        << "near = " << format_double(d[1]) << "\n"
        << "far = " << format_double(d[2]) << "\n";
}

void write_seasonal_table(std::ostream& out, const PosteriorReport& report) {
    static constexpr std::array<const char*, 3> families{"recovery", "near", "far"};
    const auto d = report.seasonal_deltas();
    const auto flags = out.flags();
    out << std::left << std::setw(10) << "parameter" << std::right << std::setw(10) << "summer" << std::setw(10)
        << "winter" << std::setw(10) << "delta" << '\n';
    out << std::fixed;
    for (std::size_t f = 0; f < 3; ++f) {
        out << std::left << std::setw(10) << families[f] << std::right << std::setprecision(2) << std::setw(9)
            << 100.0 * report.params[2 * f].mean << '%' << std::setw(9) << 100.0 * report.params[2 * f + 1].mean
            << '%' << std::setw(9) << std::showpos << 100.0 * d[f] << std::noshowpos << "%\n";
    }
    out.flags(flags);
}

std::vector<double> autocorrelation(std::span<const double> series, std::size_t max_lag) {
    const std::size_t n = series.size();
    if (n <= max_lag) throw DataError("series of length " + std::to_string(n) + " is too short for lag " + std::to_string(max_lag));
    const double mean = std::accumulate(series.begin(), series.end(), 0.0) / static_cast<double>(n);
    double c0 = 0.0;
    for (double v : series) c0 += (v - mean) * (v - mean);
    if (!(c0 > 0.0)) throw DataError("zero variance: autocorrelation undefined for a constant series");
    std::vector<double> rho(max_lag + 1);
    for (std::size_t k = 0; k <= max_lag; ++k) {
        double ck = 0.0;
        for (std::size_t t = 0; t + k < n; ++t) ck += (series[t] - mean) * (series[t + k] - mean);
        rho[k] = ck / c0;
    }
    rho[0] = 1.0;
    return rho;
}

double effective_sample_size(std::span<const double> series) {
    const std::size_t n = series.size();
    if (n < 2) throw DataError("effective sample size needs at least 2 values");
    const double mean = std::accumulate(series.begin(), series.end(), 0.0) / static_cast<double>(n);
    double c0 = 0.0;
    for (double v : series) c0 += (v - mean) * (v - mean);
    if (!(c0 > 0.0)) throw DataError("zero variance: effective sample size undefined for a constant series");
    double sum = 0.0;
    for (std::size_t k = 1; k < n; ++k) {
        double ck = 0.0;
        for (std::size_t t = 0; t + k < n; ++t) ck += (series[t] - mean) * (series[t + k] - mean);
        const double rho = ck / c0;
        if (rho <= 0.0) break;
        sum += rho;
    }
    return static_cast<double>(n) / (1.0 + 2.0 * sum);
}

double DensityGrid::bin_center(std::size_t param, std::size_t b) const {
    const double w = (bounds.upper[param] - bounds.lower[param]) / static_cast<double>(bins);
    return bounds.lower[param] + (static_cast<double>(b) + 0.5) * w;
}

const DensityGrid::Pair& DensityGrid::pair(std::size_t i, std::size_t j) const {
    for (const auto& p : pairs)
        if (p.i == i && p.j == j) return p;
    throw ConfigError("no density panel for parameters " + std::to_string(i) + "," + std::to_string(j));
}

DensityGrid pairwise_density_grid(std::span<const PosteriorDraw> draws, std::size_t bins, const Prior& bounds) {
    if (bins < 2) throw ConfigError("density grid needs at least 2 bins");
    if (draws.empty()) throw DataError("density grid of an empty draw set");
    bounds.validate();
    DensityGrid g;
    g.bins = bins;
    g.bounds = bounds;
    const double n = static_cast<double>(draws.size());
    auto bin_of = [&](std::size_t p, double v) {
        const double rel = (v - bounds.lower[p]) / (bounds.upper[p] - bounds.lower[p]);
        const auto b = static_cast<std::ptrdiff_t>(std::floor(rel * static_cast<double>(bins)));
        return static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(b, 0, static_cast<std::ptrdiff_t>(bins) - 1));
    };
    for (std::size_t p = 0; p < ParamSet::size; ++p) {
        g.marginal[p].assign(bins, 0.0);
        for (const auto& d : draws) g.marginal[p][bin_of(p, d.params[p])] += 1.0;
        for (auto& m : g.marginal[p]) m /= n;
    }
    for (std::size_t i = 0; i < ParamSet::size; ++i)
        for (std::size_t j = i + 1; j < ParamSet::size; ++j) {
            DensityGrid::Pair pair{i, j, std::vector<double>(bins * bins, 0.0)};
            for (const auto& d : draws) pair.mass[bin_of(i, d.params[i]) * bins + bin_of(j, d.params[j])] += 1.0;
            for (auto& m : pair.mass) m /= n;
            g.pairs.push_back(std::move(pair));
        }
    return g;
}

std::vector<ToleranceRow> tolerance_sensitivity(std::span<const PosteriorDraw> draws,
                                                std::span<const double> epsilons, double generation_epsilon) {
    for (std::size_t i = 0; i < epsilons.size(); ++i) {
        if (epsilons[i] > generation_epsilon)
            throw ConfigError("tolerance " + format_double(epsilons[i]) + " exceeds the generation tolerance " +
                              format_double(generation_epsilon));
        if (i > 0 && epsilons[i] > epsilons[i - 1]) throw ConfigError("tolerance list must be sorted descending");
    }
    std::vector<ToleranceRow> rows;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (double eps : epsilons) {
        const auto kept = threshold_filter(draws, eps, generation_epsilon);
        ToleranceRow row;
        row.epsilon = eps;
        row.retained = kept.size();
        if (kept.size() >= 2) {
            const auto rep = posterior_summary(kept);
            for (std::size_t p = 0; p < ParamSet::size; ++p) {
                row.mean[p] = rep.params[p].mean;
                row.q025[p] = rep.params[p].q025;
                row.q975[p] = rep.params[p].q975;
            }
        } else {
            row.mean.fill(nan);
            row.q025.fill(nan);
            row.q975.fill(nan);
        }
        rows.push_back(row);
    }
    return rows;
}

void write_trace_csv(std::ostream& out, std::span<const PosteriorDraw> draws) {
    out << "index,iteration";
    for (auto n : kParamNames) out << ',' << n;
    out << ",discrepancy\n";
    for (std::size_t i = 0; i < draws.size(); ++i) {
        out << i << ',' << draws[i].iteration;
        for (double v : draws[i].params.values) out << ',' << format_double(v);
        out << ',' << format_double(draws[i].discrepancy) << '\n';
    }
}

void write_autocorrelation_csv(std::ostream& out, std::span<const PosteriorDraw> draws, std::size_t max_lag) {
    std::array<std::vector<double>, ParamSet::size> rho;
    std::vector<double> column(draws.size());
    for (std::size_t p = 0; p < ParamSet::size; ++p) {
        for (std::size_t i = 0; i < draws.size(); ++i) column[i] = draws[i].params[p];
        try {
            rho[p] = autocorrelation(column, max_lag);
        } catch (const DataError&) {
            rho[p].assign(max_lag + 1, std::numeric_limits<double>::quiet_NaN());
        }
    }
    out << "lag";
    for (auto n : kParamNames) out << ',' << n;
    out << '\n';
    for (std::size_t k = 0; k <= max_lag; ++k) {
        out << k;
        for (std::size_t p = 0; p < ParamSet::size; ++p) out << ',' << format_double(rho[p][k]);
        out << '\n';
    }
}

void write_density_csv(std::ostream& out, const DensityGrid& grid) {
    out << "param_x,param_y,bin_x,bin_y,center_x,center_y,mass\n";
    for (std::size_t p = 0; p < ParamSet::size; ++p)
        for (std::size_t b = 0; b < grid.bins; ++b)
            out << kParamNames[p] << ",," << b << ",," << format_double(grid.bin_center(p, b)) << ",,"
                << format_double(grid.marginal[p][b]) << '\n';
    for (const auto& pr : grid.pairs)
        for (std::size_t a = 0; a < grid.bins; ++a)
            for (std::size_t b = 0; b < grid.bins; ++b)
                out << kParamNames[pr.i] << ',' << kParamNames[pr.j] << ',' << a << ',' << b << ','
                    << format_double(grid.bin_center(pr.i, a)) << ',' << format_double(grid.bin_center(pr.j, b)) << ','
                    << format_double(pr.mass[a * grid.bins + b]) << '\n';
}

void write_tolerance_csv(std::ostream& out, std::span<const ToleranceRow> rows) {
    out << "epsilon,retained";
    for (auto n : kParamNames) out << ',' << n << "_mean," << n << "_q025," << n << "_q975";
    out << '\n';
    for (const auto& r : rows) {
        out << format_double(r.epsilon) << ',' << r.retained;
        for (std::size_t p = 0; p < ParamSet::size; ++p)
            out << ',' << format_double(r.mean[p]) << ',' << format_double(r.q025[p]) << ',' << format_double(r.q975[p]);
        out << '\n';
    }
}

}  // namespace bbtv
