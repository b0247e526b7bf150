#pragma once

// Helpers and independent reference computations for the test suite. The
// oracles here deliberately avoid the library's own code paths: they work
// from plain edge lists and 0/1 matrices.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <unistd.h>

#include <boost/math/distributions/chi_squared.hpp>

#include "bbtv/network.hpp"
#include "bbtv/params.hpp"

namespace testing {

inline std::string data_path(const std::string& rel) { return std::string(BBTV_DATA_DIR) + "/" + rel; }

inline bbtv::Network fixture_network() {
    return bbtv::load_network_files(data_path("fixture/network.csv"), data_path("fixture/nodes.csv"),
                                    data_path("fixture/footprints.csv"));
}

inline bbtv::Network make_network(std::size_t n, std::vector<std::pair<int, int>> edges,
                                  std::vector<bool> planted = {}) {
    std::vector<bbtv::Edge> e;
    for (auto [u, v] : edges) e.push_back({static_cast<bbtv::NodeId>(u), static_cast<bbtv::NodeId>(v)});
    return bbtv::Network(n, e, std::move(planted));
}

inline bbtv::Network path_graph(std::size_t n) {
    std::vector<std::pair<int, int>> e;
    for (std::size_t i = 0; i + 1 < n; ++i) e.emplace_back(static_cast<int>(i), static_cast<int>(i + 1));
    return make_network(n, e);
}

/// Scratch directory removed on destruction.
struct TempDir {
    std::filesystem::path path;
    explicit TempDir(const std::string& tag) {
        path = std::filesystem::temp_directory_path() /
               ("bbtv-test-" + tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter()++));
        std::filesystem::remove_all(path);
        std::filesystem::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }
    [[nodiscard]] std::string file(const std::string& name) const { return (path / name).string(); }
    static int& counter() {
        static int c = 0;
        return c;
    }
};

inline std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void spit(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

// ---------------------------------------------------------------- oracles

/// Exact distribution of the next state of a small network under one
/// synchronous step. Index bit n of the outcome = node n infected.
/// `frozen[n]` marks cleared or unplanted nodes.
inline std::vector<double> enumerate_step(std::size_t n, const std::vector<std::pair<int, int>>& edges,
                                          const std::vector<int>& infected, const std::vector<int>& frozen,
                                          double recovery, double near, double far) {
    std::vector<std::vector<int>> adj(n, std::vector<int>(n, 0));
    for (auto [u, v] : edges) adj[u][v] = adj[v][u] = 1;
    std::vector<double> p_inf(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (infected[i]) {
            p_inf[i] = 1.0 - recovery;
            continue;
        }
        if (frozen[i]) {
            p_inf[i] = 0.0;
            continue;
        }
        double escape = 1.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i || !infected[j]) continue;
            escape *= adj[i][j] ? (1.0 - near) : (1.0 - far);
        }
        p_inf[i] = 1.0 - escape;
    }
    std::vector<double> dist(std::size_t{1} << n, 1.0);
    for (std::size_t s = 0; s < dist.size(); ++s)
        for (std::size_t i = 0; i < n; ++i) dist[s] *= ((s >> i) & 1U) ? p_inf[i] : 1.0 - p_inf[i];
    return dist;
}

/// Pearson chi-square goodness of fit. Cells with zero expectation must
/// have zero observations (otherwise p = 0); they add no degrees of freedom.
inline double chi_square_pvalue(const std::vector<std::size_t>& observed, const std::vector<double>& probs) {
    const double total = std::accumulate(observed.begin(), observed.end(), 0.0);
    double stat = 0.0;
    int cells = 0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        const double e = probs[i] * total;
        if (e <= 0.0) {
            if (observed[i] != 0) return 0.0;
            continue;
        }
        stat += (observed[i] - e) * (observed[i] - e) / e;
        ++cells;
    }
    if (cells <= 1) return 1.0;
    boost::math::chi_squared dist(cells - 1);
    return boost::math::cdf(boost::math::complement(dist, stat));
}

struct NaiveCounts {
    long s10[2]{0, 0};
    long s010[2]{0, 0};
    long s011[2]{0, 0};
};

/// Transition counts tabulated straight from a node-major 0/1 matrix.
/// `summer[t]` says whether the transition t -> t+1 is a summer one.
inline NaiveCounts naive_counts(const std::vector<std::vector<int>>& x, const std::vector<std::pair<int, int>>& edges,
                                const std::vector<bool>& summer) {
    NaiveCounts c;
    const std::size_t n = x.size();
    for (std::size_t t = 0; t + 1 < x[0].size(); ++t) {
        const int s = summer[t] ? 0 : 1;
        for (std::size_t i = 0; i < n; ++i) {
            if (x[i][t] == 1 && x[i][t + 1] == 0) ++c.s10[s];
            if (x[i][t] == 0 && x[i][t + 1] == 1) {
                bool nb = false;
                for (auto [u, v] : edges) {
                    if (static_cast<std::size_t>(u) == i && x[v][t]) nb = true;
                    if (static_cast<std::size_t>(v) == i && x[u][t]) nb = true;
                }
                ++(nb ? c.s011[s] : c.s010[s]);
            }
        }
    }
    return c;
}

/// AUC as the Mann-Whitney probability P(score+ > score-) + 0.5 P(tie).
inline double mann_whitney_auc(const std::vector<double>& scores, const std::vector<int>& labels) {
    double wins = 0.0;
    double pairs = 0.0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (!labels[i]) continue;
        for (std::size_t j = 0; j < scores.size(); ++j) {
            if (labels[j]) continue;
            pairs += 1.0;
            if (scores[i] > scores[j]) wins += 1.0;
            else if (scores[i] == scores[j]) wins += 0.5;
        }
    }
    return wins / pairs;
}

/// Kolmogorov-Smirnov distance of a sample from Uniform(lo, hi).
inline double ks_uniform(std::vector<double> xs, double lo, double hi) {
    std::sort(xs.begin(), xs.end());
    const double n = static_cast<double>(xs.size());
    double d = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double f = std::clamp((xs[i] - lo) / (hi - lo), 0.0, 1.0);
        d = std::max({d, (i + 1) / n - f, f - i / n});
    }
    return d;
}

inline double mean_of(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0) / v.size(); }

inline double var_of(const std::vector<double>& v) {
    const double m = mean_of(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return s / (v.size() - 1);
}

}  // namespace testing
