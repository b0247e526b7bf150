#include "bbtv/summary.hpp"

#include <ostream>

#include "bbtv/error.hpp"
#include "bbtv/io.hpp"

namespace bbtv {

std::vector<double> SummaryVector::flat() const {
    std::vector<double> v(s1);
    for (auto c : counts()) v.push_back(static_cast<double>(c));
    return v;
}

void SummaryScratch::summarize_into(const Trajectory& trajectory, const Network& net, SummaryVector& out) {
    const std::size_t n_nodes = net.node_count();
    const std::size_t snaps = trajectory.snapshot_count();
    if (snaps < 2) throw DataError("summaries need at least 2 snapshots");
    if (trajectory.node_count() != n_nodes) throw DataError("trajectory does not match the network");

    out.s1.resize(snaps);
    out.s10_summer = out.s10_winter = 0;
    out.s010_summer = out.s010_winter = 0;
    out.s011_summer = out.s011_winter = 0;

    const auto offsets = net.offsets();
    const auto adjacency = net.adjacency();
    const double inv_n = n_nodes ? 1.0 / static_cast<double>(n_nodes) : 0.0;

    for (std::size_t t = 0; t < snaps; ++t) {
        const auto now = trajectory.snapshot(t);
        std::size_t infected = 0;
        for (auto v : now) infected += v;
        out.s1[t] = static_cast<double>(infected) * inv_n;
        if (t + 1 == snaps) break;

        const auto next = trajectory.snapshot(t + 1);
        const bool summer = trajectory.month(t).season() == Season::Summer;
        std::int64_t& s10 = summer ? out.s10_summer : out.s10_winter;
        std::int64_t& s010 = summer ? out.s010_summer : out.s010_winter;
        std::int64_t& s011 = summer ? out.s011_summer : out.s011_winter;
        std::int64_t recovered = 0, fresh = 0, fresh_near = 0;
        for (std::size_t n = 0; n < n_nodes; ++n) {
            const int a = now[n], b = next[n];
            recovered += a & (b ^ 1);
            const int infected_now = (a ^ 1) & b;
            fresh += infected_now;
            if (infected_now) {
                int near = 0;
                for (std::uint32_t k = offsets[n]; k < offsets[n + 1]; ++k) near |= now[adjacency[k]];
                fresh_near += near;
            }
        }
        s10 += recovered;
        s011 += fresh_near;
        s010 += fresh - fresh_near;
    }
}

SummaryVector summarize(const Trajectory& trajectory, const Network& net) {
    SummaryScratch scratch;
    SummaryVector out;
    scratch.summarize_into(trajectory, net, out);
    return out;
}

double discrepancy(const SummaryVector& a, const SummaryVector& b) {
    if (a.size() != b.size())
        throw DataError("summary vectors differ in length (" + std::to_string(a.size()) + " vs " +
                        std::to_string(b.size()) + ")");
    double sum = 0.0;
    for (std::size_t t = 0; t < a.s1.size(); ++t) {
        const double d = a.s1[t] - b.s1[t];
        sum += d * d;
    }
    const auto ca = a.counts();
    const auto cb = b.counts();
    for (std::size_t i = 0; i < ca.size(); ++i) {
        const double d = static_cast<double>(ca[i] - cb[i]);
        sum += d * d;
    }
    return sum / static_cast<double>(a.size());
}

void write_summary_csv(std::ostream& out, const SummaryVector& s) {
    for (std::size_t t = 0; t < s.s1.size(); ++t) out << "s1_" << t << ',';
    out << "s10_summer,s10_winter,s010_summer,s010_winter,s011_summer,s011_winter\n";
    for (std::size_t t = 0; t < s.s1.size(); ++t) out << format_double(s.s1[t]) << ',';
    const auto c = s.counts();
    for (std::size_t i = 0; i < c.size(); ++i) out << c[i] << (i + 1 < c.size() ? ',' : '\n');
}

}  // namespace bbtv
