#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "bbtv/network.hpp"
#include "bbtv/sis.hpp"

namespace bbtv {

/// Proportion-infected series plus six seasonal transition counts.
///
/// Flat order used by discrepancy() and the CSV export:
///   s1[0..T-1], s10_summer, s10_winter, s010_summer, s010_winter,
///   s011_summer, s011_winter
struct SummaryVector {
    std::vector<double> s1;
    std::int64_t s10_summer{0};
    std::int64_t s10_winter{0};
    std::int64_t s010_summer{0};
    std::int64_t s010_winter{0};
    std::int64_t s011_summer{0};
    std::int64_t s011_winter{0};

    /// Element count k = T + 6.
    [[nodiscard]] std::size_t size() const { return s1.size() + 6; }
    [[nodiscard]] std::array<std::int64_t, 6> counts() const {
        return {s10_summer, s10_winter, s010_summer, s010_winter, s011_summer, s011_winter};
    }
    [[nodiscard]] std::vector<double> flat() const;

    friend bool operator==(const SummaryVector&, const SummaryVector&) = default;
};

/// Summaries of a trajectory. A transition t -> t+1 is attributed to the
/// season of month t. Per node and transition: infected -> susceptible is a
/// recovery (S10); susceptible -> infected is a new infection, S011 if the
/// node had an infected neighbour at t and S010 otherwise.
/// Throws DataError for fewer than 2 snapshots or a node-count mismatch.
SummaryVector summarize(const Trajectory& trajectory, const Network& net);

/// Mean squared difference over the flat vectors. Throws DataError on a
/// length mismatch.
double discrepancy(const SummaryVector& a, const SummaryVector& b);

/// Incremental summariser used inside the samplers: computes the summary
/// of a simulated trajectory and its discrepancy against a fixed observed
/// summary without allocating.
class SummaryScratch {
public:
    SummaryScratch() = default;
    void summarize_into(const Trajectory& trajectory, const Network& net, SummaryVector& out);

private:
    std::vector<std::uint8_t> has_infected_neighbor_;
};

/// Single-line CSV with a header naming every column in flat order.
void write_summary_csv(std::ostream& out, const SummaryVector& s);

}  // namespace bbtv
