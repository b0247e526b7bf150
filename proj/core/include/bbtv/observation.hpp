#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "bbtv/calendar.hpp"
#include "bbtv/network.hpp"

namespace bbtv {

/// Node x snapshot boolean matrix plus consecutive month labels.
/// Storage is snapshot-major: all nodes of snapshot 0, then snapshot 1, ...
class ObservationSeries {
public:
    ObservationSeries() = default;
    ObservationSeries(std::size_t node_count, std::vector<YearMonth> months);
    ObservationSeries(std::size_t node_count, std::vector<YearMonth> months, std::vector<std::uint8_t> states);

    [[nodiscard]] std::size_t node_count() const { return node_count_; }
    [[nodiscard]] std::size_t snapshot_count() const { return months_.size(); }
    [[nodiscard]] const std::vector<YearMonth>& months() const { return months_; }

    [[nodiscard]] bool infected(std::size_t node, std::size_t snapshot) const {
        return states_[snapshot * node_count_ + node] != 0;
    }
    void set(std::size_t node, std::size_t snapshot, bool value) {
        states_[snapshot * node_count_ + node] = value ? 1 : 0;
    }
    /// One snapshot as a 0/1 vector over nodes.
    [[nodiscard]] std::vector<std::uint8_t> column(std::size_t snapshot) const;
    [[nodiscard]] const std::vector<std::uint8_t>& raw() const { return states_; }

    /// Snapshots [first, first + count).
    [[nodiscard]] ObservationSeries slice(std::size_t first, std::size_t count) const;

    friend bool operator==(const ObservationSeries&, const ObservationSeries&) = default;

private:
    std::size_t node_count_{0};
    std::vector<YearMonth> months_;
    std::vector<std::uint8_t> states_;
};

struct PointObservation {
    double x{0.0};
    double y{0.0};
    std::size_t snapshot_index{0};
};

/// Ray-casting containment; points on an edge or vertex count as inside.
bool point_in_polygon(const Point& p, const Polygon& poly);

struct BinResult {
    ObservationSeries series;
    /// Points that fell inside no footprint (indices into the input).
    std::vector<std::size_t> rejects;
};

/// Marks a node infected at snapshot t when at least one point with that
/// snapshot index lies inside its footprint. A point inside several
/// footprints (shared boundary) is assigned to the lowest node index.
/// Throws DataError if any node lacks a footprint or a point's snapshot
/// index is out of range.
BinResult bin_points(std::span<const PointObservation> points, const Network& net, YearMonth first_month,
                     std::size_t snapshots);

/// Snapshot matrix: header row of "YYYY-MM" labels, then one 0/1 row per
/// node. '#' lines are comments.
ObservationSeries read_series(std::istream& in);
void write_series(std::ostream& out, const ObservationSeries& series);

/// "x,y,snapshot" per line, optional header.
std::vector<PointObservation> read_points(std::istream& in);

}  // namespace bbtv
