#include "bbtv/observation.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>

#include "bbtv/error.hpp"
#include "bbtv/io.hpp"

namespace bbtv {

namespace {

void check_months(const std::vector<YearMonth>& months) {
    for (std::size_t i = 1; i < months.size(); ++i)
        if (months[i].index() != months[i - 1].index() + 1)
            throw DataError("month labels must increase by one month: " + months[i - 1].label() + " then " +
                            months[i].label());
}

bool on_segment(const Point& p, const Point& a, const Point& b) {
    const double cross = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
    const double scale = std::max({std::abs(b.x - a.x), std::abs(b.y - a.y), 1.0});
    if (std::abs(cross) > 1e-9 * scale * scale) return false;
    return p.x >= std::min(a.x, b.x) - 1e-12 && p.x <= std::max(a.x, b.x) + 1e-12 &&
           p.y >= std::min(a.y, b.y) - 1e-12 && p.y <= std::max(a.y, b.y) + 1e-12;
}

}  // namespace

ObservationSeries::ObservationSeries(std::size_t node_count, std::vector<YearMonth> months)
    : node_count_(node_count), months_(std::move(months)), states_(node_count_ * months_.size(), 0) {
    check_months(months_);
}

ObservationSeries::ObservationSeries(std::size_t node_count, std::vector<YearMonth> months,
                                     std::vector<std::uint8_t> states)
    : node_count_(node_count), months_(std::move(months)), states_(std::move(states)) {
    check_months(months_);
    if (states_.size() != node_count_ * months_.size()) throw DataError("state matrix has the wrong size");
}

std::vector<std::uint8_t> ObservationSeries::column(std::size_t snapshot) const {
    if (snapshot >= snapshot_count()) throw DataError("snapshot " + std::to_string(snapshot) + " out of range");
    return {states_.begin() + static_cast<std::ptrdiff_t>(snapshot * node_count_),
            states_.begin() + static_cast<std::ptrdiff_t>((snapshot + 1) * node_count_)};
}

ObservationSeries ObservationSeries::slice(std::size_t first, std::size_t count) const {
    if (first + count > snapshot_count() || count == 0) throw DataError("snapshot slice out of range");
    std::vector<YearMonth> m(months_.begin() + static_cast<std::ptrdiff_t>(first),
                             months_.begin() + static_cast<std::ptrdiff_t>(first + count));
    std::vector<std::uint8_t> s(states_.begin() + static_cast<std::ptrdiff_t>(first * node_count_),
                                states_.begin() + static_cast<std::ptrdiff_t>((first + count) * node_count_));
    return {node_count_, std::move(m), std::move(s)};
}

bool point_in_polygon(const Point& p, const Polygon& poly) {
    const std::size_t n = poly.size();
    bool inside = false;
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const Point& a = poly[i];
        const Point& b = poly[j];
        if (on_segment(p, a, b)) return true;
        if ((a.y > p.y) != (b.y > p.y)) {
            const double x_cross = (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x;
            if (p.x < x_cross) inside = !inside;
        }
    }
    return inside;
}

BinResult bin_points(std::span<const PointObservation> points, const Network& net, YearMonth first_month,
                     std::size_t snapshots) {
    std::vector<YearMonth> months;
    for (std::size_t t = 0; t < snapshots; ++t) months.push_back(first_month.plus(static_cast<int>(t)));
    BinResult result{ObservationSeries(net.node_count(), std::move(months)), {}};

    struct Box {
        double x0, y0, x1, y1;
    };
    std::vector<Box> boxes;
    for (NodeId n = 0; n < net.node_count(); ++n) {
        const auto& poly = net.footprint(n);
        Box b{poly[0].x, poly[0].y, poly[0].x, poly[0].y};
        for (const auto& v : poly) {
            b.x0 = std::min(b.x0, v.x);
            b.y0 = std::min(b.y0, v.y);
            b.x1 = std::max(b.x1, v.x);
            b.y1 = std::max(b.y1, v.y);
        }
        boxes.push_back(b);
    }

    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto& pt = points[i];
        if (pt.snapshot_index >= snapshots)
            throw DataError("point " + std::to_string(i) + " has snapshot index " + std::to_string(pt.snapshot_index) +
                            " outside 0.." + std::to_string(snapshots - 1));
        const Point p{pt.x, pt.y};
        bool placed = false;
        for (NodeId n = 0; n < net.node_count(); ++n) {
            const auto& b = boxes[n];
            if (p.x < b.x0 - 1e-9 || p.x > b.x1 + 1e-9 || p.y < b.y0 - 1e-9 || p.y > b.y1 + 1e-9) continue;
            if (point_in_polygon(p, net.footprint(n))) {
                result.series.set(n, pt.snapshot_index, true);
                placed = true;
                break;
            }
        }
        if (!placed) result.rejects.push_back(i);
    }
    return result;
}

ObservationSeries read_series(std::istream& in) {
    std::string line;
    if (!next_data_line(in, line)) throw DataError("snapshot matrix is empty");
    std::vector<YearMonth> months;
    for (auto f : split_csv(line)) months.push_back(YearMonth::parse(f));
    if (months.size() < 2) throw DataError("snapshot matrix needs at least 2 month columns");
    check_months(months);

    std::vector<std::vector<std::uint8_t>> rows;
    while (next_data_line(in, line)) {
        const auto f = split_csv(line);
        if (f.size() != months.size())
            throw DataError("snapshot row " + std::to_string(rows.size()) + " has " + std::to_string(f.size()) +
                            " values, expected " + std::to_string(months.size()));
        std::vector<std::uint8_t> row;
        for (std::size_t t = 0; t < f.size(); ++t) {
            if (f[t] != "0" && f[t] != "1")
                throw DataError("snapshot row " + std::to_string(rows.size()) + ", column " + months[t].label() +
                                ": expected 0 or 1, got '" + std::string(f[t]) + "'");
            row.push_back(f[t] == "1" ? 1 : 0);
        }
        rows.push_back(std::move(row));
    }
    ObservationSeries series(rows.size(), months);
    for (std::size_t n = 0; n < rows.size(); ++n)
        for (std::size_t t = 0; t < months.size(); ++t) series.set(n, t, rows[n][t] != 0);
    return series;
}

void write_series(std::ostream& out, const ObservationSeries& series) {
    const auto& months = series.months();
    for (std::size_t t = 0; t < months.size(); ++t) out << (t ? "," : "") << months[t].label();
    out << '\n';
    std::string row;
    for (std::size_t n = 0; n < series.node_count(); ++n) {
        row.clear();
        for (std::size_t t = 0; t < months.size(); ++t) {
            if (t) row += ',';
            row += series.infected(n, t) ? '1' : '0';
        }
        out << row << '\n';
    }
}

std::vector<PointObservation> read_points(std::istream& in) {
    std::vector<PointObservation> pts;
    std::string line;
    bool first = true;
    while (next_data_line(in, line)) {
        const auto f = split_csv(line);
        if (first && f[0] == "x") {
            first = false;
            continue;
        }
        first = false;
        if (f.size() != 3) throw DataError("point line '" + line + "' should be 'x,y,snapshot'");
        const auto t = parse_int(f[2]);
        if (t < 0) throw DataError("negative snapshot index in '" + line + "'");
        pts.push_back({parse_double(f[0]), parse_double(f[1]), static_cast<std::size_t>(t)});
    }
    return pts;
}

}  // namespace bbtv
