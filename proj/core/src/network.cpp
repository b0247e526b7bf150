#include "bbtv/network.hpp"

#include <algorithm>
#include <cctype>
#include <tuple>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>

#include "bbtv/error.hpp"
#include "bbtv/io.hpp"

namespace bbtv {

namespace {

std::string pair_text(NodeId u, NodeId v) { return "(" + std::to_string(u) + "," + std::to_string(v) + ")"; }

bool looks_numeric(std::string_view s) {
    s = trim(s);
    return !s.empty() && (std::isdigit(static_cast<unsigned char>(s.front())) || s.front() == '-' || s.front() == '+' ||
                          s.front() == '.');
}

NodeId parse_node(std::string_view s) {
    const auto v = parse_int(s);
    if (v < 0) throw DataError("negative node index " + std::string(s));
    return static_cast<NodeId>(v);
}

}  // namespace

Network::Network(std::size_t node_count, std::span<const Edge> edges, std::vector<bool> planted,
                 std::vector<Polygon> footprints)
    : planted_(planted.empty() ? std::vector<bool>(node_count, true) : std::move(planted)),
      footprints_(std::move(footprints)) {
    if (planted_.size() != node_count)
        throw DataError("planted mask has " + std::to_string(planted_.size()) + " entries for " +
                        std::to_string(node_count) + " nodes");
    if (!footprints_.empty() && footprints_.size() != node_count)
        throw DataError("footprint count does not match node count");

    std::set<std::pair<NodeId, NodeId>> seen;
    edges_.reserve(edges.size());
    for (const auto& e : edges) {
        if (e.u == e.v) throw DataError("self-loop " + pair_text(e.u, e.v));
        if (e.u >= node_count || e.v >= node_count)
            throw DataError("edge " + pair_text(e.u, e.v) + " references a node outside 0.." +
                            std::to_string(node_count == 0 ? 0 : node_count - 1));
        const auto key = std::minmax(e.u, e.v);
        if (!seen.insert(key).second) throw DataError("duplicate edge " + pair_text(e.u, e.v));
        edges_.push_back({key.first, key.second});
    }
    std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
        return std::tie(a.u, a.v) < std::tie(b.u, b.v);
    });

    std::vector<std::uint32_t> deg(node_count, 0);
    for (const auto& e : edges_) {
        ++deg[e.u];
        ++deg[e.v];
    }
    offsets_.assign(node_count + 1, 0);
    for (std::size_t n = 0; n < node_count; ++n) offsets_[n + 1] = offsets_[n] + deg[n];
    adjacency_.resize(offsets_.back());
    std::vector<std::uint32_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (const auto& e : edges_) {
        adjacency_[fill[e.u]++] = e.v;
        adjacency_[fill[e.v]++] = e.u;
    }
    for (std::size_t n = 0; n < node_count; ++n)
        std::sort(adjacency_.begin() + offsets_[n], adjacency_.begin() + offsets_[n + 1]);
}

void Network::check_node(NodeId n) const {
    if (n >= node_count())
        throw DataError("node " + std::to_string(n) + " out of range (network has " + std::to_string(node_count()) +
                        " nodes)");
}

std::span<const NodeId> Network::neighbors(NodeId n) const {
    check_node(n);
    return {adjacency_.data() + offsets_[n], offsets_[n + 1] - offsets_[n]};
}

std::size_t Network::degree(NodeId n) const {
    check_node(n);
    return offsets_[n + 1] - offsets_[n];
}

std::size_t Network::non_neighbor_count(NodeId n) const { return node_count() - 1 - degree(n); }

bool Network::adjacent(NodeId a, NodeId b) const {
    const auto nb = neighbors(a);
    return std::binary_search(nb.begin(), nb.end(), b);
}

bool Network::planted(NodeId n) const {
    check_node(n);
    return planted_[n];
}

const Polygon& Network::footprint(NodeId n) const {
    check_node(n);
    if (footprints_.empty() || footprints_[n].empty())
        throw DataError("node " + std::to_string(n) + " has no footprint polygon");
    return footprints_[n];
}

std::map<std::size_t, std::size_t> Network::degree_histogram() const {
    std::map<std::size_t, std::size_t> h;
    for (std::size_t n = 0; n < node_count(); ++n) ++h[offsets_[n + 1] - offsets_[n]];
    return h;
}

NodeSummary network_queries(const Network& net, NodeId node) {
    const auto nb = net.neighbors(node);
    return {nb.size(), std::vector<NodeId>(nb.begin(), nb.end()), net.non_neighbor_count(node)};
}

Network load_network(std::span<const Edge> edges, std::span<const NodeRecord> nodes, std::vector<Polygon> footprints) {
    std::vector<bool> planted(nodes.size(), true);
    std::vector<bool> seen(nodes.size(), false);
    for (const auto& rec : nodes) {
        if (rec.id >= nodes.size())
            throw DataError("node id " + std::to_string(rec.id) + " breaks contiguous numbering 0.." +
                            std::to_string(nodes.size() - 1));
        if (seen[rec.id]) throw DataError("node id " + std::to_string(rec.id) + " listed twice");
        seen[rec.id] = true;
        planted[rec.id] = rec.planted;
    }
    if (!footprints.empty()) footprints.resize(nodes.size());
    return Network(nodes.size(), edges, std::move(planted), std::move(footprints));
}

std::vector<Edge> read_edges(std::istream& in) {
    std::vector<Edge> edges;
    std::string line;
    bool first = true;
    while (next_data_line(in, line)) {
        const auto f = split_csv(line);
        if (first && !looks_numeric(f[0])) {
            first = false;
            continue;
        }
        first = false;
        if (f.size() != 2) throw DataError("edge line '" + line + "' should be 'u,v'");
        edges.push_back({parse_node(f[0]), parse_node(f[1])});
    }
    return edges;
}

std::vector<NodeRecord> read_node_metadata(std::istream& in) {
    std::vector<NodeRecord> nodes;
    std::string line;
    if (!next_data_line(in, line)) throw DataError("node metadata file is empty");
    const auto header = split_csv(line);
    if (header.size() < 2 || header[0] != "id" || header[1] != "planted")
        throw DataError("node metadata header should be 'id,planted', got '" + line + "'");
    while (next_data_line(in, line)) {
        const auto f = split_csv(line);
        if (f.size() < 2) throw DataError("node metadata line '" + line + "' should be 'id,planted'");
        const auto planted = parse_int(f[1]);
        if (planted != 0 && planted != 1) throw DataError("column 'planted' must be 0 or 1 in line '" + line + "'");
        nodes.push_back({parse_node(f[0]), planted == 1});
    }
    return nodes;
}

std::vector<Polygon> read_footprints(std::istream& in, std::size_t node_count) {
    std::vector<std::vector<std::pair<std::int64_t, Point>>> raw(node_count);
    std::string line;
    bool first = true;
    while (next_data_line(in, line)) {
        const auto f = split_csv(line);
        if (first && !looks_numeric(f[0])) {
            first = false;
            continue;
        }
        first = false;
        if (f.size() != 4) throw DataError("footprint line '" + line + "' should be 'node_id,vertex_index,x,y'");
        const auto node = parse_node(f[0]);
        if (node >= node_count) throw DataError("footprint for unknown node " + std::to_string(node));
        raw[node].push_back({parse_int(f[1]), Point{parse_double(f[2]), parse_double(f[3])}});
    }
    std::vector<Polygon> polys(node_count);
    for (std::size_t n = 0; n < node_count; ++n) {
        auto& r = raw[n];
        std::sort(r.begin(), r.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (r[i].first != static_cast<std::int64_t>(i))
                throw DataError("footprint of node " + std::to_string(n) + " has non-contiguous vertex indices");
            polys[n].push_back(r[i].second);
        }
        if (!polys[n].empty() && polys[n].size() < 3)
            throw DataError("footprint of node " + std::to_string(n) + " has fewer than 3 vertices");
    }
    return polys;
}

void write_edges(std::ostream& out, const Network& net) {
    for (const auto& e : net.edges()) out << e.u << ',' << e.v << '\n';
}

void write_node_metadata(std::ostream& out, const Network& net) {
    out << "id,planted\n";
    for (std::size_t n = 0; n < net.node_count(); ++n) out << n << ',' << (net.planted_mask()[n] ? 1 : 0) << '\n';
}

void write_footprints(std::ostream& out, const Network& net) {
    out << "node_id,vertex_index,x,y\n";
    for (std::size_t n = 0; n < net.footprints().size(); ++n) {
        const auto& poly = net.footprints()[n];
        for (std::size_t i = 0; i < poly.size(); ++i)
            out << n << ',' << i << ',' << format_double(poly[i].x) << ',' << format_double(poly[i].y) << '\n';
    }
}

Network load_network_files(const std::string& edges_path, const std::string& metadata_path,
                           const std::optional<std::string>& footprints_path) {
    std::ifstream edges_in(edges_path);
    if (!edges_in) throw DataError("cannot open network file '" + edges_path + "'");
    std::ifstream meta_in(metadata_path);
    if (!meta_in) throw DataError("cannot open node metadata file '" + metadata_path + "'");
    const auto edges = read_edges(edges_in);
    const auto nodes = read_node_metadata(meta_in);
    std::vector<Polygon> polys;
    if (footprints_path) {
        std::ifstream fp_in(*footprints_path);
        if (!fp_in) throw DataError("cannot open footprints file '" + *footprints_path + "'");
        polys = read_footprints(fp_in, nodes.size());
    }
    return load_network(edges, nodes, std::move(polys));
}

}  // namespace bbtv
