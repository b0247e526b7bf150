#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace bbtv {

using NodeId = std::uint32_t;

struct Point {
    double x{0.0};
    double y{0.0};
};

/// Simple polygon in planar metres; closure is implicit.
using Polygon = std::vector<Point>;

struct Edge {
    NodeId u;
    NodeId v;
    friend bool operator==(const Edge&, const Edge&) = default;
};

struct NodeRecord {
    NodeId id;
    bool planted{true};
};

/// Undirected graph of plantation subsections.
///
/// Immutable after construction. Adjacency is stored in CSR form with
/// sorted neighbour lists; edges are canonicalised to u < v and sorted.
class Network {
public:
    Network() = default;

    /// Validates and builds. Throws DataError on self-loops, duplicate
    /// edges (in either orientation), dangling endpoints, or node records
    /// that are not exactly 0..N-1.
    Network(std::size_t node_count, std::span<const Edge> edges, std::vector<bool> planted = {},
            std::vector<Polygon> footprints = {});

    [[nodiscard]] std::size_t node_count() const { return planted_.size(); }
    [[nodiscard]] std::size_t edge_count() const { return edges_.size(); }
    [[nodiscard]] std::span<const Edge> edges() const { return edges_; }

    [[nodiscard]] std::span<const NodeId> neighbors(NodeId n) const;
    [[nodiscard]] std::size_t degree(NodeId n) const;
    /// node_count - 1 - degree
    [[nodiscard]] std::size_t non_neighbor_count(NodeId n) const;
    [[nodiscard]] bool adjacent(NodeId a, NodeId b) const;

    [[nodiscard]] bool planted(NodeId n) const;
    [[nodiscard]] const std::vector<bool>& planted_mask() const { return planted_; }

    [[nodiscard]] bool has_footprints() const { return !footprints_.empty(); }
    [[nodiscard]] const Polygon& footprint(NodeId n) const;
    [[nodiscard]] const std::vector<Polygon>& footprints() const { return footprints_; }

    /// CSR arrays, for the simulator's inner loop.
    [[nodiscard]] std::span<const std::uint32_t> offsets() const { return offsets_; }
    [[nodiscard]] std::span<const NodeId> adjacency() const { return adjacency_; }

    /// degree -> number of nodes with that degree
    [[nodiscard]] std::map<std::size_t, std::size_t> degree_histogram() const;

    friend bool operator==(const Network& a, const Network& b) {
        return a.edges_ == b.edges_ && a.planted_ == b.planted_;
    }

private:
    void check_node(NodeId n) const;

    std::vector<Edge> edges_;
    std::vector<bool> planted_;
    std::vector<Polygon> footprints_;
    std::vector<std::uint32_t> offsets_{0};
    std::vector<NodeId> adjacency_;
};

struct NodeSummary {
    std::size_t degree;
    std::vector<NodeId> neighbors;
    std::size_t non_neighbor_count;
};

/// Degree, neighbour set and non-neighbour count of one node.
NodeSummary network_queries(const Network& net, NodeId node);

/// Builds a Network from parsed edge and node records. Node ids in
/// `nodes` must cover 0..N-1 exactly once.
Network load_network(std::span<const Edge> edges, std::span<const NodeRecord> nodes,
                     std::vector<Polygon> footprints = {});

// File formats ------------------------------------------------------------
//
//   network:    one edge per line "u,v"
//   metadata:   header line, then "id,planted" per node (planted is 0/1)
//   footprints: "node_id,vertex_index,x,y" per vertex, vertices in order
//
// Lines starting with '#' are comments everywhere. An optional header line
// whose first field is not numeric is skipped in the edge and footprint files.

std::vector<Edge> read_edges(std::istream& in);
std::vector<NodeRecord> read_node_metadata(std::istream& in);
std::vector<Polygon> read_footprints(std::istream& in, std::size_t node_count);

void write_edges(std::ostream& out, const Network& net);
void write_node_metadata(std::ostream& out, const Network& net);
void write_footprints(std::ostream& out, const Network& net);

/// Loads network + metadata (+ optional footprints) files.
Network load_network_files(const std::string& edges_path, const std::string& metadata_path,
                           const std::optional<std::string>& footprints_path = std::nullopt);

}  // namespace bbtv
