#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "types.hpp"

namespace demon {

/**
 * Dynamic undirected simple graph.
 *
 * External vertex ids are remapped to dense indices in first-seen order so
 * that per-vertex data elsewhere can live in flat arrays. Each adjacency list
 * is kept sorted, which gives O(log d) membership tests and linear-time
 * neighborhood intersection.
 *
 * Mutation requires exclusive access; concurrent readers are fine between
 * mutations.
 */
class Graph {
public:
    Graph() = default;

    /// Number of vertices.
    std::size_t n() const noexcept { return ids_.size(); }
    /// Number of undirected edges.
    std::size_t m() const noexcept { return edges_; }

    /// Registers `id` if unseen and returns its index.
    NodeIndex add_vertex(VertexId id);

    /**
     * Inserts the undirected edge u-v, registering unseen endpoints first.
     * Returns false if the edge was already present. Throws SelfLoopError if
     * u == v.
     */
    bool add_edge(VertexId u, VertexId v);

    std::optional<NodeIndex> index_of(VertexId id) const;
    VertexId id_of(NodeIndex i) const { return ids_[i]; }

    /// Sorted neighbor indices of an internal vertex.
    std::span<const NodeIndex> adjacent(NodeIndex i) const { return adjacency_[i]; }
    std::size_t degree_of(NodeIndex i) const { return adjacency_[i].size(); }
    bool has_edge_between(NodeIndex a, NodeIndex b) const;

    /// External neighbor ids sorted ascending; empty for unknown vertices.
    std::vector<VertexId> neighbors(VertexId v) const;
    /// 0 for unknown vertices.
    std::size_t degree(VertexId v) const;
    bool has_edge(VertexId u, VertexId v) const;

    /// All edges as (min, max) external id pairs, sorted.
    std::vector<std::pair<VertexId, VertexId>> canonical_edges() const;

private:
    std::vector<VertexId> ids_;
    std::unordered_map<VertexId, NodeIndex> index_;
    std::vector<std::vector<NodeIndex>> adjacency_;
    std::size_t edges_ = 0;
};

/// Sorted intersection of two sorted index lists.
std::vector<NodeIndex> intersect_sorted(std::span<const NodeIndex> a, std::span<const NodeIndex> b);

} // namespace demon
