#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "graph.hpp"

namespace demon {

using IndexEdge = std::pair<NodeIndex, NodeIndex>;

/**
 * Induced subgraph on the neighborhood of `ego`, with the ego itself and all
 * of its incident edges removed.
 *
 * `vertices` is sorted; `adjacency[i]` holds the sorted neighbors of
 * `vertices[i]` inside the subgraph, so every internal edge is stored twice.
 */
struct EgoMinusEgo {
    NodeIndex ego = 0;
    std::vector<NodeIndex> vertices;
    std::vector<std::vector<NodeIndex>> adjacency;

    std::size_t size() const noexcept { return vertices.size(); }
    std::size_t edge_count() const noexcept;

    /// Position of `v` in `vertices`, if present.
    std::optional<std::size_t> local(NodeIndex v) const;
    bool contains(NodeIndex v) const { return local(v).has_value(); }

    /// Edges as (min, max) pairs, sorted.
    std::vector<IndexEdge> edges() const;

    /// Inserts a vertex with no internal edges; returns false if present.
    bool insert_vertex(NodeIndex v);
    /// Inserts edge a-b between existing vertices; returns false if present.
    bool insert_edge(NodeIndex a, NodeIndex b);

    friend bool operator==(const EgoMinusEgo &, const EgoMinusEgo &) = default;
};

/// Builds the ego-minus-ego network of `v` from scratch.
EgoMinusEgo extract_ego_minus_ego(const Graph &g, NodeIndex v);

/// Every ego whose ego-minus-ego network can change when edge u-v is added:
/// {u, v} together with all neighbors of u and v. The edge must already be in g.
std::vector<NodeIndex> affected_egos(const Graph &g, NodeIndex u, NodeIndex v);

/// What one edge insertion did to a single cache entry.
struct EgoChange {
    NodeIndex ego = 0;
    std::vector<NodeIndex> added_vertices;
    std::vector<IndexEdge> added_edges;
    /// Entry did not exist before the update.
    bool created = false;
};

struct CacheUpdate {
    /// Sorted by ego.
    std::vector<EgoChange> changes;
    /// Neighbor-list elements inspected while computing the update.
    std::size_t lookups = 0;

    std::vector<NodeIndex> changed_egos() const;
};

/**
 * Ego-minus-ego network of every vertex, kept coherent with a growing graph.
 *
 * Entries are created lazily: an index without an entry behaves like an
 * empty network.
 */
class EgoCache {
public:
    EgoCache() = default;

    /// Full rebuild over every vertex of `g`.
    static EgoCache build(const Graph &g);

    /**
     * Brings the cache up to date after edge u-v was inserted into `g`.
     * Cost is proportional to deg(u) + deg(v) plus the touched entries; the
     * rest of the graph is never scanned.
     */
    CacheUpdate apply_edge(const Graph &g, NodeIndex u, NodeIndex v);

    bool has_entry(NodeIndex ego) const { return ego < present_.size() && present_[ego]; }
    const EgoMinusEgo &entry(NodeIndex ego) const;
    std::size_t entry_count() const noexcept;
    /// Upper bound on indices with entries.
    std::size_t capacity() const noexcept { return entries_.size(); }

    /// Entry-by-entry equality, treating missing and empty entries alike.
    bool equivalent(const EgoCache &other) const;

    /// Human-readable dump in external ids, egos sorted ascending:
    /// "ego <id>: vertices=[a,b] edges=[(a,b)]".
    void dump(std::ostream &out, const Graph &g) const;

private:
    EgoMinusEgo &ensure(NodeIndex ego);

    std::vector<EgoMinusEgo> entries_;
    std::vector<bool> present_;
};

} // namespace demon
