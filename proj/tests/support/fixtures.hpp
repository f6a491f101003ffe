#pragma once

#include <utility>
#include <vector>

#include <demon/ego_network.hpp>
#include <demon/graph.hpp>

namespace demon::fixture {

/// Ego-minus-ego network whose vertex indices equal the given ids: vertices
/// 0..n-1 are registered first, then an ego adjacent to all of them.
inline EgoMinusEgo subgraph(NodeIndex n, const std::vector<std::pair<NodeIndex, NodeIndex>> &edges) {
    Graph g;
    for (NodeIndex v = 0; v < n; ++v)
        g.add_vertex(v);
    const VertexId ego = n;
    for (NodeIndex v = 0; v < n; ++v)
        g.add_edge(ego, v);
    for (auto [a, b] : edges)
        g.add_edge(a, b);
    return extract_ego_minus_ego(g, *g.index_of(ego));
}

/// Two cliques of `size` vertices joined by one bridge edge between the last
/// vertex of the first and the first vertex of the second.
inline std::vector<std::pair<VertexId, VertexId>> bridged_cliques(VertexId size) {
    std::vector<std::pair<VertexId, VertexId>> edges;
    for (VertexId base : {VertexId(1), size + 1}) {
        for (VertexId a = base; a < base + size; ++a)
            for (VertexId b = a + 1; b < base + size; ++b)
                edges.emplace_back(a, b);
    }
    edges.emplace_back(size, size + 1);
    return edges;
}

} // namespace demon::fixture
