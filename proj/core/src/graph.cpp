#include <demon/graph.hpp>

#include <algorithm>

namespace demon {

NodeIndex Graph::add_vertex(VertexId id) {
    auto [it, inserted] = index_.try_emplace(id, static_cast<NodeIndex>(ids_.size()));
    if (inserted) {
        ids_.push_back(id);
        adjacency_.emplace_back();
    }
    return it->second;
}

bool Graph::add_edge(VertexId u, VertexId v) {
    if (u == v)
        throw SelfLoopError(u);
    const NodeIndex a = add_vertex(u);
    const NodeIndex b = add_vertex(v);

    auto &adj_a = adjacency_[a];
    auto pos = std::lower_bound(adj_a.begin(), adj_a.end(), b);
    if (pos != adj_a.end() && *pos == b)
        return false;
    adj_a.insert(pos, b);

    auto &adj_b = adjacency_[b];
    adj_b.insert(std::lower_bound(adj_b.begin(), adj_b.end(), a), a);
    ++edges_;
    return true;
}

std::optional<NodeIndex> Graph::index_of(VertexId id) const {
    auto it = index_.find(id);
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

bool Graph::has_edge_between(NodeIndex a, NodeIndex b) const {
    // search the shorter list
    if (adjacency_[a].size() > adjacency_[b].size())
        std::swap(a, b);
    return std::binary_search(adjacency_[a].begin(), adjacency_[a].end(), b);
}

std::vector<VertexId> Graph::neighbors(VertexId v) const {
    std::vector<VertexId> out;
    if (auto i = index_of(v)) {
        out.reserve(adjacency_[*i].size());
        for (NodeIndex w : adjacency_[*i])
            out.push_back(ids_[w]);
        std::sort(out.begin(), out.end());
    }
    return out;
}

std::size_t Graph::degree(VertexId v) const {
    auto i = index_of(v);
    return i ? adjacency_[*i].size() : 0;
}

bool Graph::has_edge(VertexId u, VertexId v) const {
    auto a = index_of(u);
    auto b = index_of(v);
    return a && b && has_edge_between(*a, *b);
}

std::vector<std::pair<VertexId, VertexId>> Graph::canonical_edges() const {
    std::vector<std::pair<VertexId, VertexId>> out;
    out.reserve(edges_);
    for (NodeIndex a = 0; a < adjacency_.size(); ++a) {
        for (NodeIndex b : adjacency_[a]) {
            if (a < b)
                out.emplace_back(std::min(ids_[a], ids_[b]), std::max(ids_[a], ids_[b]));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<NodeIndex> intersect_sorted(std::span<const NodeIndex> a, std::span<const NodeIndex> b) {
    std::vector<NodeIndex> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

} // namespace demon
