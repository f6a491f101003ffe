#include <demon/ego_network.hpp>

#include <algorithm>
#include <map>
#include <ostream>

namespace demon {

std::size_t EgoMinusEgo::edge_count() const noexcept {
    std::size_t twice = 0;
    for (const auto &adj : adjacency)
        twice += adj.size();
    return twice / 2;
}

std::optional<std::size_t> EgoMinusEgo::local(NodeIndex v) const {
    auto it = std::lower_bound(vertices.begin(), vertices.end(), v);
    if (it == vertices.end() || *it != v)
        return std::nullopt;
    return static_cast<std::size_t>(it - vertices.begin());
}

std::vector<IndexEdge> EgoMinusEgo::edges() const {
    std::vector<IndexEdge> out;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        for (NodeIndex w : adjacency[i]) {
            if (vertices[i] < w)
                out.emplace_back(vertices[i], w);
        }
    }
    return out;
}

bool EgoMinusEgo::insert_vertex(NodeIndex v) {
    auto it = std::lower_bound(vertices.begin(), vertices.end(), v);
    if (it != vertices.end() && *it == v)
        return false;
    const auto pos = it - vertices.begin();
    vertices.insert(it, v);
    adjacency.insert(adjacency.begin() + pos, std::vector<NodeIndex>{});
    return true;
}

namespace {

bool insert_sorted(std::vector<NodeIndex> &list, NodeIndex v) {
    auto it = std::lower_bound(list.begin(), list.end(), v);
    if (it != list.end() && *it == v)
        return false;
    list.insert(it, v);
    return true;
}

} // namespace

bool EgoMinusEgo::insert_edge(NodeIndex a, NodeIndex b) {
    auto la = local(a);
    auto lb = local(b);
    if (!la || !lb || a == b)
        throw CoherenceError("edge endpoint outside ego-minus-ego network");
    if (!insert_sorted(adjacency[*la], b))
        return false;
    insert_sorted(adjacency[*lb], a);
    return true;
}

EgoMinusEgo extract_ego_minus_ego(const Graph &g, NodeIndex v) {
    EgoMinusEgo eme;
    eme.ego = v;
    if (v >= g.n())
        return eme;
    const auto neighborhood = g.adjacent(v);
    eme.vertices.assign(neighborhood.begin(), neighborhood.end());
    eme.adjacency.reserve(neighborhood.size());
    for (NodeIndex a : neighborhood)
        eme.adjacency.push_back(intersect_sorted(g.adjacent(a), neighborhood));
    return eme;
}

std::vector<NodeIndex> affected_egos(const Graph &g, NodeIndex u, NodeIndex v) {
    std::vector<NodeIndex> out;
    const auto nu = g.adjacent(u);
    const auto nv = g.adjacent(v);
    std::set_union(nu.begin(), nu.end(), nv.begin(), nv.end(), std::back_inserter(out));
    // u and v are each other's neighbors, so both are already in the union.
    return out;
}

std::vector<NodeIndex> CacheUpdate::changed_egos() const {
    std::vector<NodeIndex> out;
    out.reserve(changes.size());
    for (const auto &c : changes)
        out.push_back(c.ego);
    return out;
}

EgoCache EgoCache::build(const Graph &g) {
    EgoCache cache;
    cache.entries_.reserve(g.n());
    cache.present_.assign(g.n(), true);
    for (NodeIndex v = 0; v < g.n(); ++v)
        cache.entries_.push_back(extract_ego_minus_ego(g, v));
    return cache;
}

EgoMinusEgo &EgoCache::ensure(NodeIndex ego) {
    if (ego >= entries_.size()) {
        const auto old = entries_.size();
        entries_.resize(ego + 1);
        present_.resize(ego + 1, false);
        for (auto i = old; i < entries_.size(); ++i)
            entries_[i].ego = static_cast<NodeIndex>(i);
    }
    present_[ego] = true;
    return entries_[ego];
}

const EgoMinusEgo &EgoCache::entry(NodeIndex ego) const {
    static const EgoMinusEgo empty;
    return has_entry(ego) ? entries_[ego] : empty;
}

std::size_t EgoCache::entry_count() const noexcept {
    return static_cast<std::size_t>(std::count(present_.begin(), present_.end(), true));
}

CacheUpdate EgoCache::apply_edge(const Graph &g, NodeIndex u, NodeIndex v) {
    CacheUpdate update;
    const auto common = intersect_sorted(g.adjacent(u), g.adjacent(v));
    update.lookups += g.degree_of(u) + g.degree_of(v);

    auto grow_endpoint = [&](NodeIndex ego, NodeIndex other) {
        EgoChange change;
        change.ego = ego;
        change.created = !has_entry(ego);
        EgoMinusEgo &eme = ensure(ego);
        eme.insert_vertex(other);
        change.added_vertices.push_back(other);
        for (NodeIndex w : common) {
            eme.insert_edge(other, w);
            change.added_edges.emplace_back(std::min(other, w), std::max(other, w));
            ++update.lookups;
        }
        update.changes.push_back(std::move(change));
    };
    grow_endpoint(u, v);
    grow_endpoint(v, u);

    // Every common neighbor sees u and v in its neighborhood, now joined.
    for (NodeIndex w : common) {
        EgoChange change;
        change.ego = w;
        change.created = !has_entry(w);
        if (change.created)
            ensure(w) = extract_ego_minus_ego(g, w);
        else
            ensure(w).insert_edge(u, v);
        change.added_edges.emplace_back(std::min(u, v), std::max(u, v));
        ++update.lookups;
        update.changes.push_back(std::move(change));
    }

    std::sort(update.changes.begin(), update.changes.end(),
              [](const EgoChange &a, const EgoChange &b) { return a.ego < b.ego; });
    return update;
}

bool EgoCache::equivalent(const EgoCache &other) const {
    const auto n = std::max(entries_.size(), other.entries_.size());
    for (std::size_t i = 0; i < n; ++i) {
        const auto &a = entry(static_cast<NodeIndex>(i));
        const auto &b = other.entry(static_cast<NodeIndex>(i));
        if (a.vertices != b.vertices || a.adjacency != b.adjacency)
            return false;
    }
    return true;
}

void EgoCache::dump(std::ostream &out, const Graph &g) const {
    std::map<VertexId, NodeIndex> order;
    for (NodeIndex i = 0; i < entries_.size(); ++i) {
        if (present_[i])
            order.emplace(g.id_of(i), i);
    }
    for (const auto &[id, i] : order) {
        const auto &eme = entries_[i];
        std::vector<VertexId> vs;
        for (NodeIndex w : eme.vertices)
            vs.push_back(g.id_of(w));
        std::sort(vs.begin(), vs.end());
        std::vector<std::pair<VertexId, VertexId>> es;
        for (auto [a, b] : eme.edges()) {
            auto x = g.id_of(a), y = g.id_of(b);
            es.emplace_back(std::min(x, y), std::max(x, y));
        }
        std::sort(es.begin(), es.end());

        out << "ego " << id << ": vertices=[";
        for (std::size_t k = 0; k < vs.size(); ++k)
            out << (k ? "," : "") << vs[k];
        out << "] edges=[";
        for (std::size_t k = 0; k < es.size(); ++k)
            out << (k ? "," : "") << '(' << es[k].first << ',' << es[k].second << ')';
        out << "]\n";
    }
}

} // namespace demon
