#include <demon/label_propagation.hpp>

#include <algorithm>
#include <unordered_map>

#include <demon/random.hpp>

namespace demon {

std::optional<Label> LabelState::label_of(NodeIndex v) const {
    auto it = std::lower_bound(vertices.begin(), vertices.end(), v);
    if (it == vertices.end() || *it != v)
        return std::nullopt;
    return labels[static_cast<std::size_t>(it - vertices.begin())];
}

namespace {

constexpr std::uint64_t kIncrementalSalt = 0x696e6372656d656eULL;

using LocalAdjacency = std::vector<std::vector<std::uint32_t>>;

LocalAdjacency localize(const EgoMinusEgo &sub) {
    LocalAdjacency adj(sub.size());
    for (std::size_t i = 0; i < sub.size(); ++i) {
        adj[i].reserve(sub.adjacency[i].size());
        for (NodeIndex w : sub.adjacency[i])
            adj[i].push_back(static_cast<std::uint32_t>(*sub.local(w)));
    }
    return adj;
}

/// Picks the winning label among `tally` (destroyed). `tally` must be nonempty.
Label majority(std::vector<Label> &tally, Label current, TieBreak mode, Rng &rng) {
    std::sort(tally.begin(), tally.end());
    std::size_t best_count = 0;
    std::vector<Label> tied;
    for (std::size_t i = 0; i < tally.size();) {
        std::size_t j = i;
        while (j < tally.size() && tally[j] == tally[i])
            ++j;
        const std::size_t count = j - i;
        if (count > best_count) {
            best_count = count;
            tied.assign(1, tally[i]);
        } else if (count == best_count) {
            tied.push_back(tally[i]);
        }
        i = j;
    }
    if (mode == TieBreak::Smallest || tied.size() == 1)
        return tied.front();
    if (std::binary_search(tied.begin(), tied.end(), current))
        return current;
    return tied[rng.below(tied.size())];
}

/**
 * Sweeps the `active` local vertices until a sweep changes nothing or
 * `max_iter` sweeps elapse. Each sweep visits them in the order of a random
 * key drawn per (seed, sweep, vertex index), a shuffle under which inserting
 * a vertex leaves the relative order of the others unchanged.
 */
void sweep(const EgoMinusEgo &sub, const LocalAdjacency &adj, std::vector<Label> &labels,
           std::vector<std::uint32_t> active, const LabelPropagationConfig &config, Rng &rng, LabelState &state) {
    std::vector<Label> tally;
    std::vector<std::pair<std::uint64_t, std::uint32_t>> order(active.size());
    state.iterations = 0;
    state.converged = false;
    while (state.iterations < config.max_iter) {
        const std::uint64_t sweep_seed = derive_seed(config.seed, state.iterations);
        ++state.iterations;
        for (std::size_t k = 0; k < active.size(); ++k)
            order[k] = {derive_seed(sweep_seed, sub.vertices[active[k]]), active[k]};
        std::sort(order.begin(), order.end());
        bool changed = false;
        for (const auto &[key, i] : order) {
            if (adj[i].empty())
                continue;
            tally.clear();
            for (std::uint32_t w : adj[i])
                tally.push_back(labels[w]);
            const Label next = majority(tally, labels[i], config.tie_break, rng);
            if (next != labels[i]) {
                labels[i] = next;
                changed = true;
            }
        }
        if (!changed) {
            state.converged = true;
            break;
        }
    }
}

void check_config(const LabelPropagationConfig &config) {
    if (config.max_iter == 0)
        throw ParameterError("max_iter must be at least 1");
}

} // namespace

LabelState propagate_labels(const EgoMinusEgo &sub, const LabelPropagationConfig &config) {
    check_config(config);
    LabelState state;
    state.config = config;
    state.vertices = sub.vertices;
    state.labels = sub.vertices;

    const auto adj = localize(sub);
    std::vector<std::uint32_t> order(sub.size());
    for (std::uint32_t i = 0; i < order.size(); ++i)
        order[i] = i;
    Rng rng(config.seed);
    sweep(sub, adj, state.labels, std::move(order), config, rng, state);
    return state;
}

LocalCommunities labels_to_communities(const LabelState &state) {
    LocalCommunities groups;
    std::unordered_map<Label, std::size_t> slot;
    // vertices are sorted, so groups come out ordered by smallest member
    for (std::size_t i = 0; i < state.vertices.size(); ++i) {
        auto [it, inserted] = slot.try_emplace(state.labels[i], groups.size());
        if (inserted)
            groups.emplace_back();
        groups[it->second].push_back(state.vertices[i]);
    }
    return groups;
}

LabelState incremental_label_update(const EgoMinusEgo &sub, const LabelState &state,
                                    std::span<const NodeIndex> added,
                                    std::span<const IndexEdge> changed_edges) {
    check_config(state.config);
    std::vector<NodeIndex> fresh(added.begin(), added.end());
    std::sort(fresh.begin(), fresh.end());
    fresh.erase(std::unique(fresh.begin(), fresh.end()), fresh.end());

    std::vector<NodeIndex> expected;
    std::set_difference(sub.vertices.begin(), sub.vertices.end(), fresh.begin(), fresh.end(),
                        std::back_inserter(expected));
    if (expected != state.vertices || expected.size() + fresh.size() != sub.size())
        throw CoherenceError("label state does not match ego-minus-ego network minus the delta");

    LabelState next;
    next.config = state.config;
    next.vertices = sub.vertices;
    next.labels.resize(sub.size());
    std::vector<bool> labeled(sub.size(), false);
    for (std::size_t i = 0, j = 0; i < sub.size(); ++i) {
        if (j < state.vertices.size() && state.vertices[j] == sub.vertices[i]) {
            next.labels[i] = state.labels[j++];
            labeled[i] = true;
        }
    }

    const auto adj = localize(sub);
    Rng rng(derive_seed(state.config.seed, kIncrementalSalt ^ sub.size()));
    std::vector<Label> tally;
    std::vector<std::uint32_t> seeds;
    for (NodeIndex v : fresh) {
        const auto i = *sub.local(v);
        tally.clear();
        for (std::uint32_t w : adj[i]) {
            if (labeled[w])
                tally.push_back(next.labels[w]);
        }
        next.labels[i] = tally.empty() ? v : majority(tally, v, state.config.tie_break, rng);
        labeled[i] = true;
        seeds.push_back(static_cast<std::uint32_t>(i));
    }
    for (const auto &[a, b] : changed_edges) {
        for (NodeIndex x : {a, b}) {
            if (auto i = sub.local(x))
                seeds.push_back(static_cast<std::uint32_t>(*i));
        }
    }

    std::vector<std::uint32_t> frontier;
    for (std::uint32_t s : seeds) {
        frontier.push_back(s);
        frontier.insert(frontier.end(), adj[s].begin(), adj[s].end());
    }
    std::sort(frontier.begin(), frontier.end());
    frontier.erase(std::unique(frontier.begin(), frontier.end()), frontier.end());

    sweep(sub, adj, next.labels, std::move(frontier), state.config, rng, next);
    return next;
}

} // namespace demon
