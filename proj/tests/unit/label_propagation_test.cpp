#include <gtest/gtest.h>

#include <algorithm>
#include <iostream>
#include <map>
#include <queue>
#include <set>

#include <demon/label_propagation.hpp>
#include <demon/random.hpp>

#include "fixtures.hpp"
#include "oracles.hpp"

namespace demon {

namespace {

using Edges = std::vector<std::pair<NodeIndex, NodeIndex>>;

oracle::AdjacencyMap adjacency(NodeIndex n, const Edges &edges) {
    oracle::AdjacencyMap adj;
    for (NodeIndex v = 0; v < n; ++v)
        adj[v];
    for (auto [a, b] : edges) {
        adj[a].insert(b);
        adj[b].insert(a);
    }
    return adj;
}

LocalCommunities sorted(LocalCommunities groups) {
    std::sort(groups.begin(), groups.end());
    return groups;
}

Edges random_edges(NodeIndex n, double p, Rng &rng) {
    Edges edges;
    for (NodeIndex a = 0; a < n; ++a)
        for (NodeIndex b = a + 1; b < n; ++b)
            if (rng.unit() < p)
                edges.emplace_back(a, b);
    return edges;
}

/// Vertices within `radius` hops of any seed.
std::set<NodeIndex> ball(const oracle::AdjacencyMap &adj, const std::vector<NodeIndex> &seeds, int radius) {
    std::set<NodeIndex> seen(seeds.begin(), seeds.end());
    std::vector<NodeIndex> layer(seeds.begin(), seeds.end());
    for (int r = 0; r < radius; ++r) {
        std::vector<NodeIndex> next;
        for (NodeIndex v : layer)
            for (VertexId w : adj.at(v))
                if (seen.insert(NodeIndex(w)).second)
                    next.push_back(NodeIndex(w));
        layer = std::move(next);
    }
    return seen;
}

const Edges kTwoTriangles{{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {2, 3}};

} // namespace

TEST(LabelPropagationTest, edgelessSubgraphKeepsOwnLabels) {
    auto sub = fixture::subgraph(2, {});
    auto state = propagate_labels(sub, {});
    EXPECT_EQ(state.labels, (std::vector<Label>{0, 1}));
    EXPECT_EQ(labels_to_communities(state).size(), 2u);
    EXPECT_TRUE(state.converged);
    EXPECT_EQ(state.iterations, 1u);
}

TEST(LabelPropagationTest, triangleCollapsesToOneGroup) {
    auto sub = fixture::subgraph(3, {{0, 1}, {1, 2}, {0, 2}});
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        auto state = propagate_labels(sub, {100, seed});
        auto groups = labels_to_communities(state);
        ASSERT_EQ(groups.size(), 1u);
        EXPECT_EQ(groups[0], (std::vector<NodeIndex>{0, 1, 2}));
    }
    // with the default seed the minimum id wins
    EXPECT_EQ(propagate_labels(sub, {}).labels, (std::vector<Label>{0, 0, 0}));

    // every fixed visiting order ends in a single group as well
    auto adj = adjacency(3, {{0, 1}, {1, 2}, {0, 2}});
    std::vector<VertexId> order{0, 1, 2};
    do {
        EXPECT_EQ(oracle::groups_of(oracle::fixed_order_lpa(adj, order)).size(), 1u);
    } while (std::next_permutation(order.begin(), order.end()));
}

TEST(LabelPropagationTest, bridgedTrianglesSplitAtTheBridge) {
    auto sub = fixture::subgraph(6, kTwoTriangles);
    const LocalCommunities split{{0, 1, 2}, {3, 4, 5}};
    const LocalCommunities merged{{0, 1, 2, 3, 4, 5}};

    auto state = propagate_labels(sub, {100, 1});
    EXPECT_EQ(labels_to_communities(state), split);

    // Oracle: enumerate every fixed visiting order. Only the split and the
    // fully merged partition are reachable, the split in 3 of 4 orders.
    auto adj = adjacency(6, kTwoTriangles);
    std::vector<VertexId> order{0, 1, 2, 3, 4, 5};
    std::size_t split_orders = 0, total = 0;
    do {
        auto groups = oracle::groups_of(oracle::fixed_order_lpa(adj, order));
        ASSERT_TRUE(groups.size() == 1 || groups.size() == 2);
        split_orders += groups.size() == 2;
        ++total;
    } while (std::next_permutation(order.begin(), order.end()));
    EXPECT_EQ(total, 720u);
    EXPECT_EQ(split_orders, 540u);

    std::size_t split_seeds = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        auto groups = labels_to_communities(propagate_labels(sub, {100, seed}));
        ASSERT_TRUE(groups == split || groups == merged);
        split_seeds += groups == split;
    }
    EXPECT_GT(split_seeds, 100u);
}

TEST(LabelPropagationTest, labelsToCommunities) {
    LabelState state;
    state.vertices = {2, 3};
    state.labels = {2, 2};
    EXPECT_EQ(labels_to_communities(state), (LocalCommunities{{2, 3}}));

    state.vertices = {1, 2, 3, 4};
    state.labels = {1, 1, 5, 5};
    EXPECT_EQ(labels_to_communities(state), (LocalCommunities{{1, 2}, {3, 4}}));

    state.vertices = {1, 2, 3, 4};
    state.labels = {9, 1, 9, 1};
    EXPECT_EQ(labels_to_communities(state), (LocalCommunities{{1, 3}, {2, 4}}));

    EXPECT_TRUE(labels_to_communities(LabelState{}).empty());
}

TEST(LabelPropagationTest, rejectsZeroIterationCap) {
    auto sub = fixture::subgraph(2, {{0, 1}});
    EXPECT_THROW(propagate_labels(sub, {0, 1}), ParameterError);
}

TEST(LabelPropagationTest, propertiesOnRandomSubgraphs) {
    Rng rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
        const NodeIndex n = 2 + NodeIndex(rng.below(30));
        const Edges edges = random_edges(n, rng.unit() * 0.4, rng);
        auto sub = fixture::subgraph(n, edges);
        const LabelPropagationConfig config{1 + rng.below(20), rng.next()};
        auto state = propagate_labels(sub, config);

        // determinism
        EXPECT_EQ(state, propagate_labels(sub, config));
        EXPECT_LE(state.iterations, config.max_iter);

        // partition
        auto groups = labels_to_communities(state);
        std::vector<NodeIndex> all;
        for (const auto &g : groups) {
            EXPECT_TRUE(std::is_sorted(g.begin(), g.end()));
            all.insert(all.end(), g.begin(), g.end());
        }
        std::sort(all.begin(), all.end());
        EXPECT_EQ(all, sub.vertices);

        // every group lies inside one connected component
        auto adj = adjacency(n, edges);
        for (const auto &g : groups) {
            auto component = ball(adj, {g.front()}, int(n));
            for (NodeIndex v : g)
                EXPECT_TRUE(component.count(v));
        }

        // fixed point: one more sweep changes nothing
        if (state.converged) {
            for (std::size_t i = 0; i < sub.size(); ++i) {
                if (sub.adjacency[i].empty())
                    continue;
                std::map<Label, int> freq;
                for (NodeIndex w : sub.adjacency[i])
                    ++freq[*state.label_of(w)];
                int best = 0;
                for (auto [l, c] : freq)
                    best = std::max(best, c);
                Label smallest = 0;
                for (auto [l, c] : freq)
                    if (c == best) {
                        smallest = l;
                        break;
                    }
                EXPECT_EQ(state.labels[i], smallest);
            }
        }
    }
}

TEST(LabelPropagationTest, randomTieBreakIsSeededAndDeterministic) {
    auto sub = fixture::subgraph(6, kTwoTriangles);
    const LabelPropagationConfig config{100, 5, TieBreak::Random};
    EXPECT_EQ(propagate_labels(sub, config), propagate_labels(sub, config));
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto groups = labels_to_communities(propagate_labels(sub, {100, seed, TieBreak::Random}));
        EXPECT_LE(groups.size(), 2u);
    }
}

TEST(LabelPropagationTest, addedVertexTakesUnanimousLabel) {
    auto before = fixture::subgraph(5, {{2, 3}, {3, 4}, {2, 4}});
    LabelState state;
    state.config = {};
    state.vertices = {0, 1, 2, 3, 4};
    state.labels = {0, 1, 2, 2, 2};
    ASSERT_EQ(before.vertices, state.vertices);

    auto after = fixture::subgraph(6, {{2, 3}, {3, 4}, {2, 4}, {5, 3}, {5, 4}});
    const std::vector<NodeIndex> added{5};
    const std::vector<IndexEdge> edges{{3, 5}, {4, 5}};
    auto next = incremental_label_update(after, state, added, edges);
    EXPECT_EQ(*next.label_of(5), 2u);
    EXPECT_EQ(*next.label_of(2), 2u);
}

TEST(LabelPropagationTest, addedVertexTieGoesToSmallestLabel) {
    // two separate edges 0-2 and 1-3, labeled 9 and 7; the new vertex sees one of each
    LabelState state;
    state.vertices = {0, 1, 2, 3};
    state.labels = {9, 7, 9, 7};
    auto after = fixture::subgraph(5, {{0, 2}, {1, 3}, {4, 2}, {4, 3}});
    const std::vector<NodeIndex> added{4};
    const std::vector<IndexEdge> edges{{2, 4}, {3, 4}};
    auto next = incremental_label_update(after, state, added, edges);
    EXPECT_EQ(*next.label_of(4), 7u);
}

TEST(LabelPropagationTest, addedVertexWithoutLabeledNeighborsKeepsOwnId) {
    auto before = fixture::subgraph(2, {{0, 1}});
    auto state = propagate_labels(before, {});
    auto after = fixture::subgraph(3, {{0, 1}});
    const std::vector<NodeIndex> added{2};
    auto next = incremental_label_update(after, state, added, {});
    EXPECT_EQ(*next.label_of(2), 2u);
}

TEST(LabelPropagationTest, incrementalRejectsMismatchedState) {
    auto sub = fixture::subgraph(3, {{0, 1}});
    auto state = propagate_labels(fixture::subgraph(2, {{0, 1}}), {});
    // vertex 2 is new but not declared as added
    EXPECT_THROW(incremental_label_update(sub, state, {}, {}), CoherenceError);
    // declared vertex already labeled
    const std::vector<NodeIndex> wrong{1};
    EXPECT_THROW(incremental_label_update(sub, state, wrong, {}), CoherenceError);
}

TEST(LabelPropagationTest, incrementalUpdateOnlyTouchesTheNeighborhoodOfTheDelta) {
    Rng rng(77);
    for (int trial = 0; trial < 200; ++trial) {
        const NodeIndex n = 10 + NodeIndex(rng.below(30));
        Edges edges = random_edges(n, 0.12, rng);
        auto before = fixture::subgraph(n, edges);
        auto state = propagate_labels(before, {100, rng.next()});

        // one new vertex wired to up to three existing ones, plus one new internal edge
        std::vector<IndexEdge> delta;
        Edges grown = edges;
        for (int k = 0; k < 3; ++k) {
            NodeIndex w = NodeIndex(rng.below(n));
            if (std::find(grown.begin(), grown.end(), std::pair{w, n}) == grown.end()) {
                grown.emplace_back(w, n);
                delta.emplace_back(w, n);
            }
        }
        NodeIndex a = NodeIndex(rng.below(n)), b = NodeIndex(rng.below(n));
        if (a > b)
            std::swap(a, b);
        if (a != b && std::find(grown.begin(), grown.end(), std::pair{a, b}) == grown.end()) {
            grown.emplace_back(a, b);
            delta.emplace_back(a, b);
        }
        auto after = fixture::subgraph(n + 1, grown);
        const std::vector<NodeIndex> added{n};
        auto next = incremental_label_update(after, state, added, delta);

        std::vector<NodeIndex> seeds{n};
        for (auto [x, y] : delta) {
            seeds.push_back(x);
            seeds.push_back(y);
        }
        auto frontier = ball(adjacency(n + 1, grown), seeds, 1);
        auto reach2 = ball(adjacency(n + 1, grown), seeds, 2);
        for (NodeIndex v = 0; v < n; ++v) {
            if (!frontier.count(v))
                EXPECT_EQ(*next.label_of(v), *state.label_of(v));
            if (!reach2.count(v))
                EXPECT_EQ(*next.label_of(v), *state.label_of(v));
        }
        auto groups = labels_to_communities(next);
        std::size_t covered = 0;
        for (const auto &g : groups)
            covered += g.size();
        EXPECT_EQ(covered, std::size_t(n + 1));
    }
}

TEST(LabelPropagationTest, incrementalAgreesWithFullRerunOnClusteredSubgraphs) {
    // 20 vertices in four circles of five; a new vertex joins three members
    // of one circle. Compare against propagating from scratch.
    std::size_t agree = 0;
    for (std::uint64_t trial = 0; trial < 200; ++trial) {
        Rng rng(1000 + trial);
        Edges edges;
        for (NodeIndex a = 0; a < 20; ++a)
            for (NodeIndex b = a + 1; b < 20; ++b)
                if (rng.unit() < (a / 5 == b / 5 ? 0.7 : 0.03))
                    edges.emplace_back(a, b);
        const NodeIndex circle = NodeIndex(rng.below(4));
        std::vector<NodeIndex> picks;
        while (picks.size() < 3) {
            const NodeIndex w = circle * 5 + NodeIndex(rng.below(5));
            if (std::find(picks.begin(), picks.end(), w) == picks.end())
                picks.push_back(w);
        }
        Edges grown = edges;
        std::vector<IndexEdge> delta;
        for (NodeIndex w : picks) {
            grown.emplace_back(w, 20);
            delta.emplace_back(w, 20);
        }

        const LabelPropagationConfig config{100, trial};
        auto state = propagate_labels(fixture::subgraph(20, edges), config);
        auto after = fixture::subgraph(21, grown);
        const std::vector<NodeIndex> added{20};
        auto incremental = labels_to_communities(incremental_label_update(after, state, added, delta));
        auto full = labels_to_communities(propagate_labels(after, config));
        if (sorted(incremental) == sorted(full)) {
            ++agree;
        } else {
            std::cout << "[ mismatch ] trial " << trial << ": incremental " << incremental.size()
                      << " groups, full re-run " << full.size() << " groups\n";
        }
    }
    std::cout << "[ agreement ] " << agree << "/200\n";
    EXPECT_GE(agree, 180u);
}

} // namespace demon
