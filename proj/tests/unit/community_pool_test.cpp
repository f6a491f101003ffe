#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include <demon/community_pool.hpp>

namespace demon {

/// Reaches into the pool to damage its tables.
struct PoolTestAccess {
    static std::vector<std::vector<CommunityId>> &vertex_table(CommunityPool &p) { return p.vertex_table_; }
    static std::map<CommunityId, CommunityPool::Stats> &stats(CommunityPool &p) { return p.stats_; }
};

namespace {

using Corpus = std::vector<Members>;

Corpus random_corpus(Rng &rng, std::size_t max_communities, NodeIndex vertices) {
    Corpus corpus(1 + rng.below(max_communities));
    for (auto &c : corpus) {
        const std::size_t size = 1 + rng.below(8);
        for (std::size_t i = 0; i < size; ++i)
            c.push_back(NodeIndex(rng.below(vertices)));
        std::sort(c.begin(), c.end());
        c.erase(std::unique(c.begin(), c.end()), c.end());
    }
    return corpus;
}

std::vector<Members> pool_result(const Corpus &corpus, double epsilon) {
    CommunityPool pool(epsilon);
    for (const auto &c : corpus)
        pool.merge(c);
    return pool.member_sets();
}

/// Independent all-pairs fixed point: merge any overlapping qualifying pair
/// until none is left. Only used to check that the optimized result has no
/// mergeable pair left, which holds regardless of processing order.
bool has_mergeable_overlapping_pair(const std::vector<Members> &sets, double epsilon) {
    for (std::size_t i = 0; i < sets.size(); ++i)
        for (std::size_t j = i + 1; j < sets.size(); ++j) {
            std::set<NodeIndex> a(sets[i].begin(), sets[i].end());
            std::size_t shared = 0;
            for (NodeIndex v : sets[j])
                shared += a.count(v);
            const std::size_t small = std::min(sets[i].size(), sets[j].size());
            if (shared > 0 && double(small - shared) <= epsilon * double(small) + 1e-9)
                return true;
        }
    return false;
}

} // namespace

TEST(CommunityPoolTest, mergeRuleOnSizes) {
    // 4 and 6 vertices sharing 2
    EXPECT_TRUE(should_merge(2, 4, 6, 0.6));
    EXPECT_FALSE(should_merge(2, 4, 6, 0.3));
    EXPECT_TRUE(should_merge(2, 4, 6, 0.5)); // boundary is inclusive
    EXPECT_FALSE(should_merge(0, 3, 3, 0.99));
    EXPECT_TRUE(should_merge(0, 3, 3, 1.0));

    const Members a{1, 2, 3}, b{1, 2, 3, 4};
    EXPECT_TRUE(should_merge(a, b, 0.0));
    EXPECT_FALSE(should_merge(Members{1, 2, 5}, b, 0.0));
    EXPECT_THROW(should_merge(a, b, 1.5), ParameterError);
    EXPECT_THROW(should_merge(a, b, -0.1), ParameterError);
}

TEST(CommunityPoolTest, overlapHelpers) {
    const Members a{1, 2, 3, 4}, b{3, 4, 5, 6, 7, 8};
    EXPECT_EQ(intersection_size(a, b), 2u);
    EXPECT_DOUBLE_EQ(overlap_fraction(a, b), 0.5);
    EXPECT_THROW(overlap_fraction(a, Members{}), std::domain_error);

    Members big;
    for (NodeIndex v = 0; v < 1000; v += 2)
        big.push_back(v);
    EXPECT_EQ(intersection_size(Members{1, 4, 998, 999}, big), 2u);
}

TEST(CommunityPoolTest, overlappingPairMergesIntoEightVertices) {
    CommunityPool pool(0.6);
    pool.merge({1, 2, 3, 4});
    auto report = pool.merge({3, 4, 5, 6, 7, 8});
    EXPECT_EQ(report.merges(), 1u);
    ASSERT_EQ(pool.size(), 1u);
    EXPECT_EQ(pool.members(report.result), (Members{1, 2, 3, 4, 5, 6, 7, 8}));
    EXPECT_TRUE(pool.tables_coherent());

    CommunityPool strict(0.3);
    strict.merge({1, 2, 3, 4});
    strict.merge({3, 4, 5, 6, 7, 8});
    EXPECT_EQ(strict.size(), 2u);
    EXPECT_TRUE(strict.tables_coherent());
}

TEST(CommunityPoolTest, disjointCommunitiesAreNeverCompared) {
    CommunityPool pool(0.99);
    pool.merge({1, 2, 3});
    const auto before = pool.comparisons();
    pool.merge({7, 8, 9});
    EXPECT_EQ(pool.size(), 2u);
    EXPECT_EQ(pool.comparisons(), before);
}

TEST(CommunityPoolTest, cascadeAtEpsilonOneFollowsSharedVertices) {
    CommunityPool pool(1.0);
    pool.merge({1, 2});
    pool.merge({2, 3});
    ASSERT_EQ(pool.size(), 1u);
    pool.merge({9, 10});
    pool.merge({3, 4});
    EXPECT_EQ(pool.member_sets(), (std::vector<Members>{{1, 2, 3, 4}, {9, 10}}));

    // the all-pairs reference merges disjoint communities at epsilon 1
    EXPECT_EQ(naive_merge({{1, 2}, {2, 3}, {9, 10}, {3, 4}}, 1.0), (std::vector<Members>{{1, 2, 3, 4, 9, 10}}));
}

TEST(CommunityPoolTest, cascadeFoldsEveryQualifyingCommunity) {
    CommunityPool pool(0.0);
    pool.merge({1, 2, 3});
    pool.merge({4, 5, 6});
    auto report = pool.merge({1, 2, 3, 4, 5, 6, 7});
    EXPECT_EQ(report.merges(), 2u);
    EXPECT_EQ(pool.member_sets(), (std::vector<Members>{{1, 2, 3, 4, 5, 6, 7}}));
    EXPECT_TRUE(pool.tables_coherent());
}

TEST(CommunityPoolTest, subsetIsAbsorbedAtEpsilonZero) {
    CommunityPool pool(0.0);
    pool.merge({1, 2, 3, 4});
    pool.merge({1, 2, 3});
    EXPECT_EQ(pool.member_sets(), (std::vector<Members>{{1, 2, 3, 4}}));
    pool.merge({3, 4, 5});
    EXPECT_EQ(pool.size(), 2u);
}

TEST(CommunityPoolTest, naiveReference) {
    EXPECT_EQ(naive_merge({{1, 2, 3, 4}, {3, 4, 5, 6, 7, 8}}, 0.6), (std::vector<Members>{{1, 2, 3, 4, 5, 6, 7, 8}}));
    EXPECT_EQ(naive_merge({{1, 2}, {3, 4}}, 0.5), (std::vector<Members>{{1, 2}, {3, 4}}));
    EXPECT_THROW(naive_merge({{1}}, 2.0), ParameterError);
}

TEST(CommunityPoolTest, rejectsBadInput) {
    EXPECT_THROW(CommunityPool(1.01), ParameterError);
    CommunityPool pool(0.5);
    EXPECT_THROW(pool.merge({}), std::invalid_argument);
    // duplicates and unsorted input are normalized
    auto r = pool.merge({3, 1, 3, 2});
    EXPECT_EQ(pool.members(r.result), (Members{1, 2, 3}));
    EXPECT_TRUE(pool.retire(12345).empty());
}

TEST(CommunityPoolTest, statsTrackSizesAndOverlaps) {
    CommunityPool pool(0.0);
    auto a = pool.merge({1, 2, 3}).result;
    auto b = pool.merge({3, 4, 5}).result;
    auto c = pool.merge({8, 9}).result;
    EXPECT_EQ(pool.stats(a), (CommunityPool::Stats{3, {b}}));
    EXPECT_EQ(pool.stats(b), (CommunityPool::Stats{3, {a}}));
    EXPECT_EQ(pool.stats(c), (CommunityPool::Stats{2, {}}));
    EXPECT_EQ(std::vector<CommunityId>(pool.communities_of(3).begin(), pool.communities_of(3).end()),
              (std::vector<CommunityId>{a, b}));
    pool.retire(a);
    EXPECT_EQ(pool.stats(b), (CommunityPool::Stats{3, {}}));
    EXPECT_TRUE(pool.communities_of(1).empty());
}

TEST(CommunityPoolTest, rebuildRepairsCorruptedTables) {
    CommunityPool pool(0.25);
    pool.merge({1, 2, 3});
    pool.merge({3, 4, 5});
    ASSERT_TRUE(pool.tables_coherent());
    const auto sets = pool.member_sets();

    pool.rebuild_tables();
    EXPECT_TRUE(pool.tables_coherent());
    EXPECT_EQ(pool.member_sets(), sets);

    PoolTestAccess::vertex_table(pool)[3].clear();
    PoolTestAccess::vertex_table(pool).resize(50);
    PoolTestAccess::vertex_table(pool)[40].push_back(7);
    EXPECT_FALSE(pool.tables_coherent());
    pool.rebuild_tables();
    EXPECT_TRUE(pool.tables_coherent());

    PoolTestAccess::stats(pool).begin()->second.size = 99;
    EXPECT_FALSE(pool.tables_coherent());
    pool.rebuild_tables();
    EXPECT_TRUE(pool.tables_coherent());
    EXPECT_EQ(pool.member_sets(), sets);
}

TEST(CommunityPoolTest, tablesStayCoherentUnderFuzzedOperations) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        Rng rng(seed);
        CommunityPool pool(0.25 * double(seed % 4), seed % 2 ? CandidateOrder::Shuffled : CandidateOrder::Ascending,
                           seed);
        for (int op = 0; op < 1000; ++op) {
            if (pool.size() > 0 && rng.below(4) == 0) {
                auto it = pool.communities().begin();
                std::advance(it, rng.below(pool.size()));
                const auto id = it->first;
                pool.retire(id);
            } else {
                Members c;
                const std::size_t size = 1 + rng.below(6);
                for (std::size_t i = 0; i < size; ++i)
                    c.push_back(NodeIndex(rng.below(120)));
                pool.merge(c);
            }
            ASSERT_TRUE(pool.tables_coherent()) << "seed " << seed << " op " << op;
        }
        auto tables = pool.member_sets();
        pool.rebuild_tables();
        EXPECT_EQ(pool.member_sets(), tables);
        EXPECT_TRUE(pool.tables_coherent());
    }
}

TEST(CommunityPoolTest, mergingConservesMembers) {
    Rng rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        const auto corpus = random_corpus(rng, 40, 60);
        std::set<NodeIndex> expected;
        for (const auto &c : corpus)
            expected.insert(c.begin(), c.end());
        for (double eps : {0.0, 0.5, 1.0}) {
            std::set<NodeIndex> got;
            for (const auto &c : pool_result(corpus, eps))
                got.insert(c.begin(), c.end());
            EXPECT_EQ(got, expected);
        }
    }
}

TEST(CommunityPoolTest, optimizedMergeEqualsNaiveReference) {
    for (double eps : {0.0, 0.25, 0.5, 0.75}) {
        Rng rng(100);
        for (int corpus_seed = 0; corpus_seed < 50; ++corpus_seed) {
            const auto corpus = random_corpus(rng, 40, 60);
            const auto optimized = pool_result(corpus, eps);
            EXPECT_EQ(optimized, naive_merge(corpus, eps)) << "epsilon " << eps << " corpus " << corpus_seed;
            EXPECT_FALSE(has_mergeable_overlapping_pair(optimized, eps));
        }
    }
}

TEST(CommunityPoolTest, epsilonZeroLeavesNoOverlappingSubset) {
    Rng rng(9);
    for (int trial = 0; trial < 100; ++trial) {
        const auto sets = pool_result(random_corpus(rng, 30, 40), 0.0);
        for (const auto &a : sets)
            for (const auto &b : sets) {
                if (&a == &b || intersection_size(a, b) == 0)
                    continue;
                EXPECT_FALSE(std::includes(b.begin(), b.end(), a.begin(), a.end()));
            }
    }
}

TEST(CommunityPoolTest, communityCountIsMonotoneInEpsilon) {
    Rng rng(31);
    std::size_t violations = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const auto corpus = random_corpus(rng, 40, 60);
        std::size_t previous = SIZE_MAX;
        for (double eps : {0.0, 0.25, 0.5, 0.75, 1.0}) {
            const std::size_t count = pool_result(corpus, eps).size();
            if (count > previous) {
                ++violations;
                ADD_FAILURE() << "trial " << trial << " epsilon " << eps << ": " << count << " > " << previous;
            }
            previous = count;
        }
    }
    EXPECT_EQ(violations, 0u);
}

TEST(CommunityPoolTest, shuffledCandidateOrderIsSeeded) {
    Rng rng(3);
    const auto corpus = random_corpus(rng, 40, 30);
    auto run = [&](std::uint64_t seed) {
        CommunityPool pool(0.5, CandidateOrder::Shuffled, seed);
        for (const auto &c : corpus)
            pool.merge(c);
        EXPECT_TRUE(pool.tables_coherent());
        return pool.member_sets();
    };
    EXPECT_EQ(run(4), run(4));
    EXPECT_FALSE(has_mergeable_overlapping_pair(run(4), 0.5));
}

} // namespace demon
