#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "random.hpp"
#include "types.hpp"

namespace demon {

/// Sorted, duplicate-free member list.
using Members = std::vector<NodeIndex>;

std::size_t intersection_size(std::span<const NodeIndex> a, std::span<const NodeIndex> b);

/// |a ∩ b| / min(|a|, |b|). Throws std::domain_error if either side is empty.
double overlap_fraction(std::span<const NodeIndex> a, std::span<const NodeIndex> b);

/**
 * Merge test on sizes alone: true iff at most `epsilon` of the smaller
 * community lies outside the other one. At epsilon = 0 the smaller one must
 * be contained in the larger; at epsilon = 1 any pair qualifies.
 */
bool should_merge(std::size_t shared, std::size_t size_a, std::size_t size_b, double epsilon);
bool should_merge(std::span<const NodeIndex> a, std::span<const NodeIndex> b, double epsilon);

/// Throws ParameterError unless epsilon is in [0, 1].
void check_epsilon(double epsilon);

enum class CandidateOrder { Ascending, Shuffled };

struct MergeReport {
    /// Live communities that were folded into the result, in merge order.
    std::vector<CommunityId> absorbed;
    CommunityId result = 0;
    std::size_t merges() const noexcept { return absorbed.size(); }
};

/**
 * Global set of overlapping communities plus the two lookup tables that make
 * incremental merging cheap:
 *
 *  - the vertex table maps a vertex to the ids of the live communities that
 *    contain it, so a submitted community is only ever compared with
 *    communities it shares a vertex with;
 *  - the stats table keeps, per community, its size and the ids of the live
 *    communities it overlaps.
 *
 * Merged-away and retired ids never reappear; every merge result gets a
 * fresh id.
 */
class CommunityPool {
public:
    struct Stats {
        std::size_t size = 0;
        /// Sorted ids of live communities sharing at least one vertex.
        std::vector<CommunityId> overlapping;

        friend bool operator==(const Stats &, const Stats &) = default;
    };

    explicit CommunityPool(double epsilon, CandidateOrder order = CandidateOrder::Ascending,
                           std::uint64_t seed = 0);

    double epsilon() const noexcept { return epsilon_; }

    /**
     * Submits a community. Candidates are the live communities sharing a
     * vertex with it. The first candidate that passes should_merge is
     * removed and the union is submitted again, until no candidate merges;
     * the final set is then inserted under a fresh id.
     *
     * Throws std::invalid_argument for an empty community.
     */
    MergeReport merge(Members community);

    /// Removes a live community, returning its members. Unknown ids are a no-op.
    Members retire(CommunityId id);

    std::size_t size() const noexcept { return communities_.size(); }
    bool contains(CommunityId id) const { return communities_.count(id) != 0; }
    const Members &members(CommunityId id) const { return communities_.at(id); }
    const std::map<CommunityId, Members> &communities() const noexcept { return communities_; }

    /// Ids of live communities containing v, ascending.
    std::span<const CommunityId> communities_of(NodeIndex v) const;
    const Stats &stats(CommunityId id) const { return stats_.at(id); }

    /// Member lists of every live community, sorted lexicographically.
    std::vector<Members> member_sets() const;

    /// Recomputes both tables from the community map.
    void rebuild_tables();
    /// True iff the live tables equal the ones rebuild_tables would produce.
    bool tables_coherent() const;

    /// should_merge evaluations performed so far.
    std::size_t comparisons() const noexcept { return comparisons_; }

private:
    friend struct PoolTestAccess;

    CommunityId insert(Members community, std::vector<CommunityId> overlapping);

    double epsilon_;
    CandidateOrder order_;
    Rng rng_;
    CommunityId next_id_ = 0;
    std::size_t comparisons_ = 0;
    std::map<CommunityId, Members> communities_;
    std::vector<std::vector<CommunityId>> vertex_table_;
    std::map<CommunityId, Stats> stats_;
};

/**
 * Reference all-pairs merge without lookup tables. Communities are
 * processed in input order, each compared against every live result in
 * ascending id order with the same cascading rule as CommunityPool::merge;
 * the result is then swept pairwise until no pair merges. Returns the final
 * member lists sorted lexicographically.
 */
std::vector<Members> naive_merge(const std::vector<Members> &communities, double epsilon);

} // namespace demon
