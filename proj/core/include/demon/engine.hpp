#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "community_pool.hpp"
#include "edge_list.hpp"
#include "ego_network.hpp"
#include "graph.hpp"
#include "label_propagation.hpp"
#include "snapshot.hpp"

namespace demon {

struct EngineConfig {
    double epsilon = 0.25;
    std::size_t max_iter = 100;
    std::uint64_t seed = 0;
    TieBreak tie_break = TieBreak::Smallest;
    CandidateOrder candidate_order = CandidateOrder::Ascending;
    /// Local groups (ego included) smaller than this are not submitted.
    std::size_t min_community_size = 3;
    /// Recompute everything with run_batch on every event.
    bool full_fallback = false;
};

void validate(const EngineConfig &config);

struct StepReport {
    EdgeEvent event;
    bool new_edge = false;
    std::size_t egos_touched = 0;
    std::size_t communities_resubmitted = 0;
    std::size_t merges = 0;
    std::chrono::nanoseconds elapsed{0};
};

struct EngineCounters {
    std::size_t full_propagations = 0;
    std::size_t incremental_propagations = 0;
    std::size_t submissions = 0;
    std::size_t merges = 0;
    std::size_t retired_contributions = 0;
    std::size_t cache_lookups = 0;
};

class AnalysisState;

/**
 * Batch pipeline: for every vertex in index order, extract its
 * ego-minus-ego network, run label propagation on it, add the ego back to
 * every resulting group and submit the groups to the community pool.
 */
AnalysisState run_batch(Graph graph, const EngineConfig &config);

/**
 * Graph, ego cache, per-ego labels and the community pool, plus the
 * provenance ledger tying every pool community to the local groups
 * ("contributions") it was formed from.
 *
 * A pool community is always the union of its contributions. When an ego's
 * local groups change, its stale contributions are withdrawn: members no
 * longer covered by any contribution drop out, and a shrunken community is
 * taken out of the pool and merged back in.
 */
class AnalysisState {
public:
    const Graph &graph() const noexcept { return graph_; }
    const EgoCache &ego_cache() const noexcept { return cache_; }
    const CommunityPool &pool() const noexcept { return pool_; }
    const EngineConfig &config() const noexcept { return config_; }
    const EngineCounters &counters() const noexcept { return counters_; }

    /// Labels of an ego's network, or nullptr if the ego has none yet.
    const LabelState *label_state(NodeIndex ego) const;
    /// Local groups (ego included, size-filtered) currently contributed by `ego`.
    std::vector<Members> contributed_groups(NodeIndex ego) const;

    /**
     * Inserts one edge and updates only the egos whose networks changed.
     * Throws SelfLoopError for u == v; the state is untouched in that case.
     */
    StepReport apply_event(const EdgeEvent &event);

    /**
     * Withdraws the contributions of `ego` that no longer match the groups
     * derived from its current labels. Returns the ids of pool communities
     * that were taken out (retired, or shrunk and merged back under a new id).
     * Unknown egos are a no-op.
     */
    std::vector<CommunityId> provenance_retire(NodeIndex ego);

    /// Pool contents in external ids, canonical order.
    std::vector<ExternalCommunity> snapshot() const;

    /// Rebuilds the pool from scratch out of every ego's current groups,
    /// submitted in ego order.
    CommunityPool rebuild_pool() const;

    /// Full consistency check of cache, labels, pool tables and provenance.
    /// Throws CoherenceError describing the first violation.
    void check_coherence() const;

private:
    friend AnalysisState run_batch(Graph graph, const EngineConfig &config);

    using ContributionId = std::uint64_t;

    struct Contribution {
        NodeIndex ego = 0;
        Members members;
        CommunityId community = 0;
    };

    struct Provenance {
        std::unordered_set<ContributionId> contributions;
        std::unordered_map<NodeIndex, std::uint32_t> coverage;
    };

    struct EgoRecord {
        bool labeled = false;
        LabelState labels;
        std::vector<ContributionId> contributions;
    };

    struct Work {
        std::size_t resubmitted = 0;
        std::size_t merges = 0;
    };

    explicit AnalysisState(const EngineConfig &config);

    LabelPropagationConfig lp_config(NodeIndex ego) const;
    std::vector<Members> groups_from_labels(NodeIndex ego) const;
    EgoRecord &record(NodeIndex ego);
    CommunityId resolve(CommunityId id);
    CommunityId resolve_const(CommunityId id) const;

    void relabel(const EgoChange &change);
    Work refresh_ego(NodeIndex ego);
    std::vector<CommunityId> withdraw(NodeIndex ego, const std::vector<Members> &current, Work &work);
    CommunityId submit(Members members, Provenance provenance, Work &work);

    Graph graph_;
    EngineConfig config_;
    EgoCache cache_;
    CommunityPool pool_;
    EngineCounters counters_;

    std::vector<EgoRecord> records_;
    ContributionId next_contribution_ = 0;
    std::unordered_map<ContributionId, Contribution> contributions_;
    std::unordered_map<CommunityId, Provenance> provenance_;
    /// Merged-away or resubmitted pool ids to their successor.
    std::unordered_map<CommunityId, CommunityId> forward_;
};

} // namespace demon
