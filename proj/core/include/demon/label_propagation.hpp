#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ego_network.hpp"

namespace demon {

/// Labels are vertex indices: every vertex starts labeled with itself.
using Label = NodeIndex;

enum class TieBreak {
    /// Most frequent neighbor label, ties to the smallest label.
    Smallest,
    /// Most frequent neighbor label, ties kept if the current label is among
    /// them, otherwise drawn uniformly from the seeded stream.
    Random,
};

struct LabelPropagationConfig {
    std::size_t max_iter = 100;
    std::uint64_t seed = 0;
    TieBreak tie_break = TieBreak::Smallest;

    friend bool operator==(const LabelPropagationConfig &, const LabelPropagationConfig &) = default;
};

/// Labels of one subgraph, parallel to its sorted vertex list.
struct LabelState {
    std::vector<NodeIndex> vertices;
    std::vector<Label> labels;
    /// Sweeps performed by the last (full or local) propagation.
    std::size_t iterations = 0;
    bool converged = false;
    LabelPropagationConfig config;

    std::optional<Label> label_of(NodeIndex v) const;

    friend bool operator==(const LabelState &, const LabelState &) = default;
};

/// Disjoint vertex groups, each sorted, ordered by smallest member.
using LocalCommunities = std::vector<std::vector<NodeIndex>>;

/**
 * Asynchronous label propagation over `sub`.
 *
 * Each sweep visits the vertices in a freshly shuffled order and sets each
 * vertex to the most frequent label among its neighbors (its own label is
 * not counted). Stops after a sweep that changes nothing or after
 * `config.max_iter` sweeps.
 */
LabelState propagate_labels(const EgoMinusEgo &sub, const LabelPropagationConfig &config);

LocalCommunities labels_to_communities(const LabelState &state);

/**
 * Updates `state`, computed for `sub` before the delta, to the grown `sub`.
 *
 * Added vertices take the most frequent label among their already labeled
 * neighbors (own index if none). Then the frontier, i.e. the closed
 * neighborhood of the added vertices and of the changed edge endpoints, is
 * re-propagated until stable or `max_iter` local sweeps. Nothing outside the
 * frontier is relabeled.
 *
 * Throws CoherenceError if `state` does not cover exactly sub minus `added`.
 */
LabelState incremental_label_update(const EgoMinusEgo &sub, const LabelState &state,
                                    std::span<const NodeIndex> added,
                                    std::span<const IndexEdge> changed_edges);

} // namespace demon
