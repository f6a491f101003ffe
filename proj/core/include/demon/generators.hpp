#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "edge_list.hpp"
#include "snapshot.hpp"

namespace demon {

enum class SyntheticKind { PreferentialAttachment, PlantedCliques, Random };

struct SyntheticSpec {
    SyntheticKind kind = SyntheticKind::PreferentialAttachment;
    std::size_t n = 0;
    /// Target edge count for preferential attachment and random graphs;
    /// number of cliques for planted cliques.
    std::size_t m_or_k = 0;
    /// Trailing edges split off into the stream.
    std::size_t stream_size = 0;
    /// Planted cliques only: random edges between every pair of cliques.
    std::size_t inter_edges_per_pair = 1;
    std::uint64_t seed = 1;
};

struct SyntheticGraph {
    std::vector<EdgeEvent> base;
    std::vector<EdgeEvent> stream;
    /// Planted cliques only.
    std::vector<ExternalCommunity> ground_truth;
};

/**
 * Deterministic generators.
 *
 *  - PreferentialAttachment: a seed clique of k+1 vertices, then every new
 *    vertex links to k distinct existing vertices picked proportionally to
 *    degree, k = round(m / n). Edges are emitted in growth order, so the
 *    stream holds the newest vertices.
 *  - PlantedCliques: n vertices split into k near-equal cliques plus the
 *    requested number of random edges between every pair of cliques, in
 *    seeded shuffled order.
 *  - Random: m distinct uniformly random pairs (G(n, m)) in draw order.
 *
 * Throws ParameterError for infeasible parameters.
 */
SyntheticGraph generate(const SyntheticSpec &spec);

/// Writes <prefix>_base.csv, <prefix>_stream.csv and, for planted cliques,
/// <prefix>_truth.txt into `dir`.
void write_synthetic(const SyntheticGraph &graph, const std::filesystem::path &dir, const std::string &prefix);

Graph build_graph(const std::vector<EdgeEvent> &edges);

} // namespace demon
