#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "graph.hpp"

namespace demon {

enum class ParseMode { Strict, Lenient };

struct EdgeEvent {
    VertexId source = 0;
    VertexId target = 0;

    friend bool operator==(const EdgeEvent &, const EdgeEvent &) = default;
};

struct EdgeListStats {
    std::size_t lines = 0;
    std::size_t self_loops = 0;
    std::size_t duplicates = 0;
    /// Malformed lines skipped in lenient mode.
    std::size_t malformed = 0;
};

struct LoadedGraph {
    Graph graph;
    EdgeListStats stats;
};

/**
 * Parses "src,dst" lines. Blank lines and lines starting with '#' are
 * ignored; whitespace around fields is tolerated. Self-loops are skipped and
 * counted. A malformed line throws IngestError in strict mode and is counted
 * and skipped in lenient mode.
 */
std::vector<EdgeEvent> parse_edge_events(std::istream &in, ParseMode mode, EdgeListStats &stats);

std::vector<EdgeEvent> load_edge_events(const std::filesystem::path &path, ParseMode mode,
                                        EdgeListStats &stats);

LoadedGraph load_edge_list(const std::filesystem::path &path, ParseMode mode = ParseMode::Strict);
LoadedGraph read_edge_list(std::istream &in, ParseMode mode = ParseMode::Strict);

/// Writes one "min,max" line per edge, sorted.
void write_canonical_edges(std::ostream &out, const Graph &g);

void write_edge_events(std::ostream &out, const std::vector<EdgeEvent> &events);

} // namespace demon
