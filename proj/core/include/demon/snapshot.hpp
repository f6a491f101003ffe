#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "types.hpp"

namespace demon {

/// One community in external vertex ids.
using ExternalCommunity = std::vector<VertexId>;

/**
 * Sorts members ascending and communities by size descending, then smallest
 * member ascending, then lexicographically. This order is the on-disk order
 * of snapshot files.
 */
void canonicalize(std::vector<ExternalCommunity> &communities);

/// One community per line, members space-separated. Canonicalizes a copy first.
void write_snapshot(std::ostream &out, std::vector<ExternalCommunity> communities);
void save_snapshot(const std::filesystem::path &path, std::vector<ExternalCommunity> communities);

/// Parses a snapshot; throws IngestError with the offending line number.
std::vector<ExternalCommunity> read_snapshot(std::istream &in);
std::vector<ExternalCommunity> load_snapshot(const std::filesystem::path &path);

} // namespace demon
