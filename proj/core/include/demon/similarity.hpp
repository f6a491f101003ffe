#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "snapshot.hpp"

namespace demon {

struct CommunityMatch {
    /// Positions in the canonical order of each side.
    std::size_t id_a = 0;
    std::size_t id_b = 0;
    double f1 = 0.0;
};

struct SimilarityReport {
    /// Mean best-match F1 over the side with more communities; the mean of
    /// both directions when the counts are equal.
    double best_match_f1 = 0.0;
    /// Best match of every community on the reference side (A on ties).
    std::vector<CommunityMatch> matches;
    /// Communities that share no vertex with any community of the other side.
    std::size_t unmatched_a = 0;
    std::size_t unmatched_b = 0;
};

/// F1 = 2|A∩B| / (|A| + |B|) on sorted member lists.
double f1_score(const ExternalCommunity &a, const ExternalCommunity &b);

SimilarityReport compare_communities(std::vector<ExternalCommunity> a, std::vector<ExternalCommunity> b);
SimilarityReport compare_snapshots(const std::filesystem::path &a, const std::filesystem::path &b);

void write_similarity_text(std::ostream &out, const SimilarityReport &report);
/// "id_a,id_b,f1" rows after a header.
void write_similarity_csv(std::ostream &out, const SimilarityReport &report);

} // namespace demon
