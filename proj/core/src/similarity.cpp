#include <demon/similarity.hpp>

#include <algorithm>
#include <iomanip>
#include <ostream>
#include <unordered_map>

namespace demon {

double f1_score(const ExternalCommunity &a, const ExternalCommunity &b) {
    if (a.empty() && b.empty())
        return 1.0;
    std::size_t shared = 0;
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (*i < *j) {
            ++i;
        } else if (*j < *i) {
            ++j;
        } else {
            ++shared;
            ++i;
            ++j;
        }
    }
    return 2.0 * double(shared) / double(a.size() + b.size());
}

namespace {

struct Direction {
    std::vector<CommunityMatch> matches;
    std::size_t unmatched = 0;
    double mean = 0.0;
};

/// Best match in `to` for every community of `from`.
Direction best_matches(const std::vector<ExternalCommunity> &from, const std::vector<ExternalCommunity> &to,
                       bool swapped) {
    std::unordered_map<VertexId, std::vector<std::size_t>> index;
    for (std::size_t k = 0; k < to.size(); ++k) {
        for (VertexId v : to[k])
            index[v].push_back(k);
    }

    Direction d;
    std::unordered_map<std::size_t, std::size_t> shared;
    double total = 0.0;
    for (std::size_t k = 0; k < from.size(); ++k) {
        shared.clear();
        for (VertexId v : from[k]) {
            if (auto it = index.find(v); it != index.end()) {
                for (std::size_t other : it->second)
                    ++shared[other];
            }
        }
        CommunityMatch best{k, 0, 0.0};
        bool found = false;
        for (const auto &[other, count] : shared) {
            const double f1 = 2.0 * double(count) / double(from[k].size() + to[other].size());
            if (!found || f1 > best.f1 || (f1 == best.f1 && other < best.id_b)) {
                best.id_b = other;
                best.f1 = f1;
                found = true;
            }
        }
        if (!found)
            ++d.unmatched;
        if (swapped)
            std::swap(best.id_a, best.id_b);
        total += best.f1;
        d.matches.push_back(best);
    }
    d.mean = from.empty() ? 0.0 : total / double(from.size());
    return d;
}

} // namespace

SimilarityReport compare_communities(std::vector<ExternalCommunity> a, std::vector<ExternalCommunity> b) {
    canonicalize(a);
    canonicalize(b);
    SimilarityReport report;
    if (a.empty() && b.empty()) {
        report.best_match_f1 = 1.0;
        return report;
    }
    const Direction ab = best_matches(a, b, false);
    const Direction ba = best_matches(b, a, true);
    report.unmatched_a = ab.unmatched;
    report.unmatched_b = ba.unmatched;
    if (a.size() > b.size()) {
        report.best_match_f1 = ab.mean;
        report.matches = ab.matches;
    } else if (b.size() > a.size()) {
        report.best_match_f1 = ba.mean;
        report.matches = ba.matches;
    } else {
        report.best_match_f1 = (ab.mean + ba.mean) / 2.0;
        report.matches = ab.matches;
    }
    return report;
}

SimilarityReport compare_snapshots(const std::filesystem::path &a, const std::filesystem::path &b) {
    return compare_communities(load_snapshot(a), load_snapshot(b));
}

void write_similarity_text(std::ostream &out, const SimilarityReport &report) {
    out << std::fixed << std::setprecision(6);
    out << "best_match_f1 " << report.best_match_f1 << '\n';
    out << "matched_communities " << report.matches.size() << '\n';
    out << "unmatched_a " << report.unmatched_a << '\n';
    out << "unmatched_b " << report.unmatched_b << '\n';
}

void write_similarity_csv(std::ostream &out, const SimilarityReport &report) {
    out << "id_a,id_b,f1\n" << std::fixed << std::setprecision(6);
    for (const auto &m : report.matches)
        out << m.id_a << ',' << m.id_b << ',' << m.f1 << '\n';
}

} // namespace demon
