#include <demon/community_pool.hpp>

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>

namespace demon {

std::size_t intersection_size(std::span<const NodeIndex> a, std::span<const NodeIndex> b) {
    if (a.size() > b.size())
        std::swap(a, b);
    std::size_t shared = 0;
    if (a.size() * 16 < b.size()) {
        for (NodeIndex v : a)
            shared += std::binary_search(b.begin(), b.end(), v);
        return shared;
    }
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
    return shared;
}

double overlap_fraction(std::span<const NodeIndex> a, std::span<const NodeIndex> b) {
    if (a.empty() || b.empty())
        throw std::domain_error("overlap of an empty community");
    return double(intersection_size(a, b)) / double(std::min(a.size(), b.size()));
}

void check_epsilon(double epsilon) {
    if (!(epsilon >= 0.0 && epsilon <= 1.0))
        throw ParameterError("epsilon must lie in [0, 1], got " + std::to_string(epsilon));
}

bool should_merge(std::size_t shared, std::size_t size_a, std::size_t size_b, double epsilon) {
    const double smaller = double(std::min(size_a, size_b));
    const double outside = smaller - double(shared);
    // compare counts, not ratios, so that e.g. 3 of 10 outside at epsilon 0.3 merges
    return outside <= epsilon * smaller + 1e-9 * smaller;
}

bool should_merge(std::span<const NodeIndex> a, std::span<const NodeIndex> b, double epsilon) {
    check_epsilon(epsilon);
    if (a.empty() || b.empty())
        throw std::domain_error("merge test on an empty community");
    return should_merge(intersection_size(a, b), a.size(), b.size(), epsilon);
}

CommunityPool::CommunityPool(double epsilon, CandidateOrder order, std::uint64_t seed)
    : epsilon_(epsilon), order_(order), rng_(seed) {
    check_epsilon(epsilon);
}

std::span<const CommunityId> CommunityPool::communities_of(NodeIndex v) const {
    if (v >= vertex_table_.size())
        return {};
    return vertex_table_[v];
}

MergeReport CommunityPool::merge(Members community) {
    if (community.empty())
        throw std::invalid_argument("cannot merge an empty community");
    std::sort(community.begin(), community.end());
    community.erase(std::unique(community.begin(), community.end()), community.end());
    MergeReport report;

    std::vector<CommunityId> hits;
    std::vector<std::pair<CommunityId, std::size_t>> candidates;
    for (;;) {
        // Every occurrence of an id in the vertex table rows of the members
        // is one shared vertex, so the run lengths are intersection sizes.
        hits.clear();
        for (NodeIndex v : community) {
            auto row = communities_of(v);
            hits.insert(hits.end(), row.begin(), row.end());
        }
        std::sort(hits.begin(), hits.end());
        candidates.clear();
        for (std::size_t i = 0; i < hits.size();) {
            std::size_t j = i;
            while (j < hits.size() && hits[j] == hits[i])
                ++j;
            candidates.emplace_back(hits[i], j - i);
            i = j;
        }
        if (order_ == CandidateOrder::Shuffled)
            rng_.shuffle(std::span(candidates));

        std::optional<CommunityId> chosen;
        for (const auto &[id, shared] : candidates) {
            ++comparisons_;
            if (should_merge(shared, stats_.at(id).size, community.size(), epsilon_)) {
                chosen = id;
                break;
            }
        }
        if (!chosen) {
            std::vector<CommunityId> overlapping;
            overlapping.reserve(candidates.size());
            for (const auto &c : candidates)
                overlapping.push_back(c.first);
            std::sort(overlapping.begin(), overlapping.end());
            report.result = insert(std::move(community), std::move(overlapping));
            return report;
        }

        Members absorbed = retire(*chosen);
        Members united;
        united.reserve(absorbed.size() + community.size());
        std::set_union(absorbed.begin(), absorbed.end(), community.begin(), community.end(),
                       std::back_inserter(united));
        community = std::move(united);
        report.absorbed.push_back(*chosen);
    }
}

CommunityId CommunityPool::insert(Members community, std::vector<CommunityId> overlapping) {
    const CommunityId id = next_id_++;
    if (!community.empty() && community.back() >= vertex_table_.size())
        vertex_table_.resize(std::size_t(community.back()) + 1);
    for (NodeIndex v : community)
        vertex_table_[v].push_back(id); // ids only grow, rows stay sorted
    for (CommunityId other : overlapping)
        stats_.at(other).overlapping.push_back(id);
    stats_[id] = Stats{community.size(), std::move(overlapping)};
    communities_.emplace(id, std::move(community));
    return id;
}

Members CommunityPool::retire(CommunityId id) {
    auto it = communities_.find(id);
    if (it == communities_.end())
        return {};
    Members members = std::move(it->second);
    communities_.erase(it);
    for (NodeIndex v : members) {
        auto &row = vertex_table_[v];
        row.erase(std::lower_bound(row.begin(), row.end(), id));
    }
    for (CommunityId other : stats_.at(id).overlapping) {
        auto &list = stats_.at(other).overlapping;
        list.erase(std::lower_bound(list.begin(), list.end(), id));
    }
    stats_.erase(id);
    return members;
}

std::vector<Members> CommunityPool::member_sets() const {
    std::vector<Members> out;
    out.reserve(communities_.size());
    for (const auto &[id, members] : communities_)
        out.push_back(members);
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

struct Tables {
    std::vector<std::vector<CommunityId>> vertex_table;
    std::map<CommunityId, CommunityPool::Stats> stats;
};

Tables compute_tables(const std::map<CommunityId, Members> &communities) {
    Tables t;
    for (const auto &[id, members] : communities) {
        for (NodeIndex v : members) {
            if (v >= t.vertex_table.size())
                t.vertex_table.resize(std::size_t(v) + 1);
            t.vertex_table[v].push_back(id);
        }
    }
    for (const auto &[id, members] : communities) {
        auto &s = t.stats[id];
        s.size = members.size();
        for (NodeIndex v : members) {
            for (CommunityId other : t.vertex_table[v]) {
                if (other != id)
                    s.overlapping.push_back(other);
            }
        }
        std::sort(s.overlapping.begin(), s.overlapping.end());
        s.overlapping.erase(std::unique(s.overlapping.begin(), s.overlapping.end()), s.overlapping.end());
    }
    return t;
}

bool same_rows(const std::vector<std::vector<CommunityId>> &a, const std::vector<std::vector<CommunityId>> &b) {
    const auto n = std::max(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        const bool ea = i >= a.size() || a[i].empty();
        const bool eb = i >= b.size() || b[i].empty();
        if (ea != eb || (!ea && a[i] != b[i]))
            return false;
    }
    return true;
}

} // namespace

void CommunityPool::rebuild_tables() {
    auto t = compute_tables(communities_);
    vertex_table_ = std::move(t.vertex_table);
    stats_ = std::move(t.stats);
}

bool CommunityPool::tables_coherent() const {
    const auto t = compute_tables(communities_);
    return same_rows(vertex_table_, t.vertex_table) && stats_ == t.stats;
}

std::vector<Members> naive_merge(const std::vector<Members> &communities, double epsilon) {
    check_epsilon(epsilon);
    using Set = std::set<NodeIndex>;
    // kept in ascending id order: fresh ids are always appended
    std::vector<Set> live;

    auto mergeable = [&](const Set &a, const Set &b) {
        std::size_t shared = 0;
        for (NodeIndex v : a)
            shared += b.count(v);
        return should_merge(shared, a.size(), b.size(), epsilon);
    };

    for (const auto &input : communities) {
        if (input.empty())
            continue;
        Set current(input.begin(), input.end());
        for (bool merged = true; merged;) {
            merged = false;
            for (auto it = live.begin(); it != live.end(); ++it) {
                if (mergeable(*it, current)) {
                    current.insert(it->begin(), it->end());
                    live.erase(it);
                    merged = true;
                    break;
                }
            }
        }
        live.push_back(std::move(current));
    }

    for (bool merged = true; merged;) {
        merged = false;
        for (std::size_t i = 0; i < live.size() && !merged; ++i) {
            for (std::size_t j = i + 1; j < live.size() && !merged; ++j) {
                if (mergeable(live[i], live[j])) {
                    Set united = live[i];
                    united.insert(live[j].begin(), live[j].end());
                    live.erase(live.begin() + j);
                    live.erase(live.begin() + i);
                    live.push_back(std::move(united));
                    merged = true;
                }
            }
        }
    }

    std::vector<Members> out;
    for (const auto &s : live)
        out.emplace_back(s.begin(), s.end());
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace demon
