#include <demon/engine.hpp>

#include <algorithm>
#include <set>
#include <string>

#include <demon/random.hpp>

namespace demon {

namespace {

constexpr std::uint64_t kPoolSalt = 0x706f6f6c5f736565ULL;

using Clock = std::chrono::steady_clock;

} // namespace

void validate(const EngineConfig &config) {
    check_epsilon(config.epsilon);
    if (config.max_iter == 0)
        throw ParameterError("max_iter must be at least 1");
}

AnalysisState::AnalysisState(const EngineConfig &config)
    : config_(config), pool_(config.epsilon, config.candidate_order, derive_seed(config.seed, kPoolSalt)) {}

AnalysisState run_batch(Graph graph, const EngineConfig &config) {
    validate(config);
    AnalysisState state(config);
    state.graph_ = std::move(graph);
    state.cache_ = EgoCache::build(state.graph_);
    state.records_.resize(state.graph_.n());
    for (NodeIndex v = 0; v < state.graph_.n(); ++v) {
        auto &rec = state.records_[v];
        rec.labels = propagate_labels(state.cache_.entry(v), state.lp_config(v));
        rec.labeled = true;
        ++state.counters_.full_propagations;
        state.refresh_ego(v);
    }
    return state;
}

LabelPropagationConfig AnalysisState::lp_config(NodeIndex ego) const {
    // seeded by the external id so that results do not depend on processing order
    return {config_.max_iter, derive_seed(config_.seed, graph_.id_of(ego)), config_.tie_break};
}

const LabelState *AnalysisState::label_state(NodeIndex ego) const {
    if (ego >= records_.size() || !records_[ego].labeled)
        return nullptr;
    return &records_[ego].labels;
}

AnalysisState::EgoRecord &AnalysisState::record(NodeIndex ego) {
    if (ego >= records_.size())
        records_.resize(std::size_t(ego) + 1);
    return records_[ego];
}

std::vector<Members> AnalysisState::groups_from_labels(NodeIndex ego) const {
    std::vector<Members> out;
    const LabelState *labels = label_state(ego);
    if (!labels)
        return out;
    for (auto &group : labels_to_communities(*labels)) {
        group.insert(std::lower_bound(group.begin(), group.end(), ego), ego);
        if (group.size() >= config_.min_community_size)
            out.push_back(std::move(group));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Members> AnalysisState::contributed_groups(NodeIndex ego) const {
    std::vector<Members> out;
    if (ego < records_.size()) {
        for (ContributionId cid : records_[ego].contributions)
            out.push_back(contributions_.at(cid).members);
    }
    std::sort(out.begin(), out.end());
    return out;
}

CommunityId AnalysisState::resolve(CommunityId id) {
    CommunityId root = resolve_const(id);
    while (id != root) {
        auto &next = forward_.at(id);
        id = next;
        next = root;
    }
    return root;
}

CommunityId AnalysisState::resolve_const(CommunityId id) const {
    for (auto it = forward_.find(id); it != forward_.end(); it = forward_.find(id))
        id = it->second;
    return id;
}

CommunityId AnalysisState::submit(Members members, Provenance provenance, Work &work) {
    const MergeReport report = pool_.merge(std::move(members));
    ++work.resubmitted;
    work.merges += report.merges();
    ++counters_.submissions;
    counters_.merges += report.merges();

    for (CommunityId absorbed : report.absorbed) {
        auto node = provenance_.extract(absorbed);
        Provenance &other = node.mapped();
        // fold the smaller ledger into the larger one
        if (other.contributions.size() > provenance.contributions.size())
            std::swap(other, provenance);
        provenance.contributions.insert(other.contributions.begin(), other.contributions.end());
        for (const auto &[v, count] : other.coverage)
            provenance.coverage[v] += count;
        forward_[absorbed] = report.result;
    }
    provenance_.emplace(report.result, std::move(provenance));
    return report.result;
}

std::vector<CommunityId> AnalysisState::withdraw(NodeIndex ego, const std::vector<Members> &current,
                                                 Work &work) {
    EgoRecord &rec = record(ego);
    std::set<CommunityId> dirty;
    std::vector<ContributionId> kept;
    for (ContributionId cid : rec.contributions) {
        auto it = contributions_.find(cid);
        if (std::binary_search(current.begin(), current.end(), it->second.members)) {
            kept.push_back(cid);
            continue;
        }
        const CommunityId owner = resolve(it->second.community);
        Provenance &prov = provenance_.at(owner);
        prov.contributions.erase(cid);
        bool dropped = false;
        for (NodeIndex v : it->second.members) {
            auto cov = prov.coverage.find(v);
            if (--cov->second == 0) {
                prov.coverage.erase(cov);
                dropped = true;
            }
        }
        if (dropped || prov.contributions.empty())
            dirty.insert(owner);
        contributions_.erase(it);
        ++counters_.retired_contributions;
    }
    rec.contributions = std::move(kept);

    // Take every affected community out before merging any back, so that a
    // shrunken community never merges into one that still holds stale members.
    struct Pending {
        CommunityId old_id;
        Members members;
        Provenance provenance;
    };
    std::vector<Pending> pending;
    std::vector<CommunityId> retired;
    for (CommunityId id : dirty) {
        Members members = pool_.retire(id);
        auto node = provenance_.extract(id);
        retired.push_back(id);
        if (node.mapped().contributions.empty())
            continue;
        std::erase_if(members, [&](NodeIndex v) { return !node.mapped().coverage.count(v); });
        pending.push_back({id, std::move(members), std::move(node.mapped())});
    }
    for (auto &p : pending)
        forward_[p.old_id] = submit(std::move(p.members), std::move(p.provenance), work);
    return retired;
}

AnalysisState::Work AnalysisState::refresh_ego(NodeIndex ego) {
    Work work;
    const auto current = groups_from_labels(ego);
    withdraw(ego, current, work);

    EgoRecord &rec = record(ego);
    std::vector<Members> existing;
    for (ContributionId cid : rec.contributions)
        existing.push_back(contributions_.at(cid).members);
    std::sort(existing.begin(), existing.end());

    for (const auto &group : current) {
        if (std::binary_search(existing.begin(), existing.end(), group))
            continue;
        const ContributionId cid = next_contribution_++;
        Provenance prov;
        prov.contributions.insert(cid);
        for (NodeIndex v : group)
            prov.coverage.emplace(v, 1);
        contributions_.emplace(cid, Contribution{ego, group, 0});
        rec.contributions.push_back(cid);
        contributions_.at(cid).community = submit(group, std::move(prov), work);
    }
    return work;
}

std::vector<CommunityId> AnalysisState::provenance_retire(NodeIndex ego) {
    if (!label_state(ego))
        return {};
    Work work;
    return withdraw(ego, groups_from_labels(ego), work);
}

void AnalysisState::relabel(const EgoChange &change) {
    EgoRecord &rec = record(change.ego);
    const EgoMinusEgo &sub = cache_.entry(change.ego);
    if (rec.labeled && !change.created) {
        try {
            rec.labels = incremental_label_update(sub, rec.labels, change.added_vertices, change.added_edges);
            ++counters_.incremental_propagations;
            return;
        } catch (const CoherenceError &) {
            // the delta is not a pure addition to the labeled network
        }
    }
    rec.labels = propagate_labels(sub, lp_config(change.ego));
    rec.labeled = true;
    ++counters_.full_propagations;
}

StepReport AnalysisState::apply_event(const EdgeEvent &event) {
    const auto start = Clock::now();
    if (event.source == event.target)
        throw SelfLoopError(event.source);

    StepReport report;
    report.event = event;

    if (config_.full_fallback) {
        Graph g = std::move(graph_);
        report.new_edge = g.add_edge(event.source, event.target);
        const EngineCounters before = counters_;
        *this = run_batch(std::move(g), config_);
        report.egos_touched = graph_.n();
        report.communities_resubmitted = counters_.submissions;
        report.merges = counters_.merges;
        counters_.full_propagations += before.full_propagations;
        counters_.submissions += before.submissions;
        counters_.merges += before.merges;
        report.elapsed = Clock::now() - start;
        return report;
    }

    report.new_edge = graph_.add_edge(event.source, event.target);
    if (report.new_edge) {
        const NodeIndex u = *graph_.index_of(event.source);
        const NodeIndex v = *graph_.index_of(event.target);
        const CacheUpdate update = cache_.apply_edge(graph_, u, v);
        counters_.cache_lookups += update.lookups;
        for (const EgoChange &change : update.changes) {
            relabel(change);
            const Work work = refresh_ego(change.ego);
            report.communities_resubmitted += work.resubmitted;
            report.merges += work.merges;
        }
        report.egos_touched = update.changes.size();
    }
    report.elapsed = Clock::now() - start;
    return report;
}

std::vector<ExternalCommunity> AnalysisState::snapshot() const {
    std::vector<ExternalCommunity> out;
    out.reserve(pool_.size());
    for (const auto &[id, members] : pool_.communities()) {
        ExternalCommunity c;
        c.reserve(members.size());
        for (NodeIndex v : members)
            c.push_back(graph_.id_of(v));
        out.push_back(std::move(c));
    }
    canonicalize(out);
    return out;
}

CommunityPool AnalysisState::rebuild_pool() const {
    CommunityPool pool(config_.epsilon, config_.candidate_order, derive_seed(config_.seed, kPoolSalt));
    for (NodeIndex v = 0; v < graph_.n(); ++v) {
        for (auto &group : groups_from_labels(v))
            pool.merge(std::move(group));
    }
    return pool;
}

void AnalysisState::check_coherence() const {
    auto fail = [](const std::string &what) { throw CoherenceError(what); };

    if (!cache_.equivalent(EgoCache::build(graph_)))
        fail("ego cache differs from a full rebuild");

    for (NodeIndex v = 0; v < records_.size(); ++v) {
        const bool has_entry = v < graph_.n() && cache_.has_entry(v);
        if (records_[v].labeled != has_entry)
            fail("label state present without cache entry (or vice versa) for ego " + std::to_string(v));
        if (has_entry && records_[v].labels.vertices != cache_.entry(v).vertices)
            fail("label state vertices differ from cache entry for ego " + std::to_string(v));
    }
    for (NodeIndex v = static_cast<NodeIndex>(records_.size()); v < graph_.n(); ++v) {
        if (cache_.has_entry(v))
            fail("cache entry without label state for ego " + std::to_string(v));
    }

    if (!pool_.tables_coherent())
        fail("community pool tables differ from a rebuild");

    if (provenance_.size() != pool_.size())
        fail("provenance ledger and pool disagree on community count");
    for (const auto &[id, members] : pool_.communities()) {
        auto it = provenance_.find(id);
        if (it == provenance_.end())
            fail("pool community " + std::to_string(id) + " has no provenance");
        const Provenance &prov = it->second;
        if (prov.coverage.size() != members.size())
            fail("pool community " + std::to_string(id) + " is not the union of its contributions");
        std::unordered_map<NodeIndex, std::uint32_t> expected;
        for (ContributionId cid : prov.contributions) {
            auto c = contributions_.find(cid);
            if (c == contributions_.end())
                fail("provenance references a withdrawn contribution");
            if (resolve_const(c->second.community) != id)
                fail("contribution resolves to the wrong community");
            for (NodeIndex v : c->second.members)
                ++expected[v];
        }
        if (expected != prov.coverage)
            fail("coverage counts of community " + std::to_string(id) + " are stale");
    }

    std::size_t listed = 0;
    for (NodeIndex v = 0; v < records_.size(); ++v) {
        listed += records_[v].contributions.size();
        if (contributed_groups(v) != groups_from_labels(v))
            fail("contributions of ego " + std::to_string(v) + " do not match its labels");
    }
    if (listed != contributions_.size())
        fail("orphaned contributions");
}

} // namespace demon
