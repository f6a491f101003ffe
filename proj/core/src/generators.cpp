#include <demon/generators.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <string>

#include <demon/random.hpp>

namespace demon {

namespace {

using Pair = std::pair<VertexId, VertexId>;

Pair ordered(VertexId a, VertexId b) { return {std::min(a, b), std::max(a, b)}; }

std::vector<EdgeEvent> preferential_attachment(std::size_t n, std::size_t m, Rng &rng) {
    const std::size_t k = std::max<std::size_t>(1, std::size_t(std::llround(double(m) / double(n))));
    if (n < k + 1)
        throw ParameterError("preferential attachment needs n > round(m / n)");

    std::vector<EdgeEvent> edges;
    std::vector<VertexId> endpoints; // each vertex repeated once per incident edge
    for (VertexId a = 0; a <= k; ++a) {
        for (VertexId b = a + 1; b <= k; ++b) {
            edges.push_back({a, b});
            endpoints.push_back(a);
            endpoints.push_back(b);
        }
    }
    if (endpoints.empty())
        endpoints.push_back(0); // k == 1 starts from a single vertex
    std::vector<VertexId> picked;
    for (VertexId v = k + 1; v < n; ++v) {
        picked.clear();
        while (picked.size() < k) {
            const VertexId target = endpoints[rng.below(endpoints.size())];
            if (std::find(picked.begin(), picked.end(), target) == picked.end())
                picked.push_back(target);
        }
        for (VertexId target : picked) {
            edges.push_back({v, target});
            endpoints.push_back(v);
            endpoints.push_back(target);
        }
    }
    return edges;
}

std::vector<EdgeEvent> planted_cliques(std::size_t n, std::size_t k, std::size_t inter, Rng &rng,
                                       std::vector<ExternalCommunity> &truth) {
    if (k == 0 || n < 2 * k)
        throw ParameterError("planted cliques need k >= 1 and at least 2 vertices per clique");
    truth.assign(k, {});
    for (VertexId v = 0, c = 0; c < k; ++c) {
        const std::size_t size = n / k + (c < n % k ? 1 : 0);
        for (std::size_t i = 0; i < size; ++i)
            truth[c].push_back(v++);
    }

    std::vector<EdgeEvent> edges;
    for (const auto &clique : truth) {
        for (std::size_t i = 0; i < clique.size(); ++i) {
            for (std::size_t j = i + 1; j < clique.size(); ++j)
                edges.push_back({clique[i], clique[j]});
        }
    }
    for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = a + 1; b < k; ++b) {
            if (inter > truth[a].size() * truth[b].size())
                throw ParameterError("more inter-clique edges requested than vertex pairs");
            std::set<Pair> chosen;
            while (chosen.size() < inter) {
                const VertexId x = truth[a][rng.below(truth[a].size())];
                const VertexId y = truth[b][rng.below(truth[b].size())];
                if (chosen.insert({x, y}).second)
                    edges.push_back({x, y});
            }
        }
    }
    rng.shuffle(std::span(edges));
    return edges;
}

std::vector<EdgeEvent> random_graph(std::size_t n, std::size_t m, Rng &rng) {
    if (m > n * (n - 1) / 2)
        throw ParameterError("more edges requested than vertex pairs");
    std::set<Pair> chosen;
    std::vector<EdgeEvent> edges;
    while (edges.size() < m) {
        const VertexId a = rng.below(n);
        const VertexId b = rng.below(n);
        if (a != b && chosen.insert(ordered(a, b)).second)
            edges.push_back({a, b});
    }
    return edges;
}

} // namespace

SyntheticGraph generate(const SyntheticSpec &spec) {
    if (spec.n < 2)
        throw ParameterError("synthetic graphs need n >= 2");
    Rng rng(spec.seed);
    SyntheticGraph out;
    std::vector<EdgeEvent> edges;
    switch (spec.kind) {
    case SyntheticKind::PreferentialAttachment:
        edges = preferential_attachment(spec.n, spec.m_or_k, rng);
        break;
    case SyntheticKind::PlantedCliques:
        edges = planted_cliques(spec.n, spec.m_or_k, spec.inter_edges_per_pair, rng, out.ground_truth);
        break;
    case SyntheticKind::Random:
        edges = random_graph(spec.n, spec.m_or_k, rng);
        break;
    }
    if (spec.stream_size > edges.size())
        throw ParameterError("stream longer than the generated edge list");
    const auto split = edges.end() - std::ptrdiff_t(spec.stream_size);
    out.base.assign(edges.begin(), split);
    out.stream.assign(split, edges.end());
    return out;
}

void write_synthetic(const SyntheticGraph &graph, const std::filesystem::path &dir, const std::string &prefix) {
    std::filesystem::create_directories(dir);
    auto open = [&](const std::string &suffix) {
        std::ofstream out(dir / (prefix + suffix));
        if (!out)
            throw IngestError("cannot write " + (dir / (prefix + suffix)).string());
        return out;
    };
    {
        auto out = open("_base.csv");
        write_edge_events(out, graph.base);
    }
    {
        auto out = open("_stream.csv");
        write_edge_events(out, graph.stream);
    }
    if (!graph.ground_truth.empty()) {
        auto out = open("_truth.txt");
        write_snapshot(out, graph.ground_truth);
    }
}

Graph build_graph(const std::vector<EdgeEvent> &edges) {
    Graph g;
    for (const auto &e : edges)
        g.add_edge(e.source, e.target);
    return g;
}

} // namespace demon
