#include <demon/edge_list.hpp>

#include <charconv>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

namespace demon {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::optional<VertexId> parse_id(std::string_view field) {
    field = trim(field);
    if (field.empty())
        return std::nullopt;
    VertexId value = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || ptr != field.data() + field.size())
        return std::nullopt;
    return value;
}

} // namespace

std::vector<EdgeEvent> parse_edge_events(std::istream &in, ParseMode mode, EdgeListStats &stats) {
    std::vector<EdgeEvent> events;
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        std::string_view text = trim(line);
        if (text.empty() || text.front() == '#')
            continue;
        ++stats.lines;

        const auto comma = text.find(',');
        std::optional<VertexId> src, dst;
        if (comma != std::string_view::npos) {
            src = parse_id(text.substr(0, comma));
            dst = parse_id(text.substr(comma + 1));
        }
        if (!src || !dst) {
            if (mode == ParseMode::Strict)
                throw IngestError("malformed edge line '" + std::string(text) + "'", number);
            ++stats.malformed;
            continue;
        }
        if (*src == *dst) {
            ++stats.self_loops;
            continue;
        }
        events.push_back({*src, *dst});
    }
    if (in.bad())
        throw IngestError("read failure");
    return events;
}

std::vector<EdgeEvent> load_edge_events(const std::filesystem::path &path, ParseMode mode,
                                        EdgeListStats &stats) {
    std::ifstream in(path);
    if (!in)
        throw IngestError("cannot open " + path.string());
    return parse_edge_events(in, mode, stats);
}

LoadedGraph read_edge_list(std::istream &in, ParseMode mode) {
    LoadedGraph result;
    for (const auto &e : parse_edge_events(in, mode, result.stats)) {
        if (!result.graph.add_edge(e.source, e.target))
            ++result.stats.duplicates;
    }
    return result;
}

LoadedGraph load_edge_list(const std::filesystem::path &path, ParseMode mode) {
    std::ifstream in(path);
    if (!in)
        throw IngestError("cannot open " + path.string());
    return read_edge_list(in, mode);
}

void write_canonical_edges(std::ostream &out, const Graph &g) {
    for (const auto &[a, b] : g.canonical_edges())
        out << a << ',' << b << '\n';
}

void write_edge_events(std::ostream &out, const std::vector<EdgeEvent> &events) {
    for (const auto &e : events)
        out << e.source << ',' << e.target << '\n';
}

} // namespace demon
