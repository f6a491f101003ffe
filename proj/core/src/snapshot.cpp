#include <demon/snapshot.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>

namespace demon {

void canonicalize(std::vector<ExternalCommunity> &communities) {
    for (auto &c : communities) {
        std::sort(c.begin(), c.end());
        c.erase(std::unique(c.begin(), c.end()), c.end());
    }
    std::sort(communities.begin(), communities.end(), [](const auto &a, const auto &b) {
        if (a.size() != b.size())
            return a.size() > b.size();
        return a < b;
    });
}

void write_snapshot(std::ostream &out, std::vector<ExternalCommunity> communities) {
    canonicalize(communities);
    for (const auto &c : communities) {
        for (std::size_t i = 0; i < c.size(); ++i)
            out << (i ? " " : "") << c[i];
        out << '\n';
    }
}

void save_snapshot(const std::filesystem::path &path, std::vector<ExternalCommunity> communities) {
    std::ofstream out(path);
    if (!out)
        throw IngestError("cannot write " + path.string());
    write_snapshot(out, std::move(communities));
}

std::vector<ExternalCommunity> read_snapshot(std::istream &in) {
    std::vector<ExternalCommunity> out;
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        ExternalCommunity community;
        std::string_view rest = line;
        while (!rest.empty()) {
            const auto start = rest.find_first_not_of(" \t\r");
            if (start == std::string_view::npos)
                break;
            rest.remove_prefix(start);
            const auto end = std::min(rest.find_first_of(" \t\r"), rest.size());
            VertexId v = 0;
            auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + end, v);
            if (ec != std::errc() || ptr != rest.data() + end)
                throw IngestError("malformed snapshot member '" + std::string(rest.substr(0, end)) + "'", number);
            community.push_back(v);
            rest.remove_prefix(end);
        }
        if (community.empty())
            throw IngestError("empty community", number);
        out.push_back(std::move(community));
    }
    return out;
}

std::vector<ExternalCommunity> load_snapshot(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in)
        throw IngestError("cannot open " + path.string());
    return read_snapshot(in);
}

} // namespace demon
