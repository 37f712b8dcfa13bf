#pragma once

// Append-only record file of settled search results. One tab-separated record per line:
//   key  question  verdict  witness-path  budget  timestamp
// The key is the canonical key of the coloured graph, so isomorphic queries share a
// record; the witness then draws an isomorphic copy. The latest matching record wins.

#include <ctime>
#include <filesystem>
#include <fstream>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "onepw/error.hpp"
#include "onepw/graph.hpp"
#include "onepw/symmetry.hpp"

namespace onepw {

struct CacheRecord {
    std::string key;
    std::string question;  // 1planar | mincross | disc | extremal
    std::string verdict;
    std::string witness;
    std::string budget;
    std::string timestamp;
};

inline std::string cache_key(const SimpleGraph& g, const Bipartition* parts = nullptr, std::span<const Vertex> rim = {}) {
    auto colour = search_colouring(g.vertex_count(), parts, rim);
    std::string key = canonical_key(g, colour);
    if (!key.empty()) return key;
    std::ostringstream ss;
    ss << "raw:n" << g.vertex_count() << ":c";
    for (size_t i = 0; i < colour.size(); ++i) ss << (i ? "," : "") << colour[i];
    ss << ":e";
    for (const auto& [a, b] : g.edges()) ss << ' ' << a << '-' << b;
    return ss.str();
}

inline std::string utc_timestamp() {
    std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

class ResultCache {
public:
    explicit ResultCache(std::filesystem::path path) : path_(std::move(path)) {}

    const std::filesystem::path& path() const { return path_; }

    /// Latest record for (key, question); malformed lines are ignored.
    std::optional<CacheRecord> find(const std::string& key, const std::string& question) const {
        std::ifstream in(path_);
        std::optional<CacheRecord> hit;
        for (std::string line; std::getline(in, line);) {
            auto rec = parse(line);
            if (rec && rec->key == key && rec->question == question) hit = std::move(rec);
        }
        return hit;
    }

    void append(const CacheRecord& r) const {
        for (const std::string* f : {&r.key, &r.question, &r.verdict, &r.witness, &r.budget, &r.timestamp})
            if (f->find_first_of("\t\n") != std::string::npos) throw ArgumentError("cache field contains a tab or newline");
        if (path_.has_parent_path()) std::filesystem::create_directories(path_.parent_path());
        std::ofstream out(path_, std::ios::app);
        if (!out) throw std::runtime_error("cannot open cache file " + path_.string());
        out << r.key << '\t' << r.question << '\t' << r.verdict << '\t' << r.witness << '\t' << r.budget << '\t'
            << r.timestamp << '\n';
    }

    static std::optional<CacheRecord> parse(const std::string& line) {
        std::vector<std::string> f;
        std::string cur;
        std::istringstream ss(line);
        while (std::getline(ss, cur, '\t')) f.push_back(cur);
        if (f.size() != 6) return std::nullopt;
        return CacheRecord{f[0], f[1], f[2], f[3], f[4], f[5]};
    }

private:
    std::filesystem::path path_;
};

}  // namespace onepw
