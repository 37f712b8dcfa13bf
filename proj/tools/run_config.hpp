#pragma once

// Layered settings for the command-line tool: defaults, then a `key = value` file,
// then ONEPW_<KEY> environment variables, then flags. Later layers win.

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "onepw/error.hpp"
#include "onepw/search.hpp"

namespace onepw::cli {

struct RunConfig {
    SearchBudget budget;
    std::string cache = "onepw-cache.tsv";
    std::string witness_dir = ".";
    int verbosity = 0;
    std::map<std::string, std::string> origin;  // key -> default | file | env | flag

    static const std::vector<std::string>& keys() {
        static const std::vector<std::string> k{"max_crossings", "max_nodes", "time_limit",  "symmetry", "screens",
                                                "jobs",          "cache",     "witness_dir", "verbosity"};
        return k;
    }

    RunConfig() {
        for (const auto& k : keys()) origin[k] = "default";
    }

    void set(const std::string& key, const std::string& value, const std::string& source) {
        auto bad = [&] { return ArgumentError(source + ": bad value '" + value + "' for " + key); };
        auto integer = [&]() -> long long {
            try {
                size_t used = 0;
                long long v = std::stoll(value, &used);
                if (used != value.size()) throw bad();
                return v;
            } catch (const std::logic_error&) {
                throw bad();
            }
        };
        if (key == "max_crossings") {
            long long v = integer();
            if (v <= 0 || v > 1'000'000) throw bad();
            budget.max_crossings = static_cast<int>(v);
        } else if (key == "max_nodes") {
            budget.max_nodes = integer();
            if (budget.max_nodes <= 0) throw bad();
        } else if (key == "time_limit") {
            try {
                size_t used = 0;
                budget.time_limit = std::stod(value, &used);
                if (used != value.size()) throw bad();
            } catch (const std::logic_error&) {
                throw bad();
            }
            if (!(budget.time_limit > 0)) throw bad();
        } else if (key == "symmetry") {
            if (value == "on" || value == "true" || value == "1") budget.use_symmetry = true;
            else if (value == "off" || value == "false" || value == "0") budget.use_symmetry = false;
            else throw bad();
        } else if (key == "screens") {
            if (value == "on" || value == "true" || value == "1") budget.use_screens = true;
            else if (value == "off" || value == "false" || value == "0") budget.use_screens = false;
            else throw bad();
        } else if (key == "jobs") {
            long long v = integer();
            if (v <= 0 || v > 1024) throw bad();
            budget.jobs = static_cast<int>(v);
        } else if (key == "cache") {
            cache = value;
        } else if (key == "witness_dir") {
            witness_dir = value;
        } else if (key == "verbosity") {
            verbosity = static_cast<int>(integer());
        } else {
            throw ArgumentError(source + ": unknown setting '" + key + "'");
        }
        origin[key] = source.substr(0, source.find(':'));
    }

    void load_file(const std::string& path, bool required) {
        std::ifstream in(path);
        if (!in) {
            if (required) throw ArgumentError("cannot read config file " + path);
            return;
        }
        int line_no = 0;
        for (std::string line; std::getline(in, line);) {
            ++line_no;
            if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
            auto trim = [](std::string s) {
                const char* ws = " \t\r";
                s.erase(0, s.find_first_not_of(ws));
                s.erase(s.find_last_not_of(ws) + 1);
                return s;
            };
            line = trim(line);
            if (line.empty()) continue;
            auto eq = line.find('=');
            if (eq == std::string::npos) throw ParseError(line_no, path + ": expected 'key = value'");
            set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)), "file:" + path + ":" + std::to_string(line_no));
        }
    }

    void load_env() {
        for (const auto& k : keys()) {
            std::string name = "ONEPW_";
            for (char c : k) name += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
            if (const char* v = std::getenv(name.c_str())) set(k, v, "env:" + name);
        }
    }

    std::string value(const std::string& key) const {
        if (key == "max_crossings") return std::to_string(budget.max_crossings);
        if (key == "max_nodes") return std::to_string(budget.max_nodes);
        if (key == "time_limit") {
            std::ostringstream ss;
            ss << budget.time_limit;
            return ss.str();
        }
        if (key == "symmetry") return budget.use_symmetry ? "on" : "off";
        if (key == "screens") return budget.use_screens ? "on" : "off";
        if (key == "jobs") return std::to_string(budget.jobs);
        if (key == "cache") return cache;
        if (key == "witness_dir") return witness_dir;
        return std::to_string(verbosity);
    }
};

}  // namespace onepw::cli
