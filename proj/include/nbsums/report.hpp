#pragma once

// Run configuration and CSV/JSON emission.  Every output starts with header
// comments carrying the command, each parameter, the seed, the git revision
// and a hash of the canonical config string, so a result file identifies the
// run that produced it.  Floats print at 17 significant digits; identical
// configs produce byte-identical files.

#include "nbsums/common.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#ifndef NBSUMS_GIT_REV
#define NBSUMS_GIT_REV "unknown"
#endif

namespace nbsums::rep {

struct RunConfig {
    std::string command;
    std::vector<std::pair<std::string, std::string>> params;  // insertion order
    std::string format = "csv";
    uint64_t seed = 0;
    int threads = 0;

    void set(const std::string& key, const std::string& value) {
        for (auto& kv : params)
            if (kv.first == key) {
                kv.second = value;
                return;
            }
        params.emplace_back(key, value);
    }
    void set(const std::string& key, double value) { set(key, fmt17(value)); }
    void set(const std::string& key, int64_t value) { set(key, std::to_string(value)); }

    std::string canonical() const {
        std::ostringstream os;
        os << "command=" << command << ";format=" << format << ";seed=" << seed;
        for (const auto& [k, v] : params) os << ";" << k << "=" << v;
        return os.str();
    }
    uint64_t hash() const { return fnv1a64(canonical()); }
};

inline void write_csv_header(std::ostream& os, const RunConfig& cfg,
                             const std::vector<std::string>& columns) {
    os << "# command=" << cfg.command << "\n";
    os << "# git_rev=" << NBSUMS_GIT_REV << "\n";
    os << "# seed=" << cfg.seed << "\n";
    for (const auto& [k, v] : cfg.params) os << "# " << k << "=" << v << "\n";
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(cfg.hash()));
    os << "# config_hash=" << buf << "\n";
    for (size_t i = 0; i < columns.size(); ++i)
        os << columns[i] << (i + 1 < columns.size() ? "," : "\n");
}

inline void write_csv_row(std::ostream& os, const std::vector<std::string>& cells) {
    for (size_t i = 0; i < cells.size(); ++i)
        os << cells[i] << (i + 1 < cells.size() ? "," : "\n");
}

inline nlohmann::json config_json(const RunConfig& cfg) {
    nlohmann::json j;
    j["command"] = cfg.command;
    j["git_rev"] = NBSUMS_GIT_REV;
    j["seed"] = cfg.seed;
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(cfg.hash()));
    j["config_hash"] = buf;
    for (const auto& [k, v] : cfg.params) j["params"][k] = v;
    return j;
}

}  // namespace nbsums::rep
