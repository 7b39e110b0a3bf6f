#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "sep/rng.hpp"
#include "sep/version.hpp"

namespace sep {

// Reproducibility record emitted with every CLI run. Deliberately contains
// no timestamps, hostnames or other machine state, so rerunning the same
// command produces a byte-identical manifest.

inline std::uint64_t fnv1a(const std::string& text) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : text) {
        h ^= static_cast<std::uint64_t>(c);
        h *= 1099511628211ULL;
    }
    return h;
}

inline std::string hex64(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[v & 0xF];
        v >>= 4;
    }
    return out;
}

struct RunManifest {
    std::string command;                // subcommand name
    std::vector<std::string> argv;      // full command line as invoked
    nlohmann::ordered_json parameters;  // resolved option values
    std::string weight_mode;            // "rational" or "log"; empty if not applicable
    bool uses_rng = false;
    std::uint64_t seed = 0;
    int replicas = 0;
    bool has_graph = false;
    std::uint64_t graph_hash = 0;       // FNV-1a of the graph file content
};

inline nlohmann::ordered_json manifest_json(const RunManifest& m) {
    nlohmann::ordered_json j;
    j["tool"] = "sepkit";
    j["version"] = SEP_VERSION;
    j["command"] = m.command;
    j["argv"] = m.argv;
    j["parameters"] = m.parameters;
    if (!m.weight_mode.empty()) j["weight_mode"] = m.weight_mode;
    if (m.uses_rng) {
        j["rng"]["algorithm"] = kRngAlgorithm;
        j["rng"]["seeding"] = kRngSeeding;
        j["rng"]["seed"] = m.seed;
        if (m.replicas > 0) j["rng"]["replicas"] = m.replicas;
    }
    if (m.has_graph) j["graph_content_fnv1a"] = hex64(m.graph_hash);
    return j;
}

inline std::string manifest_text(const RunManifest& m) { return manifest_json(m).dump(2) + "\n"; }

} // namespace sep
