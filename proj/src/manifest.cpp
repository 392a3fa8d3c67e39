#include "aoisched/manifest.hpp"

#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "aoisched/error.hpp"
#include "aoisched/json_io.hpp"

namespace aoisched {

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string manifest_json(const RunManifest& m) {
    nlohmann::json j{{"command", m.command},
                     {"config_hash", m.config_hash},
                     {"version", m.version},
                     {"seeds", m.seeds},
                     {"outputs", m.outputs},
                     {"wall_clock_seconds", round12(m.wall_clock_seconds)}};
    return j.dump(2) + "\n";
}

void write_manifest(const RunManifest& m, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) raise(ErrorCode::InvalidConfig, "cannot write manifest \"" + path + "\"");
    out << manifest_json(m);
}

} // namespace aoisched
