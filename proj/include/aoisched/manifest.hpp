#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace aoisched {

// Machine-readable record of one CLI run. The config hash covers only the
// run's semantic inputs (command, flags, seeds), never wall-clock data, so
// it is stable across platforms and reruns.
struct RunManifest {
    std::string command;               // reconstructed command line
    std::string config_hash;           // 16 hex digits, FNV-1a over the config
    std::string version;               // artifact version
    std::vector<std::uint64_t> seeds;
    std::vector<std::string> outputs;  // files written by the run
    double wall_clock_seconds = 0.0;
};

std::uint64_t fnv1a64(const std::string& bytes);

std::string manifest_json(const RunManifest& m);
void write_manifest(const RunManifest& m, const std::string& path);

inline constexpr const char* kArtifactVersion = "0.1.0";

} // namespace aoisched
