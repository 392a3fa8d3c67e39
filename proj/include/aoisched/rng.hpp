#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace aoisched {

// SplitMix64 mixing step; used only to derive independent stream seeds.
std::uint64_t splitmix64(std::uint64_t x);

// Split-stream generator contract: (seed, stream) pairs give statistically
// independent, platform-stable sequences. mt19937_64 is fully specified by
// the standard, and the derived seed decorrelates the streams.
std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream);

// Stream id for (replication, node); node 0 = source, 1 = relay.
inline std::uint64_t stream_id(std::uint64_t replication, std::uint64_t node) {
    return replication * 2 + node;
}

// Uniform in [0, 1) from the top 53 bits; avoids std::uniform_real_distribution,
// whose output is implementation-defined.
double uniform01(std::mt19937_64& gen);

// Inverse-CDF exponential with the given rate.
double exponential(std::mt19937_64& gen, double rate = 1.0);

// Unit-rate Poisson arrival times in [0, T), strictly increasing.
std::vector<double> sample_poisson(std::uint64_t seed, std::uint64_t stream, double T);

} // namespace aoisched
