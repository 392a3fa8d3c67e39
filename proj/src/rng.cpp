#include "aoisched/rng.hpp"

#include <cmath>

namespace aoisched {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream) {
    // Two mixing rounds decorrelate (seed, stream) lattices; mt19937_64 is
    // bit-identical across conforming standard libraries.
    std::uint64_t derived = splitmix64(splitmix64(seed) ^ splitmix64(stream * 0xA24BAED4963EE407ULL + 1));
    return std::mt19937_64(derived);
}

double uniform01(std::mt19937_64& gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

double exponential(std::mt19937_64& gen, double rate) {
    // Inverse CDF; u < 1 strictly, so the log argument never reaches 0.
    return -std::log1p(-uniform01(gen)) / rate;
}

std::vector<double> sample_poisson(std::uint64_t seed, std::uint64_t stream, double T) {
    std::mt19937_64 gen = make_stream(seed, stream);
    std::vector<double> arrivals;
    arrivals.reserve(static_cast<std::size_t>(T) + 16);
    double t = exponential(gen);
    while (t < T) {
        arrivals.push_back(t);
        t += exponential(gen);
    }
    return arrivals;
}

} // namespace aoisched
