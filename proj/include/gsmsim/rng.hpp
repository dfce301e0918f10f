#pragma once

#include <cstdint>
#include <random>

namespace gsmsim {

// Deterministic RNG used everywhere. mt19937_64 is fully specified by the
// standard and the double conversion below avoids the implementation-defined
// std::uniform_real_distribution, so runs are bit-identical across platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1), 53 bits of resolution.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

private:
    std::mt19937_64 engine_;
};

// One splitmix64 step; used to derive independent stream seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Derive the seed for a named sub-stream (deployment, election, ...) so that
// protocols sharing a seed see identical deployments but independent draws.
inline std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t tag) {
    return splitmix64(splitmix64(seed) ^ tag);
}

} // namespace gsmsim
