#pragma once

#include <cstdint>
#include <random>

namespace cevi {

/// SplitMix64 finalizer.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seed of the stream owned by one replicate: depends on (seed, index) only.
///
///   stream_seed = splitmix64(splitmix64(seed) ^ splitmix64(index + 0x5851f42d4c957f2d))
///
/// The mix is part of the reproducibility contract of simulation outputs;
/// changing it changes every results file.
constexpr std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) {
    return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x5851f42d4c957f2dULL));
}

/// Uniform variates on the open interval (0, 1) from a 64-bit Mersenne
/// Twister. The conversion is explicit so that streams are bit-identical
/// across standard library implementations.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    static RandomStream for_replicate(std::uint64_t seed, std::uint64_t index) {
        return RandomStream(stream_seed(seed, index));
    }

    // (top 53 bits + 1/2) * 2^-53
    double uniform() {
        const std::uint64_t bits = engine_() >> 11;
        return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
    }

    std::uint64_t next_u64() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

}  // namespace cevi
