#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace tts::rng {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Hash-combine a seed with up to three stream identifiers. Used everywhere a
// substream must be derived from (seed, index) so that parallel and serial
// evaluation agree bit-for-bit.
inline std::uint64_t mix(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0,
                         std::uint64_t c = 0) {
    std::uint64_t s = seed;
    std::uint64_t h = splitmix64(s);
    s ^= a + 0x9E3779B97F4A7C15ULL;
    h ^= splitmix64(s);
    s ^= b + 0xC2B2AE3D27D4EB4FULL;
    h ^= splitmix64(s);
    s ^= c + 0x165667B19E3779F9ULL;
    h ^= splitmix64(s);
    return h;
}

// Deterministic uniform stream. The engine (mt19937_64) and every derived
// draw below are fully pinned by the standard, so results are portable.
class Stream {
public:
    explicit Stream(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform double in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform01() < p; }

    // Unbiased integer in [0, n) via rejection on the low bits.
    std::uint64_t uniform_below(std::uint64_t n) {
        if (n <= 1) return 0;
        std::uint64_t mask = ~0ULL >> __builtin_clzll((n - 1) | 1);
        std::uint64_t v;
        do {
            v = next_u64() & mask;
        } while (v >= n);
        return v;
    }

    template <class T>
    void shuffle(std::vector<T>& values) {
        for (std::size_t i = values.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(uniform_below(i));
            std::swap(values[i - 1], values[j]);
        }
    }

private:
    std::mt19937_64 engine_;
};

inline Stream derive(std::uint64_t seed, std::uint64_t stream_id, std::uint64_t substream = 0) {
    return Stream(mix(seed, stream_id, substream));
}

} // namespace tts::rng
