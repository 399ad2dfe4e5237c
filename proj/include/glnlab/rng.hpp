#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace glnlab {

// Seeded generator with a fully specified bounded draw. The standard
// distributions are implementation-defined, so they are not used anywhere.
class Rng {
public:
    static constexpr std::string_view kAlgorithm = "mt19937_64";
    static constexpr std::string_view kVersion = "bounded-rejection-v1";

    explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next() { return engine_(); }

    // Uniform on [0, bound). Rejects raw draws below 2^64 mod bound.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t r = engine_();
            if (r >= threshold) return r % bound;
        }
    }

    // True with probability num/den.
    bool bernoulli(std::uint64_t num, std::uint64_t den) { return below(den) < num; }

    // Uniform real in [0,1) with 53 bits.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

// Seed for shard `index` of a run seeded with `seed` (splitmix64 finalizer).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

}  // namespace glnlab
