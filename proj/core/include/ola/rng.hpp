#pragma once

#include <cstdint>
#include <random>

namespace ola {

// Seedable generator with a platform-independent output sequence.
//
// std::mt19937_64 and std::seed_seq are fully specified by the standard, so
// the raw 64-bit stream is identical everywhere. The standard distributions
// are not, which is why uniform01() and normal() are written out here.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed),
                          static_cast<std::uint32_t>(seed >> 32)};
        engine_.seed(seq);
    }

    // Independent child generator for a named purpose (learner coin flips,
    // evaluation draws, ...). Same (seed, stream) always gives the same child.
    [[nodiscard]] Rng split(std::uint64_t stream) const {
        return Rng(mix(seed_ ^ mix(stream + 0x9e3779b97f4a7c15ULL)));
    }

    std::uint64_t next_u64() { return engine_(); }

    // Uniform on [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Standard normal via Box-Muller; the second variate is discarded so that
    // the state advance per call is fixed.
    double normal();

    [[nodiscard]] std::uint64_t seed() const { return seed_; }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

}  // namespace ola
