#pragma once

// Per-trial random streams. Every (seed, trial, stream) triple maps to an
// independent std::mt19937_64 seeded through a SplitMix64 hash, so trials
// can run in any order or on any thread and still draw identical numbers.

#include <cstdint>
#include <random>

namespace sos {

enum class Stream : std::uint64_t { Environment = 1, Exploration = 2 };

std::uint64_t splitmix64(std::uint64_t x);

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t trial, Stream stream);

class RandomStream {
public:
    RandomStream(std::uint64_t seed, std::uint64_t trial, Stream stream)
        : engine_(derive_seed(seed, trial, stream)) {}

    /// Uniform double in [0,1) from the top 53 bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform() < p; }

private:
    std::mt19937_64 engine_;
};

}  // namespace sos
