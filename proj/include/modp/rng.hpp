#pragma once

#include <cstdint>
#include <limits>

namespace modp {

// SplitMix64 (Steele, Lea, Flood 2014) used as a counter-based generator:
// draw i is mix(seed + (i + 1) * 0x9E3779B97F4A7C15), so the stream is a pure
// function of (seed, counter). Independent tasks use derive(index), whose seed
// is seed XOR index.
class RngState {
public:
    using result_type = std::uint64_t;

    explicit RngState(std::uint64_t seed = 0, std::uint64_t counter = 0)
        : seed_(seed), counter_(counter) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()();

    // Uniform on [0, 1) with 53 random bits.
    double uniform();
    // Uniform on (0, 1), never 0 or 1.
    double uniform_open();
    // Exp(1) by inversion.
    double exponential();

    RngState derive(std::uint64_t index) const { return RngState(seed_ ^ index); }

    std::uint64_t seed() const { return seed_; }
    std::uint64_t counter() const { return counter_; }

private:
    std::uint64_t seed_;
    std::uint64_t counter_;
};

}  // namespace modp
