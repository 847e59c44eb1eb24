#include "modp/rng.hpp"

#include <cmath>

namespace modp {

namespace {

constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace

RngState::result_type RngState::operator()() {
    ++counter_;
    return mix(seed_ + counter_ * kGoldenGamma);
}

double RngState::uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

double RngState::uniform_open() {
    return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
}

double RngState::exponential() { return -std::log(uniform_open()); }

}  // namespace modp
