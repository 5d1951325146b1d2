#pragma once

#include <cstdint>

namespace goalg {

// Counter-based generator: draw k of stream `seed` is splitmix64(seed + (k+1)*0x9E3779B97F4A7C15).
// Any language with 64-bit unsigned arithmetic reproduces the same sequence.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t at(std::uint64_t k) const;
    std::uint64_t next() { return at(counter_++); }

    // Uniform on [0, 1) with 53 random bits.
    double uniform();
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    // Standard normal, Box-Muller on two consecutive draws (cosine branch only).
    double normal();
    // Multiple of 2^-bits in [lo, hi); exact in binary floating point.
    double dyadic(double lo, double hi, int bits = 8);

    std::uint64_t counter() const { return counter_; }

private:
    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
};

}  // namespace goalg
