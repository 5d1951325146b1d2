#include "goalg/rng.hpp"

#include <cmath>
#include <numbers>

namespace goalg {

std::uint64_t CounterRng::at(std::uint64_t k) const {
    std::uint64_t z = seed_ + (k + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double CounterRng::uniform() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double CounterRng::normal() {
    double u1 = uniform();
    double u2 = uniform();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double CounterRng::dyadic(double lo, double hi, int bits) {
    double scale = std::ldexp(1.0, bits);
    double steps = std::floor((hi - lo) * scale);
    double k = std::floor(uniform() * steps);
    return lo + k / scale;
}

}  // namespace goalg
