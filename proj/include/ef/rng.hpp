#pragma once

#include <cmath>
#include <cstdint>

namespace ef {

// splitmix64. Tiny, fast, and bitwise-identical on every platform, unlike the
// std:: distributions (whose output is implementation-defined). Every random
// draw in the library goes through this so reruns are reproducible anywhere.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1) with 53 random bits.
    double uniform() { return double(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    bool coin() { return (next() >> 63) != 0; }

    // Unbiased draw in [0, n) via rejection.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = ~std::uint64_t{0} - ~std::uint64_t{0} % n;
        std::uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return v % n;
    }

    // Standard normal via Box-Muller; 1-u keeps the log argument in (0, 1].
    double gaussian() {
        const double u1 = 1.0 - uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

private:
    std::uint64_t state_;
};

// Stable per-index stream seed. Parallel schedulers hand each work item
// derive_seed(base, index), so scheduling order can never change results.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
    SplitMix64 g(base ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
    return g.next();
}

} // namespace ef
