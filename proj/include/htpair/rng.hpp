#pragma once

#include <cstdint>
#include <initializer_list>
#include <vector>

namespace htpair {

// SplitMix64. All randomness in the library flows through this generator so
// that results are reproducible bit-for-bit across platforms (std::shuffle
// and std::uniform_int_distribution are not portable).
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // uniform in [0, bound), bound >= 1; rejection sampling, no modulo bias
    std::uint64_t bounded(std::uint64_t bound) {
        std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            std::uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

    // uniform in [0,1)
    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(bounded(i));
            std::swap(v[i - 1], v[j]);
        }
    }
};

// Derives a child seed from a base seed and a path of indices, so independent
// pipeline stages never consume the same stream.
inline std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> path) {
    SplitMix64 g(base);
    std::uint64_t s = g.next();
    for (std::uint64_t p : path) {
        SplitMix64 h(s ^ (p + 0x9e3779b97f4a7c15ull));
        s = h.next();
    }
    return s;
}

}  // namespace htpair
