#pragma once

#include <cstdint>
#include <string_view>

namespace codeint {

// Splittable counter-mode generator built on the splitmix64 finalizer.
// Every random bit in the project is a pure function of (seed, counter),
// so runs are reproducible across platforms and the same expansion can be
// evaluated lazily or in bulk.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // The value at absolute position `counter` of the stream for `seed`.
    static std::uint64_t at(std::uint64_t seed, std::uint64_t counter) {
        return mix(seed + (counter + 1) * 0x9e3779b97f4a7c15ULL);
    }

    std::uint64_t next() {
        state += 0x9e3779b97f4a7c15ULL;
        return mix(state);
    }

    // Uniform in [0, 1) with 53 random bits.
    double next_double() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    // Uniform in [0, bound). Rejection keeps the draw unbiased.
    std::uint64_t next_below(std::uint64_t bound) {
        if (bound <= 1) return 0;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t v = next();
        while (v >= limit) v = next();
        return v % bound;
    }

    bool next_bernoulli(double p) { return next_double() < p; }
};

// Derives an independent sub-stream seed for a named purpose. Tags keep
// experiment stages decoupled: inserting draws in one stage does not shift
// the randomness of another.
inline std::uint64_t derive_seed(std::uint64_t seed, std::string_view tag) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : tag) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return SplitMix64::mix(seed ^ h);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::string_view tag,
                                 std::uint64_t index) {
    return SplitMix64::mix(derive_seed(seed, tag) + (index + 1) * 0x9e3779b97f4a7c15ULL);
}

}  // namespace codeint
