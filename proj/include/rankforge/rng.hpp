#pragma once

/// Seeded randomness with platform-independent output. std::uniform_int_distribution is
/// implementation-defined, so bounded draws use rejection sampling on raw mt19937_64 output.

#include <cstdint>
#include <random>

#include "rankforge/matrix.hpp"

namespace rankforge {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Seed for sub-stream i of a master seed.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t i) { return splitmix64(seed ^ splitmix64(i)); }

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }

    /// Uniform in [0, bound).
    std::uint64_t below(std::uint64_t bound) {
        detail::require(bound > 0, "rng: empty range");
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x;
        do x = eng_();
        while (x >= limit);
        return x % bound;
    }

    FMatrix matrix(const FieldPtr& f, std::size_t rows, std::size_t cols) {
        FMatrix m(f, rows, cols);
        for (auto& e : m.data()) e = static_cast<Elem>(below(f->order()));
        return m;
    }

private:
    std::mt19937_64 eng_;
};

} // namespace rankforge
