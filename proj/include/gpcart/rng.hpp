#pragma once

#include <cstdint>

namespace gpcart {

/// Counter-based 64-bit generator: the i-th output is the SplitMix64 finalizer
/// applied to seed + i * 0x9E3779B97F4A7C15 (i starting at 1). A run is fully
/// determined by its seed and the number of draws.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed) noexcept : seed_(seed) {}

    std::uint64_t next() noexcept
    {
        ++counter_;
        return mix(seed_ + counter_ * 0x9E3779B97F4A7C15ULL);
    }

    /// Uniform integer in [0, bound) by rejection; bound must be positive.
    std::uint64_t uniform(std::uint64_t bound) noexcept
    {
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
        for (;;) {
            const auto x = next();
            if (x < limit)
                return x % bound;
        }
    }

    std::uint64_t draws() const noexcept { return counter_; }

    static std::uint64_t mix(std::uint64_t z) noexcept
    {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
};

}  // namespace gpcart
