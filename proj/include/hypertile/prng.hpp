#pragma once

#include <cstdint>
#include <vector>

namespace hypertile {

// splitmix64: 64-bit state, identical sequence on every platform.
// Used for every seeded operation so runs are bit-reproducible.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform value in [0, bound) by rejection; bound > 0.
    std::uint64_t next_below(std::uint64_t bound) {
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
        std::uint64_t v = next();
        while (v >= limit) v = next();
        return v % bound;
    }

    // Uniform double in [0, 1).
    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

// Fisher-Yates over an index range, driven by splitmix64.
template <typename T>
void seeded_shuffle(std::vector<T>& items, SplitMix64& rng) {
    for (std::size_t i = items.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(rng.next_below(i));
        std::swap(items[i - 1], items[j]);
    }
}

// Fixed splitting of a master seed into per-run child seeds.
inline std::vector<std::uint64_t> derive_seeds(std::uint64_t master, std::size_t count) {
    SplitMix64 rng(master);
    std::vector<std::uint64_t> seeds(count);
    for (auto& s : seeds) s = rng.next();
    return seeds;
}

} // namespace hypertile
