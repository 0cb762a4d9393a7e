#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <type_traits>
#include <vector>

#include "hypertile/errors.hpp"

namespace hypertile {

// Subset of {0,...,63} backed by a machine word. All hosts in this toolkit
// live at desk scale (n <= 64), so intersection-heavy oracles stay cheap.
class VertexSet {
public:
    static constexpr int max_vertices = 64;

    constexpr VertexSet() : bits_(0) {}

    static constexpr VertexSet from_mask(std::uint64_t mask) { return VertexSet(mask); }

    static constexpr VertexSet single(int v) { return VertexSet(std::uint64_t{1} << v); }

    // {0, ..., n-1}
    static constexpr VertexSet full(int n) {
        return VertexSet(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
    }

    VertexSet(std::initializer_list<int> vs) : bits_(0) {
        for (int v : vs) bits_ |= std::uint64_t{1} << v;
    }

    static VertexSet of(const std::vector<int>& vs) {
        VertexSet s;
        for (int v : vs) s.bits_ |= std::uint64_t{1} << v;
        return s;
    }

    constexpr std::uint64_t mask() const { return bits_; }
    constexpr int size() const { return std::popcount(bits_); }
    constexpr bool empty() const { return bits_ == 0; }
    constexpr bool contains(int v) const { return (bits_ >> v) & 1; }

    constexpr int min() const { return std::countr_zero(bits_); }

    constexpr VertexSet with(int v) const { return VertexSet(bits_ | (std::uint64_t{1} << v)); }
    constexpr VertexSet without(int v) const { return VertexSet(bits_ & ~(std::uint64_t{1} << v)); }

    constexpr VertexSet operator|(VertexSet o) const { return VertexSet(bits_ | o.bits_); }
    constexpr VertexSet operator&(VertexSet o) const { return VertexSet(bits_ & o.bits_); }
    constexpr VertexSet operator-(VertexSet o) const { return VertexSet(bits_ & ~o.bits_); }
    VertexSet& operator|=(VertexSet o) { bits_ |= o.bits_; return *this; }
    VertexSet& operator&=(VertexSet o) { bits_ &= o.bits_; return *this; }

    constexpr bool operator==(const VertexSet&) const = default;

    constexpr bool subset_of(VertexSet o) const { return (bits_ & ~o.bits_) == 0; }
    constexpr bool intersects(VertexSet o) const { return (bits_ & o.bits_) != 0; }
    constexpr bool disjoint_from(VertexSet o) const { return (bits_ & o.bits_) == 0; }

    // Ascending member iteration.
    class iterator {
    public:
        explicit iterator(std::uint64_t rest) : rest_(rest) {}
        int operator*() const { return std::countr_zero(rest_); }
        iterator& operator++() { rest_ &= rest_ - 1; return *this; }
        bool operator!=(const iterator& o) const { return rest_ != o.rest_; }

    private:
        std::uint64_t rest_;
    };

    iterator begin() const { return iterator(bits_); }
    iterator end() const { return iterator(0); }

    std::vector<int> to_vector() const {
        std::vector<int> out;
        out.reserve(static_cast<std::size_t>(size()));
        for (int v : *this) out.push_back(v);
        return out;
    }

private:
    explicit constexpr VertexSet(std::uint64_t bits) : bits_(bits) {}

    std::uint64_t bits_;
};

// Visits every r-subset of `universe` in lexicographic order of its ascending
// vertex list. The callback may return void, or bool (false stops early).
template <typename Fn>
bool for_each_subset(VertexSet universe, int r, Fn&& fn) {
    std::vector<int> elems = universe.to_vector();
    const int n = static_cast<int>(elems.size());
    if (r < 0 || r > n) return true;
    std::vector<int> idx(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i) idx[static_cast<std::size_t>(i)] = i;

    auto emit = [&]() -> bool {
        VertexSet s;
        for (int i : idx) s |= VertexSet::single(elems[static_cast<std::size_t>(i)]);
        if constexpr (std::is_void_v<decltype(fn(s))>) {
            fn(s);
            return true;
        } else {
            return fn(s);
        }
    };

    while (true) {
        if (!emit()) return false;
        int i = r - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - r + i) --i;
        if (i < 0) return true;
        ++idx[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < r; ++j)
            idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
}

inline std::uint64_t binomial_u64(int n, int r) {
    if (r < 0 || n < 0 || r > n) return 0;
    if (r > n - r) r = n - r;
    std::uint64_t result = 1;
    for (int i = 1; i <= r; ++i) {
        result = result * static_cast<std::uint64_t>(n - r + i) / static_cast<std::uint64_t>(i);
    }
    return result;
}

} // namespace hypertile
