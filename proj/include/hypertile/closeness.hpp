#pragma once

#include <optional>
#include <thread>
#include <vector>

#include "hypertile/factor.hpp"
#include "hypertile/rational.hpp"

namespace hypertile {

inline BigInt ceil_rational(const Rational& q) {
    BigInt num = numerator(q), den = denominator(q);
    BigInt floor_val = num / den;
    if (num % den != 0 && num > 0) floor_val += 1;
    return floor_val;
}

// Number of (it-1)-sets S avoiding {x,y} such that both H[S u x] and
// H[S u y] have perfect F-tilings. Symmetric in x and y by definition.
inline long long closeness_count(FactorCache& cache, int x, int y, int i,
                                 const Caps& caps = {}) {
    const Hypergraph& h = cache.host();
    const int t = cache.pattern().size();
    if (x == y) throw precondition_error("closeness needs x != y");
    if (x < 0 || x >= h.n() || y < 0 || y >= h.n())
        throw precondition_error("vertex out of range");
    if (i < 1) throw precondition_error("iteration level must be >= 1");
    const int set_size = i * t - 1;
    if (set_size > h.n() - 2)
        throw precondition_error("i*t-1 = " + std::to_string(set_size) + " exceeds n-2");
    if (i * t > caps.oracle_n)
        throw cap_error("inner factor checks on " + std::to_string(i * t) +
                        " vertices exceed oracle cap");
    long long count = 0;
    VertexSet rest = h.vertices().without(x).without(y);
    for_each_subset(rest, set_size, [&](VertexSet s) {
        if (cache.has_factor(s.with(x)) && cache.has_factor(s.with(y))) ++count;
    });
    return count;
}

inline long long closeness_count(const Hypergraph& h, const Pattern& f, int x, int y, int i,
                                 const Caps& caps = {}) {
    FactorCache cache(h, f);
    return closeness_count(cache, x, y, i, caps);
}

// A certified pair-closeness witness: both H[S u x] and H[S u y] tile.
struct ClosenessWitness {
    int x = 0;
    int y = 0;
    int level = 1; // iteration level; |S| = level*t - 1
    VertexSet s;
};

inline bool witness_valid(FactorCache& cache, const ClosenessWitness& w) {
    const int t = cache.pattern().size();
    if (w.x == w.y || w.s.contains(w.x) || w.s.contains(w.y)) return false;
    if (w.s.size() != w.level * t - 1) return false;
    return cache.has_factor(w.s.with(w.x)) && cache.has_factor(w.s.with(w.y));
}

// Composition through a shared vertex: witnesses (x,z) at level i1 and (y,z)
// at level i2 combine to S = S_x u S_y u {z} for (x,y) at level i1+i2.
inline ClosenessWitness compose_witnesses(FactorCache& cache, const ClosenessWitness& wx,
                                          const ClosenessWitness& wy) {
    if (wx.y != wy.y) throw precondition_error("witnesses must share their second vertex");
    const int x = wx.x, y = wy.x, z = wx.y;
    if (x == y || x == z || y == z) throw precondition_error("x, y, z must be distinct");
    if (wx.s.intersects(wy.s)) throw precondition_error("witness sets overlap");
    VertexSet trio{x, y, z};
    if (wx.s.intersects(trio) || wy.s.intersects(trio))
        throw precondition_error("witness sets touch {x,y,z}");
    ClosenessWitness out{x, y, wx.level + wy.level, wx.s | wy.s | VertexSet::single(z)};
    if (!witness_valid(cache, out))
        throw precondition_error("composed witness failed re-verification");
    return out;
}

// x ~ y iff closeness_count(x,y,i) >= tau. Reflexivity excluded.
struct ClosenessGraph {
    int level = 1;
    long long tau = 1;
    int n = 0;
    std::vector<VertexSet> adjacency;

    bool adjacent(int x, int y) const { return adjacency[static_cast<std::size_t>(x)].contains(y); }
};

inline ClosenessGraph closeness_graph(const Hypergraph& h, const Pattern& f, int i, long long tau,
                                      const Caps& caps = {}, int threads = 1) {
    if (tau < 1) throw precondition_error("tau must be >= 1");
    ClosenessGraph g;
    g.level = i;
    g.tau = tau;
    g.n = h.n();
    g.adjacency.assign(static_cast<std::size_t>(h.n()), VertexSet{});

    std::vector<std::pair<int, int>> pairs;
    for (int x = 0; x < h.n(); ++x)
        for (int y = x + 1; y < h.n(); ++y) pairs.emplace_back(x, y);

    std::vector<char> close(pairs.size(), 0);
    auto run_range = [&](std::size_t begin, std::size_t end) {
        FactorCache cache(h, f);
        for (std::size_t p = begin; p < end; ++p)
            close[p] = closeness_count(cache, pairs[p].first, pairs[p].second, i, caps) >= tau;
    };

    threads = std::max(1, std::min<int>(threads, static_cast<int>(pairs.size())));
    if (threads == 1) {
        run_range(0, pairs.size());
    } else {
        f.automorphisms(); // materialise shared lazy state before forking
        std::vector<std::thread> pool;
        const std::size_t chunk = (pairs.size() + static_cast<std::size_t>(threads) - 1) /
                                  static_cast<std::size_t>(threads);
        for (int w = 0; w < threads; ++w) {
            std::size_t begin = static_cast<std::size_t>(w) * chunk;
            std::size_t end = std::min(pairs.size(), begin + chunk);
            if (begin >= end) break;
            pool.emplace_back(run_range, begin, end);
        }
        for (auto& th : pool) th.join();
    }

    for (std::size_t p = 0; p < pairs.size(); ++p) {
        if (!close[p]) continue;
        auto [x, y] = pairs[p];
        g.adjacency[static_cast<std::size_t>(x)] |= VertexSet::single(y);
        g.adjacency[static_cast<std::size_t>(y)] |= VertexSet::single(x);
    }
    return g;
}

// Partition of V by the closeness relation: maximal cliques when the graph is
// a disjoint union of cliques, otherwise connected components with a flag.
struct ClosedPartition {
    std::vector<VertexSet> classes;
    bool all_cliques = true; // false: some class is a non-clique component
};

inline ClosedPartition closed_partition(const ClosenessGraph& g) {
    ClosedPartition out;
    VertexSet unseen = VertexSet::full(g.n);
    while (!unseen.empty()) {
        int start = unseen.min();
        VertexSet comp = VertexSet::single(start);
        VertexSet frontier = comp;
        while (!frontier.empty()) {
            VertexSet next;
            for (int v : frontier) next |= g.adjacency[static_cast<std::size_t>(v)];
            next = next - comp;
            comp |= next;
            frontier = next;
        }
        for (int v : comp)
            if ((g.adjacency[static_cast<std::size_t>(v)] & comp) != comp.without(v))
                out.all_cliques = false;
        out.classes.push_back(comp);
        unseen = unseen - comp;
    }
    return out;
}

// Diagnostic counter for the partition-gluing step: triples (x, y, T) with
// x in X, y outside X, and both T u x and T u y spanning complete t-cliques.
// Brute force; intended for desk-scale hosts.
inline long long good_triples(const Hypergraph& h, int t, VertexSet x_side) {
    if (t <= h.k()) throw precondition_error("good triples need t > k");
    if (!x_side.subset_of(h.vertices())) throw precondition_error("X not inside V");
    long long count = 0;
    VertexSet y_side = h.vertices() - x_side;
    for (int x : x_side)
        for (int y : y_side) {
            for_each_subset(h.vertices().without(x).without(y), t - 1, [&](VertexSet s) {
                if (h.spans_clique(s.with(x)) && h.spans_clique(s.with(y))) ++count;
            });
        }
    return count;
}

// alpha-good machinery: S is alpha-good for (x,y) when deg(S) >= ceil(alpha*n)
// and both S u x and S u y are edges; the pair is alpha-good when at least
// ceil(alpha*C(n,k-1)) sets qualify.
struct AlphaGoodResult {
    bool good = false;
    long long good_set_count = 0;
    long long required = 0;
};

inline AlphaGoodResult alpha_good_pair(const Hypergraph& h, int x, int y, const Rational& alpha) {
    if (alpha <= 0 || alpha > 1) throw precondition_error("alpha must be in (0,1]");
    if (x == y || x < 0 || y < 0 || x >= h.n() || y >= h.n())
        throw precondition_error("need two distinct in-range vertices");
    const BigInt deg_threshold = ceil_rational(alpha * h.n());
    long long count = 0;
    for_each_subset(h.vertices().without(x).without(y), h.k() - 1, [&](VertexSet s) {
        if (!h.is_edge(s.with(x)) || !h.is_edge(s.with(y))) return;
        if (BigInt(h.degree_of_set(s)) >= deg_threshold) ++count;
    });
    AlphaGoodResult r;
    r.good_set_count = count;
    BigInt required = ceil_rational(alpha * Rational(binomial_exact(h.n(), h.k() - 1)));
    r.required = required.convert_to<long long>();
    r.good = BigInt(count) >= required;
    return r;
}

} // namespace hypertile
