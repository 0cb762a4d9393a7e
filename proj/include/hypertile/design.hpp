#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "hypertile/errors.hpp"
#include "hypertile/factor.hpp"
#include "hypertile/hypergraph.hpp"
#include "hypertile/prng.hpp"
#include "hypertile/rational.hpp"

namespace hypertile {

namespace detail {

struct IntVecHash {
    std::size_t operator()(const std::vector<int>& v) const {
        std::size_t h = 1469598103934665603ULL;
        for (int x : v) {
            h ^= static_cast<std::size_t>(x) + 0x9e3779b9;
            h *= 1099511628211ULL;
        }
        return h;
    }
};

// Lexicographic k-subset walk over [0, n); supports n beyond the bitmask cap.
template <typename Fn>
void for_each_combination(int n, int k, Fn&& fn) {
    if (k < 0 || k > n) return;
    std::vector<int> idx(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
    while (true) {
        fn(idx);
        int i = k - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
        if (i < 0) return;
        ++idx[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j)
            idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
}

} // namespace detail

// Growing edge set of a partial t-(n,k,lambda) design: every t-set lies in at
// most lambda blocks. Blocks are kept in insertion order.
struct DesignState {
    int n = 0;
    int k = 0;
    int t = 0;
    int lambda = 0;
    std::uint64_t seed = 0;
    std::vector<std::vector<int>> blocks;
    bool maximal = false;

    Hypergraph to_hypergraph() const {
        std::vector<VertexSet> edges;
        for (const auto& b : blocks) edges.push_back(VertexSet::of(b));
        return Hypergraph(n, k, std::move(edges));
    }
};

struct DesignVerdict {
    bool pass = true;
    std::optional<std::vector<int>> violating_t_set; // first over the block scan
    int multiplicity = 0;                            // its count when violated
};

inline DesignVerdict is_partial_design(const std::vector<std::vector<int>>& blocks, int n, int k,
                                       int t, int lambda) {
    if (!(1 <= t && t < k && k <= n)) throw precondition_error("need 1 <= t < k <= n");
    if (lambda < 1) throw precondition_error("lambda must be >= 1");
    std::unordered_map<std::vector<int>, int, detail::IntVecHash> mult;
    for (const auto& raw : blocks) {
        std::vector<int> b = raw;
        std::sort(b.begin(), b.end());
        if (static_cast<int>(b.size()) != k)
            throw precondition_error("block of size " + std::to_string(b.size()));
        if (std::adjacent_find(b.begin(), b.end()) != b.end())
            throw precondition_error("block with repeated vertex");
        if (b.front() < 0 || b.back() >= n) throw precondition_error("block vertex out of range");
        bool violated = false;
        DesignVerdict verdict;
        detail::for_each_combination(k, t, [&](const std::vector<int>& pick) {
            if (violated) return;
            std::vector<int> ts;
            for (int i : pick) ts.push_back(b[static_cast<std::size_t>(i)]);
            int& c = mult[ts];
            ++c;
            if (c > lambda) {
                violated = true;
                verdict = DesignVerdict{false, ts, c};
            }
        });
        if (violated) return verdict;
    }
    return DesignVerdict{};
}

// The constrained random-greedy process: order all k-sets of [n] uniformly at
// random (seeded Fisher-Yates) and insert each one whose insertion keeps the
// partial design property. The final state is maximal by construction.
inline DesignState random_greedy_design(int n, int k, int t, int lambda, std::uint64_t seed,
                                        const Caps& caps = {}) {
    if (!(1 <= t && t < k && k <= n)) throw precondition_error("need 1 <= t < k <= n");
    if (lambda < 1) throw precondition_error("lambda must be >= 1");
    BigInt total = binomial_exact(n, k);
    if (total > caps.design_sets)
        throw cap_error("C(n,k) = " + total.str() + " exceeds design cap " +
                        std::to_string(caps.design_sets));

    std::vector<std::vector<int>> all;
    all.reserve(total.convert_to<std::size_t>());
    detail::for_each_combination(n, k, [&](const std::vector<int>& idx) { all.push_back(idx); });
    SplitMix64 rng(seed);
    seeded_shuffle(all, rng);

    DesignState state{n, k, t, lambda, seed, {}, true};
    std::unordered_map<std::vector<int>, int, detail::IntVecHash> mult;
    std::vector<std::vector<int>> t_subsets;
    for (const auto& block : all) {
        t_subsets.clear();
        bool fits = true;
        detail::for_each_combination(k, t, [&](const std::vector<int>& pick) {
            std::vector<int> ts;
            for (int i : pick) ts.push_back(block[static_cast<std::size_t>(i)]);
            auto it = mult.find(ts);
            if (it != mult.end() && it->second >= lambda) fits = false;
            t_subsets.push_back(std::move(ts));
        });
        if (!fits) continue;
        for (auto& ts : t_subsets) ++mult[ts];
        state.blocks.push_back(block);
    }
    return state;
}

struct BLambdaVerdict {
    bool contains = false;
    std::optional<std::pair<int, int>> witness_pair;
    std::vector<int> petals; // lambda+1 lex-least common completions
};

// B_lambda = K_3^3(1,1,lambda+1) is present iff some pair has codegree
// >= lambda+1.
inline BLambdaVerdict contains_B_lambda(const Hypergraph& h, int lambda) {
    if (h.k() != 3) throw precondition_error("B_lambda detection needs a 3-graph");
    if (lambda < 0) throw precondition_error("lambda must be >= 0");
    BLambdaVerdict out;
    for_each_subset(h.vertices(), 2, [&](VertexSet pair) {
        std::vector<int> petals;
        for (int v : h.vertices() - pair)
            if (h.is_edge(pair.with(v))) petals.push_back(v);
        if (static_cast<int>(petals.size()) >= lambda + 1) {
            auto pv = pair.to_vector();
            petals.resize(static_cast<std::size_t>(lambda + 1));
            out = BLambdaVerdict{true, std::make_pair(pv[0], pv[1]), std::move(petals)};
            return false;
        }
        return true;
    });
    return out;
}

struct IndependenceResult {
    int size = 0;
    VertexSet witness;
    bool exact = true;
};

namespace detail {

// Greedy clique cover of the candidates; each clique C contributes at most
// min(|C|, k-1) vertices to any independent set.
inline int independence_upper_bound(const Hypergraph& h, VertexSet cand) {
    int bound = 0;
    VertexSet rest = cand;
    while (!rest.empty()) {
        VertexSet clique = VertexSet::single(rest.min());
        for (int v : rest.without(rest.min())) {
            if (clique.size() < h.k() - 1) {
                clique |= VertexSet::single(v);
                continue;
            }
            bool ok = for_each_subset(clique, h.k() - 1,
                                      [&](VertexSet s) { return h.is_edge(s.with(v)); });
            if (ok) clique |= VertexSet::single(v);
        }
        bound += std::min(clique.size(), h.k() - 1);
        rest = rest - clique;
    }
    return bound;
}

} // namespace detail

// Maximum vertex set spanning no edge. Exact branch-and-bound (vertices by
// degree descending, greedy clique-cover bound) up to the cap; greedy lower
// bound flagged heuristic above it.
inline IndependenceResult independence_number(const Hypergraph& h, const Caps& caps = {}) {
    std::vector<std::vector<VertexSet>> edges_at(static_cast<std::size_t>(h.n()));
    for (VertexSet e : h.edges())
        for (int v : e) edges_at[static_cast<std::size_t>(v)].push_back(e);

    auto independent_with = [&](VertexSet chosen, int v) {
        for (VertexSet e : edges_at[static_cast<std::size_t>(v)])
            if (e.subset_of(chosen.with(v))) return false;
        return true;
    };

    std::vector<int> order(static_cast<std::size_t>(h.n()));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return edges_at[static_cast<std::size_t>(a)].size() >
               edges_at[static_cast<std::size_t>(b)].size();
    });

    if (h.n() > 40) {
        // greedy heuristic in ascending-degree order
        IndependenceResult r;
        r.exact = false;
        for (auto it = order.rbegin(); it != order.rend(); ++it)
            if (independent_with(r.witness, *it)) {
                r.witness |= VertexSet::single(*it);
                ++r.size;
            }
        (void)caps;
        return r;
    }

    IndependenceResult best;
    auto rec = [&](auto&& self, std::size_t pos, VertexSet chosen, VertexSet cand) -> void {
        if (chosen.size() > best.size) {
            best.size = chosen.size();
            best.witness = chosen;
        }
        if (pos >= order.size()) return;
        if (chosen.size() + detail::independence_upper_bound(h, cand) <= best.size) return;
        int v = -1;
        std::size_t at = pos;
        for (; at < order.size(); ++at)
            if (cand.contains(order[at])) {
                v = order[at];
                break;
            }
        if (v < 0) return;
        if (independent_with(chosen, v))
            self(self, at + 1, chosen.with(v), cand.without(v));
        self(self, at + 1, chosen, cand.without(v));
    };
    rec(rec, 0, VertexSet{}, h.vertices());
    return best;
}

// n = ceil((8 (k)_t C(k-1,t) C(k,t) lambda x^{k-1} / log(lambda x))^{1/(k-t)})
// evaluated in 50-digit floating point with the natural log.
inline long long design_order_formula(int t, int k, int lambda, int x) {
    using Float = boost::multiprecision::cpp_bin_float_50;
    if (!(k > t && t >= 1)) throw precondition_error("need k > t >= 1");
    if (lambda < 1 || x < 1) throw precondition_error("lambda and x must be >= 1");
    if (static_cast<long long>(lambda) * x < 2)
        throw precondition_error("need lambda*x >= 2 for a positive log");
    Float val = Float(8) * Float(falling_factorial(k, t)) * Float(binomial_exact(k - 1, t)) *
                Float(binomial_exact(k, t)) * Float(lambda) * pow(Float(x), k - 1) /
                log(Float(lambda) * Float(x));
    Float root = pow(val, Float(1) / Float(k - t));
    return static_cast<long long>(ceil(root));
}

} // namespace hypertile
