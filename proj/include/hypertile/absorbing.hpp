#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "hypertile/closeness.hpp"
#include "hypertile/factor.hpp"
#include "hypertile/matching.hpp"
#include "hypertile/prng.hpp"

namespace hypertile {

// A is an absorbing m-set for the t-set T: disjoint from T, and both H[A]
// and H[A u T] have perfect F-tilings, so a tiling of A can swallow T.
struct AbsorbingSet {
    VertexSet target;
    VertexSet absorber;
};

inline int absorbing_set_size(int t, int i) { return (t - 1) * (i * t - 1 + 1); }

// Streams the absorbing m-sets for T in lexicographic order; the callback
// returns false to stop. Returns the number of sets yielded.
template <typename Fn>
long long absorbing_sets_for(FactorCache& cache, VertexSet t_set, int i, Fn&& yield,
                             const Caps& caps = {}) {
    const Hypergraph& h = cache.host();
    const int t = cache.pattern().size();
    if (t_set.size() != t)
        throw precondition_error("target set size " + std::to_string(t_set.size()) +
                                 " != |F| = " + std::to_string(t));
    if (i < 1) throw precondition_error("iteration level must be >= 1");
    const int m = absorbing_set_size(t, i);
    if (m > h.n() - t) throw precondition_error("m = " + std::to_string(m) + " exceeds n - t");
    if (m + t > caps.oracle_n)
        throw cap_error("absorber factor checks exceed oracle cap");
    long long count = 0;
    for_each_subset(h.vertices() - t_set, m, [&](VertexSet a) {
        if (!cache.has_factor(a)) return true;
        if (!cache.has_factor(a | t_set)) return true;
        ++count;
        return yield(AbsorbingSet{t_set, a});
    });
    return count;
}

inline long long count_absorbing_sets(FactorCache& cache, VertexSet t_set, int i,
                                      const Caps& caps = {}) {
    return absorbing_sets_for(cache, t_set, i, [](const AbsorbingSet&) { return true; }, caps);
}

// Pairwise-disjoint absorbing m-sets with a per-t-set usable index. H[U] has
// an F-factor because each member does.
struct AbsorbingFamily {
    int t = 0;
    int level = 1; // i
    std::vector<VertexSet> members;
    VertexSet used; // U, the union of the members

    // Members disjoint from T that absorb it.
    std::vector<std::size_t> usable_for(FactorCache& cache, VertexSet t_set) const {
        std::vector<std::size_t> out;
        for (std::size_t idx = 0; idx < members.size(); ++idx) {
            if (!members[idx].disjoint_from(t_set)) continue;
            if (cache.has_factor(members[idx] | t_set)) out.push_back(idx);
        }
        return out;
    }
};

struct FamilyBuildResult {
    std::optional<AbsorbingFamily> family;
    std::string failure; // non-empty on infeasibility, names the stuck t-set
};

enum class FamilyMode { greedy, randomized };

struct FamilyConfig {
    int level = 1;               // i
    int capacity_target = 1;     // greedy: absorbers required per t-set
    FamilyMode mode = FamilyMode::greedy;
    std::uint64_t seed = 0;      // randomized mode
    double sample_rate = 0.0;    // randomized mode; 0 picks the proof's p-analogue
    int vertex_budget = 0;       // max |U|; 0 means |universe| - t
    VertexSet universe;          // empty means all of V(H)
};

namespace detail {

// Greedy mode: walk the deficit t-sets in lexicographic order and accumulate
// disjoint absorbers until every t-set outside U has capacity_target usable
// members or the vertex budget is exhausted.
inline FamilyBuildResult build_family_greedy(FactorCache& cache, const FamilyConfig& cfg) {
    const Hypergraph& h = cache.host();
    const int t = cache.pattern().size();
    const int m = absorbing_set_size(t, cfg.level);
    const VertexSet universe = cfg.universe.empty() ? h.vertices() : cfg.universe;
    const int budget = cfg.vertex_budget > 0 ? cfg.vertex_budget : universe.size() - t;

    AbsorbingFamily fam;
    fam.t = t;
    fam.level = cfg.level;

    while (true) {
        // first t-set outside U with a capacity deficit
        std::optional<VertexSet> deficit;
        for_each_subset(universe - fam.used, t, [&](VertexSet ts) {
            if (static_cast<int>(fam.usable_for(cache, ts).size()) < cfg.capacity_target) {
                deficit = ts;
                return false;
            }
            return true;
        });
        if (!deficit) return FamilyBuildResult{std::move(fam), ""};

        if (fam.used.size() + m > budget)
            return FamilyBuildResult{std::nullopt,
                                     "vertex budget " + std::to_string(budget) +
                                         " exhausted before covering a t-set"};

        // lexicographically first new absorber disjoint from U
        std::optional<VertexSet> found;
        VertexSet candidates = (universe - fam.used) - *deficit;
        for_each_subset(candidates, m, [&](VertexSet a) {
            if (!cache.has_factor(a)) return true;
            if (!cache.has_factor(a | *deficit)) return true;
            found = a;
            return false;
        });
        if (!found) {
            std::string who;
            for (int v : *deficit) who += (who.empty() ? "" : ",") + std::to_string(v);
            return FamilyBuildResult{std::nullopt, "no absorber available for t-set {" + who + "}"};
        }
        fam.members.push_back(*found);
        fam.used |= *found;
    }
}

// Randomized mode mirrors the probabilistic selection: sample m-sets
// independently, then delete intersecting and non-absorbing members.
inline FamilyBuildResult build_family_randomized(FactorCache& cache, const FamilyConfig& cfg) {
    const Hypergraph& h = cache.host();
    const int t = cache.pattern().size();
    const int m = absorbing_set_size(t, cfg.level);
    const VertexSet universe = cfg.universe.empty() ? h.vertices() : cfg.universe;

    double rate = cfg.sample_rate;
    if (rate <= 0.0) {
        // the proof's p = c * n / C(n,m) shape with c = 1/8
        double total = static_cast<double>(binomial_u64(universe.size(), m));
        rate = std::min(1.0, static_cast<double>(universe.size()) / (8.0 * total));
    }

    SplitMix64 rng(cfg.seed);
    std::vector<VertexSet> sampled;
    for_each_subset(universe, m, [&](VertexSet a) {
        if (rng.next_unit() < rate) sampled.push_back(a);
    });

    // prune members intersecting any other sampled member
    std::vector<VertexSet> disjoint;
    for (std::size_t i = 0; i < sampled.size(); ++i) {
        bool clean = true;
        for (std::size_t j = 0; j < sampled.size(); ++j)
            if (i != j && sampled[i].intersects(sampled[j])) {
                clean = false;
                break;
            }
        if (clean) disjoint.push_back(sampled[i]);
    }

    AbsorbingFamily fam;
    fam.t = t;
    fam.level = cfg.level;
    for (VertexSet a : disjoint) {
        if (!cache.has_factor(a)) continue;
        // keep only members that absorb at least one t-set
        bool absorbs = false;
        for_each_subset(universe - a, t, [&](VertexSet ts) {
            if (cache.has_factor(a | ts)) {
                absorbs = true;
                return false;
            }
            return true;
        });
        if (!absorbs) continue;
        fam.members.push_back(a);
        fam.used |= a;
    }
    if (fam.members.empty())
        return FamilyBuildResult{std::nullopt, "randomized selection produced no usable member"};
    return FamilyBuildResult{std::move(fam), ""};
}

} // namespace detail

inline FamilyBuildResult build_absorbing_family(FactorCache& cache, const FamilyConfig& cfg,
                                                const Caps& caps = {}) {
    const Hypergraph& h = cache.host();
    const int t = cache.pattern().size();
    const int m = absorbing_set_size(t, cfg.level);
    const VertexSet universe = cfg.universe.empty() ? h.vertices() : cfg.universe;
    if (m > universe.size() - t)
        return FamilyBuildResult{std::nullopt, "m = " + std::to_string(m) + " exceeds |universe| - t"};
    if (m + t > caps.oracle_n)
        throw cap_error("absorber factor checks exceed oracle cap");
    return cfg.mode == FamilyMode::greedy ? detail::build_family_greedy(cache, cfg)
                                          : detail::build_family_randomized(cache, cfg);
}

struct AbsorbResult {
    std::optional<Tiling> tiling;
    std::string failure; // names the stuck t-set on assignment failure
};

// Tiles H[U u W]: chops W into t-sets, assigns each a distinct usable member
// by maximum matching, tiles member u t-set pairs and lone members.
inline AbsorbResult absorb(FactorCache& cache, const AbsorbingFamily& family, VertexSet w) {
    const Hypergraph& h = cache.host();
    const int t = family.t;
    if (!w.disjoint_from(family.used))
        throw precondition_error("W must avoid the family union U");
    if (w.size() % t != 0)
        throw divisibility_error("|W| = " + std::to_string(w.size()) + " not divisible by t = " +
                                 std::to_string(t));

    // ascending chunks of t
    std::vector<VertexSet> chunks;
    std::vector<int> ws = w.to_vector();
    for (std::size_t a = 0; a < ws.size(); a += static_cast<std::size_t>(t)) {
        VertexSet c;
        for (std::size_t b = a; b < a + static_cast<std::size_t>(t); ++b)
            c |= VertexSet::single(ws[b]);
        chunks.push_back(c);
    }

    BipartiteMatcher matcher(static_cast<int>(chunks.size()),
                             static_cast<int>(family.members.size()));
    for (std::size_t c = 0; c < chunks.size(); ++c)
        for (std::size_t idx : family.usable_for(cache, chunks[c]))
            matcher.add_edge(static_cast<int>(c), static_cast<int>(idx));
    auto match = matcher.solve();
    for (std::size_t c = 0; c < chunks.size(); ++c) {
        if (match[c] < 0) {
            std::string who;
            for (int v : chunks[c]) who += (who.empty() ? "" : ",") + std::to_string(v);
            return AbsorbResult{std::nullopt, "no absorbing member for t-set {" + who + "}"};
        }
    }

    Tiling tiling{&h, cache.pattern(), {}, h.vertices() - (family.used | w)};
    std::vector<bool> member_used(family.members.size(), false);
    auto tile_subset = [&](VertexSet u) {
        auto sub = exact_factor_on_subset(cache, u);
        for (auto& e : sub) tiling.copies.push_back(std::move(e));
    };
    for (std::size_t c = 0; c < chunks.size(); ++c) {
        member_used[static_cast<std::size_t>(match[c])] = true;
        tile_subset(family.members[static_cast<std::size_t>(match[c])] | chunks[c]);
    }
    for (std::size_t idx = 0; idx < family.members.size(); ++idx)
        if (!member_used[idx]) tile_subset(family.members[idx]);
    return AbsorbResult{std::move(tiling), ""};
}

} // namespace hypertile
