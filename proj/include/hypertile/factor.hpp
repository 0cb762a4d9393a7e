#pragma once

#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "hypertile/embedding.hpp"
#include "hypertile/errors.hpp"
#include "hypertile/hypergraph.hpp"
#include "hypertile/pattern.hpp"
#include "hypertile/tiling.hpp"

namespace hypertile {

// Resource caps for the exhaustive engines. HYPERTILE_CAPS can override these
// from the CLI (documented unsafe).
struct Caps {
    int oracle_n = 40;          // exact_factor host size
    int clique_n = 16;          // largest_clique_in candidate set size
    int local_search_n = 64;    // local search host size
    long long design_sets = 10'000'000; // C(n,k) materialised by the design process
};

namespace detail {

// Distinct image vertex-sets of F-copies that contain `v` and stay inside
// `allowed`; ascending mask-lex order. Copies with equal image sets are
// interchangeable for tiling, so one representative embedding is kept.
inline std::vector<Embedding> copies_through(const Hypergraph& h, const Pattern& f, int v,
                                             VertexSet allowed) {
    std::vector<Embedding> reps;
    std::unordered_set<std::uint64_t> seen;
    if (f.is_complete()) {
        // Cliques containing v: choose the rest ascending with clique pruning.
        std::vector<int> verts = (allowed.without(v)).to_vector();
        std::vector<int> chosen{v};
        VertexSet chosen_set = VertexSet::single(v);
        const int t = f.size();
        auto rec = [&](auto&& self, std::size_t from) -> void {
            if (static_cast<int>(chosen.size()) == t) {
                std::vector<int> image = chosen;
                std::sort(image.begin(), image.end());
                reps.push_back(Embedding{std::move(image)});
                return;
            }
            for (std::size_t i = from; i < verts.size(); ++i) {
                int u = verts[i];
                if (static_cast<int>(chosen.size()) >= h.k() - 1) {
                    bool ok = for_each_subset(chosen_set, h.k() - 1,
                                              [&](VertexSet s) { return h.is_edge(s.with(u)); });
                    if (!ok) continue;
                }
                chosen.push_back(u);
                chosen_set |= VertexSet::single(u);
                self(self, i + 1);
                chosen.pop_back();
                chosen_set = chosen_set.without(u);
            }
        };
        rec(rec, 0);
        return reps;
    }
    // One anchored enumeration per automorphism orbit of pattern vertices.
    std::vector<int> orbit_rep(static_cast<std::size_t>(f.size()), -1);
    for (int p = 0; p < f.size(); ++p) {
        int rep = p;
        for (const auto& aut : f.automorphisms())
            rep = std::min(rep, aut[static_cast<std::size_t>(p)]);
        orbit_rep[static_cast<std::size_t>(p)] = rep;
    }
    for (int p = 0; p < f.size(); ++p) {
        if (orbit_rep[static_cast<std::size_t>(p)] != p) continue;
        enumerate_embeddings(h, f, Anchors{{p, v}}, allowed, [&](const Embedding& e) {
            if (seen.insert(e.image_set().mask()).second) reps.push_back(e);
            return true;
        });
    }
    std::sort(reps.begin(), reps.end(), [](const Embedding& a, const Embedding& b) {
        return Hypergraph::lex_less(a.image_set(), b.image_set());
    });
    return reps;
}

} // namespace detail

// Memoising factor tester for induced sub-hosts of one (host, pattern) pair.
// Verdicts are keyed by the exact vertex-subset mask, which is sound by
// construction: the host is fixed, so the mask determines the subgraph.
class FactorCache {
public:
    FactorCache(const Hypergraph& host, Pattern pattern)
        : host_(&host), pattern_(std::move(pattern)) {}

    const Pattern& pattern() const { return pattern_; }
    const Hypergraph& host() const { return *host_; }

    // True iff H[u] has a perfect F-tiling. Non-divisible sizes are simply
    // not tilable (no error: this is a subset query, not the oracle op).
    bool has_factor(VertexSet u) {
        const int f = pattern_.size();
        if (u.size() % f != 0) return false;
        if (u.empty()) return true;
        auto it = memo_.find(u.mask());
        if (it != memo_.end()) return it->second;
        bool ok = false;
        const int v = u.min();
        for (const Embedding& copy : detail::copies_through(*host_, pattern_, v, u)) {
            if (has_factor(u - copy.image_set())) {
                ok = true;
                break;
            }
        }
        memo_.emplace(u.mask(), ok);
        return ok;
    }

    std::size_t memo_size() const { return memo_.size(); }

private:
    const Hypergraph* host_;
    Pattern pattern_;
    std::unordered_map<std::uint64_t, bool> memo_;
};

// Tiles H[u] using cached verdicts to steer straight to a factor; u must be
// factorable. Each step picks the first copy through the least vertex whose
// residual still tiles, so the walk never backtracks.
inline std::vector<Embedding> exact_factor_on_subset(FactorCache& cache, VertexSet u) {
    if (!cache.has_factor(u))
        throw precondition_error("subset has no perfect tiling");
    std::vector<Embedding> copies;
    VertexSet rest = u;
    while (!rest.empty()) {
        const int v = rest.min();
        bool advanced = false;
        for (const Embedding& copy :
             detail::copies_through(cache.host(), cache.pattern(), v, rest)) {
            if (cache.has_factor(rest - copy.image_set())) {
                rest = rest - copy.image_set();
                copies.push_back(copy);
                advanced = true;
                break;
            }
        }
        if (!advanced) throw precondition_error("cache verdict inconsistent with search");
    }
    return copies;
}

// Exhaustive F-factor oracle: definitive yes (with a witness tiling) or no.
// Backtracks over copies anchored at the least uncovered vertex, memoising
// failed residual vertex sets.
inline std::optional<Tiling> exact_factor(const Hypergraph& h, const Pattern& f,
                                          const Caps& caps = {}) {
    if (f.size() == 0 || h.n() % f.size() != 0)
        throw divisibility_error("|F| = " + std::to_string(f.size()) + " does not divide n = " +
                                 std::to_string(h.n()));
    if (h.n() > caps.oracle_n)
        throw cap_error("host size " + std::to_string(h.n()) + " exceeds oracle cap " +
                        std::to_string(caps.oracle_n));
    if (h.k() != f.k()) throw precondition_error("pattern and host uniformity differ");

    std::unordered_set<std::uint64_t> dead;
    std::vector<Embedding> chosen;

    auto rec = [&](auto&& self, VertexSet rest) -> bool {
        if (rest.empty()) return true;
        if (dead.count(rest.mask())) return false;
        const int v = rest.min();
        for (const Embedding& copy : detail::copies_through(h, f, v, rest)) {
            chosen.push_back(copy);
            if (self(self, rest - copy.image_set())) return true;
            chosen.pop_back();
        }
        dead.insert(rest.mask());
        return false;
    };

    if (!rec(rec, h.vertices())) return std::nullopt;
    Tiling t{&h, f, std::move(chosen), VertexSet{}};
    return t;
}

// Greedy vertex-disjoint cover of the target set: each uncovered target gets
// the first available copy through it in deterministic enumeration order.
struct CoverResult {
    Tiling tiling;
    VertexSet uncovered_targets;
};

inline CoverResult greedy_disjoint_cover(const Hypergraph& h, const Pattern& f, VertexSet targets) {
    Tiling tiling{&h, f, {}, h.vertices()};
    VertexSet allowed = h.vertices();
    for (int v : targets) {
        if (!allowed.contains(v)) continue; // already covered by an earlier copy
        auto reps = detail::copies_through(h, f, v, allowed);
        if (reps.empty()) continue;
        tiling.copies.push_back(reps.front());
        allowed = allowed - reps.front().image_set();
    }
    tiling.leftover = allowed;
    return CoverResult{std::move(tiling), targets & allowed};
}

// Maximum subset of u spanning a complete k-graph; sets of size <= k-1 count
// as complete. Ties broken by lexicographically smallest vertex list.
inline VertexSet largest_clique_in(const Hypergraph& h, VertexSet u, const Caps& caps = {}) {
    if (u.size() > caps.clique_n)
        throw cap_error("candidate set size " + std::to_string(u.size()) + " exceeds clique cap " +
                        std::to_string(caps.clique_n));
    std::vector<int> verts = u.to_vector();
    const int m = static_cast<int>(verts.size());
    VertexSet best;
    bool have_best = false;
    // Grow cliques in ascending vertex order; visiting candidates
    // lexicographically means the first clique of each size found is the
    // lex-smallest, so strict improvement keeps the canonical tie-break.
    auto rec = [&](auto&& self, std::size_t from, VertexSet cur) -> void {
        if (!have_best || cur.size() > best.size()) {
            best = cur;
            have_best = true;
        }
        if (cur.size() + (m - static_cast<int>(from)) <= best.size()) return; // bound
        for (std::size_t i = from; i < verts.size(); ++i) {
            int v = verts[i];
            if (cur.size() >= h.k() - 1) {
                bool ok = for_each_subset(cur, h.k() - 1,
                                          [&](VertexSet s) { return h.is_edge(s.with(v)); });
                if (!ok) continue;
            }
            self(self, i + 1, cur.with(v));
        }
    };
    rec(rec, 0, VertexSet{});
    return best;
}

} // namespace hypertile
