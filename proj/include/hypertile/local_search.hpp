#pragma once

#include <numeric>
#include <string>
#include <vector>

#include "hypertile/factor.hpp"
#include "hypertile/matching.hpp"
#include "hypertile/parameters.hpp"
#include "hypertile/prng.hpp"
#include "hypertile/tiling.hpp"

namespace hypertile {

// Partition of V into t-sets with each part's largest complete subgraph and
// the total weight sum_i w(t, |G_i|).
struct TPartition {
    int t = 0;
    std::vector<VertexSet> parts;
    std::vector<VertexSet> cliques;
    Rational total_weight;
};

struct MoveRecord {
    std::string type; // "exchange" | "swap" | "pair_swap"
    std::vector<int> parts_touched;
    Rational weight_before;
    Rational weight_after;
};

struct LocalSearchResult {
    Tiling tiling;
    TPartition partition;
    std::vector<MoveRecord> trace;
    std::uint64_t master_seed = 0;
    int winning_restart = 0;
};

namespace detail {

class WeightAscent {
public:
    WeightAscent(const Hypergraph& h, int t, const Caps& caps)
        : h_(&h), t_(t), caps_(&caps) {}

    TPartition seed_partition(std::uint64_t seed) const {
        std::vector<int> order(static_cast<std::size_t>(h_->n()));
        std::iota(order.begin(), order.end(), 0);
        SplitMix64 rng(seed);
        seeded_shuffle(order, rng);
        TPartition p;
        p.t = t_;
        for (int i = 0; i < h_->n(); i += t_) {
            VertexSet part;
            for (int j = i; j < i + t_; ++j)
                part |= VertexSet::single(order[static_cast<std::size_t>(j)]);
            p.parts.push_back(part);
        }
        p.cliques.resize(p.parts.size());
        p.total_weight = 0;
        for (std::size_t i = 0; i < p.parts.size(); ++i) {
            p.cliques[i] = largest_clique_in(*h_, p.parts[i], *caps_);
            p.total_weight += weight_w(t_, p.cliques[i].size());
        }
        return p;
    }

    // First-improvement scan; true if a move was accepted (and recorded).
    bool step(TPartition& p, std::vector<MoveRecord>& trace) const {
        if (try_exchange_move(p, trace)) return true;
        if (try_swaps(p, trace, /*pairs=*/false)) return true;
        return try_swaps(p, trace, /*pairs=*/true);
    }

private:
    // Applies the candidate reassignment of two or more parts; accepts iff
    // the exact weight strictly increases.
    bool accept_if_better(TPartition& p, const std::vector<int>& idx,
                          const std::vector<VertexSet>& replacement, const char* type,
                          std::vector<MoveRecord>& trace) const {
        Rational before = p.total_weight;
        Rational delta = 0;
        std::vector<VertexSet> new_cliques(idx.size());
        for (std::size_t i = 0; i < idx.size(); ++i) {
            new_cliques[i] = largest_clique_in(*h_, replacement[i], *caps_);
            delta += weight_w(t_, new_cliques[i].size()) -
                     weight_w(t_, p.cliques[static_cast<std::size_t>(idx[i])].size());
        }
        if (delta <= 0) return false;
        for (std::size_t i = 0; i < idx.size(); ++i) {
            p.parts[static_cast<std::size_t>(idx[i])] = replacement[i];
            p.cliques[static_cast<std::size_t>(idx[i])] = new_cliques[i];
        }
        p.total_weight = before + delta;
        trace.push_back(MoveRecord{type, idx, before, p.total_weight});
        return true;
    }

    // The proof's move: a clique-size class with >= t parts, a donor part
    // with more than t(t-i) connections into the class, a system of distinct
    // representatives by maximum bipartite matching, then the vertex
    // exchange. Connections are link-set membership: (v, j) connects iff
    // v extends every (k-1)-subset of G_j to an edge.
    bool try_exchange_move(TPartition& p, std::vector<MoveRecord>& trace) const {
        const int part_count = static_cast<int>(p.parts.size());
        for (int i = h_->k() - 1; i < t_; ++i) {
            std::vector<int> in_class;
            for (int j = 0; j < part_count; ++j)
                if (p.cliques[static_cast<std::size_t>(j)].size() == i) in_class.push_back(j);
            if (static_cast<int>(in_class.size()) < t_) continue;
            in_class.resize(static_cast<std::size_t>(t_));

            std::vector<VertexSet> links;
            links.reserve(in_class.size());
            for (int j : in_class) links.push_back(h_->link_set(p.cliques[static_cast<std::size_t>(j)]));

            for (int donor = 0; donor < part_count; ++donor) {
                if (std::find(in_class.begin(), in_class.end(), donor) != in_class.end()) continue;
                std::vector<int> donor_verts = p.parts[static_cast<std::size_t>(donor)].to_vector();
                int connections = 0;
                for (int v : donor_verts)
                    for (std::size_t a = 0; a < in_class.size(); ++a)
                        if (links[a].contains(v)) ++connections;
                if (connections <= t_ * (t_ - i)) continue;

                BipartiteMatcher matcher(static_cast<int>(donor_verts.size()),
                                         static_cast<int>(in_class.size()));
                for (std::size_t d = 0; d < donor_verts.size(); ++d)
                    for (std::size_t a = 0; a < in_class.size(); ++a)
                        if (links[a].contains(donor_verts[d]))
                            matcher.add_edge(static_cast<int>(d), static_cast<int>(a));
                auto match = matcher.solve();

                // matched pairs ordered by class position; take t-i+1 of them
                std::vector<std::pair<int, int>> pairs; // (class position, donor vertex)
                for (std::size_t d = 0; d < donor_verts.size(); ++d)
                    if (match[d] >= 0) pairs.emplace_back(match[d], donor_verts[d]);
                std::sort(pairs.begin(), pairs.end());
                const int want = t_ - i + 1;
                if (static_cast<int>(pairs.size()) < want) continue;
                pairs.resize(static_cast<std::size_t>(want));

                std::vector<int> idx;
                std::vector<VertexSet> replacement;
                VertexSet new_donor = p.parts[static_cast<std::size_t>(donor)];
                for (auto [a, v] : pairs) {
                    int j = in_class[static_cast<std::size_t>(a)];
                    VertexSet part = p.parts[static_cast<std::size_t>(j)];
                    VertexSet spare = part - p.cliques[static_cast<std::size_t>(j)];
                    int out = spare.min(); // i < t, so a non-clique vertex exists
                    idx.push_back(j);
                    replacement.push_back(part.without(out).with(v));
                    new_donor = new_donor.without(v).with(out);
                }
                idx.push_back(donor);
                replacement.push_back(new_donor);
                if (accept_if_better(p, idx, replacement, "exchange", trace)) return true;
            }
        }
        return false;
    }

    // Fallback move classes: any strictly improving single-vertex swap or
    // two-vertex exchange between a pair of parts. Scan order: part pairs by
    // (clique-size class, index), vertices ascending.
    bool try_swaps(TPartition& p, std::vector<MoveRecord>& trace, bool pairs) const {
        const int part_count = static_cast<int>(p.parts.size());
        std::vector<std::pair<std::pair<int, int>, std::pair<int, int>>> order;
        for (int a = 0; a < part_count; ++a)
            for (int b = a + 1; b < part_count; ++b) {
                int ca = p.cliques[static_cast<std::size_t>(a)].size();
                int cb = p.cliques[static_cast<std::size_t>(b)].size();
                order.push_back({{std::min(ca, cb), std::max(ca, cb)}, {a, b}});
            }
        std::sort(order.begin(), order.end());
        for (const auto& [cls, ab] : order) {
            const int a = ab.first, b = ab.second;
            VertexSet pa = p.parts[static_cast<std::size_t>(a)];
            VertexSet pb = p.parts[static_cast<std::size_t>(b)];
            if (!pairs) {
                for (int u : pa)
                    for (int v : pb) {
                        std::vector<VertexSet> repl{pa.without(u).with(v), pb.without(v).with(u)};
                        if (accept_if_better(p, {a, b}, repl, "swap", trace)) return true;
                    }
            } else {
                bool found = false;
                for_each_subset(pa, 2, [&](VertexSet ua) {
                    for_each_subset(pb, 2, [&](VertexSet vb) {
                        std::vector<VertexSet> repl{(pa - ua) | vb, (pb - vb) | ua};
                        if (accept_if_better(p, {a, b}, repl, "pair_swap", trace)) {
                            found = true;
                            return false;
                        }
                        return true;
                    });
                    return !found;
                });
                if (found) return true;
            }
        }
        return false;
    }

    const Hypergraph* h_;
    int t_;
    const Caps* caps_;
};

} // namespace detail

// Weight-ascending local search for almost-K_t^k-tilings.
// Runs `restarts` seeded searches; the best final weight wins, ties broken by
// lowest restart index. Full parts become copies, the rest is leftover.
inline LocalSearchResult almost_factor_local_search(const Hypergraph& h, int t,
                                                    std::uint64_t seed, const Caps& caps = {},
                                                    int restarts = 8) {
    if (t < h.k()) throw precondition_error("K_t^k needs t >= k");
    if (h.n() % t != 0)
        throw divisibility_error("t = " + std::to_string(t) + " does not divide n = " +
                                 std::to_string(h.n()));
    if (h.n() > caps.local_search_n)
        throw cap_error("host size exceeds local-search cap " + std::to_string(caps.local_search_n));
    if (restarts < 1) throw precondition_error("need at least one restart");

    detail::WeightAscent engine(h, t, caps);
    auto seeds = derive_seeds(seed, static_cast<std::size_t>(restarts));

    std::optional<TPartition> best;
    std::vector<MoveRecord> best_trace;
    int best_restart = 0;
    for (int r = 0; r < restarts; ++r) {
        TPartition p = engine.seed_partition(seeds[static_cast<std::size_t>(r)]);
        std::vector<MoveRecord> trace;
        while (engine.step(p, trace)) {
        }
        if (!best || p.total_weight > best->total_weight) {
            best = std::move(p);
            best_trace = std::move(trace);
            best_restart = r;
        }
    }

    Tiling tiling{&h, Pattern::complete(t, h.k()), {}, VertexSet{}};
    VertexSet leftover;
    for (std::size_t i = 0; i < best->parts.size(); ++i) {
        if (best->cliques[i].size() == t) {
            tiling.copies.push_back(Embedding{best->parts[i].to_vector()});
        } else {
            leftover |= best->parts[i];
        }
    }
    tiling.leftover = leftover;
    return LocalSearchResult{std::move(tiling), std::move(*best), std::move(best_trace), seed,
                             best_restart};
}

} // namespace hypertile
