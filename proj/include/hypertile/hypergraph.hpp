#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <string>
#include <unordered_set>
#include <vector>

#include "hypertile/errors.hpp"
#include "hypertile/vertex_set.hpp"

namespace hypertile {

// Immutable k-uniform hypergraph on vertices 0..n-1. Edges are kept both as a
// hash set of bitmasks (membership) and as a lexicographically sorted list
// (deterministic iteration and canonical file output).
class Hypergraph {
public:
    Hypergraph(int n, int k, std::vector<VertexSet> edges) : n_(n), k_(k) {
        if (k < 2) throw precondition_error("uniformity k must be >= 2, got " + std::to_string(k));
        if (n < 0 || n > VertexSet::max_vertices)
            throw cap_error("vertex count " + std::to_string(n) + " outside supported range 0..64");
        const VertexSet all = VertexSet::full(n);
        for (VertexSet e : edges) {
            if (e.size() != k)
                throw precondition_error("edge with " + std::to_string(e.size()) +
                                         " vertices in a " + std::to_string(k) + "-graph");
            if (!e.subset_of(all))
                throw precondition_error("edge vertex out of range 0..=" + std::to_string(n - 1));
            if (!edge_masks_.insert(e.mask()).second)
                throw precondition_error("duplicate edge");
        }
        edges_ = std::move(edges);
        std::sort(edges_.begin(), edges_.end(), lex_less);
    }

    static Hypergraph empty(int n, int k) { return Hypergraph(n, k, {}); }

    static Hypergraph complete(int n, int k) {
        std::vector<VertexSet> edges;
        for_each_subset(VertexSet::full(n), k, [&](VertexSet s) { edges.push_back(s); });
        return Hypergraph(n, k, std::move(edges));
    }

    int n() const { return n_; }
    int k() const { return k_; }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<VertexSet>& edges() const { return edges_; }
    VertexSet vertices() const { return VertexSet::full(n_); }

    bool is_edge(VertexSet e) const { return edge_masks_.count(e.mask()) != 0; }

    // Number of (k-l)-sets S disjoint from T with S u T an edge; |T| = l.
    int degree_of_set(VertexSet t_set) const {
        check_arity(t_set.size());
        if (t_set.size() == k_ - 1) {
            int deg = 0;
            for (int v : vertices() - t_set)
                if (is_edge(t_set.with(v))) ++deg;
            return deg;
        }
        int deg = 0;
        for (VertexSet e : edges_)
            if (t_set.subset_of(e)) ++deg;
        return deg;
    }

    int min_l_degree(int l) const {
        check_arity(l);
        if (n_ < l) throw arity_error("need n >= l");
        int best = std::numeric_limits<int>::max();
        for_each_subset(vertices(), l, [&](VertexSet t) {
            best = std::min(best, degree_of_set(t));
            return best > 0; // degree cannot go below zero
        });
        return best;
    }

    int max_l_degree(int l) const {
        check_arity(l);
        if (n_ < l) throw arity_error("need n >= l");
        int best = 0;
        for_each_subset(vertices(), l, [&](VertexSet t) {
            best = std::max(best, degree_of_set(t));
        });
        return best;
    }

    // The (k-l)-sets completing T to an edge, in lexicographic order.
    std::vector<VertexSet> neighborhood(VertexSet t_set) const {
        check_arity(t_set.size());
        std::vector<VertexSet> out;
        for_each_subset(vertices() - t_set, k_ - t_set.size(), [&](VertexSet s) {
            if (is_edge(s | t_set)) out.push_back(s);
        });
        return out;
    }

    // L(S): everything outside S when |S| < k-1, otherwise the vertices
    // extending every (k-1)-subset of S to an edge.
    VertexSet link_set(VertexSet s) const {
        if (s.empty()) throw arity_error("link_set needs |S| >= 1");
        if (s.size() < k_ - 1) return vertices() - s;
        VertexSet link = vertices() - s;
        for_each_subset(s, k_ - 1, [&](VertexSet t) {
            VertexSet keep;
            for (int v : link)
                if (is_edge(t.with(v))) keep |= VertexSet::single(v);
            link = keep;
            return !link.empty();
        });
        return link;
    }

    // Every k-subset of c is an edge; sets smaller than k qualify vacuously.
    bool spans_clique(VertexSet c) const {
        if (c.size() < k_) return true;
        return for_each_subset(c, k_, [&](VertexSet e) { return is_edge(e); });
    }

    Hypergraph complement() const {
        std::vector<VertexSet> edges;
        for_each_subset(vertices(), k_, [&](VertexSet s) {
            if (!is_edge(s)) edges.push_back(s);
        });
        return Hypergraph(n_, k_, std::move(edges));
    }

    // Relabels vertex v as perm[v].
    Hypergraph relabeled(const std::vector<int>& perm) const {
        std::vector<VertexSet> edges;
        edges.reserve(edges_.size());
        for (VertexSet e : edges_) {
            VertexSet r;
            for (int v : e) r |= VertexSet::single(perm[static_cast<std::size_t>(v)]);
            edges.push_back(r);
        }
        return Hypergraph(n_, k_, std::move(edges));
    }

    bool operator==(const Hypergraph& o) const {
        return n_ == o.n_ && k_ == o.k_ && edges_ == o.edges_;
    }

    static bool lex_less(VertexSet a, VertexSet b) {
        // Lexicographic on ascending vertex lists == numeric order of
        // bit-reversed masks; compare from the lowest set bit upward.
        std::uint64_t am = a.mask(), bm = b.mask();
        while (am != 0 && bm != 0) {
            int av = std::countr_zero(am), bv = std::countr_zero(bm);
            if (av != bv) return av < bv;
            am &= am - 1;
            bm &= bm - 1;
        }
        return am == 0 && bm != 0;
    }

private:
    void check_arity(int l) const {
        if (l < 1 || l > k_ - 1)
            throw arity_error("set size " + std::to_string(l) + " outside 1..k-1 = 1.." +
                              std::to_string(k_ - 1));
    }

    int n_;
    int k_;
    std::vector<VertexSet> edges_;
    std::unordered_set<std::uint64_t> edge_masks_;
};

// H[U] with vertices relabelled canonically; vertex_map[new] = original.
struct InducedSubgraph {
    Hypergraph graph;
    std::vector<int> vertex_map;
};

inline InducedSubgraph induced(const Hypergraph& h, VertexSet u) {
    std::vector<int> map = u.to_vector();
    std::vector<int> rank(static_cast<std::size_t>(h.n()), -1);
    for (std::size_t i = 0; i < map.size(); ++i)
        rank[static_cast<std::size_t>(map[i])] = static_cast<int>(i);
    std::vector<VertexSet> edges;
    for (VertexSet e : h.edges()) {
        if (!e.subset_of(u)) continue;
        VertexSet r;
        for (int v : e) r |= VertexSet::single(rank[static_cast<std::size_t>(v)]);
        edges.push_back(r);
    }
    return InducedSubgraph{Hypergraph(static_cast<int>(map.size()), h.k(), std::move(edges)),
                           std::move(map)};
}

} // namespace hypertile
