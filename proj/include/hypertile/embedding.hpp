#pragma once

#include <map>
#include <optional>
#include <vector>

#include "hypertile/hypergraph.hpp"
#include "hypertile/pattern.hpp"

namespace hypertile {

// An injective edge-preserving map from pattern vertices to host vertices.
// image[p] is the host vertex for pattern vertex p.
struct Embedding {
    std::vector<int> image;

    VertexSet image_set() const { return VertexSet::of(image); }
};

// Optional constraints: pattern vertex -> required host vertex.
using Anchors = std::map<int, int>;

namespace detail {

// Emit an embedding only when it is the canonical representative of its
// automorphism orbit among the maps that respect the anchors; this yields
// each unordered copy of F exactly once.
inline bool is_canonical_under_automorphisms(const Pattern& f, const std::vector<int>& image,
                                             const Anchors& anchors) {
    for (const auto& aut : f.automorphisms()) {
        bool respects = true;
        for (const auto& [pv, hv] : anchors) {
            if (image[static_cast<std::size_t>(aut[static_cast<std::size_t>(pv)])] != hv) {
                respects = false;
                break;
            }
        }
        if (!respects) continue;
        for (std::size_t p = 0; p < image.size(); ++p) {
            int composed = image[static_cast<std::size_t>(aut[p])];
            if (composed < image[p]) return false; // a smaller orbit member exists
            if (composed > image[p]) break;
        }
    }
    return true;
}

// Pattern-vertex assignment order: anchored first, then by degree descending,
// index ascending. Fixed per call, so enumeration order is deterministic.
inline std::vector<int> assignment_order(const Pattern& f, const Anchors& anchors) {
    const Hypergraph& g = f.graph();
    std::vector<int> degree(static_cast<std::size_t>(g.n()), 0);
    for (VertexSet e : g.edges())
        for (int v : e) ++degree[static_cast<std::size_t>(v)];
    std::vector<int> order;
    for (const auto& [pv, hv] : anchors) order.push_back(pv);
    std::vector<int> rest;
    for (int p = 0; p < g.n(); ++p)
        if (!anchors.count(p)) rest.push_back(p);
    std::sort(rest.begin(), rest.end(), [&](int a, int b) {
        if (degree[static_cast<std::size_t>(a)] != degree[static_cast<std::size_t>(b)])
            return degree[static_cast<std::size_t>(a)] > degree[static_cast<std::size_t>(b)];
        return a < b;
    });
    order.insert(order.end(), rest.begin(), rest.end());
    return order;
}

} // namespace detail

// Streams every copy of F in H[allowed] respecting the anchors, exactly once
// up to pattern automorphism, in a deterministic order. The callback returns
// false to stop. Returns false if the callback stopped the stream.
template <typename Fn>
bool enumerate_embeddings(const Hypergraph& h, const Pattern& f, const Anchors& anchors,
                          VertexSet allowed, Fn&& yield) {
    const Hypergraph& g = f.graph();
    const int t = g.n();
    if (t > allowed.size()) return true;
    for (const auto& [pv, hv] : anchors) {
        if (pv < 0 || pv >= t)
            throw precondition_error("anchor pattern vertex out of range");
        if (hv < 0 || hv >= h.n() || !allowed.contains(hv))
            throw precondition_error("anchor host vertex out of range");
    }
    if (h.k() != g.k()) throw precondition_error("pattern and host uniformity differ");

    // Complete patterns: copies are t-cliques; enumerate images ascending with
    // incremental clique pruning (identity is canonical, no orbit check).
    if (f.is_complete() && anchors.empty()) {
        std::vector<int> verts = allowed.to_vector();
        std::vector<int> chosen;
        VertexSet chosen_set;
        auto rec = [&](auto&& self, std::size_t from) -> bool {
            if (static_cast<int>(chosen.size()) == t)
                return yield(Embedding{chosen});
            for (std::size_t i = from; i < verts.size(); ++i) {
                int v = verts[i];
                if (static_cast<int>(chosen.size()) >= h.k() - 1) {
                    bool ok = for_each_subset(chosen_set, h.k() - 1,
                                              [&](VertexSet s) { return h.is_edge(s.with(v)); });
                    if (!ok) continue;
                }
                chosen.push_back(v);
                chosen_set |= VertexSet::single(v);
                bool cont = self(self, i + 1);
                chosen.pop_back();
                chosen_set = chosen_set.without(v);
                if (!cont) return false;
            }
            return true;
        };
        return rec(rec, 0);
    }

    const std::vector<int> order = detail::assignment_order(f, anchors);

    // ready_edges[i]: pattern edges fully assigned once order[0..i] are placed.
    std::vector<std::vector<VertexSet>> ready(static_cast<std::size_t>(t));
    {
        std::vector<int> pos(static_cast<std::size_t>(t), 0);
        for (int i = 0; i < t; ++i) pos[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = i;
        for (VertexSet e : g.edges()) {
            int last = 0;
            for (int v : e) last = std::max(last, pos[static_cast<std::size_t>(v)]);
            ready[static_cast<std::size_t>(last)].push_back(e);
        }
    }

    std::vector<int> image(static_cast<std::size_t>(t), -1);
    VertexSet used;

    auto try_place = [&](int step, int hv) -> bool {
        const int pv = order[static_cast<std::size_t>(step)];
        image[static_cast<std::size_t>(pv)] = hv;
        for (VertexSet e : ready[static_cast<std::size_t>(step)]) {
            VertexSet mapped;
            for (int v : e) mapped |= VertexSet::single(image[static_cast<std::size_t>(v)]);
            if (!h.is_edge(mapped)) return false;
        }
        return true;
    };

    auto rec = [&](auto&& self, int step) -> bool {
        if (step == t) {
            if (!detail::is_canonical_under_automorphisms(f, image, anchors)) return true;
            return yield(Embedding{image});
        }
        const int pv = order[static_cast<std::size_t>(step)];
        auto it = anchors.find(pv);
        if (it != anchors.end()) {
            int hv = it->second;
            if (used.contains(hv)) return true;
            if (!try_place(step, hv)) {
                image[static_cast<std::size_t>(pv)] = -1;
                return true;
            }
            used |= VertexSet::single(hv);
            bool cont = self(self, step + 1);
            used = used.without(hv);
            image[static_cast<std::size_t>(pv)] = -1;
            return cont;
        }
        for (int hv : allowed - used) {
            if (!try_place(step, hv)) {
                image[static_cast<std::size_t>(pv)] = -1;
                continue;
            }
            used |= VertexSet::single(hv);
            bool cont = self(self, step + 1);
            used = used.without(hv);
            image[static_cast<std::size_t>(pv)] = -1;
            if (!cont) return false;
        }
        return true;
    };
    return rec(rec, 0);
}

template <typename Fn>
bool enumerate_embeddings(const Hypergraph& h, const Pattern& f, const Anchors& anchors, Fn&& yield) {
    return enumerate_embeddings(h, f, anchors, h.vertices(), std::forward<Fn>(yield));
}

inline std::vector<Embedding> all_embeddings(const Hypergraph& h, const Pattern& f,
                                             const Anchors& anchors = {}) {
    std::vector<Embedding> out;
    enumerate_embeddings(h, f, anchors, [&](const Embedding& e) {
        out.push_back(e);
        return true;
    });
    return out;
}

} // namespace hypertile
