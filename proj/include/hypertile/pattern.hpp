#pragma once

#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "hypertile/hypergraph.hpp"

namespace hypertile {

// The k-graph F being tiled: an explicit small hypergraph or one of the named
// families. Named families expand once; automorphisms are computed lazily and
// shared, so patterns copy cheaply.
class Pattern {
public:
    // K_t^k: complete k-graph on t vertices. t == k is a single edge, so
    // tiling with it is a perfect matching.
    static Pattern complete(int t, int k) {
        if (t < k) throw precondition_error("K_t^k needs t >= k");
        Pattern p(Hypergraph::complete(t, k), "K:" + std::to_string(t) + ":" + std::to_string(k));
        p.complete_ = true;
        return p;
    }

    // K_k^k(m_1,...,m_k): complete k-partite k-graph, edges = transversals.
    static Pattern complete_partite(int k, const std::vector<int>& part_sizes) {
        if (static_cast<int>(part_sizes.size()) != k)
            throw precondition_error("K_k^k(m_1..m_k) needs exactly k part sizes");
        int t = 0;
        for (int m : part_sizes) {
            if (m < 1) throw precondition_error("part sizes must be >= 1");
            t += m;
        }
        std::vector<std::vector<int>> parts;
        int next = 0;
        for (int m : part_sizes) {
            std::vector<int> part(static_cast<std::size_t>(m));
            std::iota(part.begin(), part.end(), next);
            next += m;
            parts.push_back(std::move(part));
        }
        std::vector<VertexSet> edges;
        std::vector<int> pick(static_cast<std::size_t>(k), 0);
        while (true) {
            VertexSet e;
            for (int i = 0; i < k; ++i)
                e |= VertexSet::single(parts[static_cast<std::size_t>(i)]
                                            [static_cast<std::size_t>(pick[static_cast<std::size_t>(i)])]);
            edges.push_back(e);
            int i = k - 1;
            while (i >= 0 && pick[static_cast<std::size_t>(i)] + 1 == part_sizes[static_cast<std::size_t>(i)]) {
                pick[static_cast<std::size_t>(i)] = 0;
                --i;
            }
            if (i < 0) break;
            ++pick[static_cast<std::size_t>(i)];
        }
        std::string name = "KP:" + std::to_string(k) + ":";
        for (std::size_t i = 0; i < part_sizes.size(); ++i) {
            if (i) name += ',';
            name += std::to_string(part_sizes[i]);
        }
        return Pattern(Hypergraph(t, k, std::move(edges)), name);
    }

    // Uniform parts: K_k^k(m).
    static Pattern complete_partite_uniform(int k, int m) {
        return complete_partite(k, std::vector<int>(static_cast<std::size_t>(k), m));
    }

    // B_lambda = K_3^3(1,1,lambda+1): one pair with lambda+1 petals.
    static Pattern book(int lambda) {
        if (lambda < 0) throw precondition_error("B_lambda needs lambda >= 0");
        Pattern p = complete_partite(3, {1, 1, lambda + 1});
        p.name_ = "B:" + std::to_string(lambda);
        return p;
    }

    static Pattern explicit_graph(Hypergraph f) {
        if (f.n() < f.k()) throw precondition_error("pattern needs |F| >= k");
        return Pattern(std::move(f), "");
    }

    const Hypergraph& graph() const { return *graph_; }
    int size() const { return graph_->n(); }
    int k() const { return graph_->k(); }
    bool is_complete() const { return complete_; }

    // Mini-grammar name for named families, empty for explicit patterns.
    const std::string& spec_string() const { return name_; }

    // All edge-preserving vertex permutations, brute-forced once per pattern
    // with partial-edge pruning; patterns here have at most ~12 vertices.
    const std::vector<std::vector<int>>& automorphisms() const {
        if (auts_->empty()) compute_automorphisms();
        return *auts_;
    }

private:
    Pattern(Hypergraph g, std::string name)
        : graph_(std::make_shared<Hypergraph>(std::move(g))),
          name_(std::move(name)),
          auts_(std::make_shared<std::vector<std::vector<int>>>()) {}

    void compute_automorphisms() const {
        const Hypergraph& g = *graph_;
        const int t = g.n();
        std::vector<int> degree(static_cast<std::size_t>(t), 0);
        for (VertexSet e : g.edges())
            for (int v : e) ++degree[static_cast<std::size_t>(v)];

        std::vector<int> perm(static_cast<std::size_t>(t), -1);
        std::vector<bool> used(static_cast<std::size_t>(t), false);
        std::vector<std::vector<int>>& out = *auts_;

        // Edges whose vertices are all assigned once position p is filled.
        std::vector<std::vector<VertexSet>> ready(static_cast<std::size_t>(t));
        for (VertexSet e : g.edges()) {
            int last = 0;
            for (int v : e) last = std::max(last, v);
            ready[static_cast<std::size_t>(last)].push_back(e);
        }

        auto rec = [&](auto&& self, int pos) -> void {
            if (pos == t) {
                out.push_back(perm);
                return;
            }
            for (int img = 0; img < t; ++img) {
                if (used[static_cast<std::size_t>(img)]) continue;
                if (degree[static_cast<std::size_t>(pos)] != degree[static_cast<std::size_t>(img)]) continue;
                perm[static_cast<std::size_t>(pos)] = img;
                used[static_cast<std::size_t>(img)] = true;
                bool ok = true;
                for (VertexSet e : ready[static_cast<std::size_t>(pos)]) {
                    VertexSet mapped;
                    for (int v : e) mapped |= VertexSet::single(perm[static_cast<std::size_t>(v)]);
                    if (!g.is_edge(mapped)) {
                        ok = false;
                        break;
                    }
                }
                if (ok) self(self, pos + 1);
                used[static_cast<std::size_t>(img)] = false;
            }
            perm[static_cast<std::size_t>(pos)] = -1;
        };
        rec(rec, 0);
    }

    std::shared_ptr<Hypergraph> graph_;
    std::string name_;
    bool complete_ = false;
    std::shared_ptr<std::vector<std::vector<int>>> auts_;
};

} // namespace hypertile
