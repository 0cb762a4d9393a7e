#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hypertile/design.hpp"
#include "hypertile/factor.hpp"
#include "hypertile/hypergraph.hpp"
#include "hypertile/pattern.hpp"

namespace hypertile {

struct StructuralCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

enum class FreeMethod { oracle, structural_argument, unchecked };

// Machine-checkable record of a construction's claimed properties. Every
// measured value is recomputed from the emitted hypergraph.
struct Certificate {
    std::string kind;
    std::string blocked_pattern;              // mini-grammar spec of the pattern
    std::vector<std::vector<int>> parts;      // the construction's partition
    int codegree_l = 0;                       // degree arity measured (k-1, or 1 for graphs)
    int measured_min_degree = 0;
    std::optional<long long> claimed_min_degree; // the closed-form claim, when one applies
    bool claim_applicable = false;
    bool divisible = false;                   // |F| divides n
    FreeMethod method = FreeMethod::unchecked;
    std::optional<bool> factor_exists;
    std::vector<StructuralCheck> checks;

    bool all_checks_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

struct Construction {
    Hypergraph graph;
    Certificate certificate;
};

namespace detail {

// Near-equal apportionment by largest remainder, deterministic index order.
inline std::vector<int> largest_remainder_sizes(int n, const std::vector<int>& weights) {
    int total_weight = 0;
    for (int w : weights) total_weight += w;
    std::vector<int> sizes(weights.size());
    std::vector<std::pair<int, std::size_t>> fractions; // (-remainder, index)
    int assigned = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        int quota_num = n * weights[i];
        sizes[i] = quota_num / total_weight;
        assigned += sizes[i];
        fractions.emplace_back(-(quota_num % total_weight), i);
    }
    std::sort(fractions.begin(), fractions.end());
    for (int r = 0; r < n - assigned; ++r)
        ++sizes[fractions[static_cast<std::size_t>(r)].second];
    return sizes;
}

inline std::vector<std::vector<int>> layout_parts(const std::vector<int>& sizes) {
    std::vector<std::vector<int>> parts;
    int next = 0;
    for (int s : sizes) {
        std::vector<int> part(static_cast<std::size_t>(s));
        std::iota(part.begin(), part.end(), next);
        next += s;
        parts.push_back(std::move(part));
    }
    return parts;
}

inline VertexSet to_set(const std::vector<int>& vs) { return VertexSet::of(vs); }

// Oracle verdict against the given clique pattern when size and divisibility
// allow; otherwise records why it went unchecked.
inline void attach_factor_verdict(Construction& c, const Pattern& f, const Caps& caps) {
    c.certificate.blocked_pattern = f.spec_string();
    c.certificate.divisible = c.graph.n() % f.size() == 0;
    if (!c.certificate.divisible) {
        c.certificate.method = FreeMethod::structural_argument;
        c.certificate.factor_exists = false;
        c.certificate.checks.push_back(
            {"divisibility", true, "|F| does not divide n, so no factor exists"});
        return;
    }
    if (c.graph.n() <= caps.oracle_n) {
        c.certificate.method = FreeMethod::oracle;
        c.certificate.factor_exists = exact_factor(c.graph, f, caps).has_value();
    } else {
        c.certificate.method = FreeMethod::unchecked;
    }
}

} // namespace detail

// Three near-equal parts with |V1| != |V2| (mod 2); a k-set is an edge iff
// its intersection with some part is odd. For k even this blocks every
// K_{k+1}^k-factor: each copy meets every part oddly, so part sizes would
// agree mod 2.
inline Construction parity_construction(int k, int n, const Caps& caps = {}) {
    if (n < k) throw precondition_error("need n >= k");
    if (k < 3) throw precondition_error("need k >= 3");
    std::vector<int> sizes = detail::largest_remainder_sizes(n, {1, 1, 1});
    if ((sizes[0] & 1) == (sizes[1] & 1)) {
        ++sizes[0];
        --sizes[2];
    }
    auto parts = detail::layout_parts(sizes);
    std::vector<VertexSet> part_sets;
    for (const auto& p : parts) part_sets.push_back(detail::to_set(p));

    std::vector<VertexSet> edges;
    for_each_subset(VertexSet::full(n), k, [&](VertexSet s) {
        for (VertexSet p : part_sets)
            if ((s & p).size() % 2 == 1) {
                edges.push_back(s);
                return;
            }
    });

    Construction c{Hypergraph(n, k, std::move(edges)), Certificate{}};
    c.certificate.kind = "parity";
    c.certificate.parts = parts;
    c.certificate.codegree_l = k - 1;
    c.certificate.measured_min_degree = c.graph.min_l_degree(k - 1);
    c.certificate.claim_applicable = (k % 2 == 0);
    if (c.certificate.claim_applicable)
        c.certificate.claimed_min_degree = (2 * n + 2) / 3 - 1; // ceil(2n/3) - 1

    c.certificate.checks.push_back(
        {"parity_imbalance", (sizes[0] & 1) != (sizes[1] & 1),
         "|V1| = " + std::to_string(sizes[0]) + ", |V2| = " + std::to_string(sizes[1])});

    Pattern f = Pattern::complete(k + 1, k);
    if (n <= 20) {
        // every K_{k+1}^k copy meets all three parts oddly
        bool all_odd = true;
        long long copies = 0;
        enumerate_embeddings(c.graph, f, {}, [&](const Embedding& e) {
            ++copies;
            for (VertexSet p : part_sets)
                if ((e.image_set() & p).size() % 2 == 0) {
                    all_odd = false;
                    return false;
                }
            return true;
        });
        c.certificate.checks.push_back({"copies_all_odd_intersections", all_odd,
                                        std::to_string(copies) + " copies enumerated"});
    }
    detail::attach_factor_verdict(c, f, caps);
    return c;
}

// All k-sets meeting a fixed W with |W| = (t-k+1)n/t - 1: every K_t^k copy
// needs t-k+1 vertices of W, and n/t copies would need more than |W|.
inline Construction space_barrier(int k, int t, int n, const Caps& caps = {}) {
    if (!(t > k && k >= 3)) throw precondition_error("need t > k >= 3");
    if (n % t != 0) throw precondition_error("need t | n");
    const int w = (t - k + 1) * (n / t) - 1;
    if (w < 1) throw precondition_error("W would be empty");
    VertexSet wset = VertexSet::full(w);

    std::vector<VertexSet> edges;
    for_each_subset(VertexSet::full(n), k, [&](VertexSet s) {
        if (s.intersects(wset)) edges.push_back(s);
    });

    Construction c{Hypergraph(n, k, std::move(edges)), Certificate{}};
    c.certificate.kind = "space_barrier";
    c.certificate.parts = {wset.to_vector(), (VertexSet::full(n) - wset).to_vector()};
    c.certificate.codegree_l = k - 1;
    c.certificate.measured_min_degree = c.graph.min_l_degree(k - 1);
    c.certificate.claim_applicable = n - w >= k - 1; // some (k-1)-set avoids W
    if (c.certificate.claim_applicable) c.certificate.claimed_min_degree = w;

    bool every_edge_meets = true;
    for (VertexSet e : c.graph.edges())
        if (!e.intersects(wset)) every_edge_meets = false;
    c.certificate.checks.push_back(
        {"every_edge_meets_W", every_edge_meets, "|W| = " + std::to_string(w)});

    Pattern f = Pattern::complete(t, k);
    if (n <= 20) {
        bool enough = true;
        long long copies = 0;
        enumerate_embeddings(c.graph, f, {}, [&](const Embedding& e) {
            ++copies;
            if ((e.image_set() & wset).size() < t - k + 1) {
                enough = false;
                return false;
            }
            return true;
        });
        c.certificate.checks.push_back({"copies_need_W_vertices", enough,
                                        std::to_string(copies) + " copies enumerated"});
    }
    const long long need = static_cast<long long>(n / t) * (t - k + 1);
    c.certificate.checks.push_back(
        {"counting_argument", need > w,
         std::to_string(n / t) + " copies x " + std::to_string(t - k + 1) + " > " +
             std::to_string(w)});
    detail::attach_factor_verdict(c, f, caps);
    return c;
}

// Parts A_0, A_1, ..., A_l (l = |H0|) with a_0 odd and a_0/lambda, a_i nearly
// equal; H collects the three mutually exclusive edge rules, and the emitted
// host is its complement, where every K_t^3 meets A_0 evenly.
inline Construction pikhurko_construction(int t, int n, int lambda, const Hypergraph& h0,
                                          const Caps& caps = {}) {
    if (h0.k() != 3) throw precondition_error("H0 must be a 3-graph");
    if (lambda < 1) throw precondition_error("lambda must be >= 1");
    if (t < 3) throw precondition_error("need t >= 3");
    if (n % t != 0) throw precondition_error("need t | n");

    // Preconditions on H0, verified before building.
    {
        std::optional<VertexSet> bad_pair;
        for_each_subset(h0.vertices(), 2, [&](VertexSet p) {
            if (h0.degree_of_set(p) > lambda) {
                bad_pair = p;
                return false;
            }
            return true;
        });
        if (bad_pair) {
            auto pv = bad_pair->to_vector();
            throw precondition_error("H0 has codegree > lambda at pair {" +
                                     std::to_string(pv[0]) + "," + std::to_string(pv[1]) + "}");
        }
    }
    IndependenceResult alpha = independence_number(h0, caps);
    if (!(alpha.size < t - 1)) {
        std::string who;
        for (int v : alpha.witness) who += (who.empty() ? "" : ",") + std::to_string(v);
        throw precondition_error("alpha(H0) = " + std::to_string(alpha.size) +
                                 " >= t-1; independent set {" + who + "}");
    }

    const int l = h0.n();
    std::vector<int> weights(static_cast<std::size_t>(l + 1), 1);
    weights[0] = lambda;
    std::vector<int> sizes = detail::largest_remainder_sizes(n, weights);

    auto constraints_ok = [&](const std::vector<int>& s) {
        if (s[0] % 2 == 0 || s[0] < 1) return false;
        for (std::size_t i = 1; i < s.size(); ++i) {
            if (s[i] < 0) return false;
            // |a_0/lambda - a_i| <= 1  <=>  |a_0 - lambda a_i| <= lambda
            if (std::abs(s[0] - lambda * s[i]) > lambda) return false;
            for (std::size_t j = i + 1; j < s.size(); ++j)
                if (std::abs(s[i] - s[j]) > 1) return false;
        }
        return true;
    };
    if (sizes[0] % 2 == 0) {
        // deterministic +-1 repair: shrink a_0 first, then grow it
        auto smallest = [&](bool want_min) {
            std::size_t pick = 1;
            for (std::size_t i = 2; i < sizes.size(); ++i) {
                if (want_min ? sizes[i] < sizes[pick] : sizes[i] > sizes[pick]) pick = i;
            }
            return pick;
        };
        std::vector<int> shrink = sizes;
        --shrink[0];
        ++shrink[smallest(true)];
        std::vector<int> grow = sizes;
        ++grow[0];
        --grow[smallest(false)];
        if (constraints_ok(shrink))
            sizes = shrink;
        else if (constraints_ok(grow))
            sizes = grow;
    }
    if (!constraints_ok(sizes))
        throw precondition_error("no near-equal part sizes with a_0 odd exist for these parameters");

    auto parts = detail::layout_parts(sizes);
    std::vector<VertexSet> part_sets;
    for (const auto& p : parts) part_sets.push_back(detail::to_set(p));

    // rule (a): inside A_0; (b) two in some A_i, one in A_0; (c) transversal
    // of an H0 edge
    auto classify = [&](VertexSet s) -> int {
        if (s.subset_of(part_sets[0])) return 0;
        for (int i = 1; i <= l; ++i) {
            VertexSet inner = s & part_sets[static_cast<std::size_t>(i)];
            if (inner.size() == 2 && (s - inner).subset_of(part_sets[0])) return 1;
        }
        VertexSet labels;
        for (int i = 1; i <= l; ++i)
            if (s.intersects(part_sets[static_cast<std::size_t>(i)])) {
                if ((s & part_sets[static_cast<std::size_t>(i)]).size() != 1) return -1;
                labels |= VertexSet::single(i - 1);
            }
        if (labels.size() == 3 && h0.is_edge(labels)) return 2;
        return -1;
    };

    std::vector<VertexSet> h_edges;
    for_each_subset(VertexSet::full(n), 3, [&](VertexSet s) {
        if (classify(s) >= 0) h_edges.push_back(s);
    });
    Hypergraph pre(n, 3, h_edges);

    Construction c{pre.complement(), Certificate{}};
    c.certificate.kind = "pikhurko";
    c.certificate.parts = parts;
    c.certificate.codegree_l = 2;
    c.certificate.measured_min_degree = c.graph.min_l_degree(2);
    c.certificate.claim_applicable = false;

    c.certificate.checks.push_back({"h0_codegree", true, "Delta_2(H0) <= " + std::to_string(lambda)});
    c.certificate.checks.push_back(
        {"h0_independence", alpha.size < t - 1,
         "alpha(H0) = " + std::to_string(alpha.size) + " < t-1 = " + std::to_string(t - 1)});
    c.certificate.checks.push_back({"a0_odd", sizes[0] % 2 == 1, "a_0 = " + std::to_string(sizes[0])});

    // mutual exclusivity re-derived edge by edge
    {
        bool exclusive = true;
        for (VertexSet e : pre.edges()) {
            int matches = 0;
            if (e.subset_of(part_sets[0])) ++matches;
            bool rule_b = false;
            for (int i = 1; i <= l && !rule_b; ++i) {
                VertexSet inner = e & part_sets[static_cast<std::size_t>(i)];
                if (inner.size() == 2 && (e - inner).subset_of(part_sets[0])) rule_b = true;
            }
            if (rule_b) ++matches;
            VertexSet labels;
            bool transversal = true;
            for (int i = 1; i <= l; ++i) {
                int hit = (e & part_sets[static_cast<std::size_t>(i)]).size();
                if (hit > 1) transversal = false;
                if (hit == 1) labels |= VertexSet::single(i - 1);
            }
            if (transversal && labels.size() == 3 && h0.is_edge(labels)) ++matches;
            if (matches != 1) {
                exclusive = false;
                break;
            }
        }
        c.certificate.checks.push_back(
            {"rules_mutually_exclusive", exclusive,
             std::to_string(pre.edge_count()) + " pre-complement edges classified"});
    }

    Pattern f = Pattern::complete(t, 3);
    if (n <= 20) {
        bool all_even = true;
        long long copies = 0;
        enumerate_embeddings(c.graph, f, {}, [&](const Embedding& e) {
            ++copies;
            if ((e.image_set() & part_sets[0]).size() % 2 == 1) {
                all_even = false;
                return false;
            }
            return true;
        });
        c.certificate.checks.push_back({"copies_meet_A0_evenly", all_even,
                                        std::to_string(copies) + " copies enumerated"});
    }
    detail::attach_factor_verdict(c, f, caps);
    return c;
}

// Complete t-partite 2-graph with |V_1| = n/t - 1 and |V_t| = n/t + 1: the
// short class blocks a K_t-factor while the minimum degree stays high.
inline Construction multipartite_graph_extremal(int t, int n, const Caps& caps = {}) {
    if (t < 2) throw precondition_error("need t >= 2");
    if (n % t != 0) throw precondition_error("need t | n");
    if (n / t < 2) throw precondition_error("need n/t >= 2 so V_1 is nonempty");
    std::vector<int> sizes(static_cast<std::size_t>(t), n / t);
    sizes.front() -= 1;
    sizes.back() += 1;
    auto parts = detail::layout_parts(sizes);
    std::vector<VertexSet> part_sets;
    for (const auto& p : parts) part_sets.push_back(detail::to_set(p));

    std::vector<VertexSet> edges;
    for_each_subset(VertexSet::full(n), 2, [&](VertexSet s) {
        for (VertexSet p : part_sets)
            if ((s & p).size() == 2) return;
        edges.push_back(s);
    });

    Construction c{Hypergraph(n, 2, std::move(edges)), Certificate{}};
    c.certificate.kind = "multipartite";
    c.certificate.parts = parts;
    c.certificate.codegree_l = 1;
    c.certificate.measured_min_degree = c.graph.min_l_degree(1);
    c.certificate.claim_applicable = true;
    c.certificate.claimed_min_degree = static_cast<long long>(t - 1) * (n / t) - 1;

    detail::attach_factor_verdict(c, Pattern::complete(t, 2), caps);
    return c;
}

} // namespace hypertile
