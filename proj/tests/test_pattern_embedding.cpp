#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "hypertile/embedding.hpp"
#include "hypertile/pattern.hpp"
#include "test_helpers.hpp"

using namespace hypertile;
using hypertile::testing::graph_1based;
using hypertile::testing::random_hypergraph;

TEST_CASE("named families expand correctly") {
    Pattern k43 = Pattern::complete(4, 3);
    CHECK(k43.size() == 4);
    CHECK(k43.k() == 3);
    CHECK(k43.graph().edge_count() == 4);
    CHECK(k43.spec_string() == "K:4:3");

    Pattern single_edge = Pattern::complete(3, 3);
    CHECK(single_edge.graph().edge_count() == 1);

    Pattern kp = Pattern::complete_partite_uniform(3, 2); // K_3^3(2)
    CHECK(kp.size() == 6);
    CHECK(kp.graph().edge_count() == 8);

    Pattern b1 = Pattern::book(1); // K_3^3(1,1,2)
    CHECK(b1.size() == 4);
    CHECK(b1.graph().edge_count() == 2);
    CHECK(b1.spec_string() == "B:1");

    CHECK_THROWS_AS(Pattern::complete(2, 3), precondition_error);
}

TEST_CASE("automorphism groups") {
    CHECK(Pattern::complete(4, 3).automorphisms().size() == 24);
    CHECK(Pattern::book(1).automorphisms().size() == 4);      // swap pair, swap petals
    CHECK(Pattern::complete_partite_uniform(2, 2).automorphisms().size() == 8); // C4: dihedral
}

TEST_CASE("embedding counts match unordered copies") {
    // K_4^3 in K_5^3 -> C(5,4) = 5
    CHECK(all_embeddings(Hypergraph::complete(5, 3), Pattern::complete(4, 3)).size() == 5);

    // B_1 in {123,124} -> exactly the pair {1,2} with petals {3,4}
    Hypergraph h = graph_1based(5, 3, {{1, 2, 3}, {1, 2, 4}});
    auto books = all_embeddings(h, Pattern::book(1));
    REQUIRE(books.size() == 1);
    CHECK(books[0].image_set() == VertexSet{0, 1, 2, 3});

    // K_2^2(2) in K_4^2 -> 3 unordered bipartitions
    CHECK(all_embeddings(Hypergraph::complete(4, 2), Pattern::complete_partite_uniform(2, 2)).size() == 3);

    // single edge pattern: one embedding per edge
    Hypergraph g = graph_1based(6, 3, {{1, 2, 3}, {2, 3, 4}, {4, 5, 6}});
    CHECK(all_embeddings(g, Pattern::complete(3, 3)).size() == g.edge_count());
}

TEST_CASE("anchored enumeration") {
    Hypergraph k5 = Hypergraph::complete(5, 3);
    Pattern f = Pattern::complete(4, 3);
    // copies of K_4^3 through host vertex 0, anchored at pattern vertex 0
    auto through0 = all_embeddings(k5, f, Anchors{{0, 0}});
    CHECK(through0.size() == 4); // C(4,3) choices of the other three
    for (const auto& e : through0) CHECK(e.image_set().contains(0));

    CHECK_THROWS_AS(all_embeddings(k5, f, Anchors{{0, 9}}), precondition_error);
}

namespace {

// Independent reference: enumerate all injective edge-preserving maps by
// brute force and count distinct copies as (image set, image edge set) pairs.
long long brute_force_copy_count(const Hypergraph& h, const Pattern& f) {
    const Hypergraph& g = f.graph();
    std::vector<int> image(static_cast<std::size_t>(g.n()), -1);
    std::set<std::pair<std::uint64_t, std::vector<std::uint64_t>>> seen;
    VertexSet used;
    auto rec = [&](auto&& self, int p) -> void {
        if (p == g.n()) {
            std::vector<std::uint64_t> edge_images;
            for (VertexSet e : g.edges()) {
                VertexSet m;
                for (int v : e) m |= VertexSet::single(image[static_cast<std::size_t>(v)]);
                edge_images.push_back(m.mask());
            }
            std::sort(edge_images.begin(), edge_images.end());
            VertexSet img;
            for (int v : image) img |= VertexSet::single(v);
            seen.insert({img.mask(), edge_images});
            return;
        }
        for (int hv = 0; hv < h.n(); ++hv) {
            if (used.contains(hv)) continue;
            image[static_cast<std::size_t>(p)] = hv;
            bool ok = true;
            for (VertexSet e : g.edges()) {
                bool complete = true;
                VertexSet m;
                for (int v : e) {
                    if (image[static_cast<std::size_t>(v)] < 0) {
                        complete = false;
                        break;
                    }
                    m |= VertexSet::single(image[static_cast<std::size_t>(v)]);
                }
                if (complete && !h.is_edge(m)) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                used |= VertexSet::single(hv);
                self(self, p + 1);
                used = used.without(hv);
            }
            image[static_cast<std::size_t>(p)] = -1;
        }
    };
    rec(rec, 0);
    return static_cast<long long>(seen.size());
}

} // namespace

TEST_CASE("enumeration agrees with a brute-force copy count", "[property]") {
    SplitMix64 rng(314);
    std::vector<Pattern> patterns{Pattern::book(1), Pattern::complete(4, 3),
                                  Pattern::complete_partite(3, {1, 1, 2})};
    for (int iter = 0; iter < 20; ++iter) {
        Hypergraph h = random_hypergraph(7, 3, 0.5, rng);
        for (const Pattern& f : patterns)
            CHECK(static_cast<long long>(all_embeddings(h, f).size()) ==
                  brute_force_copy_count(h, f));
    }
    // 2-graphs: squares in random graphs
    for (int iter = 0; iter < 10; ++iter) {
        Hypergraph h = random_hypergraph(6, 2, 0.5, rng);
        Pattern square = Pattern::complete_partite_uniform(2, 2);
        CHECK(static_cast<long long>(all_embeddings(h, square).size()) ==
              brute_force_copy_count(h, square));
    }
}

TEST_CASE("embedding count is isomorphism invariant", "[property]") {
    SplitMix64 rng(11);
    Pattern f = Pattern::book(1);
    for (int iter = 0; iter < 30; ++iter) {
        Hypergraph h = random_hypergraph(7, 3, 0.45, rng);
        std::vector<int> perm{0, 1, 2, 3, 4, 5, 6};
        seeded_shuffle(perm, rng);
        CHECK(all_embeddings(h, f).size() == all_embeddings(h.relabeled(perm), f).size());
    }
}
