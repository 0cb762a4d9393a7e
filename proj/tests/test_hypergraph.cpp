#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <numeric>
#include <sstream>

#include "hypertile/hypergraph.hpp"
#include "hypertile/io.hpp"
#include "hypertile/prng.hpp"
#include "test_helpers.hpp"

using namespace hypertile;
using hypertile::testing::fano;
using hypertile::testing::graph_1based;
using hypertile::testing::random_hypergraph;

TEST_CASE("construction validates edges") {
    CHECK_THROWS_AS(Hypergraph(4, 3, {VertexSet{0, 1}}), precondition_error);
    CHECK_THROWS_AS(Hypergraph(3, 3, {VertexSet{0, 1, 3}}), precondition_error);
    CHECK_THROWS_AS(Hypergraph(4, 3, {VertexSet{0, 1, 2}, VertexSet{0, 1, 2}}), precondition_error);
    CHECK_THROWS_AS(Hypergraph(4, 1, {}), precondition_error);
}

TEST_CASE("degree_of_set") {
    // complete K_5^3, any pair -> n-2
    Hypergraph k5 = Hypergraph::complete(5, 3);
    CHECK(k5.degree_of_set(VertexSet{0, 1}) == 3);
    CHECK(k5.degree_of_set(VertexSet{2, 4}) == 3);

    Hypergraph h = graph_1based(5, 3, {{1, 2, 3}, {1, 2, 4}});
    CHECK(h.degree_of_set(VertexSet{0, 1}) == 2);
    CHECK(h.degree_of_set(VertexSet{0}) == 2);
    CHECK(h.degree_of_set(VertexSet{4}) == 0);

    CHECK_THROWS_AS(h.degree_of_set(VertexSet{0, 1, 2}), arity_error);
    CHECK_THROWS_AS(h.degree_of_set(VertexSet{}), arity_error);
}

TEST_CASE("min and max l-degree") {
    // K_n^k -> C(n-l, k-l)
    CHECK(Hypergraph::complete(6, 3).min_l_degree(2) == 4);
    CHECK(Hypergraph::complete(6, 3).min_l_degree(1) == 10);
    CHECK(Hypergraph::empty(6, 3).min_l_degree(2) == 0);
    CHECK(Hypergraph::complete(7, 3).max_l_degree(2) == 5);

    Hypergraph h = graph_1based(5, 3, {{1, 2, 3}, {1, 2, 4}});
    CHECK(h.max_l_degree(2) == 2);
    CHECK(h.min_l_degree(2) == 0);

    CHECK(fano().max_l_degree(2) == 1);
    CHECK(fano().min_l_degree(2) == 1);
    CHECK(fano().min_l_degree(1) == 3);

    CHECK_THROWS_AS(h.min_l_degree(0), arity_error);
    CHECK_THROWS_AS(h.min_l_degree(3), arity_error);
}

TEST_CASE("neighborhood") {
    Hypergraph h = graph_1based(5, 3, {{1, 2, 3}, {1, 2, 4}});
    auto nb = h.neighborhood(VertexSet{0, 1});
    REQUIRE(nb.size() == 2);
    CHECK(nb[0] == VertexSet{2});
    CHECK(nb[1] == VertexSet{3});

    auto nb1 = Hypergraph::complete(4, 3).neighborhood(VertexSet{0});
    CHECK(nb1.size() == 3); // all pairs from {1,2,3}

    CHECK(Hypergraph::empty(5, 3).neighborhood(VertexSet{1, 2}).empty());
    CHECK(static_cast<std::size_t>(h.degree_of_set(VertexSet{0, 1})) == nb.size());
}

TEST_CASE("link_set") {
    // |S| < k-1: everything outside S
    Hypergraph h = Hypergraph::empty(5, 3);
    CHECK(h.link_set(VertexSet{1}) == VertexSet{0, 2, 3, 4});

    // K_4^3, S = {0,1,2} -> {3}
    CHECK(Hypergraph::complete(4, 3).link_set(VertexSet{0, 1, 2}) == VertexSet{3});

    // complete host, any |S| >= k-1 -> V \ S
    Hypergraph k7 = Hypergraph::complete(7, 3);
    CHECK(k7.link_set(VertexSet{1, 3, 5, 6}) == VertexSet{0, 2, 4});

    // |S| = k-1: link = union of singleton neighbourhood
    Hypergraph g = graph_1based(5, 3, {{1, 2, 3}, {1, 2, 4}});
    CHECK(g.link_set(VertexSet{0, 1}) == VertexSet{2, 3});
    CHECK_THROWS_AS(g.link_set(VertexSet{}), arity_error);
}

TEST_CASE("induced and complement") {
    Hypergraph k5 = Hypergraph::complete(5, 3);
    auto ind = induced(k5, VertexSet{0, 2, 3, 4});
    CHECK(ind.graph == Hypergraph::complete(4, 3));
    CHECK(ind.vertex_map == std::vector<int>{0, 2, 3, 4});

    Hypergraph e5 = Hypergraph::empty(5, 3);
    CHECK(e5.complement() == k5);
    CHECK(e5.complement().edge_count() == 10);
    CHECK(k5.complement().edge_count() == 0);
}

TEST_CASE("text format round trip and parse errors") {
    std::istringstream in("4 3\n1 2 3\n");
    Hypergraph h = read_hypergraph_stream(in);
    CHECK(h.n() == 4);
    CHECK(h.k() == 3);
    REQUIRE(h.edge_count() == 1);
    CHECK(h.edges()[0] == VertexSet{0, 1, 2});

    auto parse = [](const std::string& text) {
        std::istringstream s(text);
        return read_hypergraph_stream(s);
    };

    CHECK_THROWS_AS(parse("4 3\n1 2 3\n1 2 3\n"), parse_error);
    CHECK_THROWS_AS(parse("x 3\n"), parse_error);
    CHECK_THROWS_AS(parse("4 3\n1 2\n"), parse_error);
    CHECK_THROWS_AS(parse("4 3\n1 2 9\n"), parse_error);
    CHECK_THROWS_AS(parse(""), parse_error);
    CHECK_THROWS_AS(parse("4 3\n1 2 2\n"), parse_error);

    try {
        parse("4 3\n1 2 3\n1 2 3\n");
        FAIL("expected duplicate edge error");
    } catch (const parse_error& e) {
        CHECK(e.which() == parse_error::kind::duplicate_edge);
        CHECK(e.line() == 3);
    }

    // comments and blank lines are skipped; writer output is canonical
    std::istringstream with_comments("# header comment\n5 3\n\n2 1 3\n# mid\n4 5 1\n");
    Hypergraph g = read_hypergraph_stream(with_comments);
    std::ostringstream out;
    write_hypergraph_stream(g, out);
    CHECK(out.str() == "5 3\n1 2 3\n1 4 5\n");

    std::istringstream back(out.str());
    CHECK(read_hypergraph_stream(back) == g);
}

TEST_CASE("round trip through files") {
    Hypergraph k5 = Hypergraph::complete(5, 3);
    std::string path = "k5_roundtrip.hg";
    write_hypergraph(k5, path);
    CHECK(read_hypergraph(path) == k5);
    std::remove(path.c_str());
}

TEST_CASE("handshake and complement involution over random hosts", "[property]") {
    SplitMix64 rng(2024);
    for (int iter = 0; iter < 300; ++iter) {
        int n = 4 + static_cast<int>(rng.next_below(9)); // 4..12
        int k = 2 + static_cast<int>(rng.next_below(3)); // 2..4
        if (k > n) k = n;
        Hypergraph h = random_hypergraph(n, k, 0.4, rng);

        for (int l = 1; l <= k - 1; ++l) {
            long long total = 0;
            for_each_subset(h.vertices(), l, [&](VertexSet t) { total += h.degree_of_set(t); });
            CHECK(total == static_cast<long long>(binomial_u64(k, l) * h.edge_count()));

            // min <= average <= max
            double avg = static_cast<double>(binomial_u64(k, l)) *
                         static_cast<double>(h.edge_count()) /
                         static_cast<double>(binomial_u64(n, l));
            CHECK(h.min_l_degree(l) <= avg + 1e-9);
            CHECK(h.max_l_degree(l) + 1e-9 >= avg);
        }

        CHECK(h.complement().complement() == h);
        CHECK(h.edge_count() + h.complement().edge_count() == binomial_u64(n, k));

        // file round trip
        std::ostringstream out;
        write_hypergraph_stream(h, out);
        std::istringstream in(out.str());
        CHECK(read_hypergraph_stream(in) == h);
    }
}

TEST_CASE("degree multiset is isomorphism invariant", "[property]") {
    SplitMix64 rng(7);
    for (int iter = 0; iter < 50; ++iter) {
        int n = 5 + static_cast<int>(rng.next_below(5));
        Hypergraph h = random_hypergraph(n, 3, 0.5, rng);
        std::vector<int> perm(static_cast<std::size_t>(n));
        std::iota(perm.begin(), perm.end(), 0);
        seeded_shuffle(perm, rng);
        Hypergraph g = h.relabeled(perm);

        auto degrees = [](const Hypergraph& x) {
            std::vector<int> d;
            for_each_subset(x.vertices(), 2, [&](VertexSet t) { d.push_back(x.degree_of_set(t)); });
            std::sort(d.begin(), d.end());
            return d;
        };
        CHECK(degrees(h) == degrees(g));
        CHECK(h.edge_count() == g.edge_count());
        CHECK(h.min_l_degree(2) == g.min_l_degree(2));

        // neighbourhood transforms with the permutation
        VertexSet t{0, 1};
        VertexSet t_mapped;
        for (int v : t) t_mapped |= VertexSet::single(perm[static_cast<std::size_t>(v)]);
        auto nb = h.neighborhood(t);
        auto nb_mapped = g.neighborhood(t_mapped);
        REQUIRE(nb.size() == nb_mapped.size());
        std::vector<std::uint64_t> lhs, rhs;
        for (VertexSet s : nb) {
            VertexSet m;
            for (int v : s) m |= VertexSet::single(perm[static_cast<std::size_t>(v)]);
            lhs.push_back(m.mask());
        }
        for (VertexSet s : nb_mapped) rhs.push_back(s.mask());
        std::sort(lhs.begin(), lhs.end());
        std::sort(rhs.begin(), rhs.end());
        CHECK(lhs == rhs);
    }
}
