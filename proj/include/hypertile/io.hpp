#pragma once

#include <cctype>
#include <fstream>
#include <sstream>
#include <string>
#include <unordered_set>

#include "hypertile/errors.hpp"
#include "hypertile/hypergraph.hpp"

namespace hypertile {

// Text format: line 1 = "n k"; each following non-empty line = k
// space-separated 1-based vertex ids; '#' starts a comment line.

inline Hypergraph read_hypergraph_stream(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    int n = -1, k = -1;
    std::vector<VertexSet> edges;
    std::unordered_set<std::uint64_t> seen;

    auto is_comment_or_blank = [](const std::string& s) {
        for (char c : s) {
            if (c == '#') return true;
            if (!std::isspace(static_cast<unsigned char>(c))) return false;
        }
        return true;
    };

    while (std::getline(in, line)) {
        ++lineno;
        if (is_comment_or_blank(line)) continue;
        std::istringstream ls(line);
        if (n < 0) {
            std::string extra;
            if (!(ls >> n >> k) || (ls >> extra) || n < 0 || k < 2)
                throw parse_error(parse_error::kind::bad_header, lineno,
                                  "expected header \"n k\" with n >= 0, k >= 2");
            continue;
        }
        VertexSet e;
        int count = 0;
        int v;
        while (ls >> v) {
            if (v < 1 || v > n)
                throw parse_error(parse_error::kind::vertex_out_of_range, lineno,
                                  "vertex " + std::to_string(v) + " outside 1.." + std::to_string(n));
            if (e.contains(v - 1))
                throw parse_error(parse_error::kind::bad_arity, lineno,
                                  "repeated vertex " + std::to_string(v) + " in edge");
            e |= VertexSet::single(v - 1);
            ++count;
        }
        if (!ls.eof())
            throw parse_error(parse_error::kind::bad_arity, lineno, "non-integer token in edge line");
        if (count != k)
            throw parse_error(parse_error::kind::bad_arity, lineno,
                              "edge line with " + std::to_string(count) + " vertices, expected " +
                                  std::to_string(k));
        if (!seen.insert(e.mask()).second)
            throw parse_error(parse_error::kind::duplicate_edge, lineno, "duplicate edge");
        edges.push_back(e);
    }
    if (n < 0) throw parse_error(parse_error::kind::bad_header, lineno, "missing header line");
    return Hypergraph(n, k, std::move(edges));
}

inline Hypergraph read_hypergraph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open " + path + " for reading");
    return read_hypergraph_stream(in);
}

inline void write_hypergraph_stream(const Hypergraph& h, std::ostream& out) {
    out << h.n() << ' ' << h.k() << '\n';
    for (VertexSet e : h.edges()) {
        bool first = true;
        for (int v : e) {
            if (!first) out << ' ';
            out << (v + 1);
            first = false;
        }
        out << '\n';
    }
}

inline void write_hypergraph(const Hypergraph& h, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot open " + path + " for writing");
    write_hypergraph_stream(h, out);
    if (!out) throw io_error("write failed for " + path);
}

} // namespace hypertile
