#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hypertile/embedding.hpp"
#include "hypertile/hypergraph.hpp"
#include "hypertile/pattern.hpp"

namespace hypertile {

// A set of vertex-disjoint copies of a pattern in a host, plus the uncovered
// vertices. Perfect when leftover is empty. Non-owning host reference: hosts
// outlive the tilings derived from them.
struct Tiling {
    const Hypergraph* host = nullptr;
    Pattern pattern;
    std::vector<Embedding> copies;
    VertexSet leftover;

    VertexSet covered() const {
        VertexSet c;
        for (const auto& e : copies) c |= e.image_set();
        return c;
    }

    bool perfect() const { return leftover.empty(); }
};

struct TilingReport {
    bool pass = true;
    std::string first_violation;
};

// Re-checks every Tiling invariant from scratch: image injectivity and range,
// edge preservation against the host, pairwise disjointness, leftover
// arithmetic.
inline TilingReport verify_tiling(const Tiling& tiling) {
    auto fail = [](std::string why) { return TilingReport{false, std::move(why)}; };
    if (tiling.host == nullptr) return fail("no host");
    const Hypergraph& h = *tiling.host;
    const Hypergraph& f = tiling.pattern.graph();
    VertexSet used;
    for (std::size_t i = 0; i < tiling.copies.size(); ++i) {
        const auto& image = tiling.copies[i].image;
        if (static_cast<int>(image.size()) != f.n())
            return fail("copy " + std::to_string(i) + ": image size != |F|");
        VertexSet img;
        for (int v : image) {
            if (v < 0 || v >= h.n()) return fail("copy " + std::to_string(i) + ": vertex out of range");
            img |= VertexSet::single(v);
        }
        if (img.size() != f.n()) return fail("copy " + std::to_string(i) + ": repeated image vertex");
        for (VertexSet e : f.edges()) {
            VertexSet mapped;
            for (int v : e) mapped |= VertexSet::single(image[static_cast<std::size_t>(v)]);
            if (!h.is_edge(mapped))
                return fail("copy " + std::to_string(i) + ": edge-preservation (non-edge in image)");
        }
        if (img.intersects(used)) return fail("copy " + std::to_string(i) + ": disjointness");
        used |= img;
    }
    if ((h.vertices() - used) != tiling.leftover) return fail("leftover arithmetic");
    return TilingReport{};
}

} // namespace hypertile
