#pragma once

#include <json.hpp>

#include "hypertile/absorbing.hpp"
#include "hypertile/closeness.hpp"
#include "hypertile/constructions.hpp"
#include "hypertile/design.hpp"
#include "hypertile/local_search.hpp"
#include "hypertile/parameters.hpp"
#include "hypertile/pipeline.hpp"
#include "hypertile/tiling.hpp"

// Serialized artifacts use 1-based vertex ids, matching the hypergraph text
// format; the C++ API stays 0-based.

namespace hypertile {

using Json = nlohmann::json;

inline Json json_vertices(VertexSet s) {
    Json arr = Json::array();
    for (int v : s) arr.push_back(v + 1);
    return arr;
}

inline Json json_vertices(const std::vector<int>& vs) {
    Json arr = Json::array();
    for (int v : vs) arr.push_back(v + 1);
    return arr;
}

inline Json to_json(const Pattern& f) {
    if (!f.spec_string().empty()) return f.spec_string();
    Json edges = Json::array();
    for (VertexSet e : f.graph().edges()) edges.push_back(json_vertices(e));
    return Json{{"n", f.graph().n()}, {"k", f.graph().k()}, {"edges", edges}};
}

inline Json to_json(const Tiling& t) {
    Json copies = Json::array();
    for (const auto& e : t.copies) {
        std::vector<int> img = e.image;
        std::sort(img.begin(), img.end());
        copies.push_back(json_vertices(img));
    }
    return Json{{"pattern", to_json(t.pattern)},
                {"copies", copies},
                {"leftover", json_vertices(t.leftover)}};
}

inline Json to_json(const MoveRecord& m) {
    return Json{{"type", m.type},
                {"parts", m.parts_touched},
                {"weight_before", to_fraction_string(m.weight_before)},
                {"weight_after", to_fraction_string(m.weight_after)}};
}

inline Json to_json(const TPartition& p) {
    Json parts = Json::array(), cliques = Json::array();
    for (VertexSet s : p.parts) parts.push_back(json_vertices(s));
    for (VertexSet s : p.cliques) cliques.push_back(json_vertices(s));
    return Json{{"t", p.t},
                {"parts", parts},
                {"cliques", cliques},
                {"total_weight", to_fraction_string(p.total_weight)}};
}

inline Json to_json(const AbsorbingFamily& f) {
    Json members = Json::array();
    for (VertexSet m : f.members) members.push_back(json_vertices(m));
    return Json{{"U", json_vertices(f.used)}, {"members", members}, {"t", f.t}, {"i", f.level}};
}

inline Json to_json(const Certificate& c) {
    Json parts = Json::array();
    for (const auto& p : c.parts) parts.push_back(json_vertices(p));
    Json checks = Json::array();
    for (const auto& chk : c.checks)
        checks.push_back(Json{{"name", chk.name}, {"pass", chk.pass}, {"detail", chk.detail}});
    const char* method = c.method == FreeMethod::oracle              ? "oracle"
                         : c.method == FreeMethod::structural_argument ? "structural-argument"
                                                                       : "unchecked";
    Json out{{"kind", c.kind},
             {"pattern", c.blocked_pattern},
             {"parts", parts},
             {"codegree_l", c.codegree_l},
             {"measured_min_degree", c.measured_min_degree},
             {"claim_applicable", c.claim_applicable},
             {"divisible", c.divisible},
             {"factor_freeness", method},
             {"checks", checks}};
    out["claimed_min_degree"] =
        c.claimed_min_degree ? Json(*c.claimed_min_degree) : Json(nullptr);
    out["factor_exists"] = c.factor_exists ? Json(*c.factor_exists) : Json(nullptr);
    return out;
}

inline Json to_json(const ThresholdRow& r) {
    Json out{{"k", r.k},
             {"t", r.t},
             {"l0", r.l0},
             {"beta", to_fraction_string(r.beta)},
             {"d", to_fraction_string(r.d)},
             {"codegree_coefficient", to_fraction_string(r.codegree_coefficient)},
             {"coefficient", to_fraction_string(r.coefficient)}};
    out["successor_coefficient"] =
        r.successor_coefficient ? Json(to_fraction_string(*r.successor_coefficient)) : Json(nullptr);
    return out;
}

inline Json to_json(const DesignState& d) {
    Json blocks = Json::array();
    for (const auto& b : d.blocks) blocks.push_back(json_vertices(b));
    return Json{{"n", d.n},     {"k", d.k},       {"t", d.t},
                {"lambda", d.lambda}, {"seed", d.seed}, {"blocks", blocks},
                {"maximal", d.maximal}};
}

inline Json to_json(const ClosedPartition& p) {
    Json classes = Json::array();
    for (VertexSet c : p.classes) classes.push_back(json_vertices(c));
    return Json{{"classes", classes}, {"all_cliques", p.all_cliques}};
}

inline Json to_json(const PipelineResult& r) {
    Json steps = Json::array();
    for (const auto& s : r.steps)
        steps.push_back(Json{{"name", s.name},
                             {"ok", s.ok},
                             {"detail", s.detail},
                             {"wall_ms", s.wall_ms}});
    Json out{{"steps", steps},
             {"level_used", r.level_used},
             {"closeness_classes", r.closeness_classes},
             {"closeness_all_cliques", r.closeness_all_cliques},
             {"result", r.tiling ? "factor" : "failure"}};
    if (!r.failing_step.empty()) out["failing_step"] = r.failing_step;
    if (r.family) out["family"] = to_json(*r.family);
    if (r.tiling) out["tiling"] = to_json(*r.tiling);
    return out;
}

} // namespace hypertile
