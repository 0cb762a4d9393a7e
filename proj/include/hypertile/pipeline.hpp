#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include "hypertile/absorbing.hpp"
#include "hypertile/closeness.hpp"
#include "hypertile/local_search.hpp"

namespace hypertile {

enum class Step1Strategy { alpha_good, none };

struct PipelineConfig {
    Step1Strategy step1 = Step1Strategy::alpha_good;
    Rational alpha = Rational(1, 4);
    int level = 1;                 // closeness iteration i
    bool allow_escalation = true;  // raise i when the closeness diagnostic is not one clique
    long long tau = 1;
    int capacity_target = 1;
    FamilyMode family_mode = FamilyMode::greedy;
    std::uint64_t seed = 0;
    int restarts = 8;
    int threads = 1;
};

struct PipelineStep {
    std::string name;
    bool ok = false;
    std::string detail;
    double wall_ms = 0.0;
};

struct PipelineResult {
    std::optional<Tiling> tiling; // a verified perfect F-factor when set
    std::optional<AbsorbingFamily> family;
    std::vector<PipelineStep> steps;
    std::string failing_step; // empty on success
    int level_used = 1;
    int closeness_classes = 0;
    bool closeness_all_cliques = false;
};

namespace detail {

// Deterministic maximal tiling for general patterns: repeatedly take the
// first copy the enumerator yields inside the remaining vertices.
inline std::vector<Embedding> greedy_maximal_tiling(const Hypergraph& h, const Pattern& f,
                                                    VertexSet universe) {
    std::vector<Embedding> copies;
    VertexSet allowed = universe;
    while (allowed.size() >= f.size()) {
        std::optional<Embedding> first;
        enumerate_embeddings(h, f, {}, allowed, [&](const Embedding& e) {
            first = e;
            return false;
        });
        if (!first) break;
        copies.push_back(*first);
        allowed = allowed - first->image_set();
    }
    return copies;
}

class StepTimer {
public:
    StepTimer() : start_(std::chrono::steady_clock::now()) {}
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

} // namespace detail

// The four-step absorption pipeline. Never returns a silent partial answer:
// either a verified perfect tiling or a structured report naming the failing
// step.
inline PipelineResult run_absorption_pipeline(const Hypergraph& h, const Pattern& f,
                                              const PipelineConfig& cfg = {},
                                              const Caps& caps = {}) {
    if (f.size() == 0 || h.n() % f.size() != 0)
        throw divisibility_error("|F| does not divide n");
    const int t = f.size();

    PipelineResult result;
    FactorCache cache(h, f);

    // Closeness diagnostic: drives the iteration level per the escalation
    // rule; a disconnected closeness graph is recorded, not fatal here.
    int level = cfg.level;
    {
        detail::StepTimer timer;
        PipelineStep step{"closeness_diagnostic", true, "", 0.0};
        ClosenessGraph g = closeness_graph(h, f, level, cfg.tau, caps, cfg.threads);
        ClosedPartition part = closed_partition(g);
        result.closeness_classes = static_cast<int>(part.classes.size());
        result.closeness_all_cliques = part.all_cliques;
        bool one_clique = part.classes.size() == 1 && part.all_cliques;
        if (!one_clique && cfg.allow_escalation) {
            level += 1;
            step.detail = "level-" + std::to_string(cfg.level) + " closeness graph has " +
                          std::to_string(part.classes.size()) +
                          (part.all_cliques ? " clique classes" : " classes (non-clique present)") +
                          "; raising i to " + std::to_string(level);
            // Mirror the additivity step: certify one composed witness for a
            // non-adjacent pair with a common neighbour, when one exists.
            bool composed = false;
            for (int x = 0; x < h.n() && !composed; ++x)
                for (int y = x + 1; y < h.n() && !composed; ++y) {
                    if (g.adjacent(x, y)) continue;
                    VertexSet common = g.adjacency[static_cast<std::size_t>(x)] &
                                       g.adjacency[static_cast<std::size_t>(y)];
                    for (int z : common) {
                        std::optional<ClosenessWitness> wx, wy;
                        VertexSet forbidden{x, y, z};
                        for_each_subset(h.vertices() - forbidden, cfg.level * t - 1,
                                        [&](VertexSet s) {
                                            ClosenessWitness cand{x, z, cfg.level, s};
                                            if (witness_valid(cache, cand)) {
                                                wx = cand;
                                                return false;
                                            }
                                            return true;
                                        });
                        if (!wx) continue;
                        VertexSet avoid = forbidden | wx->s;
                        for_each_subset(h.vertices() - avoid, cfg.level * t - 1, [&](VertexSet s) {
                            ClosenessWitness cand{y, z, cfg.level, s};
                            if (witness_valid(cache, cand)) {
                                wy = cand;
                                return false;
                            }
                            return true;
                        });
                        if (!wy) continue;
                        compose_witnesses(cache, *wx, *wy);
                        composed = true;
                        break;
                    }
                    if (composed)
                        step.detail += "; composed a level-" + std::to_string(2 * cfg.level) +
                                       " witness for (" + std::to_string(x) + "," +
                                       std::to_string(y) + ")";
                }
            if (!composed) step.detail += "; no composable pair found";
        } else {
            step.detail = "level-" + std::to_string(level) + " closeness graph: " +
                          std::to_string(part.classes.size()) + " class(es)";
        }
        step.wall_ms = timer.ms();
        result.steps.push_back(std::move(step));
    }
    result.level_used = level;

    // Step 1: remove copies through vertices that sit in many bad pairs.
    VertexSet h1_vertices = h.vertices();
    std::vector<Embedding> t1;
    {
        detail::StepTimer timer;
        PipelineStep step{"remove_bad_vertices", true, "", 0.0};
        if (cfg.step1 == Step1Strategy::alpha_good) {
            std::vector<int> bad_count(static_cast<std::size_t>(h.n()), 0);
            for (int x = 0; x < h.n(); ++x)
                for (int y = x + 1; y < h.n(); ++y) {
                    if (!alpha_good_pair(h, x, y, cfg.alpha).good) {
                        ++bad_count[static_cast<std::size_t>(x)];
                        ++bad_count[static_cast<std::size_t>(y)];
                    }
                }
            VertexSet flagged;
            for (int v = 0; v < h.n(); ++v)
                if (4 * bad_count[static_cast<std::size_t>(v)] >= h.n())
                    flagged |= VertexSet::single(v);
            if (flagged.empty()) {
                step.detail = "no vertex in >= n/4 bad pairs";
            } else {
                auto cover = greedy_disjoint_cover(h, f, flagged);
                if (!cover.uncovered_targets.empty()) {
                    step.ok = false;
                    step.detail = "flagged vertices could not be covered by disjoint copies";
                } else {
                    t1 = cover.tiling.copies;
                    for (const auto& e : t1) h1_vertices = h1_vertices - e.image_set();
                    step.detail = std::to_string(t1.size()) + " copies removed through " +
                                  std::to_string(flagged.size()) + " flagged vertices";
                }
            }
        } else {
            step.detail = "no-op strategy";
        }
        step.wall_ms = timer.ms();
        bool ok = step.ok;
        result.steps.push_back(std::move(step));
        if (!ok) {
            result.failing_step = "remove_bad_vertices";
            return result;
        }
    }

    // Step 2: absorbing family inside the remaining vertices.
    AbsorbingFamily family;
    {
        detail::StepTimer timer;
        PipelineStep step{"build_absorbing_family", true, "", 0.0};
        FamilyConfig fam_cfg;
        fam_cfg.level = level;
        fam_cfg.capacity_target = cfg.capacity_target;
        fam_cfg.mode = cfg.family_mode;
        fam_cfg.seed = cfg.seed;
        fam_cfg.universe = h1_vertices;
        auto built = build_absorbing_family(cache, fam_cfg, caps);
        step.wall_ms = timer.ms();
        if (!built.family) {
            step.ok = false;
            step.detail = built.failure;
            result.steps.push_back(std::move(step));
            result.failing_step = "build_absorbing_family";
            return result;
        }
        family = std::move(*built.family);
        result.family = family;
        step.detail = std::to_string(family.members.size()) + " members, |U| = " +
                      std::to_string(family.used.size());
        result.steps.push_back(std::move(step));
    }

    // Step 3: almost tiling of what is left outside U.
    VertexSet h2_vertices = h1_vertices - family.used;
    std::vector<Embedding> t2;
    {
        detail::StepTimer timer;
        PipelineStep step{"almost_tiling", true, "", 0.0};
        if (f.is_complete()) {
            InducedSubgraph sub = induced(h, h2_vertices);
            auto ls = almost_factor_local_search(sub.graph, t, cfg.seed, caps, cfg.restarts);
            for (const auto& e : ls.tiling.copies) {
                std::vector<int> mapped;
                for (int v : e.image)
                    mapped.push_back(sub.vertex_map[static_cast<std::size_t>(v)]);
                t2.push_back(Embedding{std::move(mapped)});
            }
        } else {
            t2 = detail::greedy_maximal_tiling(h, f, h2_vertices);
        }
        VertexSet covered;
        for (const auto& e : t2) covered |= e.image_set();
        step.detail = std::to_string(t2.size()) + " copies, leftover " +
                      std::to_string((h2_vertices - covered).size());
        step.wall_ms = timer.ms();
        result.steps.push_back(std::move(step));
    }

    // Step 4: absorb the leftover into the family.
    {
        detail::StepTimer timer;
        PipelineStep step{"absorb", true, "", 0.0};
        VertexSet covered;
        for (const auto& e : t2) covered |= e.image_set();
        VertexSet w = h2_vertices - covered;
        auto absorbed = absorb(cache, family, w);
        step.wall_ms = timer.ms();
        if (!absorbed.tiling) {
            step.ok = false;
            step.detail = absorbed.failure;
            result.steps.push_back(std::move(step));
            result.failing_step = "absorb";
            return result;
        }
        step.detail = "absorbed |W| = " + std::to_string(w.size());
        result.steps.push_back(std::move(step));

        Tiling full{&h, f, {}, VertexSet{}};
        full.copies = t1;
        full.copies.insert(full.copies.end(), t2.begin(), t2.end());
        full.copies.insert(full.copies.end(), absorbed.tiling->copies.begin(),
                           absorbed.tiling->copies.end());
        full.leftover = h.vertices() - full.covered();

        PipelineStep verify{"verify", true, "", 0.0};
        auto report = verify_tiling(full);
        if (!report.pass || !full.perfect()) {
            verify.ok = false;
            verify.detail = report.pass ? "tiling not perfect" : report.first_violation;
            result.steps.push_back(std::move(verify));
            result.failing_step = "verify";
            return result;
        }
        verify.detail = "perfect tiling, " + std::to_string(full.copies.size()) + " copies";
        result.steps.push_back(std::move(verify));
        result.tiling = std::move(full);
    }
    return result;
}

} // namespace hypertile
