// hypertile: k-uniform hypergraph tiling toolkit CLI.
//
// Exit codes: 0 success, 1 negative verdict on a decision-like query,
// 2 parameter/precondition error, 3 I/O or parse error, 4 resource cap.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "hypertile/constructions.hpp"
#include "hypertile/design.hpp"
#include "hypertile/io.hpp"
#include "hypertile/json_io.hpp"
#include "hypertile/pipeline.hpp"
#include "hypertile/version.hpp"

using namespace hypertile;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_negative = 1;
constexpr int exit_params = 2;
constexpr int exit_io = 3;
constexpr int exit_cap = 4;

std::string fnv1a64_hex(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    std::ostringstream out;
    out << std::hex << h;
    return out.str();
}

Json input_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return Json{{"path", path}, {"fnv1a64", fnv1a64_hex(buf.str())}};
}

class ReportClock {
public:
    ReportClock() : start_(std::chrono::steady_clock::now()) {}
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

// The report alone reproduces the run: full parameter echo, seed, input
// digests, tool version.
void emit_report(const std::string& subcommand, Json params, Json inputs, double wall_ms,
                 Json payload) {
    Json report{{"tool", "hypertile"},
                {"version", hypertile::version},
                {"subcommand", subcommand},
                {"params", std::move(params)},
                {"inputs", std::move(inputs)},
                {"wall_ms", wall_ms},
                {"payload", std::move(payload)}};
    std::cout << report.dump(2) << "\n";
}

void write_text_file(const std::string& path, const std::string& body) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot open " + path + " for writing");
    out << body;
    if (!out) throw io_error("write failed for " + path);
}

// Pattern mini-grammar: K:t:k, KP:k:m1,...,mk, B:lambda, F:<file>.
Pattern parse_pattern(const std::string& spec) {
    auto split = [](const std::string& s, char sep) {
        std::vector<std::string> parts;
        std::istringstream in(s);
        std::string item;
        while (std::getline(in, item, sep)) parts.push_back(item);
        return parts;
    };
    auto to_int = [&](const std::string& s) {
        try {
            std::size_t used = 0;
            int v = std::stoi(s, &used);
            if (used != s.size()) throw std::invalid_argument(s);
            return v;
        } catch (const std::exception&) {
            throw precondition_error("bad integer '" + s + "' in pattern spec '" + spec + "'");
        }
    };
    auto parts = split(spec, ':');
    if (parts.empty()) throw precondition_error("empty pattern spec");
    if (parts[0] == "K" && parts.size() == 3)
        return Pattern::complete(to_int(parts[1]), to_int(parts[2]));
    if (parts[0] == "B" && parts.size() == 2) return Pattern::book(to_int(parts[1]));
    if (parts[0] == "KP" && parts.size() == 3) {
        std::vector<int> sizes;
        for (const auto& m : split(parts[2], ',')) sizes.push_back(to_int(m));
        return Pattern::complete_partite(to_int(parts[1]), sizes);
    }
    if (parts[0] == "F" && parts.size() >= 2)
        return Pattern::explicit_graph(read_hypergraph(spec.substr(2)));
    throw precondition_error("unrecognised pattern spec '" + spec +
                             "' (expected K:t:k, KP:k:m1,..,mk, B:lambda or F:<file>)");
}

// HYPERTILE_CAPS=oracle=60,clique=20,local=64,design=20000000 (unsafe).
Caps caps_from_env() {
    Caps caps;
    const char* env = std::getenv("HYPERTILE_CAPS");
    if (env == nullptr) return caps;
    std::istringstream in(env);
    std::string item;
    while (std::getline(in, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos)
            throw precondition_error("bad HYPERTILE_CAPS entry '" + item + "'");
        std::string key = item.substr(0, eq);
        long long value = std::stoll(item.substr(eq + 1));
        if (key == "oracle")
            caps.oracle_n = static_cast<int>(value);
        else if (key == "clique")
            caps.clique_n = static_cast<int>(value);
        else if (key == "local")
            caps.local_search_n = static_cast<int>(value);
        else if (key == "design")
            caps.design_sets = value;
        else
            throw precondition_error("unknown HYPERTILE_CAPS key '" + key + "'");
    }
    return caps;
}

std::string render_hypergraph(const Hypergraph& h) {
    std::ostringstream out;
    write_hypergraph_stream(h, out);
    return out.str();
}

// Design files may exceed the in-memory host cap, so blocks are read
// directly in the same text format.
struct BlockFile {
    int n = 0;
    int k = 0;
    std::vector<std::vector<int>> blocks;
};

BlockFile read_blocks(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open " + path);
    BlockFile out;
    std::string line;
    std::size_t lineno = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        bool blank = true;
        for (char c : line) {
            if (c == '#') break;
            if (!std::isspace(static_cast<unsigned char>(c))) {
                blank = false;
                break;
            }
        }
        if (blank) continue;
        std::istringstream ls(line);
        if (!have_header) {
            if (!(ls >> out.n >> out.k) || out.n < 0 || out.k < 2)
                throw parse_error(parse_error::kind::bad_header, lineno, "expected \"n k\"");
            have_header = true;
            continue;
        }
        std::vector<int> block;
        int v;
        while (ls >> v) {
            if (v < 1 || v > out.n)
                throw parse_error(parse_error::kind::vertex_out_of_range, lineno,
                                  "vertex " + std::to_string(v));
            block.push_back(v - 1);
        }
        if (static_cast<int>(block.size()) != out.k)
            throw parse_error(parse_error::kind::bad_arity, lineno, "wrong block arity");
        out.blocks.push_back(std::move(block));
    }
    if (!have_header) throw parse_error(parse_error::kind::bad_header, lineno, "missing header");
    return out;
}

int run_construct(const std::string& kind, const Json& params, const Construction& c,
                  const std::string& out_prefix, const Json& inputs, const ReportClock& clock) {
    const std::string hg_path = out_prefix + ".hg";
    const std::string cert_path = out_prefix + ".cert.json";
    write_text_file(hg_path, render_hypergraph(c.graph));
    write_text_file(cert_path, to_json(c.certificate).dump(2) + "\n");
    emit_report("construct " + kind, params, inputs, clock.ms(),
                Json{{"hypergraph", hg_path},
                     {"certificate", cert_path},
                     {"measured_min_degree", c.certificate.measured_min_degree},
                     {"factor_exists",
                      c.certificate.factor_exists ? Json(*c.certificate.factor_exists) : Json(nullptr)}});
    return exit_ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"hypertile: k-uniform hypergraph tiling toolkit"};
    app.set_version_flag("--version", std::string("hypertile ") + hypertile::version);
    app.require_subcommand(1);

    int threads = 1;
    app.add_option("--threads", threads, "worker cap for parallel scans")->capture_default_str();

    // construct
    auto* construct = app.add_subcommand("construct", "emit a lower-bound construction");
    construct->require_subcommand(1);
    struct {
        int k = 4, t = 5, n = 10, lambda = 1;
        std::string h0, out;
    } con;
    auto* parity = construct->add_subcommand("parity", "three-part odd-intersection host");
    parity->add_option("--k", con.k)->required();
    parity->add_option("--n", con.n)->required();
    parity->add_option("--out", con.out, "output prefix");
    auto* space = construct->add_subcommand("space-barrier", "all edges meet a small W");
    space->add_option("--k", con.k)->required();
    space->add_option("--t", con.t)->required();
    space->add_option("--n", con.n)->required();
    space->add_option("--out", con.out, "output prefix");
    auto* pikhurko = construct->add_subcommand("pikhurko", "complemented three-rule host");
    pikhurko->add_option("--t", con.t)->required();
    pikhurko->add_option("--n", con.n)->required();
    pikhurko->add_option("--lambda", con.lambda)->required();
    pikhurko->add_option("--h0", con.h0, "3-graph file for H0")->required();
    pikhurko->add_option("--out", con.out, "output prefix");
    auto* multipartite = construct->add_subcommand("multipartite", "unbalanced complete t-partite graph");
    multipartite->add_option("--t", con.t)->required();
    multipartite->add_option("--n", con.n)->required();
    multipartite->add_option("--out", con.out, "output prefix");

    // factor
    auto* factor = app.add_subcommand("factor", "decide or search for an F-factor");
    struct {
        std::string file, pattern, mode = "exact", trace, out;
        std::uint64_t seed = 0;
        int restarts = 8;
    } fac;
    factor->add_option("file", fac.file, "hypergraph file")->required();
    factor->add_option("--pattern", fac.pattern, "pattern spec (K:t:k, KP:k:m.., B:l, F:file)")
        ->required();
    factor->add_option("--mode", fac.mode, "exact | local-search | pipeline")
        ->check(CLI::IsMember({"exact", "local-search", "pipeline"}))
        ->capture_default_str();
    factor->add_option("--seed", fac.seed, "master seed")->capture_default_str();
    factor->add_option("--restarts", fac.restarts)->capture_default_str();
    factor->add_option("--trace", fac.trace, "write accepted-move JSONL here");
    factor->add_option("--out", fac.out, "also write the report to this path");

    // thresholds
    auto* thresholds = app.add_subcommand("thresholds", "closed-form coefficient table");
    struct {
        int k_max = 6;
        std::string out = "thresholds";
    } thr;
    thresholds->add_option("--k-max", thr.k_max)->required();
    thresholds->add_option("--out", thr.out, "output prefix")->capture_default_str();

    // design
    auto* design = app.add_subcommand("design", "partial design process and checks");
    design->require_subcommand(1);
    struct {
        int n = 7, k = 3, t = 2, lambda = 1;
        std::uint64_t seed = 0;
        std::string file, out;
    } des;
    auto* design_gen = design->add_subcommand("gen", "random greedy partial design");
    design_gen->add_option("--n", des.n)->required();
    design_gen->add_option("--k", des.k)->required();
    design_gen->add_option("--t", des.t)->required();
    design_gen->add_option("--lambda", des.lambda)->required();
    design_gen->add_option("--seed", des.seed)->capture_default_str();
    design_gen->add_option("--out", des.out, "output prefix");
    auto* design_check = design->add_subcommand("check", "validate a block file");
    design_check->add_option("file", des.file)->required();
    design_check->add_option("--t", des.t)->required();
    design_check->add_option("--lambda", des.lambda)->required();
    auto* design_alpha = design->add_subcommand("alpha", "exact independence number");
    design_alpha->add_option("file", des.file)->required();

    // closeness
    auto* closeness = app.add_subcommand("closeness", "pairwise closeness diagnostics");
    struct {
        std::string file, pattern, split, tau_frac;
        int level = 1;
        long long tau = 1;
    } clo;
    closeness->add_option("file", clo.file)->required();
    closeness->add_option("--pattern", clo.pattern)->required();
    closeness->add_option("--i", clo.level, "iteration level")->capture_default_str();
    closeness->add_option("--tau", clo.tau, "pair count threshold")->capture_default_str();
    closeness->add_option("--tau-frac", clo.tau_frac,
                          "threshold as a fraction p/q of C(n-2, i*t-1); overrides --tau");
    closeness->add_option("--split", clo.split,
                          "1-based vertex list X; also count good triples across (X, V\\X)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        std::cout << app.help();
        return exit_ok;
    } catch (const CLI::CallForVersion&) {
        std::cout << "hypertile " << hypertile::version << "\n";
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return exit_params;
    }

    try {
        const Caps caps = caps_from_env();
        ReportClock clock;

        if (parity->parsed()) {
            if (con.out.empty())
                con.out = "parity_k" + std::to_string(con.k) + "_n" + std::to_string(con.n);
            return run_construct("parity",
                                 Json{{"k", con.k}, {"n", con.n}, {"out", con.out}},
                                 parity_construction(con.k, con.n, caps), con.out, Json::array(),
                                 clock);
        }
        if (space->parsed()) {
            if (con.out.empty())
                con.out = "space_k" + std::to_string(con.k) + "_t" + std::to_string(con.t) + "_n" +
                          std::to_string(con.n);
            return run_construct(
                "space-barrier",
                Json{{"k", con.k}, {"t", con.t}, {"n", con.n}, {"out", con.out}},
                space_barrier(con.k, con.t, con.n, caps), con.out, Json::array(), clock);
        }
        if (pikhurko->parsed()) {
            if (con.out.empty())
                con.out = "pikhurko_t" + std::to_string(con.t) + "_n" + std::to_string(con.n) +
                          "_l" + std::to_string(con.lambda);
            Hypergraph h0 = read_hypergraph(con.h0);
            return run_construct("pikhurko",
                                 Json{{"t", con.t},
                                      {"n", con.n},
                                      {"lambda", con.lambda},
                                      {"h0", con.h0},
                                      {"out", con.out}},
                                 pikhurko_construction(con.t, con.n, con.lambda, h0, caps), con.out,
                                 Json::array({input_digest(con.h0)}), clock);
        }
        if (multipartite->parsed()) {
            if (con.out.empty())
                con.out = "multipartite_t" + std::to_string(con.t) + "_n" + std::to_string(con.n);
            return run_construct("multipartite",
                                 Json{{"t", con.t}, {"n", con.n}, {"out", con.out}},
                                 multipartite_graph_extremal(con.t, con.n, caps), con.out,
                                 Json::array(), clock);
        }

        if (factor->parsed()) {
            Hypergraph h = read_hypergraph(fac.file);
            Pattern f = parse_pattern(fac.pattern);
            Json params{{"file", fac.file}, {"pattern", fac.pattern}, {"mode", fac.mode},
                        {"seed", fac.seed}, {"restarts", fac.restarts}};
            Json inputs = Json::array({input_digest(fac.file)});
            Json payload;
            int code = exit_ok;
            if (fac.mode == "exact") {
                auto tiling = exact_factor(h, f, caps);
                payload = Json{{"factor", tiling.has_value()}};
                if (tiling) payload["tiling"] = to_json(*tiling);
                code = tiling ? exit_ok : exit_negative;
            } else if (fac.mode == "local-search") {
                if (!f.is_complete())
                    throw precondition_error("local-search mode needs a complete pattern K:t:k");
                auto res = almost_factor_local_search(h, f.size(), fac.seed, caps, fac.restarts);
                payload = Json{{"tiling", to_json(res.tiling)},
                               {"partition", to_json(res.partition)},
                               {"accepted_moves", res.trace.size()},
                               {"winning_restart", res.winning_restart}};
                if (!fac.trace.empty()) {
                    std::ostringstream lines;
                    for (const auto& m : res.trace) lines << to_json(m).dump() << "\n";
                    write_text_file(fac.trace, lines.str());
                    payload["trace_file"] = fac.trace;
                }
            } else {
                PipelineConfig cfg;
                cfg.seed = fac.seed;
                cfg.restarts = fac.restarts;
                cfg.threads = threads;
                auto res = run_absorption_pipeline(h, f, cfg, caps);
                payload = to_json(res);
                code = res.tiling ? exit_ok : exit_negative;
            }
            if (!fac.out.empty()) write_text_file(fac.out, payload.dump(2) + "\n");
            emit_report("factor", params, inputs, clock.ms(), payload);
            return code;
        }

        if (thresholds->parsed()) {
            auto rows = threshold_table(thr.k_max);
            std::ostringstream csv;
            write_threshold_csv(rows, csv);
            write_text_file(thr.out + ".csv", csv.str());
            Json jrows = Json::array();
            for (const auto& r : rows) jrows.push_back(to_json(r));
            write_text_file(thr.out + ".json", jrows.dump(2) + "\n");
            emit_report("thresholds", Json{{"k_max", thr.k_max}, {"out", thr.out}}, Json::array(),
                        clock.ms(),
                        Json{{"csv", thr.out + ".csv"}, {"json", thr.out + ".json"},
                             {"rows", jrows}});
            return exit_ok;
        }

        if (design_gen->parsed()) {
            if (des.out.empty())
                des.out = "design_n" + std::to_string(des.n) + "_k" + std::to_string(des.k) + "_t" +
                          std::to_string(des.t) + "_l" + std::to_string(des.lambda) + "_s" +
                          std::to_string(des.seed);
            DesignState state = random_greedy_design(des.n, des.k, des.t, des.lambda, des.seed, caps);
            std::ostringstream hg;
            hg << state.n << ' ' << state.k << '\n';
            for (const auto& b : state.blocks) {
                for (std::size_t i = 0; i < b.size(); ++i)
                    hg << (i ? " " : "") << (b[i] + 1);
                hg << '\n';
            }
            write_text_file(des.out + ".hg", hg.str());
            write_text_file(des.out + ".design.json", to_json(state).dump(2) + "\n");
            emit_report("design gen",
                        Json{{"n", des.n}, {"k", des.k}, {"t", des.t}, {"lambda", des.lambda},
                             {"seed", des.seed}, {"out", des.out}},
                        Json::array(), clock.ms(),
                        Json{{"hypergraph", des.out + ".hg"},
                             {"sidecar", des.out + ".design.json"},
                             {"blocks", state.blocks.size()},
                             {"maximal", state.maximal}});
            return exit_ok;
        }
        if (design_check->parsed()) {
            BlockFile bf = read_blocks(des.file);
            auto verdict = is_partial_design(bf.blocks, bf.n, bf.k, des.t, des.lambda);
            Json payload{{"pass", verdict.pass}};
            if (!verdict.pass) {
                payload["violating_t_set"] = json_vertices(*verdict.violating_t_set);
                payload["multiplicity"] = verdict.multiplicity;
            }
            emit_report("design check",
                        Json{{"file", des.file}, {"t", des.t}, {"lambda", des.lambda}},
                        Json::array({input_digest(des.file)}), clock.ms(), payload);
            return verdict.pass ? exit_ok : exit_negative;
        }
        if (design_alpha->parsed()) {
            Hypergraph h = read_hypergraph(des.file);
            auto res = independence_number(h, caps);
            emit_report("design alpha", Json{{"file", des.file}},
                        Json::array({input_digest(des.file)}), clock.ms(),
                        Json{{"alpha", res.size},
                             {"witness", json_vertices(res.witness)},
                             {"exact", res.exact}});
            return exit_ok;
        }

        if (closeness->parsed()) {
            Hypergraph h = read_hypergraph(clo.file);
            Pattern f = parse_pattern(clo.pattern);
            long long tau = clo.tau;
            if (!clo.tau_frac.empty()) {
                auto slash = clo.tau_frac.find('/');
                if (slash == std::string::npos)
                    throw precondition_error("--tau-frac expects p/q");
                Rational frac(BigInt(clo.tau_frac.substr(0, slash)),
                              BigInt(clo.tau_frac.substr(slash + 1)));
                if (frac <= 0 || frac > 1)
                    throw precondition_error("--tau-frac must lie in (0,1]");
                BigInt total = binomial_exact(h.n() - 2, clo.level * f.size() - 1);
                tau = ceil_rational(frac * Rational(total)).convert_to<long long>();
                if (tau < 1) tau = 1;
            }
            auto graph = closeness_graph(h, f, clo.level, tau, caps, threads);
            auto part = closed_partition(graph);
            FactorCache cache(h, f);
            long long min_count = -1, max_count = -1;
            for (int x = 0; x < h.n(); ++x)
                for (int y = x + 1; y < h.n(); ++y) {
                    long long c = closeness_count(cache, x, y, clo.level, caps);
                    if (min_count < 0 || c < min_count) min_count = c;
                    if (c > max_count) max_count = c;
                }
            int min_degree = h.n(), max_degree = 0;
            for (const VertexSet& adj : graph.adjacency) {
                min_degree = std::min(min_degree, adj.size());
                max_degree = std::max(max_degree, adj.size());
            }
            Json payload{{"partition", to_json(part)},
                         {"min_pair_count", min_count},
                         {"max_pair_count", max_count},
                         {"min_closeness_degree", min_degree},
                         {"max_closeness_degree", max_degree}};
            if (!clo.split.empty()) {
                VertexSet x_side;
                std::istringstream in(clo.split);
                std::string item;
                while (std::getline(in, item, ',')) {
                    int v = std::stoi(item);
                    if (v < 1 || v > h.n()) throw precondition_error("--split vertex out of range");
                    x_side |= VertexSet::single(v - 1);
                }
                payload["good_triples"] = good_triples(h, f.size(), x_side);
                payload["split"] = json_vertices(x_side);
            }
            payload["tau_used"] = tau;
            emit_report("closeness",
                        Json{{"file", clo.file}, {"pattern", clo.pattern}, {"i", clo.level},
                             {"tau", clo.tau}, {"tau_frac", clo.tau_frac}, {"split", clo.split}},
                        Json::array({input_digest(clo.file)}), clock.ms(), payload);
            return exit_ok;
        }

        std::cerr << "no subcommand executed\n";
        return exit_params;
    } catch (const parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return exit_io;
    } catch (const io_error& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return exit_io;
    } catch (const cap_error& e) {
        std::cerr << "resource cap: " << e.what() << "\n";
        return exit_cap;
    } catch (const std::invalid_argument& e) {
        std::cerr << "parameter error: " << e.what() << "\n";
        return exit_params;
    }
}
