#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "hamnet/hamiltonian.hpp"
#include "hamnet/oracle.hpp"
#include "hamnet/serialize.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using namespace hamnet;
using nlohmann::json;

struct Options {
    bool json_out = false;
    bool explain = false;
};

Graph load_graph(const std::string& path) {
    std::ostringstream buf;
    if (path.empty() || path == "-") {
        buf << std::cin.rdbuf();
    } else {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open " + path);
        buf << in.rdbuf();
    }
    return parse_graph(buf.str());
}

Vertex to_internal(int id, const Graph& g, const std::string& what) {
    if (id < 1 || id > g.num_vertices())
        throw std::runtime_error(what + ": vertex id out of range");
    return id - 1;
}

Edge parse_via(const std::string& via, const Graph& g) {
    auto comma = via.find(',');
    if (comma == std::string::npos)
        throw std::runtime_error("--via expects two ids, e.g. 2,3");
    int a = std::stoi(via.substr(0, comma));
    int b = std::stoi(via.substr(comma + 1));
    Edge e(to_internal(a, g, "--via"), to_internal(b, g, "--via"));
    if (!g.has_edge(e.u, e.v)) throw std::runtime_error("--via: not an edge");
    return e;
}

void print_vertices(const std::vector<Vertex>& vs) {
    for (size_t i = 0; i < vs.size(); ++i)
        std::cout << (i ? " " : "") << vs[i] + 1;
    std::cout << "\n";
}

HamOptions ham_options(const Options& o) {
    HamOptions h;
    if (o.explain) {
        h.on_lemma_step = [](const LemmaStepRecord& rec) {
            std::cerr << "lemma step r=" << rec.r + 1 << " s=" << rec.s + 1 << " case="
                      << rec.case_tag;
            if (rec.a >= 0) std::cerr << " a=" << rec.a + 1;
            if (rec.b >= 0) std::cerr << " b=" << rec.b + 1;
            std::cerr << "\n";
        };
    }
    return h;
}

int emit_trace_result(const TraceResult& r, const Options& o) {
    if (o.json_out) {
        std::cout << result_json(r).dump(2) << "\n";
    } else if (std::holds_alternative<Path>(r)) {
        print_vertices(std::get<Path>(r).vertices);
    } else {
        std::cout << "no trace: " << to_json(std::get<Diagnosis>(r)).dump() << "\n";
    }
    return std::holds_alternative<Path>(r) ? 0 : 1;
}

int emit_track_result(const TrackResult& r, const Options& o) {
    if (o.json_out) {
        std::cout << result_json(r).dump(2) << "\n";
    } else if (std::holds_alternative<Cycle>(r)) {
        print_vertices(std::get<Cycle>(r).vertices);
    } else {
        std::cout << "no track: " << to_json(std::get<Diagnosis>(r)).dump() << "\n";
    }
    return std::holds_alternative<Cycle>(r) ? 0 : 1;
}

int run_check(const Graph& g, const Options& o) {
    auto chk = is_claw_net_free(g);
    if (o.json_out) {
        json j;
        j["claw_net_free"] = chk.cn_free;
        if (chk.certificate) j["certificate"] = to_json(*chk.certificate);
        std::cout << j.dump(2) << "\n";
    } else if (chk.cn_free) {
        std::cout << "claw-net-free\n";
    } else {
        std::cout << "forbidden pattern: " << to_json(*chk.certificate).dump() << "\n";
    }
    return chk.cn_free ? 0 : 1;
}

int run_blocks(const Graph& g, const Options& o) {
    auto d = blocks(g);
    if (o.json_out) {
        std::cout << to_json(d).dump(2) << "\n";
        return 0;
    }
    for (size_t b = 0; b < d.blocks.size(); ++b) {
        std::cout << "block " << b << (d.kind[b] == BlockKind::EndBlock ? " (end):" : ":");
        for (Vertex v : d.blocks[b]) std::cout << " " << v + 1;
        std::cout << "\n";
    }
    std::cout << "cut vertices:";
    for (Vertex v : d.cut_vertices) std::cout << " " << v + 1;
    std::cout << "\n";
    return 0;
}

// s-trace / plain via-edge queries reduce to scanning the admissible
// endpoints in ascending order; results stay deterministic.
TraceResult scan_endpoints(const Graph& g, std::optional<Vertex> s, std::optional<Edge> e,
                           const HamOptions& opts) {
    auto d = blocks(g);
    std::vector<int> ends;
    for (int b = 0; b < static_cast<int>(d.blocks.size()); ++b)
        if (d.kind[b] == BlockKind::EndBlock) ends.push_back(b);
    if (ends.size() != 2)
        return Diagnosis{DiagnosisKind::NotClawNetFree, "more than two end-blocks"};
    HamOptions inner = opts;
    inner.check_class = false;
    std::optional<Diagnosis> last;
    auto try_pair = [&](Vertex a, Vertex b) -> std::optional<TraceResult> {
        TraceResult r = e ? st_trace_via_edge(g, a, b, *e, inner)
                          : st_trace_cut1(g, a, b, inner);
        if (std::holds_alternative<Path>(r)) return r;
        last = std::get<Diagnosis>(r);
        return std::nullopt;
    };
    if (s) {
        int bs = -1;
        for (int b : ends)
            if (std::binary_search(d.inner[b].begin(), d.inner[b].end(), *s)) bs = b;
        if (bs < 0)
            return Diagnosis{DiagnosisKind::EndBlockCriterionFailed,
                             "--from vertex is not an inner vertex of an end-block"};
        int other = ends[0] == bs ? ends[1] : ends[0];
        for (Vertex t : d.inner[other])
            if (auto r = try_pair(*s, t)) return *r;
    } else {
        for (Vertex a : d.inner[ends[0]])
            for (Vertex b : d.inner[ends[1]])
                if (auto r = try_pair(a, b)) return *r;
    }
    if (last) return *last;
    return Diagnosis{DiagnosisKind::EndBlockCriterionFailed, "no admissible endpoints"};
}

int run_trace(const Graph& g, std::optional<int> from, std::optional<int> to,
              const std::string& via, const Options& o) {
    HamOptions opts = ham_options(o);
    std::optional<Edge> e;
    if (!via.empty()) e = parse_via(via, g);
    std::optional<Vertex> s, t;
    if (from) s = to_internal(*from, g, "--from");
    if (to) t = to_internal(*to, g, "--to");

    if (!s && !t && !e) return emit_trace_result(trace(g, opts), o);
    if (!s && !t && e) {
        if (vertex_connectivity_at_least(g, 2))
            return emit_trace_result(trace_via_edge_2conn(g, *e, opts), o);
        auto chk = is_claw_net_free(g);
        if (!chk.cn_free) {
            Diagnosis d{DiagnosisKind::NotClawNetFree, "graph is not {claw,net}-free"};
            d.certificate = chk.certificate;
            return emit_trace_result(d, o);
        }
        return emit_trace_result(scan_endpoints(g, std::nullopt, e, opts), o);
    }
    if (s && t) {
        if (e) return emit_trace_result(st_trace_via_edge(g, *s, *t, *e, opts), o);
        return emit_trace_result(st_trace_cut1(g, *s, *t, opts), o);
    }
    // --from only (t symmetric via swapping roles)
    Vertex anchor = s ? *s : *t;
    if (e) return emit_trace_result(s_trace_via_edge(g, anchor, *e, opts), o);
    auto chk = is_claw_net_free(g);
    if (!chk.cn_free) {
        Diagnosis d{DiagnosisKind::NotClawNetFree, "graph is not {claw,net}-free"};
        d.certificate = chk.certificate;
        return emit_trace_result(d, o);
    }
    TraceResult r = scan_endpoints(g, anchor, std::nullopt, opts);
    if (t && std::holds_alternative<Path>(r)) {
        auto& p = std::get<Path>(r);
        std::reverse(p.vertices.begin(), p.vertices.end());
    }
    return emit_trace_result(r, o);
}

int run_track(const Graph& g, const std::string& via, const Options& o) {
    HamOptions opts = ham_options(o);
    if (via.empty()) {
        Cycle c = track(g, opts);
        if (o.json_out) {
            json j;
            j["status"] = "found";
            j["cycle"] = to_json(c);
            std::cout << j.dump(2) << "\n";
        } else {
            print_vertices(c.vertices);
        }
        return 0;
    }
    Edge e = parse_via(via, g);
    return emit_track_result(track_via_edge(g, e, opts), o);
}

struct VerifyStats {
    long long graphs = 0;
    long long checks = 0;
    long long mismatches = 0;
    std::vector<std::string> notes;            // counted failures
    std::vector<std::string> literal_l_notes;  // reported, not counted
};

bool inner_end_block_of_pair(const BlockDecomposition& d, Vertex s, Vertex t);

void verify_graph(const Graph& g, uint64_t mask, int n, VerifyStats& st) {
    if (!is_connected(g) || !is_claw_net_free(g).cn_free) return;
    ++st.graphs;
    auto tag = [&](const std::string& what) {
        return "n=" + std::to_string(n) + " mask=" + std::to_string(mask) + " " + what;
    };

    // Every connected class member has a trace.
    ++st.checks;
    try {
        Path p = trace(g);
        PathConstraints pc;
        pc.must_be_hamiltonian = true;
        if (!validate_path(g, p, pc).ok()) throw std::logic_error("invalid trace");
    } catch (const std::exception& ex) {
        ++st.mismatches;
        st.notes.push_back(tag(std::string("trace: ") + ex.what()));
    }

    bool two_conn = vertex_connectivity_at_least(g, 2);
    if (n >= 3 && !two_conn) {
        // st-trace three-way agreement at connectivity 1.
        auto d = blocks(g);
        for (Vertex s = 0; s < n; ++s)
            for (Vertex t = 0; t < n; ++t) {
                if (s == t) continue;
                ++st.checks;
                bool criterion = inner_end_block_of_pair(d, s, t);
                OracleQuery q;
                q.s = s;
                q.t = t;
                bool oracle = bf_ham_path(g, q).has_value();
                bool constructed = false;
                try {
                    auto r = st_trace_cut1(g, s, t);
                    constructed = std::holds_alternative<Path>(r);
                } catch (const std::exception& ex) {
                    ++st.mismatches;
                    st.notes.push_back(tag(std::string("st_trace_cut1 threw: ") + ex.what()));
                    continue;
                }
                if (criterion != oracle || constructed != oracle) {
                    ++st.mismatches;
                    st.notes.push_back(tag("st three-way disagreement s=" +
                                           std::to_string(s + 1) + " t=" +
                                           std::to_string(t + 1)));
                }
            }
        // st-trace through an edge vs oracle, plus the literal-clause report.
        for (const Edge& e : g.edges())
            for (Vertex s = 0; s < n; ++s)
                for (Vertex t = 0; t < n; ++t) {
                    if (s == t) continue;
                    if (inner_end_block_of_pair(blocks(g), s, t) == false) continue;
                    ++st.checks;
                    OracleQuery q;
                    q.s = s;
                    q.t = t;
                    q.required_edges = {e};
                    bool oracle = bf_ham_path(g, q).has_value();
                    bool constructed = false;
                    try {
                        auto r = st_trace_via_edge(g, s, t, e);
                        constructed = std::holds_alternative<Path>(r);
                    } catch (const std::exception& ex) {
                        ++st.mismatches;
                        st.notes.push_back(tag(std::string("st_trace_via_edge threw: ") +
                                               ex.what()));
                        continue;
                    }
                    if (constructed != oracle) {
                        ++st.mismatches;
                        st.notes.push_back(tag(
                            "st_trace_via_edge vs oracle s=" + std::to_string(s + 1) +
                            " t=" + std::to_string(t + 1) + " e=" +
                            std::to_string(e.u + 1) + "," + std::to_string(e.v + 1)));
                    }
                    bool literal = in_obstruction_L_literal(g, s, t, e).first;
                    if (literal == oracle) {  // member should mean: no trace
                        st.literal_l_notes.push_back(tag(
                            "literal-L disagrees with existence s=" +
                            std::to_string(s + 1) + " t=" + std::to_string(t + 1) +
                            " e=" + std::to_string(e.u + 1) + "," +
                            std::to_string(e.v + 1)));
                    }
                }
    }
    if (two_conn && n >= 3) {
        ++st.checks;
        try {
            Cycle c = track(g);
            if (!validate_cycle(g, c, {}, true).ok()) throw std::logic_error("invalid track");
        } catch (const std::exception& ex) {
            ++st.mismatches;
            st.notes.push_back(tag(std::string("track: ") + ex.what()));
        }
        for (const Edge& e : g.edges()) {
            ++st.checks;
            bool oracle = bf_ham_cycle(g, e).has_value();
            bool member = in_obstruction_E(g, e).first;
            bool constructed = false;
            try {
                auto r = track_via_edge(g, e);
                constructed = std::holds_alternative<Cycle>(r);
            } catch (const std::exception& ex) {
                ++st.mismatches;
                st.notes.push_back(tag(std::string("track_via_edge threw: ") + ex.what()));
                continue;
            }
            if (constructed != oracle || member == oracle) {
                ++st.mismatches;
                st.notes.push_back(tag("track_via_edge three-way disagreement e=" +
                                       std::to_string(e.u + 1) + "," +
                                       std::to_string(e.v + 1)));
            }
            ++st.checks;
            try {
                Path p = trace_via_edge_2conn(g, e);
                PathConstraints pc;
                pc.must_be_hamiltonian = true;
                pc.required_edges = {e};
                if (!validate_path(g, p, pc).ok()) throw std::logic_error("invalid trace");
            } catch (const std::exception& ex) {
                ++st.mismatches;
                st.notes.push_back(tag(std::string("trace_via_edge_2conn: ") + ex.what()));
            }
        }
    }
}

int run_verify(int max_n, int random_k, int random_size, uint64_t seed, const Options& o) {
    VerifyStats total;
    if (random_k > 0) {
        for (int i = 0; i < random_k; ++i) {
            Graph g = random_cn_free(random_size, 0.08, seed + i);
            ++total.graphs;
            ++total.checks;
            try {
                Path p = trace(g);
                PathConstraints pc;
                pc.must_be_hamiltonian = true;
                if (!validate_path(g, p, pc).ok()) throw std::logic_error("invalid trace");
            } catch (const std::exception& ex) {
                ++total.mismatches;
                total.notes.push_back("random i=" + std::to_string(i) + " trace: " + ex.what());
            }
            if (vertex_connectivity_at_least(g, 2) && g.num_vertices() >= 3) {
                ++total.checks;
                try {
                    Cycle c = track(g);
                    if (!validate_cycle(g, c, {}, true).ok())
                        throw std::logic_error("invalid track");
                } catch (const std::exception& ex) {
                    ++total.mismatches;
                    total.notes.push_back("random i=" + std::to_string(i) +
                                          " track: " + ex.what());
                }
            }
        }
    } else {
        for (int n = 1; n <= max_n; ++n) {
            uint64_t total_masks = mask_count(n);
            std::vector<VerifyStats> shards;
#ifdef _OPENMP
            int workers = omp_get_max_threads();
#else
            int workers = 1;
#endif
            shards.resize(workers);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1024)
#endif
            for (long long mask = 0; mask < static_cast<long long>(total_masks); ++mask) {
#ifdef _OPENMP
                VerifyStats& st = shards[omp_get_thread_num()];
#else
                VerifyStats& st = shards[0];
#endif
                Graph g = graph_from_mask(n, static_cast<uint64_t>(mask));
                verify_graph(g, static_cast<uint64_t>(mask), n, st);
            }
            for (auto& st : shards) {
                total.graphs += st.graphs;
                total.checks += st.checks;
                total.mismatches += st.mismatches;
                total.notes.insert(total.notes.end(), st.notes.begin(), st.notes.end());
                total.literal_l_notes.insert(total.literal_l_notes.end(),
                                             st.literal_l_notes.begin(),
                                             st.literal_l_notes.end());
            }
        }
    }
    std::sort(total.notes.begin(), total.notes.end());
    std::sort(total.literal_l_notes.begin(), total.literal_l_notes.end());
    if (o.json_out) {
        json j;
        j["graphs"] = total.graphs;
        j["checks"] = total.checks;
        j["mismatches"] = total.mismatches;
        j["failures"] = total.notes;
        j["literal_l_discrepancies"] = total.literal_l_notes;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "graphs: " << total.graphs << "\nchecks: " << total.checks
                  << "\nmismatches: " << total.mismatches << "\n";
        for (const auto& s : total.notes) std::cout << "FAIL " << s << "\n";
        std::cout << "literal-L discrepancies (reported, not counted): "
                  << total.literal_l_notes.size() << "\n";
        for (const auto& s : total.literal_l_notes) std::cout << "  " << s << "\n";
    }
    return total.mismatches == 0 ? 0 : 1;
}

int run_enumerate(int n, const std::string& filter_csv, const Options& o) {
    EnumFilter f;
    std::stringstream ss(filter_csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        if (item == "connected")
            f.connected = true;
        else if (item == "cn_free")
            f.cn_free = true;
        else if (item == "two_connected")
            f.two_connected = true;
        else
            throw std::runtime_error("unknown filter: " + item);
    }
    long long count = 0;
    json masks = json::array();
    enumerate_labeled_graphs(n, f, [&](const Graph&, uint64_t mask) {
        ++count;
        if (o.json_out)
            masks.push_back(mask);
        else
            std::cout << mask << "\n";
    });
    if (o.json_out) {
        json j;
        j["n"] = n;
        j["count"] = count;
        j["masks"] = masks;
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "count: " << count << "\n";
    }
    return 0;
}

bool inner_end_block_of_pair(const BlockDecomposition& d, Vertex s, Vertex t) {
    auto inner_end = [&](Vertex v) {
        for (int b = 0; b < static_cast<int>(d.blocks.size()); ++b)
            if (d.kind[b] == BlockKind::EndBlock &&
                std::binary_search(d.inner[b].begin(), d.inner[b].end(), v))
                return b;
        return -1;
    };
    int bs = inner_end(s), bt = inner_end(t);
    return bs >= 0 && bt >= 0 && bs != bt;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hamiltonian paths and cycles in {claw,net}-free graphs"};
    app.require_subcommand(1);
    Options opt;
    app.add_flag("--json", opt.json_out, "emit JSON");
    app.add_flag("--explain", opt.explain, "stream extension-lemma step records to stderr");

    std::string file;
    std::optional<int> from, to;
    std::string via;
    int max_n = 5, random_k = 0, random_size = 50;
    uint64_t seed = 1;
    int enum_n = 4;
    std::string filter_csv;

    auto* c_check = app.add_subcommand("check", "recognize the graph class");
    c_check->add_option("file", file, "graph file ('-' for stdin)");
    auto* c_blocks = app.add_subcommand("blocks", "block decomposition");
    c_blocks->add_option("file", file, "graph file ('-' for stdin)");
    auto* c_trace = app.add_subcommand("trace", "Hamiltonian path queries");
    c_trace->add_option("file", file, "graph file ('-' for stdin)");
    c_trace->add_option("--from", from, "required start vertex (1-based)");
    c_trace->add_option("--to", to, "required end vertex (1-based)");
    c_trace->add_option("--via", via, "required edge U,V (1-based)");
    auto* c_track = app.add_subcommand("track", "Hamiltonian cycle queries");
    c_track->add_option("file", file, "graph file ('-' for stdin)");
    c_track->add_option("--via", via, "required edge U,V (1-based)");
    auto* c_verify = app.add_subcommand("verify", "compare against the exhaustive oracle");
    c_verify->add_option("--max-n", max_n, "exhaustive sweep bound");
    c_verify->add_option("--random", random_k, "number of random graphs instead");
    c_verify->add_option("--size", random_size, "random graph size");
    c_verify->add_option("--seed", seed, "random seed");
    auto* c_enum = app.add_subcommand("enumerate", "stream labeled graphs by bitmask");
    c_enum->add_option("--n", enum_n, "vertex count (1..7)")->required();
    c_enum->add_option("--filter", filter_csv, "connected,cn_free,two_connected");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (c_check->parsed()) return run_check(load_graph(file), opt);
        if (c_blocks->parsed()) return run_blocks(load_graph(file), opt);
        if (c_trace->parsed()) return run_trace(load_graph(file), from, to, via, opt);
        if (c_track->parsed()) return run_track(load_graph(file), via, opt);
        if (c_verify->parsed()) return run_verify(max_n, random_k, random_size, seed, opt);
        if (c_enum->parsed()) return run_enumerate(enum_n, filter_csv, opt);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const NotClawNetFree& e) {
        std::cerr << "not in class: " << e.what() << "\n";
        return 1;
    } catch (const PreconditionViolation& e) {
        std::cerr << "precondition: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
