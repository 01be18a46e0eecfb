#include "hamnet/oracle.hpp"

#include <algorithm>
#include <random>

#include "hamnet/structure.hpp"

namespace hamnet {

namespace {

struct PathSearch {
    const Graph& g;
    const OracleQuery& q;
    std::vector<Vertex> cur;
    std::vector<bool> used;
    int needed_required;
    std::vector<std::vector<Edge>> required_at;

    PathSearch(const Graph& gr, const OracleQuery& qr)
        : g(gr), q(qr), used(gr.num_vertices(), false),
          needed_required(static_cast<int>(qr.required_edges.size())),
          required_at(gr.num_vertices()) {
        for (const Edge& e : qr.required_edges) {
            required_at[e.u].push_back(e);
            required_at[e.v].push_back(e);
        }
    }

    // Every required edge incident to v must be used by the path steps at v.
    bool vertex_done_ok(Vertex v, Vertex prev, Vertex next) const {
        for (const Edge& e : required_at[v]) {
            Vertex other = e.u == v ? e.v : e.u;
            if (other != prev && other != next) return false;
        }
        return true;
    }

    bool extend() {
        Vertex u = cur.back();
        if (static_cast<int>(cur.size()) == g.num_vertices()) {
            if (q.t && u != *q.t) return false;
            if (!vertex_done_ok(u, cur.size() >= 2 ? cur[cur.size() - 2] : -1, -1))
                return false;
            return true;
        }
        for (Vertex v : g.neighbors(u)) {
            if (used[v]) continue;
            if (cur.size() >= 2 &&
                !vertex_done_ok(u, cur[cur.size() - 2], v))
                continue;
            if (cur.size() == 1 && !vertex_done_ok(u, -1, v)) continue;
            used[v] = true;
            cur.push_back(v);
            if (extend()) return true;
            cur.pop_back();
            used[v] = false;
        }
        return false;
    }

    std::optional<Path> run() {
        std::vector<Vertex> starts;
        if (q.s)
            starts.push_back(*q.s);
        else
            for (Vertex v = 0; v < g.num_vertices(); ++v) starts.push_back(v);
        for (Vertex s0 : starts) {
            cur = {s0};
            std::fill(used.begin(), used.end(), false);
            used[s0] = true;
            if (g.num_vertices() == 1) {
                if (q.t && *q.t != s0) continue;
                return Path{cur};
            }
            if (extend()) return Path{cur};
        }
        return std::nullopt;
    }
};

}  // namespace

std::optional<Path> bf_ham_path(const Graph& g, const OracleQuery& q, int limit) {
    if (g.num_vertices() > limit)
        throw std::runtime_error("bf_ham_path: size limit exceeded");
    if (g.num_vertices() == 0) return std::nullopt;
    for (const Edge& e : q.required_edges)
        if (!g.has_edge(e.u, e.v)) return std::nullopt;
    PathSearch s(g, q);
    return s.run();
}

std::optional<Cycle> bf_ham_cycle(const Graph& g, std::optional<Edge> required, int limit) {
    if (g.num_vertices() > limit)
        throw std::runtime_error("bf_ham_cycle: size limit exceeded");
    int n = g.num_vertices();
    if (n < 3) return std::nullopt;
    if (required && !g.has_edge(required->u, required->v)) return std::nullopt;
    // Fix the start; a cycle through the required edge starts at its endpoint.
    Vertex s0 = required ? required->u : 0;
    struct CycleSearch {
        const Graph& g;
        std::optional<Edge> req;
        std::vector<Vertex> cur;
        std::vector<bool> used;
        bool run(Vertex s) {
            cur = {s};
            used.assign(g.num_vertices(), false);
            used[s] = true;
            return extend();
        }
        bool extend() {
            Vertex u = cur.back();
            if (static_cast<int>(cur.size()) == g.num_vertices())
                return g.has_edge(u, cur.front()) && req_ok();
            for (Vertex v : g.neighbors(u)) {
                if (used[v]) continue;
                used[v] = true;
                cur.push_back(v);
                if (extend()) return true;
                cur.pop_back();
                used[v] = false;
            }
            return false;
        }
        bool req_ok() const {
            if (!req) return true;
            int n = static_cast<int>(cur.size());
            for (int i = 0; i < n; ++i)
                if (Edge(cur[i], cur[(i + 1) % n]) == *req) return true;
            return false;
        }
    };
    CycleSearch cs{g, required, {}, {}};
    if (cs.run(s0)) return Cycle{cs.cur};
    return std::nullopt;
}

uint64_t mask_count(int n) { return 1ull << (n * (n - 1) / 2); }

Graph graph_from_mask(int n, uint64_t mask) {
    Graph g(n);
    int bit = 0;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v, ++bit)
            if (mask & (1ull << bit)) g.add_edge(u, v);
    return g;
}

bool passes_filter(const Graph& g, const EnumFilter& f) {
    if (f.connected && !is_connected(g)) return false;
    if (f.two_connected && !vertex_connectivity_at_least(g, 2)) return false;
    if (f.cn_free && !is_claw_net_free(g).cn_free) return false;
    return true;
}

void enumerate_labeled_graphs(int n, const EnumFilter& f,
                              const std::function<void(const Graph&, uint64_t)>& fn) {
    if (n < 1 || n > 7) throw std::invalid_argument("enumerate: n must be in 1..7");
    for (uint64_t mask = 0; mask < mask_count(n); ++mask) {
        Graph g = graph_from_mask(n, mask);
        if (passes_filter(g, f)) fn(g, mask);
    }
}

Graph random_cn_free(int n, double p, uint64_t seed) {
    if (n < 1 || p <= 0.0 || p >= 1.0)
        throw std::invalid_argument("random_cn_free: bad parameters");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    Graph g(n);
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            if (coin(rng) < p) g.add_edge(u, v);
    auto comps = connected_components(g);
    auto largest = std::max_element(comps.begin(), comps.end(),
                                    [](const auto& a, const auto& b) {
                                        return a.size() < b.size();
                                    });
    g = induced(g, *largest).graph;

    int cap = 10 * n * n + 100;
    for (int it = 0; it < cap; ++it) {
        auto chk = is_claw_net_free(g);
        if (chk.cn_free) return g;
        const auto& cert = *chk.certificate;
        if (cert.is_claw()) {
            const auto& c = std::get<ClawCertificate>(cert.pattern);
            g.add_edge(c.leaves[0], c.leaves[1]);
        } else {
            const auto& nt = std::get<NetCertificate>(cert.pattern);
            g.add_edge(nt.pendants[0], nt.pendants[1]);
        }
    }
    throw std::runtime_error("random_cn_free: repair iteration cap exceeded");
}

}  // namespace hamnet
