#include "hamnet/graph.hpp"

#include <algorithm>
#include <sstream>

namespace hamnet {

void Graph::add_edge(Vertex u, Vertex v) {
    if (u == v) throw std::invalid_argument("self-loop");
    if (u < 0 || v < 0 || u >= num_vertices() || v >= num_vertices())
        throw std::out_of_range("vertex index out of range");
    if (has_edge(u, v)) throw std::invalid_argument("duplicate edge");
    adj_[u].insert(std::lower_bound(adj_[u].begin(), adj_[u].end(), v), v);
    adj_[v].insert(std::lower_bound(adj_[v].begin(), adj_[v].end(), u), u);
    ++m_;
}

bool Graph::has_edge(Vertex u, Vertex v) const {
    if (u < 0 || v < 0 || u >= num_vertices() || v >= num_vertices()) return false;
    const auto& a = adj_[u];
    return std::binary_search(a.begin(), a.end(), v);
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(m_);
    for (Vertex u = 0; u < num_vertices(); ++u)
        for (Vertex v : adj_[u])
            if (u < v) out.emplace_back(u, v);
    return out;
}

bool Graph::audit() const {
    long deg_sum = 0;
    for (Vertex u = 0; u < num_vertices(); ++u) {
        const auto& a = adj_[u];
        if (!std::is_sorted(a.begin(), a.end())) return false;
        if (std::adjacent_find(a.begin(), a.end()) != a.end()) return false;
        for (Vertex v : a) {
            if (v == u || v < 0 || v >= num_vertices()) return false;
            if (!has_edge(v, u)) return false;
        }
        deg_sum += static_cast<long>(a.size());
    }
    return deg_sum == 2L * m_;
}

Graph parse_graph(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    int n = -1, m = -1, seen = 0;
    Graph g;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == 'c') continue;
        std::istringstream ls(line);
        char tag;
        ls >> tag;
        if (tag == 'p') {
            if (n >= 0) throw ParseError(lineno, "duplicate header");
            if (!(ls >> n >> m) || n <= 0 || m < 0)
                throw ParseError(lineno, "malformed header");
            g = Graph(n);
        } else if (tag == 'e') {
            if (n < 0) throw ParseError(lineno, "edge before header");
            int u, v;
            if (!(ls >> u >> v)) throw ParseError(lineno, "malformed edge line");
            if (u < 1 || u > n || v < 1 || v > n)
                throw ParseError(lineno, "vertex index out of range");
            if (u == v) throw ParseError(lineno, "self-loop");
            if (g.has_edge(u - 1, v - 1)) throw ParseError(lineno, "duplicate edge");
            g.add_edge(u - 1, v - 1);
            ++seen;
        } else {
            throw ParseError(lineno, "unknown line type");
        }
    }
    if (n < 0) throw ParseError(lineno, "missing header");
    if (seen != m) throw ParseError(lineno, "edge count mismatch with header");
    return g;
}

std::string write_graph(const Graph& g) {
    std::ostringstream out;
    out << "p " << g.num_vertices() << " " << g.num_edges() << "\n";
    for (const Edge& e : g.edges()) out << "e " << e.u + 1 << " " << e.v + 1 << "\n";
    return out.str();
}

std::vector<std::vector<Vertex>> connected_components(const Graph& g) {
    int n = g.num_vertices();
    std::vector<int> comp(n, -1);
    std::vector<std::vector<Vertex>> out;
    std::vector<Vertex> stack;
    for (Vertex s = 0; s < n; ++s) {
        if (comp[s] >= 0) continue;
        int id = static_cast<int>(out.size());
        out.emplace_back();
        comp[s] = id;
        stack.push_back(s);
        while (!stack.empty()) {
            Vertex u = stack.back();
            stack.pop_back();
            out[id].push_back(u);
            for (Vertex v : g.neighbors(u))
                if (comp[v] < 0) {
                    comp[v] = id;
                    stack.push_back(v);
                }
        }
        std::sort(out[id].begin(), out[id].end());
    }
    return out;
}

bool is_connected(const Graph& g) {
    if (g.num_vertices() == 0) return false;
    return connected_components(g).size() == 1;
}

bool is_connected_without(const Graph& g, const std::vector<bool>& removed) {
    int n = g.num_vertices();
    Vertex start = -1;
    int alive = 0;
    for (Vertex u = 0; u < n; ++u)
        if (!removed[u]) {
            if (start < 0) start = u;
            ++alive;
        }
    if (alive == 0) return false;
    std::vector<bool> seen(n, false);
    std::vector<Vertex> stack{start};
    seen[start] = true;
    int cnt = 0;
    while (!stack.empty()) {
        Vertex u = stack.back();
        stack.pop_back();
        ++cnt;
        for (Vertex v : g.neighbors(u))
            if (!removed[v] && !seen[v]) {
                seen[v] = true;
                stack.push_back(v);
            }
    }
    return cnt == alive;
}

InducedResult induced(const Graph& g, const std::vector<Vertex>& keep) {
    InducedResult r;
    r.old_to_new.assign(g.num_vertices(), -1);
    std::vector<Vertex> sorted = keep;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (Vertex v : sorted)
        if (v < 0 || v >= g.num_vertices()) throw std::out_of_range("induced: bad vertex");
    r.new_to_old = sorted;
    r.graph = Graph(static_cast<int>(sorted.size()));
    for (int i = 0; i < static_cast<int>(sorted.size()); ++i) r.old_to_new[sorted[i]] = i;
    for (Vertex u : sorted)
        for (Vertex v : g.neighbors(u))
            if (u < v && r.old_to_new[v] >= 0)
                r.graph.add_edge(r.old_to_new[u], r.old_to_new[v]);
    return r;
}

ValidationReport validate_path(const Graph& g, const Path& p, const PathConstraints& c) {
    ValidationReport rep;
    std::vector<bool> seen(g.num_vertices(), false);
    for (size_t i = 0; i < p.vertices.size(); ++i) {
        Vertex v = p.vertices[i];
        if (v < 0 || v >= g.num_vertices()) {
            rep.violations.push_back("vertex out of range: " + std::to_string(v));
            return rep;
        }
        if (seen[v]) rep.violations.push_back("repeated vertex " + std::to_string(v));
        seen[v] = true;
        if (i > 0 && !g.has_edge(p.vertices[i - 1], v))
            rep.violations.push_back("non-edge step " + std::to_string(p.vertices[i - 1]) + "-" +
                                     std::to_string(v));
    }
    if (p.empty()) {
        rep.violations.push_back("empty path");
        return rep;
    }
    if (c.required_start && p.front() != *c.required_start)
        rep.violations.push_back("wrong start endpoint");
    if (c.required_end && p.back() != *c.required_end)
        rep.violations.push_back("wrong end endpoint");
    for (const Edge& e : c.required_edges) {
        bool found = false;
        for (size_t i = 0; i + 1 < p.vertices.size(); ++i)
            if (Edge(p.vertices[i], p.vertices[i + 1]) == e) {
                found = true;
                break;
            }
        if (!found)
            rep.violations.push_back("missing required edge " + std::to_string(e.u) + "-" +
                                     std::to_string(e.v));
    }
    if (c.must_be_hamiltonian && p.size() != g.num_vertices())
        rep.violations.push_back("not spanning");
    return rep;
}

ValidationReport validate_cycle(const Graph& g, const Cycle& c, const std::set<Edge>& required,
                                bool must_be_hamiltonian) {
    ValidationReport rep;
    if (c.size() < 3) {
        rep.violations.push_back("cycle shorter than 3");
        return rep;
    }
    Path as_path{c.vertices};
    PathConstraints pc;
    pc.must_be_hamiltonian = must_be_hamiltonian;
    rep = validate_path(g, as_path, pc);
    if (!g.has_edge(c.vertices.back(), c.vertices.front()))
        rep.violations.push_back("closing pair is not an edge");
    for (const Edge& e : required) {
        bool found = false;
        for (int i = 0; i < c.size(); ++i)
            if (Edge(c.vertices[i], c.vertices[(i + 1) % c.size()]) == e) {
                found = true;
                break;
            }
        if (!found)
            rep.violations.push_back("missing required edge " + std::to_string(e.u) + "-" +
                                     std::to_string(e.v));
    }
    return rep;
}

}  // namespace hamnet
