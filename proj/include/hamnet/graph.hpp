#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace hamnet {

using Vertex = int;

// Canonical undirected edge, u < v.
struct Edge {
    Vertex u, v;
    Edge(Vertex a, Vertex b) : u(a < b ? a : b), v(a < b ? b : a) {
        if (a == b) throw std::invalid_argument("self-loop edge");
    }
    bool operator==(const Edge&) const = default;
    auto operator<=>(const Edge&) const = default;
};

// Simple undirected graph on vertices 0..n-1, sorted adjacency lists.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n) : adj_(n) {
        if (n < 0) throw std::invalid_argument("negative vertex count");
    }

    int num_vertices() const { return static_cast<int>(adj_.size()); }
    int num_edges() const { return m_; }

    void add_edge(Vertex u, Vertex v);
    bool has_edge(Vertex u, Vertex v) const;
    const std::vector<Vertex>& neighbors(Vertex u) const { return adj_.at(u); }
    int degree(Vertex u) const { return static_cast<int>(adj_.at(u).size()); }

    std::vector<Edge> edges() const;  // lexicographic order

    // Debug audit: symmetry, sortedness, no loops, m consistent.
    bool audit() const;

    bool operator==(const Graph&) const = default;

private:
    std::vector<std::vector<Vertex>> adj_;
    int m_ = 0;
};

struct Path {
    std::vector<Vertex> vertices;
    bool empty() const { return vertices.empty(); }
    int size() const { return static_cast<int>(vertices.size()); }
    Vertex front() const { return vertices.front(); }
    Vertex back() const { return vertices.back(); }
};

struct Cycle {
    std::vector<Vertex> vertices;  // closing edge implied
    int size() const { return static_cast<int>(vertices.size()); }
};

struct ParseError : std::runtime_error {
    int line;
    ParseError(int ln, const std::string& msg)
        : std::runtime_error("line " + std::to_string(ln) + ": " + msg), line(ln) {}
};

// DIMACS-like format: optional "c ..." comments, "p <n> <m>" header,
// then m lines "e <u> <v>" with 1-based ids.
Graph parse_graph(const std::string& text);
std::string write_graph(const Graph& g);

bool is_connected(const Graph& g);
std::vector<std::vector<Vertex>> connected_components(const Graph& g);

// Connectivity of the subgraph induced by the vertices NOT in `removed`.
bool is_connected_without(const Graph& g, const std::vector<bool>& removed);

struct InducedResult {
    Graph graph;
    std::vector<Vertex> old_to_new;  // -1 if dropped
    std::vector<Vertex> new_to_old;
};
InducedResult induced(const Graph& g, const std::vector<Vertex>& keep);

struct PathConstraints {
    std::optional<Vertex> required_start;
    std::optional<Vertex> required_end;
    std::set<Edge> required_edges;
    bool must_be_hamiltonian = false;
};

struct ValidationReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

ValidationReport validate_path(const Graph& g, const Path& p, const PathConstraints& c);
ValidationReport validate_cycle(const Graph& g, const Cycle& c, const std::set<Edge>& required,
                                bool must_be_hamiltonian);

}  // namespace hamnet
