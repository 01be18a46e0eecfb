#pragma once

#include <cstdint>
#include <functional>

#include "hamnet/graph.hpp"

namespace hamnet {

struct OracleQuery {
    std::optional<Vertex> s, t;
    std::set<Edge> required_edges;
};

// Exhaustive backtracking Hamiltonian path search; deterministic first
// solution. Throws when the graph exceeds `limit` vertices.
std::optional<Path> bf_ham_path(const Graph& g, const OracleQuery& q = {}, int limit = 12);

std::optional<Cycle> bf_ham_cycle(const Graph& g, std::optional<Edge> required = {},
                                  int limit = 12);

struct EnumFilter {
    bool connected = false;
    bool cn_free = false;
    bool two_connected = false;
};

// Labeled graph on n vertices from an edge-subset bitmask, pairs in
// lexicographic order: (0,1),(0,2),...,(n-2,n-1).
Graph graph_from_mask(int n, uint64_t mask);
uint64_t mask_count(int n);  // 2^(n choose 2)

bool passes_filter(const Graph& g, const EnumFilter& f);

// Streams every labeled graph on n vertices (n <= 7) passing the filter,
// in mask order.
void enumerate_labeled_graphs(int n, const EnumFilter& f,
                              const std::function<void(const Graph&, uint64_t)>& fn);

// Erdos-Renyi sample, largest component, then chord insertion until
// {claw,net}-free. Deterministic under fixed seed.
Graph random_cn_free(int n, double p, uint64_t seed);

}  // namespace hamnet
