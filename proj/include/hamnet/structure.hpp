#pragma once

#include <array>
#include <optional>
#include <variant>

#include "hamnet/graph.hpp"

namespace hamnet {

struct ClawCertificate {
    Vertex center;
    std::array<Vertex, 3> leaves;  // pairwise non-adjacent
};

struct NetCertificate {
    std::array<Vertex, 3> triangle;
    std::array<Vertex, 3> pendants;  // pendants[i] attached to triangle[i]
};

struct ForbiddenCertificate {
    std::variant<ClawCertificate, NetCertificate> pattern;
    bool is_claw() const { return std::holds_alternative<ClawCertificate>(pattern); }
};

// Lexicographically first induced claw / net, if any.
std::optional<ForbiddenCertificate> find_claw(const Graph& g);
std::optional<ForbiddenCertificate> find_net(const Graph& g);

struct ClassCheck {
    bool cn_free;
    std::optional<ForbiddenCertificate> certificate;
};
ClassCheck is_claw_net_free(const Graph& g);

bool certificate_validates(const Graph& g, const ForbiddenCertificate& cert);

enum class BlockKind { EndBlock, InnerBlock, IsolatedVertex };

struct BlockDecomposition {
    std::vector<std::vector<Vertex>> blocks;  // vertex sets, sorted
    std::vector<Vertex> cut_vertices;         // sorted
    // block_tree[b] = cut vertices incident to block b
    std::vector<std::vector<Vertex>> block_tree;
    std::vector<BlockKind> kind;
    std::vector<std::vector<Vertex>> boundary;  // boundary vertices per block
    std::vector<std::vector<Vertex>> inner;     // inner vertices per block

    bool is_cut(Vertex v) const {
        return std::binary_search(cut_vertices.begin(), cut_vertices.end(), v);
    }
    int end_block_count() const;
    // Block containing edge (u,v); -1 if none.
    int block_of_edge(Vertex u, Vertex v) const;
};

// Requires connected input. A 2-connected graph is one end-block with
// empty boundary.
BlockDecomposition blocks(const Graph& g);

struct BlockChain {
    std::vector<int> order;  // block indices A_1, B_1, ..., A_2
};
struct ChainFailure {
    std::vector<int> end_blocks;  // >= 3 end-block witness
};
std::variant<BlockChain, ChainFailure> block_chain(const BlockDecomposition& d);

// Test-only exponential search for a connected induced subgraph with >= 3
// end-blocks. Soft size guard.
std::optional<std::vector<Vertex>> has_three_end_block_subgraph(const Graph& g,
                                                                int size_limit = 10);

bool vertex_connectivity_at_least(const Graph& g, int k);

}  // namespace hamnet
