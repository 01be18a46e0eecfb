#include "hamnet/structure.hpp"

#include <algorithm>
#include <bit>
#include <functional>

namespace hamnet {

namespace {

// Packed adjacency rows for O(1) edge tests and word-parallel candidate
// filtering; the sorted adjacency lists make these searches quadratic per
// candidate on dense graphs otherwise.
struct AdjBits {
    int n, words;
    std::vector<uint64_t> bits;

    explicit AdjBits(const Graph& g)
        : n(g.num_vertices()), words((n + 63) / 64),
          bits(static_cast<size_t>(n) * words, 0) {
        for (Vertex u = 0; u < n; ++u)
            for (Vertex v : g.neighbors(u))
                bits[static_cast<size_t>(u) * words + v / 64] |= uint64_t{1} << (v % 64);
    }
    bool test(Vertex u, Vertex v) const {
        return bits[static_cast<size_t>(u) * words + v / 64] >> (v % 64) & 1;
    }
    const uint64_t* row(Vertex u) const { return &bits[static_cast<size_t>(u) * words]; }
};

// Lowest set bit index in `set`, or -1; visits candidates in ascending
// vertex order so the lexicographically-first certificate is preserved.
int first_bit(const std::vector<uint64_t>& set) {
    for (size_t w = 0; w < set.size(); ++w)
        if (set[w]) return static_cast<int>(w * 64 + std::countr_zero(set[w]));
    return -1;
}

}  // namespace

std::optional<ForbiddenCertificate> find_claw(const Graph& g) {
    AdjBits adj(g);
    for (Vertex c = 0; c < g.num_vertices(); ++c) {
        const auto& nb = g.neighbors(c);
        int d = static_cast<int>(nb.size());
        if (d < 3) continue;
        for (int i = 0; i < d; ++i)
            for (int j = i + 1; j < d; ++j) {
                if (adj.test(nb[i], nb[j])) continue;
                for (int k = j + 1; k < d; ++k) {
                    if (adj.test(nb[i], nb[k]) || adj.test(nb[j], nb[k])) continue;
                    return ForbiddenCertificate{ClawCertificate{c, {nb[i], nb[j], nb[k]}}};
                }
            }
    }
    return std::nullopt;
}

std::optional<ForbiddenCertificate> find_net(const Graph& g) {
    int n = g.num_vertices();
    AdjBits adj(g);
    int words = adj.words;
    // Pendant candidates per triangle corner: adjacent to that corner and to
    // neither of the other two. Corner vertices drop out automatically since
    // each is adjacent to the other two.
    std::vector<uint64_t> c1(words), c2(words), c3(words), c2p(words), c3p(words);
    auto candidates = [&](std::vector<uint64_t>& out, Vertex own, Vertex o1, Vertex o2) {
        bool any = false;
        for (int w = 0; w < words; ++w) {
            out[w] = adj.row(own)[w] & ~adj.row(o1)[w] & ~adj.row(o2)[w];
            any |= out[w] != 0;
        }
        return any;
    };
    for (Vertex t1 = 0; t1 < n; ++t1)
        for (Vertex t2 : g.neighbors(t1)) {
            if (t2 <= t1) continue;
            for (Vertex t3 : g.neighbors(t1)) {
                if (t3 <= t2 || !adj.test(t2, t3)) continue;
                if (!candidates(c1, t1, t2, t3) || !candidates(c2, t2, t1, t3) ||
                    !candidates(c3, t3, t1, t2))
                    continue;
                for (int w1 = 0; w1 < words; ++w1)
                    for (uint64_t b1 = c1[w1]; b1; b1 &= b1 - 1) {
                        Vertex p1 = w1 * 64 + std::countr_zero(b1);
                        for (int w = 0; w < words; ++w) c2p[w] = c2[w] & ~adj.row(p1)[w];
                        for (int w2 = 0; w2 < words; ++w2)
                            for (uint64_t b2 = c2p[w2]; b2; b2 &= b2 - 1) {
                                Vertex p2 = w2 * 64 + std::countr_zero(b2);
                                for (int w = 0; w < words; ++w)
                                    c3p[w] = c3[w] & ~adj.row(p1)[w] & ~adj.row(p2)[w];
                                if (int p3 = first_bit(c3p); p3 >= 0)
                                    return ForbiddenCertificate{
                                        NetCertificate{{t1, t2, t3}, {p1, p2, p3}}};
                            }
                    }
            }
        }
    return std::nullopt;
}

ClassCheck is_claw_net_free(const Graph& g) {
    if (auto c = find_claw(g)) return {false, c};
    if (auto c = find_net(g)) return {false, c};
    return {true, std::nullopt};
}

bool certificate_validates(const Graph& g, const ForbiddenCertificate& cert) {
    if (cert.is_claw()) {
        const auto& c = std::get<ClawCertificate>(cert.pattern);
        for (int i = 0; i < 3; ++i) {
            if (!g.has_edge(c.center, c.leaves[i])) return false;
            for (int j = i + 1; j < 3; ++j)
                if (g.has_edge(c.leaves[i], c.leaves[j])) return false;
        }
        std::vector<Vertex> vs{c.center, c.leaves[0], c.leaves[1], c.leaves[2]};
        std::sort(vs.begin(), vs.end());
        return std::unique(vs.begin(), vs.end()) == vs.end();
    }
    const auto& nt = std::get<NetCertificate>(cert.pattern);
    std::vector<Vertex> vs(nt.triangle.begin(), nt.triangle.end());
    vs.insert(vs.end(), nt.pendants.begin(), nt.pendants.end());
    std::sort(vs.begin(), vs.end());
    if (std::unique(vs.begin(), vs.end()) != vs.end()) return false;
    for (int i = 0; i < 3; ++i) {
        for (int j = i + 1; j < 3; ++j) {
            if (!g.has_edge(nt.triangle[i], nt.triangle[j])) return false;
            if (g.has_edge(nt.pendants[i], nt.pendants[j])) return false;
        }
        for (int j = 0; j < 3; ++j) {
            bool want = (i == j);
            if (g.has_edge(nt.pendants[i], nt.triangle[j]) != want) return false;
        }
    }
    return true;
}

int BlockDecomposition::end_block_count() const {
    int c = 0;
    for (BlockKind k : kind)
        if (k == BlockKind::EndBlock) ++c;
    return c;
}

int BlockDecomposition::block_of_edge(Vertex u, Vertex v) const {
    for (int b = 0; b < static_cast<int>(blocks.size()); ++b) {
        const auto& vs = blocks[b];
        if (std::binary_search(vs.begin(), vs.end(), u) &&
            std::binary_search(vs.begin(), vs.end(), v))
            return b;
    }
    return -1;
}

BlockDecomposition blocks(const Graph& g) {
    if (!is_connected(g)) throw std::invalid_argument("blocks: graph must be connected");
    int n = g.num_vertices();
    BlockDecomposition d;
    if (n == 1) {
        d.blocks = {{0}};
        d.block_tree = {{}};
        d.kind = {BlockKind::IsolatedVertex};
        d.boundary = {{}};
        d.inner = {{0}};
        return d;
    }

    // Iterative Tarjan biconnected components with an edge stack.
    std::vector<int> disc(n, -1), low(n, 0), parent(n, -1), child_count(n, 0);
    std::vector<bool> is_cut(n, false);
    std::vector<std::pair<Vertex, Vertex>> edge_stack;
    std::vector<std::vector<Vertex>> raw_blocks;

    struct Frame {
        Vertex u;
        size_t next = 0;
    };
    int timer = 0;
    std::vector<Frame> stack;
    stack.push_back({0});
    disc[0] = low[0] = timer++;
    while (!stack.empty()) {
        Frame& f = stack.back();
        Vertex u = f.u;
        const auto& nb = g.neighbors(u);
        if (f.next < nb.size()) {
            Vertex v = nb[f.next++];
            if (disc[v] < 0) {
                parent[v] = u;
                ++child_count[u];
                edge_stack.emplace_back(u, v);
                disc[v] = low[v] = timer++;
                stack.push_back({v});
            } else if (v != parent[u] && disc[v] < disc[u]) {
                edge_stack.emplace_back(u, v);
                low[u] = std::min(low[u], disc[v]);
            }
        } else {
            stack.pop_back();
            Vertex p = parent[u];
            if (p >= 0) {
                low[p] = std::min(low[p], low[u]);
                if (low[u] >= disc[p]) {
                    if (parent[p] >= 0 || child_count[p] > 1) is_cut[p] = true;
                    std::vector<Vertex> comp;
                    while (!edge_stack.empty()) {
                        auto [a, b] = edge_stack.back();
                        edge_stack.pop_back();
                        comp.push_back(a);
                        comp.push_back(b);
                        if (a == p && b == u) break;
                    }
                    std::sort(comp.begin(), comp.end());
                    comp.erase(std::unique(comp.begin(), comp.end()), comp.end());
                    raw_blocks.push_back(std::move(comp));
                }
            }
        }
    }

    std::sort(raw_blocks.begin(), raw_blocks.end());
    d.blocks = std::move(raw_blocks);
    for (Vertex v = 0; v < n; ++v)
        if (is_cut[v]) d.cut_vertices.push_back(v);

    d.block_tree.resize(d.blocks.size());
    d.kind.resize(d.blocks.size());
    d.boundary.resize(d.blocks.size());
    d.inner.resize(d.blocks.size());
    for (size_t b = 0; b < d.blocks.size(); ++b) {
        for (Vertex v : d.blocks[b]) {
            if (is_cut[v]) {
                d.block_tree[b].push_back(v);
                d.boundary[b].push_back(v);
            } else {
                d.inner[b].push_back(v);
            }
        }
        d.kind[b] = d.boundary[b].size() <= 1 ? BlockKind::EndBlock : BlockKind::InnerBlock;
    }
    return d;
}

std::variant<BlockChain, ChainFailure> block_chain(const BlockDecomposition& d) {
    int nb = static_cast<int>(d.blocks.size());
    if (nb < 2) throw std::invalid_argument("block_chain: needs at least 2 blocks");
    std::vector<int> ends;
    for (int b = 0; b < nb; ++b)
        if (d.kind[b] == BlockKind::EndBlock) ends.push_back(b);
    bool is_path = ends.size() == 2;
    for (int b = 0; b < nb && is_path; ++b)
        if (d.boundary[b].size() > 2) is_path = false;
    if (is_path) {
        // a cut vertex in >2 blocks also breaks the path shape
        for (Vertex c : d.cut_vertices) {
            int deg = 0;
            for (int b = 0; b < nb; ++b)
                if (std::binary_search(d.blocks[b].begin(), d.blocks[b].end(), c)) ++deg;
            if (deg > 2) {
                is_path = false;
                break;
            }
        }
    }
    if (!is_path) return ChainFailure{ends};

    BlockChain chain;
    std::vector<bool> used(nb, false);
    int cur = ends[0];
    Vertex via = -1;
    for (int step = 0; step < nb; ++step) {
        chain.order.push_back(cur);
        used[cur] = true;
        Vertex next_cut = -1;
        for (Vertex c : d.boundary[cur])
            if (c != via) next_cut = c;
        if (next_cut < 0) break;
        int next = -1;
        for (int b = 0; b < nb; ++b)
            if (!used[b] &&
                std::binary_search(d.blocks[b].begin(), d.blocks[b].end(), next_cut))
                next = b;
        if (next < 0) break;
        via = next_cut;
        cur = next;
    }
    return chain;
}

std::optional<std::vector<Vertex>> has_three_end_block_subgraph(const Graph& g,
                                                                int size_limit) {
    int n = g.num_vertices();
    if (n > size_limit)
        throw std::runtime_error("has_three_end_block_subgraph: size guard exceeded");
    for (uint32_t mask = 0; mask < (1u << n); ++mask) {
        if (std::popcount(mask) < 4) continue;
        std::vector<Vertex> subset;
        for (Vertex v = 0; v < n; ++v)
            if (mask & (1u << v)) subset.push_back(v);
        auto sub = induced(g, subset);
        if (!is_connected(sub.graph)) continue;
        auto d = blocks(sub.graph);
        if (d.end_block_count() >= 3) return subset;
    }
    return std::nullopt;
}

bool vertex_connectivity_at_least(const Graph& g, int k) {
    if (k < 1 || k > 3) throw std::invalid_argument("k must be 1, 2 or 3");
    int n = g.num_vertices();
    if (n <= k) return false;
    if (!is_connected(g)) return false;
    if (k == 1) return true;
    std::vector<bool> removed(n, false);
    for (Vertex u = 0; u < n; ++u) {
        removed[u] = true;
        if (k == 2) {
            if (!is_connected_without(g, removed)) return false;
        } else {
            for (Vertex v = u + 1; v < n; ++v) {
                removed[v] = true;
                bool ok = is_connected_without(g, removed);
                removed[v] = false;
                if (!ok) return false;
            }
            if (!is_connected_without(g, removed)) return false;
        }
        removed[u] = false;
    }
    return true;
}

}  // namespace hamnet
