#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hamnet/key_lemma.hpp"
#include "hamnet/oracle.hpp"
#include "test_util.hpp"

using namespace hamnet;
using namespace hamnet::testutil;

namespace {

// Check every contract clause of the lemma outcome.
void check_outcome(const Graph& g, Vertex z, const Path& p, Vertex pp,
                   const LemmaOutcome& out) {
    PathConstraints pc;
    pc.must_be_hamiltonian = true;
    pc.required_edges = {Edge(z, pp)};
    REQUIRE(validate_path(g, out.q, pc).ok());
    // endpoints within {x, y, z}
    Vertex x = p.front(), y = p.back();
    for (Vertex end : {out.q.front(), out.q.back()})
        CHECK((end == x || end == y || end == z));
    // at least one end-edge of P survives
    auto has_edge_on_q = [&](Vertex a, Vertex b) {
        for (size_t i = 0; i + 1 < out.q.vertices.size(); ++i)
            if (Edge(out.q.vertices[i], out.q.vertices[i + 1]) == Edge(a, b)) return true;
        return false;
    };
    bool ex = p.size() >= 2 && has_edge_on_q(p.vertices[0], p.vertices[1]);
    bool ey = p.size() >= 2 &&
              has_edge_on_q(p.vertices[p.size() - 2], p.vertices[p.size() - 1]);
    if (p.size() >= 2) CHECK((ex || ey));
    CHECK(out.contains_ex == ex);
    CHECK(out.contains_ey == ey);
    CHECK(out.contains_ez == has_edge_on_q(z, pp));
    CHECK(out.contains_ez);
}

}  // namespace

TEST_CASE("extend_trace on the single edge") {
    Graph g = make_graph(2, {{0, 1}});
    auto out = extend_trace(g, 0, Path{{1}}, 1);
    CHECK(out.q.vertices == std::vector<Vertex>{0, 1});
}

TEST_CASE("extend_trace on the kite example") {
    // z=0, p=1, a=2, b=3; edges zp, pa, pb, ab; P = a-p-b
    Graph g = make_graph(4, {{0, 1}, {1, 2}, {1, 3}, {2, 3}});
    Path p{{2, 1, 3}};
    auto out = extend_trace(g, 0, p, 1);
    check_outcome(g, 0, p, 1, out);
    CHECK(out.q.front() == 0);  // z must be an endpoint here: both P-ends stay inside
}

TEST_CASE("extend_trace on K4") {
    Graph g = k4();  // z=0, p=1, P = 2-1-3
    Path p{{2, 1, 3}};
    auto out = extend_trace(g, 0, p, 1);
    check_outcome(g, 0, p, 1, out);
}

TEST_CASE("extend_trace preconditions") {
    Graph g = k4();
    CHECK_THROWS_AS(extend_trace(g, 0, Path{{0, 1, 2}}, 1), PreconditionViolation);  // z on P
    CHECK_THROWS_AS(extend_trace(g, 0, Path{{2, 1}}, 1), PreconditionViolation);     // not spanning
    Graph h = make_graph(3, {{0, 1}, {1, 2}});
    CHECK_THROWS_AS(extend_trace(h, 0, Path{{2}}, 2), PreconditionViolation);        // zp not an edge
}

TEST_CASE("extend_trace rejects class violations with a certificate") {
    // star centered at 1: P = 2-1-3 is a trace of G-0, edge 0-1, claw at 1
    Graph g = make_graph(4, {{1, 0}, {1, 2}, {1, 3}});
    LemmaOptions lo;
    lo.check_class = true;
    CHECK_THROWS_AS(extend_trace(g, 0, Path{{2, 1, 3}}, 1, lo), NotClawNetFree);
}

TEST_CASE("engine witnesses validate on the triangle start") {
    // G: z=0 adjacent to p=1 only at start; M = {1,2,3} triangle plus tails
    Graph g = make_graph(6,
                         {{0, 1}, {1, 2}, {1, 3}, {2, 3}, {2, 4}, {3, 5}, {4, 5}});
    GoodPathEngine eng(g, 0, {1, 2, 4}, {1, 3, 5});
    eng.init();
    std::string why;
    CHECK(eng.validate_state(&why));
    CHECK(why.empty());
}

TEST_CASE("step records and bounded step count") {
    Graph g = make_graph(6, {{0, 1}, {1, 2}, {1, 3}, {2, 3}, {2, 4}, {3, 5}, {4, 5}});
    Path p{{4, 2, 1, 3, 5}};
    int steps = 0;
    LemmaOptions lo;
    lo.check_class = false;
    lo.validate_witnesses = true;
    lo.on_step = [&](const LemmaStepRecord& rec) {
        ++steps;
        CHECK(rec.witnesses_ok);
        CHECK_FALSE(rec.case_tag.empty());
    };
    auto out = extend_trace(g, 0, p, 1, lo);
    check_outcome(g, 0, p, 1, out);
    CHECK(steps <= g.num_vertices());
}

TEST_CASE("randomized contract sweep on small class members") {
    // all (G, z, P, p) with n <= 6 from a thinned enumeration
    int tested = 0;
    for (int n = 3; n <= 6; ++n) {
        enumerate_labeled_graphs(n, {.connected = true, .cn_free = true},
                                 [&](const Graph& g, uint64_t mask) {
            if (n == 6 && mask % 7 != 0) return;  // thin out for runtime
            for (Vertex z = 0; z < n; ++z) {
                auto sub = induced(g, [&] {
                    std::vector<Vertex> keep;
                    for (Vertex v = 0; v < n; ++v)
                        if (v != z) keep.push_back(v);
                    return keep;
                }());
                if (!is_connected(sub.graph)) continue;
                auto p_sub = bf_ham_path(sub.graph);
                if (!p_sub) continue;
                Path p;
                for (Vertex v : p_sub->vertices) p.vertices.push_back(sub.new_to_old[v]);
                for (Vertex pp : g.neighbors(z)) {
                    LemmaOptions lo;
                    lo.check_class = false;
                    lo.validate_witnesses = true;
                    auto out = extend_trace(g, z, p, pp, lo);
                    check_outcome(g, z, p, pp, out);
                    ++tested;
                }
            }
        });
    }
    CHECK(tested > 500);
}
