#pragma once

#include <variant>

#include "hamnet/graph.hpp"
#include "hamnet/key_lemma.hpp"
#include "hamnet/structure.hpp"

namespace hamnet {

enum class DiagnosisKind {
    NotClawNetFree,
    Disconnected,
    EndBlockCriterionFailed,
    LMember,
    EMember,
    InnerEdgeCriterionFailed,
};

// Literal witness for the published L-obstruction clauses.
struct LWitness {
    int clause;                          // 1 or 2
    std::vector<Vertex> avoided_component;
    Vertex relabeled_t = -1;             // clause 2: the identified vertex
    Vertex x = -1;                       // clause 2, second alternative
};

struct EWitness {
    Vertex x1, x2;
    std::vector<Vertex> side1, side2;    // component unions, without x1/x2
    int rigid_side;  // side whose union with x1x2 is 3-connected or a triangle; 0 if none
};

struct Diagnosis {
    DiagnosisKind kind;
    std::string detail;
    std::optional<ForbiddenCertificate> certificate;
    std::optional<LWitness> l_witness;
    std::optional<EWitness> e_witness;
    std::optional<Edge> edge;  // InnerEdgeCriterionFailed: the offending edge
    int block = -1;
};

using TraceResult = std::variant<Path, Diagnosis>;
using TrackResult = std::variant<Cycle, Diagnosis>;

struct HamOptions {
    bool check_class = true;  // recognition at the top-level entry only
    // Observes every extension-lemma step taken anywhere in the construction.
    std::function<void(const LemmaStepRecord&)> on_lemma_step;
};

// Hamiltonian path of a connected {claw,net}-free graph.
Path trace(const Graph& g, const HamOptions& opts = {});

// Trace containing edge sz, provided G - z stays connected.
Path trace_via_edge(const Graph& g, Vertex s, Vertex z, const HamOptions& opts = {});

// st-trace in a connectivity-1 graph; criterion: s and t are inner vertices
// of different end-blocks.
TraceResult st_trace_cut1(const Graph& g, Vertex s, Vertex t, const HamOptions& opts = {});

// a1a2-trace through a block chain containing at most one required edge per
// block.
TraceResult chain_trace_via_edges(const Graph& g, Vertex a1, Vertex a2,
                                  const std::set<Edge>& u, const HamOptions& opts = {});

// Literal evaluation of the published L-obstruction clauses (diagnostic; the
// constructive routines certify existence independently).
std::pair<bool, std::optional<LWitness>> in_obstruction_L_literal(const Graph& g, Vertex s,
                                                                  Vertex t, Edge e);

// st-trace containing e in a connectivity-1 graph; success iff one exists.
TraceResult st_trace_via_edge(const Graph& g, Vertex s, Vertex t, Edge e,
                              const HamOptions& opts = {});

// s-trace containing e in a connectivity-1 graph.
TraceResult s_trace_via_edge(const Graph& g, Vertex s, Edge e, const HamOptions& opts = {});

// E-obstruction membership for 2-connected G and edge e: e lies on no track
// exactly when its endpoints form a cut pair.
std::pair<bool, std::optional<EWitness>> in_obstruction_E(const Graph& g, Edge e,
                                                          int component_cap = 20);

// Hamiltonian cycle of a 2-connected {claw,net}-free graph.
Cycle track(const Graph& g, const HamOptions& opts = {});

// Track containing e, or the E-membership diagnosis.
TrackResult track_via_edge(const Graph& g, Edge e, const HamOptions& opts = {});

// For (G,e) in E with e = pz: st-trace through e between inner vertices of
// the two blocks of G - z at p.
Path split_trace_for_E(const Graph& g, Edge e, Vertex s, Vertex t,
                       const HamOptions& opts = {});

// Every edge of a 2-connected {claw,net}-free graph lies on some trace.
Path trace_via_edge_2conn(const Graph& g, Edge e, const HamOptions& opts = {});

}  // namespace hamnet
