#pragma once

#include <functional>
#include <map>

#include "hamnet/graph.hpp"
#include "hamnet/structure.hpp"

namespace hamnet {

struct PreconditionViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotClawNetFree : std::runtime_error {
    std::optional<ForbiddenCertificate> certificate;
    explicit NotClawNetFree(const std::string& msg,
                            std::optional<ForbiddenCertificate> cert = std::nullopt)
        : std::runtime_error(msg), certificate(std::move(cert)) {}
};

// Outcome of the trace-extension lemma: a Hamiltonian trace Q of G with
// zp on it, endpoints among {x, y, z}, and at least one end-edge of the
// original trace P preserved.
struct LemmaOutcome {
    Path q;
    bool contains_ex = false;
    bool contains_ey = false;
    bool contains_ez = false;
};

struct LemmaStepRecord {
    int r, s;
    std::string case_tag;
    Vertex a = -1, b = -1;
    bool witnesses_ok = true;
};

struct LemmaOptions {
    bool check_class = true;          // verify {claw,net}-freeness up front
    bool validate_witnesses = false;  // revalidate the full state per step
    std::function<void(const LemmaStepRecord&)> on_step;
};

// Given a trace P of G - z and an edge zp with p on P, produce a trace of G
// containing zp. Polynomial: grows a good subpath of P while maintaining
// explicit witness traces.
LemmaOutcome extend_trace(const Graph& g, Vertex z, const Path& p_trace, Vertex p,
                          const LemmaOptions& opts = {});

// Exposed for unit tests: the good-path state with its witness tables.
class GoodPathEngine {
public:
    GoodPathEngine(const Graph& g, Vertex z, std::vector<Vertex> x_side,
                   std::vector<Vertex> y_side);

    // Preconditions: p not an endpoint, z not adjacent to x1/y1, x1y1 an edge.
    void init();

    // Runs one iteration: returns the finished trace on a terminal case,
    // nullopt after a growth step. Throws NotClawNetFree when no extension
    // edge exists.
    std::optional<Path> step(LemmaStepRecord* rec = nullptr);

    // Checks every stored witness against its auxiliary graph.
    bool validate_state(std::string* why = nullptr) const;

    int r() const { return r_; }
    int s() const { return s_; }

private:
    std::vector<Vertex> member_vertices() const;
    void mirror();
    std::optional<Path> terminal_if_end_reached();
    Path assemble_p21(Vertex b) const;
    Path assemble_p22() const;
    Path assemble_p231(Vertex b) const;
    void grow_c1(Vertex b);
    void grow_c2();

    const Graph& g_;
    Vertex z_;
    std::vector<Vertex> x_, y_;  // x_[0] == y_[0] == p
    int r_ = 0, s_ = 0;
    Path wx1_, wy1_;
    std::map<Vertex, Path> wx2_, wy2_, wz_;
};

}  // namespace hamnet
