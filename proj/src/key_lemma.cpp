#include "hamnet/key_lemma.hpp"

#include <algorithm>
#include <set>

namespace hamnet {

namespace {

Path oriented(Path p, Vertex front) {
    if (p.vertices.front() != front) std::reverse(p.vertices.begin(), p.vertices.end());
    if (p.vertices.front() != front)
        throw std::logic_error("witness has unexpected endpoints");
    return p;
}

// Replace the adjacency between a and b in p by a detour through w.
Path insert_between(Path p, Vertex a, Vertex b, Vertex w) {
    for (size_t i = 0; i + 1 < p.vertices.size(); ++i) {
        Vertex u = p.vertices[i], v = p.vertices[i + 1];
        if ((u == a && v == b) || (u == b && v == a)) {
            p.vertices.insert(p.vertices.begin() + static_cast<long>(i) + 1, w);
            return p;
        }
    }
    throw std::logic_error("insert_between: pair not adjacent in witness");
}

Path appended(Path p, std::initializer_list<Vertex> tail) {
    p.vertices.insert(p.vertices.end(), tail.begin(), tail.end());
    return p;
}

Path reversed(Path p) {
    std::reverse(p.vertices.begin(), p.vertices.end());
    return p;
}

struct AuxSpec {
    std::set<Vertex> core;                            // induced edges allowed here
    std::vector<std::pair<Vertex, Vertex>> extra;     // explicitly added edges
    Vertex end_a, end_b;
    bool ordered = true;                              // front must be end_a
    std::optional<std::pair<Vertex, Vertex>> required_edge;
    std::optional<std::array<Vertex, 3>> required_subpath;  // either orientation
};

bool check_witness(const Graph& g, const AuxSpec& spec, const Path& p, std::string* why) {
    auto fail = [&](const std::string& m) {
        if (why) *why = m;
        return false;
    };
    std::set<Vertex> span = spec.core;
    for (auto [a, b] : spec.extra) {
        span.insert(a);
        span.insert(b);
    }
    if (p.vertices.size() != span.size()) return fail("witness does not span aux graph");
    std::set<Vertex> seen(p.vertices.begin(), p.vertices.end());
    if (seen != span) return fail("witness vertex set mismatch");
    auto edge_ok = [&](Vertex a, Vertex b) {
        if (spec.core.count(a) && spec.core.count(b) && g.has_edge(a, b)) return true;
        for (auto [u, v] : spec.extra)
            if ((u == a && v == b) || (u == b && v == a)) return true;
        return false;
    };
    for (size_t i = 0; i + 1 < p.vertices.size(); ++i)
        if (!edge_ok(p.vertices[i], p.vertices[i + 1])) return fail("illegal witness step");
    Vertex f = p.vertices.front(), bk = p.vertices.back();
    if (spec.ordered ? (f != spec.end_a || bk != spec.end_b)
                     : !((f == spec.end_a && bk == spec.end_b) ||
                         (f == spec.end_b && bk == spec.end_a)))
        return fail("witness endpoint mismatch");
    if (spec.required_edge) {
        auto [a, b] = *spec.required_edge;
        bool found = false;
        for (size_t i = 0; i + 1 < p.vertices.size(); ++i) {
            Vertex u = p.vertices[i], v = p.vertices[i + 1];
            if ((u == a && v == b) || (u == b && v == a)) found = true;
        }
        if (!found) return fail("witness misses required edge");
    }
    if (spec.required_subpath) {
        auto t = *spec.required_subpath;
        bool found = false;
        for (size_t i = 0; i + 2 < p.vertices.size(); ++i) {
            Vertex u = p.vertices[i], v = p.vertices[i + 1], w = p.vertices[i + 2];
            if ((u == t[0] && v == t[1] && w == t[2]) ||
                (u == t[2] && v == t[1] && w == t[0]))
                found = true;
        }
        if (!found) return fail("witness misses required subpath");
    }
    return true;
}

}  // namespace

GoodPathEngine::GoodPathEngine(const Graph& g, Vertex z, std::vector<Vertex> x_side,
                               std::vector<Vertex> y_side)
    : g_(g), z_(z), x_(std::move(x_side)), y_(std::move(y_side)) {
    if (x_.size() < 2 || y_.size() < 2 || x_[0] != y_[0])
        throw PreconditionViolation("good path engine: bad side paths");
}

std::vector<Vertex> GoodPathEngine::member_vertices() const {
    std::vector<Vertex> m(x_.begin(), x_.begin() + r_ + 1);
    m.insert(m.end(), y_.begin() + 1, y_.begin() + s_ + 1);
    return m;
}

void GoodPathEngine::init() {
    Vertex p = x_[0], x1 = x_[1], y1 = y_[1];
    if (!g_.has_edge(x1, y1))
        throw PreconditionViolation("init: x1y1 must be an edge");
    if (g_.has_edge(z_, x1) || g_.has_edge(z_, y1))
        throw PreconditionViolation("init: z adjacent to x1 or y1");
    r_ = s_ = 1;
    wx1_ = Path{{p, x1, y1}};
    wy1_ = Path{{p, y1, x1}};
    wx2_.clear();
    wy2_.clear();
    wz_.clear();
    if (r_ + 1 < static_cast<int>(x_.size())) {
        wx2_[y1] = Path{{p, x1, x_[2], y1}};
        wx2_[p] = Path{{p, x_[2], x1, y1}};
    }
    if (s_ + 1 < static_cast<int>(y_.size())) {
        wy2_[x1] = Path{{p, y1, y_[2], x1}};
        wy2_[p] = Path{{p, y_[2], y1, x1}};
    }
    wz_[x1] = Path{{x1, z_, p, y1}};
    wz_[y1] = Path{{x1, p, z_, y1}};
}

void GoodPathEngine::mirror() {
    std::swap(x_, y_);
    std::swap(r_, s_);
    std::swap(wx1_, wy1_);
    std::swap(wx2_, wy2_);
}

bool GoodPathEngine::validate_state(std::string* why) const {
    Vertex p = x_[0];
    auto members = member_vertices();
    std::set<Vertex> core(members.begin(), members.end());
    Vertex xr = x_[r_], ys = y_[s_];
    bool has_nx = r_ + 1 < static_cast<int>(x_.size());
    bool has_ny = s_ + 1 < static_cast<int>(y_.size());

    AuxSpec s1{core, {}, p, ys, true, std::make_pair(x_[r_ - 1], xr), std::nullopt};
    if (!check_witness(g_, s1, wx1_, why)) return false;
    AuxSpec s2{core, {}, p, xr, true, std::make_pair(y_[s_ - 1], ys), std::nullopt};
    if (!check_witness(g_, s2, wy1_, why)) return false;

    if (has_nx) {
        Vertex nx = x_[r_ + 1];
        for (Vertex v : members) {
            if (v == xr) continue;
            auto it = wx2_.find(v);
            if (it == wx2_.end()) {
                if (why) *why = "missing (x2) witness";
                return false;
            }
            AuxSpec sp{core, {{xr, nx}, {nx, v}}, p, ys, true, std::nullopt,
                       std::array<Vertex, 3>{xr, nx, v}};
            if (!check_witness(g_, sp, it->second, why)) return false;
        }
    }
    if (has_ny) {
        Vertex ny = y_[s_ + 1];
        for (Vertex v : members) {
            if (v == ys) continue;
            auto it = wy2_.find(v);
            if (it == wy2_.end()) {
                if (why) *why = "missing (y2) witness";
                return false;
            }
            AuxSpec sp{core, {{ys, ny}, {ny, v}}, p, xr, true, std::nullopt,
                       std::array<Vertex, 3>{ys, ny, v}};
            if (!check_witness(g_, sp, it->second, why)) return false;
        }
    }
    for (Vertex v : members) {
        if (v == p) continue;
        auto it = wz_.find(v);
        if (it == wz_.end()) {
            if (why) *why = "missing (z) witness";
            return false;
        }
        AuxSpec sp{core, {{z_, p}, {z_, v}}, xr, ys, false, std::make_pair(z_, p),
                   std::nullopt};
        if (!check_witness(g_, sp, it->second, why)) return false;
    }
    return true;
}

// xPx_{r+1} prefix: x_k, x_{k-1}, ..., x_{r+1}
static void push_x_prefix(std::vector<Vertex>& out, const std::vector<Vertex>& xs, int r) {
    for (int i = static_cast<int>(xs.size()) - 1; i > r; --i) out.push_back(xs[i]);
}

static void push_y_suffix(std::vector<Vertex>& out, const std::vector<Vertex>& ys, int s) {
    for (int i = s + 1; i < static_cast<int>(ys.size()); ++i) out.push_back(ys[i]);
}

Path GoodPathEngine::assemble_p21(Vertex b) const {
    Path l = oriented(wz_.at(b), x_[r_]);
    std::vector<Vertex> q;
    push_x_prefix(q, x_, r_);
    q.insert(q.end(), l.vertices.begin(), l.vertices.end());
    push_y_suffix(q, y_, s_);
    return Path{std::move(q)};
}

Path GoodPathEngine::assemble_p22() const {
    std::vector<Vertex> q;
    push_x_prefix(q, x_, r_ + 1);
    q.push_back(x_[r_ + 1]);
    q.push_back(z_);
    q.insert(q.end(), wx1_.vertices.begin(), wx1_.vertices.end());
    push_y_suffix(q, y_, s_);
    return Path{std::move(q)};
}

Path GoodPathEngine::assemble_p231(Vertex b) const {
    std::vector<Vertex> q{z_};
    if (b != y_[s_ + 1]) {
        const Path& l = wx2_.at(b);  // p..y_s through x_r x_{r+1} b
        q.insert(q.end(), l.vertices.begin(), l.vertices.end());
    } else {
        q.insert(q.end(), wy1_.vertices.begin(), wy1_.vertices.end());
        q.push_back(x_[r_ + 1]);
        q.push_back(y_[s_ + 1]);
        push_y_suffix(q, y_, s_ + 1);
        return Path{std::move(q)};
    }
    push_y_suffix(q, y_, s_);
    return Path{std::move(q)};
}

std::optional<Path> GoodPathEngine::terminal_if_end_reached() {
    // (p1): the good path reached an endpoint of P.
    for (int side = 0; side < 2; ++side) {
        if (r_ == static_cast<int>(x_.size()) - 1) {
            std::vector<Vertex> q{z_};
            q.insert(q.end(), wx1_.vertices.begin(), wx1_.vertices.end());
            push_y_suffix(q, y_, s_);
            return Path{std::move(q)};
        }
        mirror();
    }
    return std::nullopt;
}

void GoodPathEngine::grow_c1(Vertex b) {
    Vertex p = x_[0], xr = x_[r_], ys = y_[s_];
    Vertex nx = x_[r_ + 1];
    auto members = member_vertices();

    Path nwx1 = wx2_.at(b);
    Path nwy1 = appended(wy1_, {nx});

    std::map<Vertex, Path> nwx2, nwy2, nwz;
    if (r_ + 2 < static_cast<int>(x_.size())) {
        Vertex nnx = x_[r_ + 2];
        for (Vertex v : members) {
            if (v == xr)
                nwx2[v] = insert_between(nwx1, xr, nx, nnx);
            else
                nwx2[v] = insert_between(wx2_.at(v), nx, v, nnx);
        }
    }
    if (s_ + 1 < static_cast<int>(y_.size())) {
        Vertex ny = y_[s_ + 1];
        for (Vertex v : members)
            if (v != ys) nwy2[v] = appended(wy2_.at(v), {nx});
        nwy2[nx] = appended(wx1_, {ny, nx});
    }
    for (Vertex v : members)
        if (v != p) {
            Path l = oriented(wz_.at(v), xr);
            l.vertices.insert(l.vertices.begin(), nx);
            nwz[v] = std::move(l);
        }
    {
        Path l{{nx, z_}};
        l.vertices.insert(l.vertices.end(), wx1_.vertices.begin(), wx1_.vertices.end());
        nwz[nx] = std::move(l);
    }

    wx1_ = std::move(nwx1);
    wy1_ = std::move(nwy1);
    wx2_ = std::move(nwx2);
    wy2_ = std::move(nwy2);
    wz_ = std::move(nwz);
    ++r_;
}

void GoodPathEngine::grow_c2() {
    Vertex p = x_[0], xr = x_[r_], ys = y_[s_];
    Vertex nx = x_[r_ + 1], ny = y_[s_ + 1];
    auto members = member_vertices();

    Path nwx1 = appended(wy1_, {nx, ny});
    Path nwy1 = appended(wx1_, {ny, nx});

    std::map<Vertex, Path> nwx2, nwy2, nwz;
    if (r_ + 2 < static_cast<int>(x_.size())) {
        Vertex nnx = x_[r_ + 2];
        for (Vertex v : members) {
            if (v == xr)
                nwx2[v] = insert_between(nwx1, xr, nx, nnx);
            else
                nwx2[v] = appended(insert_between(wx2_.at(v), nx, v, nnx), {ny});
        }
        nwx2[ny] = appended(wy1_, {nx, nnx, ny});
    }
    if (s_ + 2 < static_cast<int>(y_.size())) {
        Vertex nny = y_[s_ + 2];
        for (Vertex v : members) {
            if (v == ys)
                nwy2[v] = insert_between(nwy1, ys, ny, nny);
            else
                nwy2[v] = appended(insert_between(wy2_.at(v), ny, v, nny), {nx});
        }
        nwy2[nx] = appended(wx1_, {ny, nny, nx});
    }
    for (Vertex v : members)
        if (v != p) {
            Path l = oriented(wz_.at(v), xr);
            l.vertices.insert(l.vertices.begin(), nx);
            l.vertices.push_back(ny);
            nwz[v] = std::move(l);
        }
    {
        Path l{{nx, z_}};
        l.vertices.insert(l.vertices.end(), wx1_.vertices.begin(), wx1_.vertices.end());
        l.vertices.push_back(ny);
        nwz[nx] = std::move(l);
    }
    {
        Path l = reversed(wy1_);  // x_r ... p
        l.vertices.insert(l.vertices.begin(), nx);
        l.vertices.push_back(z_);
        l.vertices.push_back(ny);
        nwz[ny] = std::move(l);
    }

    wx1_ = std::move(nwx1);
    wy1_ = std::move(nwy1);
    wx2_ = std::move(nwx2);
    wy2_ = std::move(nwy2);
    wz_ = std::move(nwz);
    ++r_;
    ++s_;
}

std::optional<Path> GoodPathEngine::step(LemmaStepRecord* rec) {
    if (rec) {
        rec->r = r_;
        rec->s = s_;
    }
    if (auto q = terminal_if_end_reached()) {
        if (rec) rec->case_tag = "p1";
        return q;
    }

    auto members = member_vertices();
    std::set<Vertex> mset(members.begin(), members.end());
    Vertex p = x_[0], nx = x_[r_ + 1], ny = y_[s_ + 1];

    // (p2.1): z adjacent inside M beyond p.
    {
        Vertex best = -1;
        for (Vertex b : g_.neighbors(z_))
            if (b != p && mset.count(b)) {
                best = b;
                break;
            }
        if (best >= 0) {
            if (rec) {
                rec->case_tag = "p2.1";
                rec->a = z_;
                rec->b = best;
            }
            return assemble_p21(best);
        }
    }
    // (p2.2): z adjacent to x_{r+1} or y_{s+1}.
    {
        bool zx = g_.has_edge(z_, nx), zy = g_.has_edge(z_, ny);
        if (zx || zy) {
            if (!zx || (zy && ny < nx)) mirror();
            if (rec) {
                rec->case_tag = "p2.2";
                rec->a = z_;
                rec->b = x_[r_ + 1];
            }
            return assemble_p22();
        }
    }
    // (p2.3): x_{r+1} or y_{s+1} adjacent to M or to each other.
    {
        auto best_b = [&](Vertex a, Vertex skip, Vertex other) -> Vertex {
            Vertex best = -1;
            for (Vertex b : g_.neighbors(a)) {
                if (b == z_ || b == skip) continue;
                if (mset.count(b) || b == other)
                    if (best < 0 || b < best) best = b;
            }
            return best;
        };
        Vertex bx = best_b(nx, x_[r_], ny);
        Vertex by = best_b(ny, y_[s_], nx);
        if (bx < 0 && by < 0)
            throw NotClawNetFree("no extension edge: input graph is not {claw,net}-free");
        bool use_y = bx < 0 || (by >= 0 && (ny < nx || (ny == nx && by < bx)));
        if (use_y) {
            mirror();
            std::swap(bx, by);
            nx = x_[r_ + 1];
            ny = y_[s_ + 1];
        }
        if (rec) {
            rec->case_tag = "p2.3";
            rec->a = nx;
            rec->b = bx;
        }
        if (r_ + 1 == static_cast<int>(x_.size()) - 1) {
            if (rec) rec->case_tag = "p2.3.1";
            return assemble_p231(bx);
        }
        if (rec) rec->case_tag = bx == ny ? "p2.3.2/c2" : "p2.3.2/c1";
        if (bx == ny)
            grow_c2();
        else
            grow_c1(bx);
        return std::nullopt;
    }
}

LemmaOutcome extend_trace(const Graph& g, Vertex z, const Path& p_trace, Vertex p,
                          const LemmaOptions& opts) {
    int n = g.num_vertices();
    if (z < 0 || z >= n || p < 0 || p >= n || !g.has_edge(z, p))
        throw PreconditionViolation("extend_trace: zp must be an edge of G");
    auto pos = std::find(p_trace.vertices.begin(), p_trace.vertices.end(), p);
    if (pos == p_trace.vertices.end())
        throw PreconditionViolation("extend_trace: p must lie on P");
    {
        // P must be a trace of G - z.
        if (p_trace.size() != n - 1)
            throw PreconditionViolation("extend_trace: P does not span G - z");
        PathConstraints pc;
        auto rep = validate_path(g, p_trace, pc);
        if (!rep.ok() ||
            std::find(p_trace.vertices.begin(), p_trace.vertices.end(), z) !=
                p_trace.vertices.end())
            throw PreconditionViolation("extend_trace: P is not a trace of G - z");
    }
    if (opts.check_class) {
        auto chk = is_claw_net_free(g);
        if (!chk.cn_free)
            throw NotClawNetFree("extend_trace: graph is not {claw,net}-free",
                                 chk.certificate);
    }

    Vertex x_end = p_trace.vertices.front(), y_end = p_trace.vertices.back();
    Edge ex(p_trace.vertices[0], p_trace.vertices[1]);
    Edge ey(p_trace.vertices[p_trace.size() - 2], y_end);
    Edge ez(z, p);

    auto finish = [&](Path q) {
        LemmaOutcome out;
        out.q = std::move(q);
        for (size_t i = 0; i + 1 < out.q.vertices.size(); ++i) {
            Edge e(out.q.vertices[i], out.q.vertices[i + 1]);
            if (e == ex) out.contains_ex = true;
            if (e == ey) out.contains_ey = true;
            if (e == ez) out.contains_ez = true;
        }
        PathConstraints pc;
        pc.must_be_hamiltonian = true;
        pc.required_edges = {ez};
        auto rep = validate_path(g, out.q, pc);
        if (!rep.ok()) throw std::logic_error("extend_trace: produced invalid trace");
        if (!out.contains_ex && !out.contains_ey)
            throw std::logic_error("extend_trace: both end-edges lost");
        std::set<Vertex> allowed{x_end, y_end, z};
        if (!allowed.count(out.q.front()) || !allowed.count(out.q.back()))
            throw std::logic_error("extend_trace: bad endpoints");
        return out;
    };

    long idx = pos - p_trace.vertices.begin();
    if (p == y_end || p == x_end) {
        Path q = p_trace;
        if (p == x_end)
            q.vertices.insert(q.vertices.begin(), z);
        else
            q.vertices.push_back(z);
        return finish(std::move(q));
    }
    Vertex x1 = p_trace.vertices[idx + 1], y1 = p_trace.vertices[idx - 1];
    if (g.has_edge(z, x1) || g.has_edge(z, y1)) {
        Path q = p_trace;
        long at = g.has_edge(z, x1) ? idx + 1 : idx;
        q.vertices.insert(q.vertices.begin() + at, z);
        return finish(std::move(q));
    }
    if (!g.has_edge(x1, y1)) {
        // {p; x1, y1, z} is an induced claw.
        ForbiddenCertificate cert{ClawCertificate{p, {std::min({x1, y1, z}),
                                                      std::max({x1, y1, z}), 0}}};
        auto& cl = std::get<ClawCertificate>(cert.pattern);
        std::array<Vertex, 3> ls{x1, y1, z};
        std::sort(ls.begin(), ls.end());
        cl.leaves = ls;
        throw NotClawNetFree("extend_trace: forced step found an induced claw", cert);
    }

    std::vector<Vertex> xs(p_trace.vertices.begin() + idx, p_trace.vertices.end());
    std::vector<Vertex> ys(p_trace.vertices.rend() - idx - 1, p_trace.vertices.rend());
    GoodPathEngine eng(g, z, std::move(xs), std::move(ys));
    eng.init();
    if (opts.validate_witnesses) {
        std::string why;
        if (!eng.validate_state(&why))
            throw std::logic_error("extend_trace: initial state invalid: " + why);
    }
    for (int guard = 0; guard <= n + 1; ++guard) {
        LemmaStepRecord rec;
        auto q = eng.step(&rec);
        if (!q && opts.validate_witnesses) {
            std::string why;
            rec.witnesses_ok = eng.validate_state(&why);
            if (!rec.witnesses_ok)
                throw std::logic_error("extend_trace: state invalid after " +
                                       rec.case_tag + ": " + why);
        }
        if (opts.on_step) opts.on_step(rec);
        if (q) return finish(std::move(*q));
    }
    throw std::logic_error("extend_trace: growth did not terminate");
}

}  // namespace hamnet
