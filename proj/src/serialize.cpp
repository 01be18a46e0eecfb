#include "hamnet/serialize.hpp"

namespace hamnet {

namespace {

using nlohmann::json;

json ids(const std::vector<Vertex>& vs) {
    json a = json::array();
    for (Vertex v : vs) a.push_back(v + 1);
    return a;
}

const char* kind_name(DiagnosisKind k) {
    switch (k) {
        case DiagnosisKind::NotClawNetFree: return "not_claw_net_free";
        case DiagnosisKind::Disconnected: return "disconnected";
        case DiagnosisKind::EndBlockCriterionFailed: return "end_block_criterion_failed";
        case DiagnosisKind::LMember: return "no_trace_through_edge";
        case DiagnosisKind::EMember: return "edge_on_no_cycle";
        case DiagnosisKind::InnerEdgeCriterionFailed: return "inner_edge_criterion_failed";
    }
    return "unknown";
}

}  // namespace

json to_json(const Path& p) { return ids(p.vertices); }

json to_json(const Cycle& c) { return ids(c.vertices); }

json to_json(const ForbiddenCertificate& cert) {
    json j;
    if (cert.is_claw()) {
        const auto& c = std::get<ClawCertificate>(cert.pattern);
        j["kind"] = "claw";
        j["center"] = c.center + 1;
        j["leaves"] = json::array({c.leaves[0] + 1, c.leaves[1] + 1, c.leaves[2] + 1});
    } else {
        const auto& nt = std::get<NetCertificate>(cert.pattern);
        j["kind"] = "net";
        j["triangle"] =
            json::array({nt.triangle[0] + 1, nt.triangle[1] + 1, nt.triangle[2] + 1});
        j["pendants"] =
            json::array({nt.pendants[0] + 1, nt.pendants[1] + 1, nt.pendants[2] + 1});
    }
    return j;
}

json to_json(const BlockDecomposition& d) {
    json j;
    j["blocks"] = json::array();
    for (size_t b = 0; b < d.blocks.size(); ++b) {
        json blk;
        blk["vertices"] = ids(d.blocks[b]);
        blk["boundary"] = ids(d.boundary[b]);
        blk["inner"] = ids(d.inner[b]);
        switch (d.kind[b]) {
            case BlockKind::EndBlock: blk["kind"] = "end"; break;
            case BlockKind::InnerBlock: blk["kind"] = "inner"; break;
            case BlockKind::IsolatedVertex: blk["kind"] = "isolated_vertex"; break;
        }
        j["blocks"].push_back(blk);
    }
    j["cut_vertices"] = ids(d.cut_vertices);
    return j;
}

json to_json(const Diagnosis& d) {
    json j;
    j["reason"] = kind_name(d.kind);
    if (!d.detail.empty()) j["detail"] = d.detail;
    if (d.certificate) j["certificate"] = to_json(*d.certificate);
    if (d.l_witness) {
        json w;
        w["clause"] = d.l_witness->clause;
        w["avoided_component"] = ids(d.l_witness->avoided_component);
        if (d.l_witness->relabeled_t >= 0) w["identified"] = d.l_witness->relabeled_t + 1;
        if (d.l_witness->x >= 0) w["x"] = d.l_witness->x + 1;
        j["obstruction_witness"] = w;
    }
    if (d.e_witness) {
        json w;
        w["x1"] = d.e_witness->x1 + 1;
        w["x2"] = d.e_witness->x2 + 1;
        w["side1"] = ids(d.e_witness->side1);
        w["side2"] = ids(d.e_witness->side2);
        w["rigid_side"] = d.e_witness->rigid_side;
        j["split_witness"] = w;
    }
    if (d.edge) j["edge"] = json::array({d.edge->u + 1, d.edge->v + 1});
    if (d.block >= 0) j["block"] = d.block;
    return j;
}

json result_json(const TraceResult& r) {
    json j;
    if (std::holds_alternative<Path>(r)) {
        j["status"] = "found";
        j["path"] = to_json(std::get<Path>(r));
    } else {
        j["status"] = "not_found";
        j["diagnosis"] = to_json(std::get<Diagnosis>(r));
    }
    return j;
}

json result_json(const TrackResult& r) {
    json j;
    if (std::holds_alternative<Cycle>(r)) {
        j["status"] = "found";
        j["cycle"] = to_json(std::get<Cycle>(r));
    } else {
        j["status"] = "not_found";
        j["diagnosis"] = to_json(std::get<Diagnosis>(r));
    }
    return j;
}

}  // namespace hamnet
