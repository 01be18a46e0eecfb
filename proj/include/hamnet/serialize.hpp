#pragma once

#include <json.hpp>

#include "hamnet/hamiltonian.hpp"

namespace hamnet {

// All JSON output uses 1-based vertex ids, matching the file format.

nlohmann::json to_json(const Path& p);
nlohmann::json to_json(const Cycle& c);
nlohmann::json to_json(const ForbiddenCertificate& cert);
nlohmann::json to_json(const BlockDecomposition& d);
nlohmann::json to_json(const Diagnosis& d);

// {"status": "found", "path": [...]} / {"status": "not_found", "diagnosis": ...}
nlohmann::json result_json(const TraceResult& r);
nlohmann::json result_json(const TrackResult& r);

}  // namespace hamnet
