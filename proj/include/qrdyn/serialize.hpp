#pragma once

#include <string>

#include "qrdyn/dynmap.hpp"
#include "qrdyn/geometry.hpp"
#include "qrdyn/growth.hpp"
#include "qrdyn/zorich.hpp"

// vendored single-header nlohmann/json
#include "json.hpp"

namespace qrdyn {

using json = nlohmann::json;

/// CSV per RFC 4180, numbers at 17 significant digits.
std::string direction_set_csv(const DirectionSet& ds);
std::string growth_curve_csv(const GrowthCurve& g);

json direction_set_json(const DirectionSet& ds);
json modulus_constants_json();

/// ASCII PLY with vertex and face elements.
std::string trimesh_ply(const TriMesh& mesh);

/// Map configuration: {"kind": ..., "T": ..., "caps": [{"center": [..],
/// "half_angle": ..}], "factor": ..}.
json dynmap_to_json(const DynMap& m);
DynMap dynmap_from_json(const json& j);

void write_file(const std::string& path, const std::string& content);

/// FNV-1a hash of the canonical dump, for run manifests.
std::string config_hash(const json& j);

}  // namespace qrdyn
