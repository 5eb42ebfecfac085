#pragma once

// Wire formats.
//   classes:      JSON integer arrays, e.g. [2,0,-1,-1,-1,-1]
//   binary forms: JSON arrays of rational strings, descending powers of u
//   conics:       9 row-major rational strings "p/q"
//   surfaces:     {"model":"trilinear","coeffs":[8 ints]} or
//                 {"model":"cover","coeffs":[9 ints]}
//   points:       JSON arrays of decimal strings per factor, the cover's z
//                 as a one-element array: [["1","0"],["1","1"],["3"]]
//   point sets:   CSV, header row, one canonical point per line, LF endings

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "cbundle/binary_form.hpp"
#include "cbundle/conic.hpp"
#include "cbundle/density.hpp"
#include "cbundle/pic_lattice.hpp"
#include "cbundle/propagate.hpp"
#include "cbundle/surface.hpp"

namespace cbundle::io {

using nlohmann::json;

json to_json(const pic::DivisorClass& c);
pic::DivisorClass class_from_json(const json& j);
json to_json(const pic::FibrationAudit& a);

json to_json(const BinaryForm& f);
BinaryForm form_from_json(const json& j);
/// "1,0,-1" -> u^2 - v^2.
BinaryForm form_from_csv_text(const std::string& text);

json to_json(const TernaryConic& q);
TernaryConic conic_from_json(const json& j);

json to_json(const SurfaceModel& s);
SurfaceModel surface_from_json(const json& j);

json to_json(const SurfacePoint& p);
/// Accepts the bare array or {"point": [...]}.
SurfacePoint point_from_json(const json& j);

json to_json(const BranchLocus& b);
json to_json(const FibreProductReport& r);
json to_json(const DensityVerdict& v);
json to_json(const RoundStats& r);

std::string csv_header(ModelKind kind);
void write_points_csv(std::ostream& os, ModelKind kind, const std::vector<SurfacePoint>& points);
/// The header decides the model kind.
std::vector<SurfacePoint> read_points_csv(std::istream& is, ModelKind& kind);

/// Fixed formatting used for every JSON output: 2-space indent, trailing LF.
std::string dump(const json& j);

}  // namespace cbundle::io
