#include "cbundle/io.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include "cbundle/errors.hpp"

namespace cbundle::io {

namespace {

Int int_from_json(const json& j) {
  if (j.is_number_integer()) return Int(j.get<long>());
  if (j.is_string()) return parse_integer(j.get<std::string>());
  throw InvalidInputError("expected an integer or decimal string, got " + j.dump());
}

Rat rat_from_json(const json& j) {
  if (j.is_number_integer()) return Rat(j.get<long>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw InvalidInputError("expected a rational string, got " + j.dump());
}

json proj_to_json(const Proj1& p) { return json::array({p[0].get_str(), p[1].get_str()}); }

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

}  // namespace

json to_json(const pic::DivisorClass& c) {
  json a = json::array();
  for (const auto& x : c.coeffs()) {
    if (x.fits_slong_p())
      a.push_back(x.get_si());
    else
      a.push_back(x.get_str());
  }
  return a;
}

pic::DivisorClass class_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw InvalidInputError("a class is a nonempty JSON integer array");
  std::vector<Int> c;
  for (const auto& x : j) c.push_back(int_from_json(x));
  return pic::DivisorClass(std::move(c));
}

json to_json(const pic::FibrationAudit& a) {
  json entries = json::array();
  for (const auto& e : a.entries) {
    json checks = json::object();
    for (const auto& c : e.checks)
      checks[c.name] = {{"expected", c.expected.get_str()}, {"actual", c.actual.get_str()}, {"pass", c.pass}};
    entries.push_back({{"conic", to_json(e.conic)}, {"second", to_json(e.second)}, {"checks", checks}, {"pass", e.pass}});
  }
  return {{"degree", a.degree}, {"conic_classes", a.classes}, {"pass", a.pass}, {"entries", entries}};
}

json to_json(const BinaryForm& f) {
  json a = json::array();
  for (const auto& c : f.coeffs()) a.push_back(to_string(c));
  return a;
}

BinaryForm form_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw InvalidInputError("a binary form is a nonempty JSON array");
  std::vector<Rat> c;
  for (const auto& x : j) c.push_back(rat_from_json(x));
  return BinaryForm(std::move(c));
}

BinaryForm form_from_csv_text(const std::string& text) {
  std::vector<Rat> c;
  for (const auto& part : split(text, ',')) c.push_back(parse_rational(part));
  if (c.empty()) throw InvalidInputError("empty coefficient list");
  return BinaryForm(std::move(c));
}

json to_json(const TernaryConic& q) {
  json a = json::array();
  for (const auto& e : q.entries()) a.push_back(to_string(e));
  return a;
}

TernaryConic conic_from_json(const json& j) {
  if (!j.is_array() || j.size() != 9) throw InvalidInputError("a conic is 9 row-major rational strings");
  std::array<Rat, 9> m;
  for (std::size_t i = 0; i < 9; ++i) m[i] = rat_from_json(j[i]);
  return TernaryConic(m);
}

json to_json(const SurfaceModel& s) {
  json coeffs = json::array();
  std::string model;
  if (const auto* t = std::get_if<TrilinearSurface>(&s)) {
    model = "trilinear";
    for (const auto& c : t->c) coeffs.push_back(c.fits_slong_p() ? json(c.get_si()) : json(c.get_str()));
  } else {
    model = "cover";
    for (const auto& c : std::get<BiquadraticCover>(s).a)
      coeffs.push_back(c.fits_slong_p() ? json(c.get_si()) : json(c.get_str()));
  }
  return {{"model", model}, {"coeffs", coeffs}};
}

SurfaceModel surface_from_json(const json& j) {
  if (!j.is_object() || !j.contains("model") || !j.contains("coeffs"))
    throw InvalidInputError("surface JSON needs \"model\" and \"coeffs\"");
  const auto model = j.at("model").get<std::string>();
  const auto& c = j.at("coeffs");
  if (!c.is_array()) throw InvalidInputError("\"coeffs\" must be an array");
  if (model == "trilinear") {
    if (c.size() != 8) throw InvalidInputError("trilinear model needs 8 coefficients");
    TrilinearSurface s;
    for (std::size_t i = 0; i < 8; ++i) s.c[i] = int_from_json(c[i]);
    return s;
  }
  if (model == "cover") {
    if (c.size() != 9) throw InvalidInputError("cover model needs 9 coefficients");
    BiquadraticCover s;
    for (std::size_t i = 0; i < 9; ++i) s.a[i] = int_from_json(c[i]);
    return s;
  }
  throw InvalidInputError("unknown model '" + model + "'");
}

json to_json(const SurfacePoint& p) {
  json a = json::array();
  for (const auto& f : p.factors) a.push_back(proj_to_json(f));
  if (p.z) a.push_back(json::array({p.z->get_str()}));
  return a;
}

SurfacePoint point_from_json(const json& j) {
  const json& arr = (j.is_object() && j.contains("point")) ? j.at("point") : j;
  if (!arr.is_array()) throw InvalidInputError("a point is a JSON array of coordinate arrays");
  SurfacePoint p;
  for (const auto& f : arr) {
    if (!f.is_array()) throw InvalidInputError("point factors must be arrays");
    if (f.size() == 2) {
      p.factors.push_back({int_from_json(f[0]), int_from_json(f[1])});
    } else if (f.size() == 1) {
      if (p.z) throw InvalidInputError("a point has at most one z coordinate");
      p.z = int_from_json(f[0]);
    } else {
      throw InvalidInputError("point factors have 2 entries (or 1 for z)");
    }
  }
  return p;
}

json to_json(const BranchLocus& b) {
  json roots = json::array();
  for (const auto& r : b.rational_points)
    roots.push_back({{"point", proj_to_json(r.point)}, {"multiplicity", r.multiplicity}});
  return {{"form", to_json(b.form)}, {"rational_points", roots}, {"squarefree", b.squarefree}};
}

json to_json(const FibreProductReport& r) {
  return {{"disjoint_branch", r.disjoint_branch},
          {"irreducible", r.irreducible},
          {"squares", json::array({r.squares[0], r.squares[1], r.squares[2]})}};
}

json to_json(const DensityVerdict& v) {
  return {{"verdict", v.dense ? "dense" : "contained"},
          {"rank", v.rank},
          {"expected_rank", v.expected_rank},
          {"monomials", v.monomials}};
}

json to_json(const RoundStats& r) {
  return {{"round", r.round},
          {"axis", r.axis},
          {"fibres_processed", r.fibres_processed},
          {"degenerate_skipped", r.degenerate_skipped},
          {"points_emitted", r.points_emitted},
          {"truncated", r.truncated},
          {"new_points", r.new_points},
          {"total_points", r.total_points},
          {"fibre_images", json::array({r.images[0], r.images[1]})},
          {"current_axis_images", r.current_images}};
}

std::string csv_header(ModelKind kind) {
  return kind == ModelKind::trilinear ? "x0,x1,y0,y1,z0,z1" : "u,v,s,t,z";
}

void write_points_csv(std::ostream& os, ModelKind kind, const std::vector<SurfacePoint>& points) {
  os << csv_header(kind) << '\n';
  for (const auto& p : points) {
    bool first = true;
    for (const auto& f : p.factors)
      for (const auto& x : f) {
        os << (first ? "" : ",") << x.get_str();
        first = false;
      }
    if (p.z) os << ',' << p.z->get_str();
    os << '\n';
  }
}

std::vector<SurfacePoint> read_points_csv(std::istream& is, ModelKind& kind) {
  std::string line;
  if (!std::getline(is, line)) throw InvalidInputError("empty point CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line == csv_header(ModelKind::trilinear))
    kind = ModelKind::trilinear;
  else if (line == csv_header(ModelKind::cover))
    kind = ModelKind::cover;
  else
    throw InvalidInputError("unrecognized CSV header '" + line + "'");
  const std::size_t width = kind == ModelKind::trilinear ? 6 : 5;
  std::vector<SurfacePoint> out;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto cells = split(line, ',');
    if (cells.size() != width)
      throw InvalidInputError("CSV line " + std::to_string(lineno) + " has " + std::to_string(cells.size()) +
                              " fields, expected " + std::to_string(width));
    SurfacePoint p;
    for (std::size_t f = 0; f + 1 < width; f += 2) p.factors.push_back({parse_integer(cells[f]), parse_integer(cells[f + 1])});
    if (kind == ModelKind::cover) p.z = parse_integer(cells[4]);
    out.push_back(std::move(p));
  }
  return out;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace cbundle::io
