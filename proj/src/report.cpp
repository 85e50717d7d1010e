#include "lozi/report.h"

#include <fstream>

namespace lozi::report {

namespace {

std::string kind_name(BranchSolution::Kind k) {
  switch (k) {
    case BranchSolution::Kind::IsolatedPoint: return "point";
    case BranchSolution::Kind::Segment: return "segment";
    case BranchSolution::Kind::WholeDomain: return "whole-domain";
    case BranchSolution::Kind::Empty: return "empty";
    case BranchSolution::Kind::Unbounded: return "unbounded";
  }
  return "?";
}

Json itineraries(const std::vector<SignItinerary>& its) {
  Json out = Json::array();
  for (const auto& it : its) out.push_back(it.str());
  return out;
}

Json floats(const std::vector<PointF>& pts) {
  Json out = Json::array();
  for (const auto& q : pts) out.push_back({q.x, q.y});
  return out;
}

}  // namespace

Json to_json(const Rational& r) { return r.str(); }
Json to_json(const Point2& p) { return Json::array({p.x.str(), p.y.str()}); }

Json to_json(const std::vector<Point2>& vertices) {
  Json out = Json::array();
  for (const auto& v : vertices) out.push_back(to_json(v));
  return out;
}

Json to_json(const ConvexPolygon& poly) { return to_json(poly.vertices()); }
Json to_json(const SignItinerary& it) { return it.str(); }

Json to_json(const EpsPoly& p) {
  Json coeffs = Json::array();
  for (const auto& c : p.coefficients()) coeffs.push_back(c.str());
  return {{"coefficients", coeffs}, {"truncated", p.truncated()}};
}

Json to_json(const LoziParams& p) { return {{"a", p.a.str()}, {"b", p.b.str()}}; }

Json to_json(const BranchSolution& s) {
  Json j{{"itinerary", s.itinerary.str()}, {"kind", kind_name(s.kind)}};
  if (s.point) j["point"] = to_json(*s.point);
  if (s.segment) j["segment"] = Json::array({to_json(s.segment->first), to_json(s.segment->second)});
  if (s.candidate) j["candidate"] = to_json(*s.candidate);
  if (!s.violated.empty()) j["violated_steps"] = s.violated;
  return j;
}

Json to_json(const FixedPointSet& s) {
  Json points = Json::array(), segments = Json::array(), branches = Json::array();
  for (const auto& p : s.points) points.push_back({{"point", to_json(p.point)}, {"sources", itineraries(p.sources)}});
  for (const auto& g : s.segments)
    segments.push_back({{"from", to_json(g.from)}, {"to", to_json(g.to)}, {"sources", itineraries(g.sources)}});
  for (const auto& b : s.branches) branches.push_back(to_json(b));
  return {{"period", s.period},
          {"points", points},
          {"segments", segments},
          {"whole_domains", itineraries(s.whole_domains)},
          {"unbounded", itineraries(s.unbounded)},
          {"branches", branches}};
}

Json to_json(const CoverVerdict& v) {
  Json j{{"status", to_string(v.status)}, {"itinerary", v.itinerary.str()}};
  if (!v.failure.empty()) j["failure"] = v.failure;
  if (v.image_vertices) j["image_vertices"] = to_json(std::vector<Point2>(v.image_vertices->begin(), v.image_vertices->end()));
  if (v.strip_part) j["strip_part"] = to_json(*v.strip_part);
  if (v.first_edge_side) j["first_edge_side"] = *v.first_edge_side;
  return j;
}

Json to_json(const TransitionMatrix& m) { return m.entries; }

Json to_json(const EntropyBound& b) {
  Json j{{"iterate", b.iterate},
         {"spectral_radius_lower_exact", b.spectral_radius_lower_exact.str()},
         {"spectral_radius_lower", b.spectral_radius_lower},
         {"spectral_radius_upper", b.spectral_radius_upper},
         {"bound", b.bound},
         {"rounding", "lower values rounded down, upper values rounded up"}};
  if (b.charpoly_confirmed) j["charpoly_confirmed"] = *b.charpoly_confirmed;
  if (b.charpoly_bracket) j["charpoly_bracket"] = {b.charpoly_bracket->first, b.charpoly_bracket->second};
  return j;
}

Json to_json(const TrappingCertificate& c) {
  Json steps = Json::array();
  for (const auto& s : c.steps) {
    Json pieces = Json::array();
    for (const auto& pc : s.pieces)
      pieces.push_back({{"itinerary", pc.itinerary.str()}, {"source", to_json(pc.source)}, {"image", to_json(pc.image)}});
    Json js{{"index", s.index},
            {"piece_count", s.pieces.size()},
            {"area", s.area.str()},
            {"expected_area", s.expected_area.str()},
            {"area_law", s.area_law},
            {"contained", s.contained},
            {"pieces", pieces}};
    if (s.max_distance_to_segment) js["distance_to_segment"] = evidence({{"max", *s.max_distance_to_segment}});
    steps.push_back(std::move(js));
  }
  Json j{{"passed", c.passed}, {"period", c.period}, {"region", to_json(c.region)}, {"steps", steps}};
  if (c.first_failure) {
    j["first_failure"] = {{"step", c.first_failure->step},
                          {"piece", c.first_failure->piece},
                          {"itinerary", c.first_failure->itinerary.str()},
                          {"image", to_json(c.first_failure->image)}};
  }
  if (c.contracting) j["contraction"] = evidence({{"decreasing", *c.contracting}});
  return j;
}

Json to_json(const CoefficientPair& c) {
  Json signs = Json::array();
  for (const auto& s : c.sign_log) signs.push_back(s.sign);
  return {{"vertex", std::string(1, c.vertex)},
          {"constant", to_json(c.constant)},
          {"x_lin", c.x_lin.str()},
          {"y_lin", c.y_lin.str()},
          {"x_lin_2dp", truncate_decimal(c.x_lin, 2)},
          {"y_lin_2dp", truncate_decimal(c.y_lin, 2)},
          {"image", {{"x", to_json(c.image.x)}, {"y", to_json(c.image.y)}}},
          {"sign_log", signs},
          {"outside_regime", c.outside_regime}};
}

Json to_json(const CoefficientDrift& d) {
  Json rows = Json::array();
  for (const auto& r : d.rows) rows.push_back(to_json(r));
  return {{"eps2", d.eps2.str()}, {"rows", rows}, {"max_drift", d.max_drift.str()}, {"outside_regime", d.outside_regime}};
}

Json to_json(const FamilyCovering& f) {
  Json verdicts = Json::array();
  for (const auto& row : f.verdicts) {
    Json r = Json::array();
    for (const auto& v : row) r.push_back(to_json(v));
    verdicts.push_back(std::move(r));
  }
  return {{"params", to_json(f.params)},
          {"height", f.height.str()},
          {"verdicts", verdicts},
          {"matrix", to_json(f.matrix)},
          {"entropy_bound", to_json(f.bound)},
          {"any_indeterminate", f.any_indeterminate}};
}

Json to_json(const PolylineF64& l) {
  return evidence({{"role", to_string(l.role)}, {"level", l.level}, {"escaped", l.escaped}, {"points", floats(l.points)}});
}

Json to_json(const EntropyEstimate& e) {
  return evidence({{"estimate", e.estimate},
                   {"raw", e.raw},
                   {"counts", e.counts},
                   {"samples", e.samples},
                   {"discarded", e.discarded},
                   {"tag", e.tag}});
}

Json evidence(Json payload) {
  Json out{{"evidence", true}};
  for (auto& [k, v] : payload.items()) out[k] = v;
  return out;
}

Rational rational_from_json(const Json& j) {
  try {
    if (j.is_string()) return Rational::parse(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long>());
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  throw InputError("expected a rational as \"num/den\", got " + j.dump());
}

Point2 point_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw InputError("expected a point [x, y], got " + j.dump());
  return {rational_from_json(j[0]), rational_from_json(j[1])};
}

ConvexPolygon parse_polygon(const Json& j) {
  const Json& verts = j.is_object() ? j.at("vertices") : j;
  if (!verts.is_array()) throw InputError("polygon vertices must be an array");
  std::vector<Point2> pts;
  for (const auto& v : verts) pts.push_back(point_from_json(v));
  try {
    return ConvexPolygon::make(std::move(pts));
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
}

BoxSet parse_box_set(const Json& j) {
  if (!j.is_object()) throw InputError("box set must be a JSON object");
  BoxSet out;
  try {
    out.iterate = j.value("iterate", 4u);
    const Json& params = j.at("params");
    out.params = {rational_from_json(params.at("a")), rational_from_json(params.at("b"))};
    for (const auto& box : j.at("boxes")) {
      const Json& verts = box.at("vertices");
      if (!verts.is_array() || verts.size() != 4) throw InputError("a box needs exactly four vertices");
      std::array<Point2, 4> v;
      for (std::size_t i = 0; i < 4; ++i) v[i] = point_from_json(verts[i]);

      // rotate so that the vertical edges are (v0, v1) and (v2, v3)
      std::size_t start = 0;
      if (box.contains("vertical_edges")) {
        const auto edges = box.at("vertical_edges").get<std::vector<std::array<std::size_t, 2>>>();
        if (edges.size() != 2) throw InputError("vertical_edges needs two index pairs");
        auto first_of = [](std::array<std::size_t, 2> e) -> std::optional<std::size_t> {
          if (e[0] > 3 || e[1] > 3) return std::nullopt;
          if ((e[0] + 1) % 4 == e[1]) return e[0];
          if ((e[1] + 1) % 4 == e[0]) return e[1];
          return std::nullopt;
        };
        const auto s0 = first_of(edges[0]);
        const auto s1 = first_of(edges[1]);
        if (!s0 || !s1 || (*s0 + 2) % 4 != *s1) throw InputError("vertical_edges must be two opposite edges");
        start = *s0;
      }
      std::array<Point2, 4> r;
      for (std::size_t i = 0; i < 4; ++i) r[i] = v[(start + i) % 4];
      out.boxes.push_back(MarkedQuadrilateral::make(r));
    }
    if (j.contains("assert")) {
      for (const auto& pr : j.at("assert")) {
        const auto ij = pr.get<std::array<std::size_t, 2>>();
        if (ij[0] >= out.boxes.size() || ij[1] >= out.boxes.size()) throw InputError("asserted box index out of range");
        out.asserted.emplace_back(ij[0], ij[1]);
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed box set: ") + e.what());
  } catch (const InputError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  if (out.iterate == 0) throw InputError("iterate must be positive");
  return out;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError("'" + path + "' is not valid JSON: " + e.what());
  }
}

void add_polygon_layer(Json& report, const std::string& name, const std::vector<std::vector<Point2>>& polygons) {
  Json items = Json::array();
  for (const auto& p : polygons) items.push_back(to_json(p));
  report["geometry"][name] = {{"kind", "polygons"}, {"items", items}};
}

void add_polyline_layer(Json& report, const std::string& name, const std::vector<PolylineF64>& lines) {
  Json items = Json::array();
  for (const auto& l : lines) items.push_back(floats(l.points));
  report["geometry"][name] = evidence({{"kind", "polylines"}, {"items", items}});
}

}  // namespace lozi::report
