#pragma once

// JSON documents for every certificate and evidence object, and the input
// formats read by the command-line tool.

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "lozi/covering.h"
#include "lozi/fixed_points.h"
#include "lozi/perturbation.h"
#include "lozi/simulation.h"
#include "lozi/trapping.h"

namespace lozi::report {

/// Insertion-ordered so that output bytes depend only on the content.
using Json = nlohmann::ordered_json;

/// Malformed input documents. Reported as usage errors by the CLI.
class InputError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

Json to_json(const Rational& r);
Json to_json(const Point2& p);
Json to_json(const std::vector<Point2>& vertices);
Json to_json(const ConvexPolygon& poly);
Json to_json(const SignItinerary& it);
Json to_json(const EpsPoly& p);
Json to_json(const LoziParams& p);
Json to_json(const BranchSolution& s);
Json to_json(const FixedPointSet& s);
Json to_json(const CoverVerdict& v);
Json to_json(const TransitionMatrix& m);
Json to_json(const EntropyBound& b);
Json to_json(const TrappingCertificate& c);
Json to_json(const CoefficientPair& c);
Json to_json(const CoefficientDrift& d);
Json to_json(const FamilyCovering& f);
Json to_json(const PolylineF64& l);
Json to_json(const EntropyEstimate& e);

/// Accepts "n", "n/d", decimal strings and JSON integers.
Rational rational_from_json(const Json& j);
Point2 point_from_json(const Json& j);

struct BoxSet {
  unsigned iterate = 4;
  LoziParams params;
  std::vector<MarkedQuadrilateral> boxes;
  std::vector<std::pair<std::size_t, std::size_t>> asserted;
};

/// {"iterate": n, "params": {"a", "b"}, "boxes": [{"vertices": [[x, y] x4],
/// "vertical_edges": [[i, j], [k, l]]}], "assert": [[i, j], ...]}.
BoxSet parse_box_set(const Json& j);
/// Either a vertex array or {"vertices": [...]}.
ConvexPolygon parse_polygon(const Json& j);
Json read_json_file(const std::string& path);

// Geometry layers consumed by the figure emitter live under
// report["geometry"][name] = {"kind": "polygons" | "polylines", "items": [...]}.
void add_polygon_layer(Json& report, const std::string& name, const std::vector<std::vector<Point2>>& polygons);
void add_polyline_layer(Json& report, const std::string& name, const std::vector<PolylineF64>& lines);

/// Float payloads are wrapped as {"evidence": true, ...} so they can never be
/// mistaken for certified values.
Json evidence(Json payload);

}  // namespace lozi::report
