#include "lozi/cli.h"

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "lozi/figure.h"
#include "lozi/report.h"

namespace lozi {

namespace {

using report::InputError;
using report::Json;
using report::to_json;

constexpr const char* kVersion = "1.0.0";

struct Options {
  std::string a = "7/5", b = "2/5", eps1 = "1/1000", eps2 = "0";
  unsigned period = 4;
  unsigned steps = 2;
  std::string out, svg, csv, config, region, matrix, side = "both", view = "-2,2,-2,2", layers, report_path;
  bool canonical = false;
  double arclength = 20, tol = 1e-3;
  unsigned depth = 4, forward = 0;
  unsigned est_steps = 14;
  double est_eps = 0.2;
  std::size_t grid = 400000, grid_y = 1;
};

struct Outcome {
  int code = kExitSuccess;
  Json doc;
  std::string summary;
  std::string csv;
};

Rational parse_rational(const std::string& flag, const std::string& text) {
  try {
    return Rational::parse(text);
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string(e.what()) + " for " + flag);
  }
}

LoziParams params_of(const Options& o) { return {parse_rational("--a", o.a), parse_rational("--b", o.b)}; }

Viewport parse_view(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw InputError("cannot parse viewport value '" + tok + "'");
    }
  }
  if (v.size() != 4 || !(v[0] < v[1]) || !(v[2] < v[3])) throw InputError("viewport must be xmin,xmax,ymin,ymax");
  return {v[0], v[1], v[2], v[3]};
}

TransitionMatrix parse_matrix(const std::string& text) {
  TransitionMatrix m;
  std::stringstream rows(text);
  std::string row;
  while (std::getline(rows, row, ';')) {
    std::vector<int> r;
    std::stringstream cells(row);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      if (cell != "0" && cell != "1") throw InputError("matrix entries must be 0 or 1, got '" + cell + "'");
      r.push_back(cell == "1");
    }
    m.entries.push_back(std::move(r));
  }
  m.size = m.entries.size();
  for (const auto& r : m.entries)
    if (r.size() != m.size) throw InputError("matrix must be square");
  if (m.size == 0) throw InputError("matrix is empty");
  return m;
}

std::string matrix_str(const TransitionMatrix& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.size; ++i) {
    s += i ? ",[" : "[";
    for (std::size_t j = 0; j < m.size; ++j) s += (j ? "," : "") + std::to_string(m.entries[i][j]);
    s += "]";
  }
  return s + "]";
}

std::string fixed(double v, int digits = 6) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(digits);
  os << v;
  return os.str();
}

std::vector<Point2> vec(const std::array<Point2, 4>& a) { return {a.begin(), a.end()}; }

void add_segment_layer(Json& doc, const std::string& name, const std::vector<std::pair<Point2, Point2>>& segs) {
  Json items = Json::array();
  for (const auto& [p, q] : segs) items.push_back(Json::array({to_json(p), to_json(q)}));
  doc["geometry"][name] = {{"kind", "polylines"}, {"items", items}};
}

// ---------------------------------------------------------------------------

Outcome cmd_fixed_points(const Options& o) {
  const LoziParams p = params_of(o);
  const FixedPointSet s = enumerate_fixed_points(p, o.period);
  Outcome r;
  r.doc["fixed_points"] = to_json(s);
  std::vector<std::pair<Point2, Point2>> segs;
  for (const auto& g : s.segments) segs.emplace_back(g.from, g.to);
  add_segment_layer(r.doc, "segments", segs);
  r.summary = std::to_string(s.points.size()) + " isolated points and " + std::to_string(s.segments.size()) +
              " segments fixed by L^" + std::to_string(o.period);
  return r;
}

struct GridResult {
  std::vector<std::vector<CoverVerdict>> verdicts;
  TransitionMatrix matrix;
  EntropyBound bound;
};

GridResult cover_grid(const LoziParams& p, unsigned n, const std::vector<MarkedQuadrilateral>& boxes) {
  GridResult g;
  g.verdicts.assign(boxes.size(), std::vector<CoverVerdict>(boxes.size()));
  for (std::size_t i = 0; i < boxes.size(); ++i)
    for (std::size_t j = 0; j < boxes.size(); ++j) g.verdicts[i][j] = check_cover(p, n, boxes[i], boxes[j]);
  g.matrix = build_matrix(g.verdicts);
  g.bound = entropy_lower_bound(g.matrix, n);
  return g;
}

Outcome covering_outcome(const LoziParams& p, unsigned n, const std::vector<MarkedQuadrilateral>& boxes,
                         const std::vector<std::pair<std::size_t, std::size_t>>& asserted) {
  const GridResult g = cover_grid(p, n, boxes);
  Outcome r;
  r.doc["params"] = to_json(p);
  r.doc["iterate"] = n;
  Json verdicts = Json::array();
  for (const auto& row : g.verdicts) {
    Json jr = Json::array();
    for (const auto& v : row) jr.push_back(to_json(v));
    verdicts.push_back(std::move(jr));
  }
  r.doc["verdicts"] = verdicts;
  r.doc["matrix"] = to_json(g.matrix);
  r.doc["entropy_bound"] = to_json(g.bound);

  Json checks = Json::array();
  bool refuted = false, undecided = false;
  for (const auto& [i, j] : asserted) {
    const auto status = g.verdicts[i][j].status;
    refuted = refuted || status == CoverVerdict::Status::NotCovered;
    undecided = undecided || status == CoverVerdict::Status::Indeterminate;
    checks.push_back({{"source", i}, {"target", j}, {"status", to_string(status)}});
  }
  r.doc["asserted"] = checks;
  r.code = refuted ? kExitRefuted : (undecided ? kExitIndeterminate : kExitSuccess);

  std::vector<std::vector<Point2>> box_polys, images;
  for (const auto& b : boxes) box_polys.push_back(vec(b.vertices()));
  for (std::size_t i = 0; i < boxes.size(); ++i)
    if (g.verdicts[i][0].image) images.push_back(g.verdicts[i][0].image->vertices());
  report::add_polygon_layer(r.doc, "boxes", box_polys);
  report::add_polygon_layer(r.doc, "images", images);

  r.summary = "matrix " + matrix_str(g.matrix) + ", entropy >= " + fixed(g.bound.bound);
  if (refuted) r.summary += "; an asserted covering is refuted";
  else if (undecided) r.summary += "; an asserted covering is indeterminate";
  return r;
}

Outcome cmd_covering(const Options& o) {
  if (!o.config.empty()) {
    const report::BoxSet set = report::parse_box_set(report::read_json_file(o.config));
    return covering_outcome(set.params, set.iterate, set.boxes, set.asserted);
  }
  const Rational eps1 = parse_rational("--eps1", o.eps1), eps2 = parse_rational("--eps2", o.eps2);
  const FamilyCovering f = covering_family_check(eps1, eps2);
  const auto boxes = entropy_boxes(eps1, f.height);
  Outcome r = covering_outcome(f.params, 4, {boxes.first, boxes.second}, {{0, 0}, {0, 1}, {1, 0}});
  r.doc["eps1"] = eps1.str();
  r.doc["eps2"] = eps2.str();
  r.doc["height"] = f.height.str();
  return r;
}

Outcome cmd_entropy_bound(const Options& o) {
  if (o.matrix.empty()) {
    Outcome r = cmd_covering(o);
    r.summary = "entropy >= " + r.doc["entropy_bound"]["bound"].dump();
    return r;
  }
  const TransitionMatrix m = parse_matrix(o.matrix);
  const EntropyBound b = entropy_lower_bound(m, o.period);
  Outcome r;
  r.doc["matrix"] = to_json(m);
  r.doc["entropy_bound"] = to_json(b);
  r.summary = "entropy >= " + fixed(b.bound);
  return r;
}

Outcome trapping_outcome(const LoziParams& p, unsigned n, unsigned k, const ConvexPolygon& region,
                         std::optional<std::pair<Point2, Point2>> segment) {
  const TrappingCertificate c = verify_trapping(p, n, region, k, segment);
  Outcome r;
  r.doc["params"] = to_json(p);
  r.doc["certificate"] = to_json(c);
  r.code = c.passed ? kExitSuccess : kExitRefuted;
  report::add_polygon_layer(r.doc, "region", {region.vertices()});
  for (const auto& s : c.steps) {
    std::vector<std::vector<Point2>> imgs;
    for (const auto& pc : s.pieces) imgs.push_back(pc.image.vertices());
    report::add_polygon_layer(r.doc, "image-" + std::to_string(s.index), imgs);
  }
  r.summary = std::string(c.passed ? "trapping verified" : "trapping refuted") + " for " + std::to_string(c.steps.size()) +
              " step(s) of L^" + std::to_string(n);
  return r;
}

Outcome cmd_trapping(const Options& o) {
  const LoziParams p = params_of(o);
  if (!o.region.empty())
    return trapping_outcome(p, o.period, o.steps, report::parse_polygon(report::read_json_file(o.region)), std::nullopt);
  if (p.b != p.a - Rational(1)) throw InputError("no default region off the family b = a - 1; pass --region");
  const TrappingRegion tr = trapping_region_for(p);
  return trapping_outcome(p, o.period, o.steps, tr.hexagon, std::make_pair(tr.f1, tr.f2));
}

Outcome cmd_perturb(const Options& o) {
  const CoefficientDrift d = coefficient_drift(parse_rational("--eps2", o.eps2));
  Outcome r;
  r.doc["drift"] = to_json(d);
  r.summary = "coefficient table at eps2 = " + d.eps2.str() + ", max drift " + d.max_drift.str();
  std::ostringstream csv;
  csv << "vertex,x_lin,y_lin,x_lin_2dp,y_lin_2dp\n";
  for (const auto& row : d.rows)
    csv << row.vertex << "," << row.x_lin << "," << row.y_lin << "," << truncate_decimal(row.x_lin, 2) << ","
        << truncate_decimal(row.y_lin, 2) << "\n";
  r.csv = csv.str();
  return r;
}

Outcome cmd_jump_demo(const Options& o) {
  const Rational eps1 = parse_rational("--eps1", o.eps1), eps2 = parse_rational("--eps2", o.eps2);
  const LoziParams base = family_params(eps2);
  Outcome r;
  r.doc["eps1"] = eps1.str();
  r.doc["eps2"] = eps2.str();
  r.doc["base_params"] = to_json(base);

  const FixedPointSet fps = enumerate_fixed_points(base, 4);
  r.doc["fixed_points"] = to_json(fps);
  const TrappingRegion tr = trapping_region_for(base);
  const TrappingCertificate cert = verify_trapping(base, 4, tr.hexagon, 2, std::make_pair(tr.f1, tr.f2));
  r.doc["trapping"] = to_json(cert);
  const FamilyCovering fam = covering_family_check(eps1, eps2);
  r.doc["covering"] = to_json(fam);

  const TransitionMatrix expected{2, {{1, 1}, {1, 0}}};
  const bool segments_ok = fps.segments.size() == 2;
  const bool matrix_ok = fam.matrix == expected;
  if (!segments_ok || !cert.passed || (!matrix_ok && !fam.any_indeterminate))
    r.code = kExitRefuted;
  else if (!matrix_ok)
    r.code = kExitIndeterminate;
  r.doc["checks"] = {{"two_fixed_segments", segments_ok}, {"trapping", cert.passed}, {"matrix", matrix_ok}};

  std::vector<std::pair<Point2, Point2>> segs;
  for (const auto& g : fps.segments) segs.emplace_back(g.from, g.to);
  report::add_polygon_layer(r.doc, "region", {tr.hexagon.vertices()});
  add_segment_layer(r.doc, "segments", segs);
  const auto boxes = entropy_boxes(eps1, fam.height);
  report::add_polygon_layer(r.doc, "boxes", {vec(boxes.first.vertices()), vec(boxes.second.vertices())});

  r.summary = std::to_string(fps.segments.size()) + " fixed segments at a = " + base.a.str() + ", trapping " +
              (cert.passed ? "passes" : "fails") + "; at a + eps1 matrix " + matrix_str(fam.matrix) +
              ", entropy >= " + fixed(fam.bound.bound);
  return r;
}

std::string polylines_csv(const std::vector<PolylineF64>& lines) {
  std::ostringstream csv;
  csv.precision(17);
  csv << "polyline,role,level,index,x,y\n";
  for (std::size_t i = 0; i < lines.size(); ++i)
    for (std::size_t k = 0; k < lines[i].points.size(); ++k)
      csv << i << "," << to_string(lines[i].role) << "," << lines[i].level << "," << k << "," << lines[i].points[k].x
          << "," << lines[i].points[k].y << "\n";
  return csv.str();
}

Outcome cmd_trace(const Options& o) {
  const LoziParams p = params_of(o);
  if (o.side != "left" && o.side != "right" && o.side != "both") throw InputError("--side must be left, right or both");
  Outcome r;
  r.doc["params"] = to_json(p);
  std::vector<PolylineF64> lines;
  Json traces = Json::array();
  for (Side side : {Side::Left, Side::Right}) {
    if (o.side == (side == Side::Left ? "right" : "left")) continue;
    lines.push_back(trace_unstable(p, side, o.arclength, o.tol));
    traces.push_back(to_json(lines.back()));
  }
  r.doc["traces"] = traces;
  if (o.side != "left") {
    if (auto z = first_y_zero_crossing(p, Side::Right, o.arclength, o.tol))
      r.doc["right_y_zero_crossing"] = report::evidence({{"point", {z->x, z->y}}});
  }
  report::add_polyline_layer(r.doc, "unstable", lines);
  r.csv = polylines_csv(lines);
  r.summary = "traced " + std::to_string(lines.size()) + " unstable branch(es) (numerical evidence)";
  return r;
}

Outcome cmd_critical_lines(const Options& o) {
  const LoziParams p = params_of(o);
  auto lines = critical_line(p, o.depth, parse_view(o.view));
  Outcome r;
  r.doc["params"] = to_json(p);
  Json jl = Json::array();
  for (const auto& l : lines) jl.push_back(to_json(l));
  r.doc["critical_lines"] = jl;
  report::add_polyline_layer(r.doc, "critical-lines", lines);
  if (o.forward > 0) {
    std::vector<PolylineF64> images;
    for (const auto& l : lines) images.push_back(image_polyline(p, l, o.forward));
    report::add_polyline_layer(r.doc, "forward-images", images);
    lines.insert(lines.end(), images.begin(), images.end());
  }
  r.csv = polylines_csv(lines);
  r.summary = "critical lines of levels 0.." + std::to_string(o.depth - 1) + " (numerical evidence)";
  return r;
}

Outcome cmd_estimate(const Options& o) {
  const LoziParams p = params_of(o);
  EntropyEstimateOptions opt;
  opt.steps = o.est_steps;
  opt.eps = o.est_eps;
  opt.grid_x = o.grid;
  opt.grid_y = o.grid_y;
  opt.view = parse_view(o.view == Options{}.view ? "-1,1,-1,1" : o.view);
  if (opt.fit_window >= opt.steps) opt.fit_window = opt.steps - 1;
  const EntropyEstimate e = estimate_entropy(p, opt);
  Outcome r;
  r.doc["params"] = to_json(p);
  r.doc["estimate"] = to_json(e);
  r.summary = "entropy estimate " + fixed(e.estimate, 4) + " (numerical evidence, not a bound)";
  return r;
}

Outcome cmd_figure(const Options& o) {
  if (o.report_path.empty()) throw InputError("--report is required");
  const Json doc = report::read_json_file(o.report_path);
  std::vector<std::string> layers;
  if (o.layers.empty()) {
    layers = figure_layers(doc);
  } else {
    std::stringstream ss(o.layers);
    std::string tok;
    while (std::getline(ss, tok, ',')) layers.push_back(tok);
  }
  Outcome r;
  r.doc = doc;
  r.summary = "figure with " + std::to_string(layers.size()) + " layer(s)";
  r.doc["__figure"] = emit_figure(doc, layers);
  return r;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write '" + path + "'");
  f << text;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact certificates and numerical evidence for the Lozi map", "lozi"};
  app.require_subcommand(1, 1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--out", o.out, "write the JSON report here instead of stdout");
    sub->add_option("--svg", o.svg, "write an SVG drawing of the report geometry");
    sub->add_flag("--canonical", o.canonical, "omit run metadata so output is byte-stable");
  };
  auto params = [&](CLI::App* sub) {
    sub->add_option("--a", o.a, "parameter a as num/den")->capture_default_str();
    sub->add_option("--b", o.b, "parameter b as num/den")->capture_default_str();
  };
  auto eps = [&](CLI::App* sub) {
    sub->add_option("--eps1", o.eps1, "offset of a beyond the segment")->capture_default_str();
    sub->add_option("--eps2", o.eps2, "position along the segment")->capture_default_str();
  };

  auto* fp = app.add_subcommand("fixed-points", "fixed points of L^n");
  params(fp);
  fp->add_option("--period,--iterate", o.period, "iterate n of the map")->capture_default_str();
  common(fp);

  auto* cov = app.add_subcommand("covering", "covering relations between boxes");
  eps(cov);
  cov->add_option("--config", o.config, "box-set JSON file");
  common(cov);

  auto* eb = app.add_subcommand("entropy-bound", "entropy lower bound from a transition matrix");
  eps(eb);
  eb->add_option("--config", o.config, "box-set JSON file");
  eb->add_option("--matrix", o.matrix, "0/1 matrix such as \"1,1;1,0\"");
  eb->add_option("--period,--iterate", o.period, "iterate the matrix belongs to")->capture_default_str();
  common(eb);

  auto* tr = app.add_subcommand("trapping", "forward invariance of a polygon under L^n");
  params(tr);
  tr->add_option("--period,--iterate", o.period, "iterate n of the map")->capture_default_str();
  tr->add_option("--steps", o.steps, "number of successive images")->capture_default_str();
  tr->add_option("--region", o.region, "polygon JSON file (default: the hexagon around the fixed segment)");
  common(tr);

  auto* pt = app.add_subcommand("perturb", "first-order coefficients of the box vertex images");
  pt->add_option("--eps2", o.eps2, "position along the segment")->capture_default_str();
  pt->add_option("--csv", o.csv, "write the table as CSV");
  common(pt);

  auto* jd = app.add_subcommand("jump-demo", "fixed segments, trapping and positive entropy bound in one run");
  eps(jd);
  common(jd);

  auto* tc = app.add_subcommand("trace", "unstable manifold branches of the saddle p1");
  params(tc);
  tc->add_option("--side", o.side, "left, right or both")->capture_default_str();
  tc->add_option("--arclength", o.arclength, "polyline length to reach")->capture_default_str();
  tc->add_option("--tol", o.tol, "largest gap between consecutive points")->capture_default_str();
  tc->add_option("--csv", o.csv, "write points as CSV");
  common(tc);

  auto* cl = app.add_subcommand("critical-lines", "pullbacks of x = 0");
  params(cl);
  cl->add_option("--depth", o.depth, "number of levels")->capture_default_str();
  cl->add_option("--view", o.view, "xmin,xmax,ymin,ymax")->capture_default_str();
  cl->add_option("--forward", o.forward, "also draw images under L^k")->capture_default_str();
  cl->add_option("--csv", o.csv, "write points as CSV");
  common(cl);

  auto* es = app.add_subcommand("estimate-entropy", "separated-set entropy estimate (non-rigorous)");
  params(es);
  es->add_option("--steps", o.est_steps, "orbit length n")->capture_default_str();
  es->add_option("--eps", o.est_eps, "separation scale")->capture_default_str();
  es->add_option("--grid", o.grid, "sample points along x")->capture_default_str();
  es->add_option("--grid-y", o.grid_y, "sample rows")->capture_default_str();
  es->add_option("--view", o.view, "sample box xmin,xmax,ymin,ymax (default -1,1,-1,1)");
  common(es);

  auto* fg = app.add_subcommand("figure", "render geometry layers of a saved report");
  fg->add_option("--report", o.report_path, "report JSON file");
  fg->add_option("--layers", o.layers, "comma-separated layer names (default: all)");
  fg->add_option("--svg", o.svg, "output SVG file (default: stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitSuccess;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  const auto start = std::chrono::steady_clock::now();
  CLI::App* sub = app.get_subcommands().front();
  const std::string verb = sub->get_name();
  Outcome r;
  try {
    if (verb == "fixed-points") r = cmd_fixed_points(o);
    else if (verb == "covering") r = cmd_covering(o);
    else if (verb == "entropy-bound") r = cmd_entropy_bound(o);
    else if (verb == "trapping") r = cmd_trapping(o);
    else if (verb == "perturb") r = cmd_perturb(o);
    else if (verb == "jump-demo") r = cmd_jump_demo(o);
    else if (verb == "trace") r = cmd_trace(o);
    else if (verb == "critical-lines") r = cmd_critical_lines(o);
    else if (verb == "estimate-entropy") r = cmd_estimate(o);
    else r = cmd_figure(o);

    if (verb == "figure") {
      const std::string svg = r.doc["__figure"].get<std::string>();
      if (o.svg.empty()) out << svg;
      else write_file(o.svg, svg);
      err << r.summary << "\n";
      return kExitSuccess;
    }

    Json doc{{"command", verb}};
    for (auto& [k, v] : r.doc.items()) doc[k] = v;
    doc["summary"] = r.summary;
    doc["exit_code"] = r.code;
    if (!o.canonical) {
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      doc["meta"] = {{"tool", "lozi"}, {"version", kVersion}, {"elapsed_seconds", secs}};
    }
    const std::string text = doc.dump(2) + "\n";
    if (o.out.empty()) out << text;
    else write_file(o.out, text);
    if (!o.svg.empty()) write_file(o.svg, emit_figure(doc, figure_layers(doc)));
    if (!o.csv.empty() && !r.csv.empty()) write_file(o.csv, r.csv);
    err << r.summary << "\n";
    return r.code;
  } catch (const IndeterminateSign& e) {
    err << "indeterminate: " << e.what() << " at step " << e.step() << "\n";
    return kExitIndeterminate;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::runtime_error& e) {
    err << "indeterminate: " << e.what() << "\n";
    return kExitIndeterminate;
  }
}

}  // namespace lozi
