#include "lozi/figure.h"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <sstream>

namespace lozi {

namespace {

using report::InputError;
using report::Json;

struct Box {
  double xmin = std::numeric_limits<double>::infinity();
  double xmax = -std::numeric_limits<double>::infinity();
  double ymin = std::numeric_limits<double>::infinity();
  double ymax = -std::numeric_limits<double>::infinity();

  void add(double x, double y) {
    xmin = std::min(xmin, x);
    xmax = std::max(xmax, x);
    ymin = std::min(ymin, y);
    ymax = std::max(ymax, y);
  }
  bool empty() const { return !(xmin <= xmax); }
};

double coordinate(const Json& j) {
  if (j.is_number()) return j.get<double>();
  return report::rational_from_json(j).to_double();
}

std::vector<std::vector<std::pair<double, double>>> items_of(const Json& layer) {
  std::vector<std::vector<std::pair<double, double>>> out;
  for (const auto& item : layer.at("items")) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& p : item) pts.emplace_back(coordinate(p.at(0)), coordinate(p.at(1)));
    out.push_back(std::move(pts));
  }
  return out;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

constexpr const char* kFills[] = {"#d9d9d9", "#969696", "#525252", "#9ecae1", "#fdae6b", "#a1d99b"};
constexpr const char* kStrokes[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

}  // namespace

std::vector<std::string> figure_layers(const Json& doc) {
  std::vector<std::string> out;
  if (doc.contains("geometry"))
    for (const auto& [name, _] : doc.at("geometry").items()) out.push_back(name);
  return out;
}

std::string emit_figure(const Json& doc, const std::vector<std::string>& layers) {
  if (layers.empty()) throw InputError("empty layer selection");
  if (!doc.contains("geometry")) throw InputError("report has no geometry");
  const Json& geom = doc.at("geometry");

  struct Layer {
    std::string name;
    bool polygons;
    std::vector<std::vector<std::pair<double, double>>> items;
  };
  std::vector<Layer> selected;
  Box box;
  try {
    for (const auto& name : layers) {
      if (!geom.contains(name)) throw InputError("unknown layer '" + name + "'");
      const Json& l = geom.at(name);
      Layer layer{name, l.at("kind") == "polygons", items_of(l)};
      for (const auto& item : layer.items)
        for (const auto& [x, y] : item) box.add(x, y);
      selected.push_back(std::move(layer));
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed geometry: ") + e.what());
  }
  if (box.empty()) throw InputError("selected layers contain no geometry");

  const double w = std::max(box.xmax - box.xmin, 1e-9), h = std::max(box.ymax - box.ymin, 1e-9);
  const double pad = 0.05 * std::max(w, h);
  const double width = 800, scale = width / (w + 2 * pad), height = (h + 2 * pad) * scale;
  auto px = [&](double x) { return fmt((x - box.xmin + pad) * scale); };
  auto py = [&](double y) { return fmt((box.ymax + pad - y) * scale); };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(width) << "\" height=\"" << fmt(height)
      << "\" viewBox=\"0 0 " << fmt(width) << " " << fmt(height) << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  std::size_t fill_index = 0, stroke_index = 0;
  for (const auto& layer : selected) {
    svg << "<g id=\"" << layer.name << "\">\n";
    const char* fill = kFills[fill_index % std::size(kFills)];
    const char* stroke = kStrokes[stroke_index % std::size(kStrokes)];
    for (const auto& item : layer.items) {
      if (item.empty()) continue;
      svg << (layer.polygons ? "<polygon points=\"" : "<polyline points=\"");
      for (std::size_t i = 0; i < item.size(); ++i)
        svg << (i ? " " : "") << px(item[i].first) << "," << py(item[i].second);
      if (layer.polygons)
        svg << "\" fill=\"" << fill << "\" stroke=\"black\" stroke-width=\"0.5\"/>\n";
      else
        svg << "\" fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"1\"/>\n";
    }
    svg << "</g>\n";
    if (layer.polygons)
      ++fill_index;
    else
      ++stroke_index;
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace lozi
