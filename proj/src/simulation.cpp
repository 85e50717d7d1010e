#include "lozi/simulation.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include "lozi/trapping.h"

namespace lozi {

PointF MapF::inverse(PointF q) const {
  if (b == 0) throw std::domain_error("not invertible");
  return {q.y, (q.x - 1.0 + a * std::fabs(q.y)) / b};
}

PointF MapF::iterate(PointF q, unsigned n) const {
  for (unsigned i = 0; i < n; ++i) q = apply(q);
  return q;
}

std::string to_string(PolylineRole r) {
  switch (r) {
    case PolylineRole::UnstableLeft: return "unstable-left";
    case PolylineRole::UnstableRight: return "unstable-right";
    case PolylineRole::Stable: return "stable";
    case PolylineRole::CriticalLine: return "critical-line";
    case PolylineRole::Image: return "image";
  }
  return "?";
}

double PolylineF64::length() const {
  double sum = 0;
  for (std::size_t i = 1; i < points.size(); ++i)
    sum += std::hypot(points[i].x - points[i - 1].x, points[i].y - points[i - 1].y);
  return sum;
}

double distance_to_segment(PointF q, PointF a, PointF b) {
  const double dx = b.x - a.x, dy = b.y - a.y;
  const double len2 = dx * dx + dy * dy;
  double t = len2 > 0 ? ((q.x - a.x) * dx + (q.y - a.y) * dy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::hypot(q.x - a.x - t * dx, q.y - a.y - t * dy);
}

// ---------------------------------------------------------------------------
// Unstable manifold

namespace {

bool escaped(PointF q) {
  return !std::isfinite(q.x) || !std::isfinite(q.y) || std::fabs(q.x) > kEscapeRadius ||
         std::fabs(q.y) > kEscapeRadius;
}

double dist(PointF a, PointF b) { return std::hypot(a.x - b.x, a.y - b.y); }

struct ParamTrace {
  PolylineF64 line;
  std::vector<double> params;
};

ParamTrace trace_with_params(const UnstableCurve& c, double arclength, double tol) {
  if (!(arclength > 0)) throw std::invalid_argument("arclength must be positive");
  if (!(tol > 0)) throw std::invalid_argument("refine_tol must be positive");
  constexpr std::size_t kMaxPoints = 4'000'000;

  ParamTrace t;
  t.line.role = c.side() == Side::Left ? PolylineRole::UnstableLeft : PolylineRole::UnstableRight;
  PointF last = *c.at(0.0);
  t.line.points.push_back(last);
  t.params.push_back(0.0);

  double s = 0, ds = std::min(tol, 1e-6), length = 0;
  while (length < arclength && t.line.points.size() < kMaxPoints) {
    const auto q = c.at(s + ds);
    const auto mid = c.at(s + ds / 2);
    if (!q || !mid) {
      if (ds > 1e-15 * std::max(s, 1.0)) {
        ds /= 2;
        continue;
      }
      t.line.escaped = true;
      break;
    }
    const double gap = dist(*q, last);
    const PointF chord{(q->x + last.x) / 2, (q->y + last.y) / 2};
    const bool fine = gap <= tol && dist(*mid, chord) <= tol / 4;
    if (!fine && ds > 1e-15 * std::max(s, 1.0)) {
      ds /= 2;
      continue;
    }
    s += ds;
    if (gap > 0) {
      t.line.points.push_back(*q);
      t.params.push_back(s);
      length += gap;
      last = *q;
    }
    ds *= 1.5;
  }
  return t;
}

}  // namespace

UnstableCurve::UnstableCurve(const LoziParams& p, Side side, double seed_length)
    : f_(MapF::from(p)), side_(side), seed_(seed_length) {
  const EigenData e = saddle_data(p, Sign::NonNeg);
  if (!(std::fabs(e.lambda_unstable) > 1.0)) throw std::domain_error("no saddle on this side");
  p1_ = {e.fixed_point.x.to_double(), e.fixed_point.y.to_double()};
  const double norm = std::hypot(e.v_unstable[0], e.v_unstable[1]);
  dir_ = {e.v_unstable[0] / norm, e.v_unstable[1] / norm};
  if (dir_.x > 0) dir_ = {-dir_.x, -dir_.y};
  multiplier_ = std::pow(e.lambda_unstable, 4);
}

std::optional<PointF> UnstableCurve::at(double s) const {
  unsigned n = 0;
  double sigma = s;
  if (s > seed_) {
    n = static_cast<unsigned>(std::ceil(std::log(s / seed_) / std::log(multiplier_)));
    sigma = s / std::pow(multiplier_, static_cast<double>(n));
  }
  PointF q{p1_.x + sigma * dir_.x, p1_.y + sigma * dir_.y};
  for (unsigned i = 0; i < 4 * n; ++i) {
    q = f_.apply(q);
    if (escaped(q)) return std::nullopt;
  }
  if (side_ == Side::Right) q = f_.apply(q);
  if (escaped(q)) return std::nullopt;
  return q;
}

PolylineF64 trace_unstable(const LoziParams& p, Side side, double arclength, double refine_tol) {
  return trace_with_params(UnstableCurve(p, side), arclength, refine_tol).line;
}

std::optional<PointF> first_y_zero_crossing(const LoziParams& p, Side side, double arclength, double refine_tol) {
  const UnstableCurve c(p, side);
  const ParamTrace t = trace_with_params(c, arclength, refine_tol);
  const auto& pts = t.line.points;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (pts[i - 1].y == 0) return pts[i - 1];
    if ((pts[i - 1].y < 0) == (pts[i].y < 0) && pts[i].y != 0) continue;
    double lo = t.params[i - 1], hi = t.params[i];
    const bool lo_negative = pts[i - 1].y < 0;
    for (int it = 0; it < 200 && hi - lo > 1e-17 * std::max(1.0, hi); ++it) {
      const double mid = (lo + hi) / 2;
      const auto q = c.at(mid);
      if (!q) break;
      if ((q->y < 0) == lo_negative)
        lo = mid;
      else
        hi = mid;
    }
    return c.at((lo + hi) / 2);
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Critical lines

namespace {

// Part of {form = 0} inside a convex polygon, if it has positive length.
std::optional<std::pair<Point2, Point2>> line_in_polygon(const ConvexPolygon& poly, const Rational& cx,
                                                         const Rational& cy, const Rational& c0) {
  std::vector<Point2> hits;
  const auto& v = poly.vertices();
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point2& a = v[i];
    const Point2& b = v[(i + 1) % v.size()];
    const Rational fa = cx * a.x + cy * a.y + c0;
    const Rational fb = cx * b.x + cy * b.y + c0;
    if (fa.is_zero()) hits.push_back(a);
    if (fa.sign() * fb.sign() < 0) hits.push_back(a + (fa / (fa - fb)) * (b - a));
  }
  if (hits.size() < 2) return std::nullopt;
  auto [lo, hi] = std::minmax_element(hits.begin(), hits.end());
  if (*lo == *hi) return std::nullopt;
  return std::make_pair(*lo, *hi);
}

std::vector<std::vector<Point2>> chain_segments(std::vector<std::pair<Point2, Point2>> segs) {
  std::sort(segs.begin(), segs.end());
  segs.erase(std::unique(segs.begin(), segs.end()), segs.end());
  std::map<Point2, std::vector<std::size_t>> at;
  for (std::size_t i = 0; i < segs.size(); ++i) {
    at[segs[i].first].push_back(i);
    at[segs[i].second].push_back(i);
  }
  std::vector<bool> used(segs.size(), false);
  std::vector<std::vector<Point2>> out;
  auto walk = [&](std::size_t start, const Point2& from) {
    std::vector<Point2> chain{from};
    std::size_t cur = start;
    Point2 tip = from;
    while (true) {
      used[cur] = true;
      tip = segs[cur].first == tip ? segs[cur].second : segs[cur].first;
      chain.push_back(tip);
      const auto& nb = at[tip];
      if (nb.size() != 2) break;
      const std::size_t next = nb[0] == cur ? nb[1] : nb[0];
      if (used[next]) break;
      cur = next;
    }
    out.push_back(std::move(chain));
  };
  for (const auto& [pt, ids] : at)
    if (ids.size() != 2)
      for (std::size_t id : ids)
        if (!used[id]) walk(id, pt);
  for (std::size_t i = 0; i < segs.size(); ++i)
    if (!used[i]) walk(i, segs[i].first);
  return out;
}

}  // namespace

std::vector<PolylineF64> critical_line(const LoziParams& p, unsigned depth, const Viewport& view) {
  if (depth == 0 || depth > 8) throw std::invalid_argument("depth must be between 1 and 8");
  const Rational x0 = Rational::from_double(view.xmin), x1 = Rational::from_double(view.xmax);
  const Rational y0 = Rational::from_double(view.ymin), y1 = Rational::from_double(view.ymax);
  const ConvexPolygon box = ConvexPolygon::make({{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}});

  std::vector<PolylineF64> out;
  for (unsigned k = 0; k < depth; ++k) {
    std::vector<std::pair<Point2, Point2>> segs;
    for (const auto& f : split_by_itinerary(p, k, box, std::size_t{1} << 16)) {
      const Mat2& m = f.map.linear;
      if (m.m11.is_zero() && m.m12.is_zero()) continue;
      if (auto s = line_in_polygon(f.source, m.m11, m.m12, f.map.offset.x)) segs.push_back(*s);
    }
    for (auto& chain : chain_segments(std::move(segs))) {
      PolylineF64 line;
      line.role = PolylineRole::CriticalLine;
      line.level = k;
      for (const auto& q : chain) line.points.push_back({q.x.to_double(), q.y.to_double()});
      out.push_back(std::move(line));
    }
  }
  return out;
}

PolylineF64 image_polyline(const LoziParams& p, const PolylineF64& line, unsigned n) {
  const MapF f = MapF::from(p);
  std::vector<PointF> pts = line.points;
  for (unsigned k = 0; k < n; ++k) {
    std::vector<PointF> next;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i > 0 && ((pts[i - 1].x < 0 && pts[i].x > 0) || (pts[i - 1].x > 0 && pts[i].x < 0))) {
        const double t = pts[i - 1].x / (pts[i - 1].x - pts[i].x);
        next.push_back(f.apply({0.0, pts[i - 1].y + t * (pts[i].y - pts[i - 1].y)}));
      }
      next.push_back(f.apply(pts[i]));
    }
    pts = std::move(next);
  }
  PolylineF64 out;
  out.role = PolylineRole::Image;
  out.level = line.level;
  out.escaped = line.escaped;
  for (const auto& q : pts)
    if (out.points.empty() || !(out.points.back() == q)) out.points.push_back(q);
  return out;
}

// ---------------------------------------------------------------------------
// Entropy estimate

namespace {

struct CellKey {
  std::array<long long, 4> c;
  friend bool operator==(const CellKey&, const CellKey&) = default;
};

struct CellHash {
  std::size_t operator()(const CellKey& k) const {
    std::size_t h = 0;
    for (long long v : k.c) h = h * 1000003u ^ std::hash<long long>{}(v);
    return h;
  }
};

}  // namespace

std::size_t greedy_separated_count(const OrbitSample& sample, unsigned n, double eps) {
  if (n == 0 || n > sample.length) throw std::invalid_argument("steps must be between 1 and the orbit length");
  if (!(eps > 0)) throw std::invalid_argument("eps must be positive");
  std::unordered_map<CellKey, std::vector<std::size_t>, CellHash> cells;
  auto cell = [eps](double v) { return static_cast<long long>(std::floor(v / eps)); };
  auto close = [&](const PointF* u, const PointF* v) {
    for (unsigned k = 0; k < n; ++k)
      if (std::fabs(u[k].x - v[k].x) >= eps || std::fabs(u[k].y - v[k].y) >= eps) return false;
    return true;
  };

  // two orbits closer than eps at times 0 and n-1 lie in neighbouring cells
  std::size_t count = 0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const PointF* o = sample.orbit(i);
    const CellKey k{{cell(o[0].x), cell(o[0].y), cell(o[n - 1].x), cell(o[n - 1].y)}};
    bool separated = true;
    for (int d = 0; d < 81 && separated; ++d) {
      CellKey nb = k;
      for (int j = 0, r = d; j < 4; ++j, r /= 3) nb.c[j] += r % 3 - 1;
      const auto it = cells.find(nb);
      if (it == cells.end()) continue;
      for (std::size_t idx : it->second) {
        if (close(sample.orbit(idx), o)) {
          separated = false;
          break;
        }
      }
    }
    if (separated) {
      cells[k].push_back(i);
      ++count;
    }
  }
  return count;
}

OrbitSample orbit_sample(const LoziParams& p, const EntropyEstimateOptions& opt, std::size_t* discarded) {
  if (opt.steps == 0 || opt.steps > 20) throw std::invalid_argument("steps must be between 1 and 20");
  if (opt.grid_x == 0 || opt.grid_y == 0 || opt.grid_x * opt.grid_y > 1'000'000)
    throw std::invalid_argument("grid must have between 1 and 10^6 points");
  const MapF f = MapF::from(p);
  // fractional parts of i * alpha for two badly approximable alphas
  constexpr double kAlphaX = 0.6180339887498949, kAlphaY = 0.4142135623730951;
  auto coord = [](double lo, double hi, std::size_t i, std::size_t n, double alpha) {
    if (n == 1) return (lo + hi) / 2;
    const double jitter = std::fmod(static_cast<double>(i) * alpha, 1.0);
    return lo + (hi - lo) * (static_cast<double>(i) + jitter) / static_cast<double>(n);
  };
  auto leaves = [&](PointF r) { return !(std::fabs(r.x) <= opt.bound_radius && std::fabs(r.y) <= opt.bound_radius); };

  OrbitSample out;
  out.length = opt.steps;
  out.points.reserve(opt.grid_x * opt.grid_y * opt.steps);
  std::size_t lost_count = 0;
  std::vector<PointF> orbit(opt.steps);
  for (std::size_t j = 0; j < opt.grid_y; ++j) {
    const double y = coord(opt.view.ymin, opt.view.ymax, j, opt.grid_y, kAlphaY);
    for (std::size_t i = 0; i < opt.grid_x; ++i) {
      PointF q{coord(opt.view.xmin, opt.view.xmax, i, opt.grid_x, kAlphaX), y};
      bool lost = leaves(q);
      for (unsigned t = 0; t < opt.burn_in && !lost; ++t) lost = leaves(q = f.apply(q));
      for (unsigned t = 0; t < opt.steps && !lost; ++t) {
        orbit[t] = q;
        lost = leaves(q = f.apply(q));
      }
      for (unsigned t = 0; t < opt.lookahead && !lost; ++t) lost = leaves(q = f.apply(q));
      if (lost) {
        ++lost_count;
        continue;
      }
      out.points.insert(out.points.end(), orbit.begin(), orbit.end());
    }
  }
  if (discarded) *discarded = lost_count;
  return out;
}

EntropyEstimate estimate_entropy(const LoziParams& p, const EntropyEstimateOptions& opt) {
  if (opt.fit_window < 2 || opt.fit_window >= opt.steps)
    throw std::invalid_argument("fit window must be between 2 and steps - 1");
  EntropyEstimate out;
  const OrbitSample sample = orbit_sample(p, opt, &out.discarded);
  out.samples = opt.grid_x * opt.grid_y;
  if (sample.size() == 0) return out;

  const unsigned first = opt.steps - opt.fit_window;  // N(first) is the base of the first increment
  out.counts.assign(opt.steps, 0);
  for (unsigned m = std::max(first, 1u); m <= opt.steps; ++m) out.counts[m - 1] = greedy_separated_count(sample, m, opt.eps);
  out.raw = std::log(static_cast<double>(out.counts.back())) / opt.steps;

  std::vector<double> xs, ys;
  for (unsigned m = first + 1; m <= opt.steps; ++m) {
    const std::size_t prev = m >= 2 ? out.counts[m - 2] : 1;
    const std::size_t cur = out.counts[m - 1];
    if (cur > prev) {
      xs.push_back(m);
      ys.push_back(std::log(static_cast<double>(cur - prev)));
    }
  }
  if (xs.size() >= 2) {
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) mx += xs[i], my += ys[i];
    mx /= xs.size();
    my /= ys.size();
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sxy += (xs[i] - mx) * (ys[i] - my);
      sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    out.estimate = std::max(0.0, sxy / sxx);
  }
  return out;
}

}  // namespace lozi
