#include "lozi/geometry.h"

#include <algorithm>
#include <stdexcept>

namespace lozi {

Rational orient(const Point2& a, const Point2& b, const Point2& c) {
  return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

Mat2 operator*(const Mat2& a, const Mat2& b) {
  return {a.m11 * b.m11 + a.m12 * b.m21, a.m11 * b.m12 + a.m12 * b.m22,
          a.m21 * b.m11 + a.m22 * b.m21, a.m21 * b.m12 + a.m22 * b.m22};
}

AffineMap2 AffineMap2::after(const AffineMap2& inner) const {
  return {linear * inner.linear, linear.apply(inner.offset) + offset};
}

HalfPlane::HalfPlane(Rational nx, Rational ny, Rational offset, bool closed)
    : nx_(std::move(nx)), ny_(std::move(ny)), offset_(std::move(offset)), closed_(closed) {
  if (nx_.is_zero() && ny_.is_zero()) throw std::invalid_argument("half-plane normal is zero");
}

HalfPlane HalfPlane::left_of(const Point2& a, const Point2& b) {
  // orient(a, b, p) >= 0  <=>  (a.y - b.y) x + (b.x - a.x) y >= (a.y - b.y) a.x + (b.x - a.x) a.y
  Rational nx = a.y - b.y;
  Rational ny = b.x - a.x;
  Rational off = nx * a.x + ny * a.y;
  return HalfPlane(std::move(nx), std::move(ny), std::move(off), true);
}

bool HalfPlane::contains(const Point2& p) const {
  const int s = eval(p).sign();
  return closed_ ? s >= 0 : s > 0;
}

Rational signed_area2(std::span<const Point2> cycle) {
  Rational sum(0);
  const std::size_t n = cycle.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& p = cycle[i];
    const Point2& q = cycle[(i + 1) % n];
    sum += p.x * q.y - p.y * q.x;
  }
  return sum;
}

std::optional<ConvexPolygon> ConvexPolygon::from_cycle(std::vector<Point2> cycle) {
  // repeated consecutive vertices
  std::vector<Point2> v;
  for (auto& p : cycle)
    if (v.empty() || !(v.back() == p)) v.push_back(std::move(p));
  while (v.size() > 1 && v.front() == v.back()) v.pop_back();
  if (v.size() < 3) return std::nullopt;

  const int orientation = signed_area2(v).sign();
  if (orientation == 0) return std::nullopt;
  if (orientation < 0) std::reverse(v.begin(), v.end());

  // collinear vertices; repeat until stable since removals can expose new ones
  bool changed = true;
  while (changed && v.size() >= 3) {
    changed = false;
    for (std::size_t i = 0; i < v.size() && v.size() >= 3; ++i) {
      const std::size_t n = v.size();
      const Point2& prev = v[(i + n - 1) % n];
      const Point2& next = v[(i + 1) % n];
      const int turn = orient(prev, v[i], next).sign();
      if (turn == 0) {
        v.erase(v.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
      if (turn < 0) throw std::invalid_argument("vertex cycle is not convex");
    }
  }
  if (v.size() < 3) return std::nullopt;

  // a simple cycle with all left turns and total turning 2*pi is convex; a
  // star-shaped cycle winds more than once, detect via the angular sweep
  {
    int crossings = 0;
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Point2 d1 = v[(i + 1) % n] - v[i];
      const Point2 d2 = v[(i + 2) % n] - v[(i + 1) % n];
      // count sign changes of the y-component of the edge direction
      if ((d1.y.sign() > 0 && d2.y.sign() <= 0) || (d1.y.sign() < 0 && d2.y.sign() >= 0)) ++crossings;
    }
    if (crossings > 2) throw std::invalid_argument("vertex cycle is not convex");
  }

  auto first = std::min_element(v.begin(), v.end());
  std::rotate(v.begin(), first, v.end());
  return ConvexPolygon(std::move(v));
}

ConvexPolygon ConvexPolygon::make(std::vector<Point2> cycle) {
  auto p = from_cycle(std::move(cycle));
  if (!p) throw std::invalid_argument("degenerate polygon (zero area)");
  return *std::move(p);
}

std::vector<HalfPlane> ConvexPolygon::edge_half_planes() const {
  std::vector<HalfPlane> out;
  out.reserve(vertices_.size());
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    out.push_back(HalfPlane::left_of(vertices_[i], vertices_[(i + 1) % vertices_.size()]));
  return out;
}

bool ConvexPolygon::contains_point(const Point2& p) const {
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    if (orient(vertices_[i], vertices_[(i + 1) % vertices_.size()], p).sign() < 0) return false;
  return true;
}

std::optional<ConvexPolygon> clip_polygon(const ConvexPolygon& p, const HalfPlane& h) {
  const auto& v = p.vertices();
  const std::size_t n = v.size();
  std::vector<Rational> val;
  val.reserve(n);
  bool all_inside = true;
  for (const auto& q : v) {
    val.push_back(h.eval(q));
    if (val.back().sign() < 0) all_inside = false;
  }
  if (all_inside) return p;

  std::vector<Point2> out;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + 1) % n;
    const int si = val[i].sign();
    const int sj = val[j].sign();
    if (si >= 0) out.push_back(v[i]);
    if ((si > 0 && sj < 0) || (si < 0 && sj > 0)) {
      const Rational t = val[i] / (val[i] - val[j]);
      out.push_back(v[i] + t * (v[j] - v[i]));
    }
  }
  return ConvexPolygon::from_cycle(std::move(out));
}

std::optional<ConvexPolygon> intersect(const ConvexPolygon& p, const ConvexPolygon& q) {
  std::optional<ConvexPolygon> cur = p;
  for (const auto& h : q.edge_half_planes()) {
    cur = clip_polygon(*cur, h);
    if (!cur) return std::nullopt;
  }
  return cur;
}

Rational polygon_area(const ConvexPolygon& p) { return signed_area2(p.vertices()) / Rational(2); }

bool contains_polygon(const ConvexPolygon& outer, const ConvexPolygon& inner) {
  auto common = intersect(inner, outer);
  return common && polygon_area(*common) == polygon_area(inner);
}

ConvexPolygon affine_image(const AffineMap2& f, const ConvexPolygon& p) {
  if (f.linear.det().is_zero()) throw std::domain_error("affine map is not invertible");
  std::vector<Point2> img;
  img.reserve(p.size());
  for (const auto& q : p.vertices()) img.push_back(f.apply(q));
  return ConvexPolygon::make(std::move(img));
}

Line Line::through(const Point2& p, const Point2& q) {
  Rational a = q.y - p.y;
  Rational b = p.x - q.x;
  Rational c = a * p.x + b * p.y;
  return {std::move(a), std::move(b), std::move(c)};
}

std::optional<Point2> intersect_lines(const Line& l1, const Line& l2) {
  const Rational det = l1.a * l2.b - l1.b * l2.a;
  if (det.is_zero()) return std::nullopt;
  return Point2{(l1.c * l2.b - l1.b * l2.c) / det, (l1.a * l2.c - l1.c * l2.a) / det};
}

}  // namespace lozi
