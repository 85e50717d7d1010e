#pragma once

// Exact planar geometry over Rational: points, affine maps, half-planes and
// convex polygons with clipping, areas and closed containment.

#include <optional>
#include <span>
#include <vector>

#include "lozi/rational.h"

namespace lozi {

struct Point2 {
  Rational x;
  Rational y;

  friend bool operator==(const Point2&, const Point2&) = default;
  friend auto operator<=>(const Point2&, const Point2&) = default;
};

inline Point2 operator+(const Point2& p, const Point2& q) { return {p.x + q.x, p.y + q.y}; }
inline Point2 operator-(const Point2& p, const Point2& q) { return {p.x - q.x, p.y - q.y}; }
inline Point2 operator*(const Rational& s, const Point2& p) { return {s * p.x, s * p.y}; }

/// z-component of (b - a) x (c - a); positive for a left turn.
Rational orient(const Point2& a, const Point2& b, const Point2& c);

/// 2x2 rational matrix, row major.
struct Mat2 {
  Rational m11{1}, m12{0}, m21{0}, m22{1};

  static Mat2 identity() { return {}; }
  Rational det() const { return m11 * m22 - m12 * m21; }
  Rational trace() const { return m11 + m22; }
  Point2 apply(const Point2& p) const { return {m11 * p.x + m12 * p.y, m21 * p.x + m22 * p.y}; }

  friend Mat2 operator*(const Mat2& a, const Mat2& b);
  friend bool operator==(const Mat2&, const Mat2&) = default;
};

/// p -> linear * p + offset.
struct AffineMap2 {
  Mat2 linear;
  Point2 offset{Rational(0), Rational(0)};

  Point2 apply(const Point2& p) const { return linear.apply(p) + offset; }
  /// (this o inner)(p) = this(inner(p)).
  AffineMap2 after(const AffineMap2& inner) const;

  friend bool operator==(const AffineMap2&, const AffineMap2&) = default;
};

/// {p : normal . p >= offset} when closed, {p : normal . p > offset} otherwise.
class HalfPlane {
public:
  /// Throws std::invalid_argument when the normal is zero.
  HalfPlane(Rational nx, Rational ny, Rational offset, bool closed = true);

  /// Closed half-plane to the left of the directed line a -> b.
  static HalfPlane left_of(const Point2& a, const Point2& b);

  const Rational& nx() const { return nx_; }
  const Rational& ny() const { return ny_; }
  const Rational& offset() const { return offset_; }
  bool closed() const { return closed_; }

  /// normal . p - offset
  Rational eval(const Point2& p) const { return nx_ * p.x + ny_ * p.y - offset_; }
  bool contains(const Point2& p) const;
  HalfPlane closure() const { return HalfPlane(nx_, ny_, offset_, true); }
  HalfPlane complement() const { return HalfPlane(-nx_, -ny_, -offset_, !closed_); }

private:
  Rational nx_, ny_, offset_;
  bool closed_;
};

/// Strictly convex polygon, counter-clockwise, starting at its lexicographically
/// smallest vertex. Two polygons describing the same set compare equal.
class ConvexPolygon {
public:
  /// Normalizes an ordered vertex cycle (either orientation): drops repeated and
  /// collinear vertices. Returns nullopt when the result has zero area. Throws
  /// std::invalid_argument if the cycle is not convex.
  static std::optional<ConvexPolygon> from_cycle(std::vector<Point2> cycle);

  /// Same as from_cycle but throws std::invalid_argument for degenerate input.
  static ConvexPolygon make(std::vector<Point2> cycle);

  const std::vector<Point2>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  const Point2& operator[](std::size_t i) const { return vertices_[i]; }

  /// Closed half-planes whose intersection is the polygon.
  std::vector<HalfPlane> edge_half_planes() const;
  bool contains_point(const Point2& p) const;  // closed

  friend bool operator==(const ConvexPolygon&, const ConvexPolygon&) = default;

private:
  explicit ConvexPolygon(std::vector<Point2> v) : vertices_(std::move(v)) {}
  std::vector<Point2> vertices_;
};

/// Twice the signed area of a vertex cycle (shoelace sum).
Rational signed_area2(std::span<const Point2> cycle);

/// Exact p n closure(h); nullopt when the intersection has no interior.
std::optional<ConvexPolygon> clip_polygon(const ConvexPolygon& p, const HalfPlane& h);
std::optional<ConvexPolygon> intersect(const ConvexPolygon& p, const ConvexPolygon& q);

Rational polygon_area(const ConvexPolygon& p);

/// inner is a subset of closure(outer), decided as area(inner n outer) == area(inner).
bool contains_polygon(const ConvexPolygon& outer, const ConvexPolygon& inner);

/// Image under an invertible affine map. Throws std::domain_error if det == 0.
ConvexPolygon affine_image(const AffineMap2& f, const ConvexPolygon& p);

/// Line {p : a x + b y = c}.
struct Line {
  Rational a, b, c;
  static Line through(const Point2& p, const Point2& q);
};

/// Unique intersection point, or nullopt for parallel/identical lines.
std::optional<Point2> intersect_lines(const Line& l1, const Line& l2);

}  // namespace lozi
