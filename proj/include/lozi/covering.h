#pragma once

// Covering relations between marked quadrilaterals and the entropy lower
// bound they certify through the associated subshift of finite type.

#include <array>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lozi/geometry.h"
#include "lozi/lozi_map.h"

namespace lozi {

/// Convex quadrilateral v0 v1 v2 v3 whose edges v0v1 and v2v3 are "vertical"
/// and v1v2, v3v0 "horizontal". Stored counter-clockwise; a clockwise input is
/// relabelled (v1, v0, v3, v2) so the vertical pairs are preserved.
class MarkedQuadrilateral {
public:
  /// Throws std::invalid_argument unless the quadrilateral is strictly convex
  /// and the vertical support lines do not meet inside it.
  static MarkedQuadrilateral make(std::array<Point2, 4> v);

  const std::array<Point2, 4>& vertices() const { return v_; }
  const Point2& operator[](std::size_t i) const { return v_[i]; }
  std::pair<Point2, Point2> vertical_edge(std::size_t i) const;  // i in {0, 1}
  ConvexPolygon polygon() const;

  /// The closed half-plane bounded by vertical edge i's support line that
  /// contains the quadrilateral.
  HalfPlane strip_side(std::size_t i) const;

  /// Same box with the two vertical edges exchanged: (v2, v3, v0, v1).
  MarkedQuadrilateral swapped_verticals() const;

private:
  explicit MarkedQuadrilateral(std::array<Point2, 4> v) : v_(std::move(v)) {}
  std::array<Point2, 4> v_;
};

/// Stepwise sign record of a polygon under L. Clear when at each of the n
/// steps the image vertices lie in one closed half-plane {x >= 0} or {x <= 0}:
/// L is affine on each closed half-plane, so L^n is then affine on the polygon.
struct ClearanceRecord {
  bool clear = false;
  SignItinerary itinerary;  // signs for the steps that were clear
  std::optional<std::size_t> failed_step;
};

ClearanceRecord singularity_clearance(const LoziParams& p, unsigned n, std::span<const Point2> vertices);
ClearanceRecord singularity_clearance(const LoziParams& p, unsigned n, const ConvexPolygon& q);

struct CoverVerdict {
  enum class Status { Covered, NotCovered, Indeterminate };

  Status status = Status::Indeterminate;
  /// First failed condition ("S0", "S2", "S2b", "S3") with a short reason.
  std::string failure;
  SignItinerary itinerary;
  std::optional<std::array<Point2, 4>> image_vertices;
  std::optional<ConvexPolygon> image;
  /// P = image n strip, contained in the target when Covered.
  std::optional<ConvexPolygon> strip_part;
  /// Which target vertical line the image of source edge v0v1 lies beyond.
  std::optional<std::size_t> first_edge_side;
};

std::string to_string(CoverVerdict::Status s);

/// Conditions S1-S3 for a map known to be affine on the source box; the
/// images of the source vertices are given in order.
CoverVerdict check_cover_images(const std::array<Point2, 4>& image_vertices, const MarkedQuadrilateral& target);
CoverVerdict check_cover_affine(const AffineMap2& f, const MarkedQuadrilateral& source,
                                const MarkedQuadrilateral& target);

/// Sufficient exact test for source =(L^n)=> target. Throws
/// std::domain_error("non-invertible branch") when b == 0.
CoverVerdict check_cover(const LoziParams& p, unsigned n, const MarkedQuadrilateral& source,
                         const MarkedQuadrilateral& target);

struct TransitionMatrix {
  std::size_t size = 0;
  std::vector<std::vector<int>> entries;

  friend bool operator==(const TransitionMatrix&, const TransitionMatrix&) = default;
};

/// 1 exactly where Covered; NotCovered and Indeterminate both give 0.
TransitionMatrix build_matrix(const std::vector<std::vector<CoverVerdict>>& verdicts);

struct EntropyBound {
  unsigned iterate = 1;
  /// Exact Collatz-Wielandt lower bound on the spectral radius.
  Rational spectral_radius_lower_exact{0};
  double spectral_radius_lower = 0;  // rounded toward zero
  double spectral_radius_upper = 0;  // rounded away from zero
  /// log(spectral_radius_lower) / iterate, rounded down, never negative.
  double bound = 0;
  /// For matrices up to 4x4: whether the characteristic polynomial has a real
  /// root at or above the lower bound, and a bisection bracket for that root.
  std::optional<bool> charpoly_confirmed;
  std::optional<std::pair<double, double>> charpoly_bracket;
};

/// Throws std::invalid_argument for non-square or non 0/1 input.
EntropyBound entropy_lower_bound(const TransitionMatrix& m, unsigned iterate);

/// The two boxes around (0, h): N1 = {A, B, C, D} with vertical AB, CD and
/// N2 = {E, F, G, H} with vertical EF, GH. Throws for eps1 <= 0.
std::pair<MarkedQuadrilateral, MarkedQuadrilateral> entropy_boxes(const Rational& eps1, const Rational& height);

/// Named vertex of entropy_boxes: id in 'A'..'H'.
Point2 entropy_box_vertex(char id, const Rational& eps1, const Rational& height);
/// (dx, dy) with vertex = (dx eps1, height + dy eps1).
std::pair<Rational, Rational> entropy_box_offset(char id);

}  // namespace lozi
