#pragma once

// Exact images of convex polygons under L^n, split along the singularity
// lines, and finite-step certificates of forward invariance.

#include <cstddef>
#include <optional>
#include <vector>

#include "lozi/geometry.h"
#include "lozi/lozi_map.h"

namespace lozi {

inline constexpr std::size_t kDefaultFragmentBudget = 64;

/// A part of a source polygon on which L^n is a single affine branch.
struct Fragment {
  SignItinerary itinerary;
  ConvexPolygon source;
  AffineMap2 map;  // L^n restricted to `source`
};

/// Splits src along the pullbacks of {x = 0} for steps 0..n-1. Parts with no
/// interior are dropped. Throws std::runtime_error("fragment budget exceeded")
/// when more than `budget` fragments would be produced.
std::vector<Fragment> split_by_itinerary(const LoziParams& p, unsigned n, const ConvexPolygon& src,
                                         std::size_t budget = kDefaultFragmentBudget);

struct PiecewiseImage {
  struct Piece {
    SignItinerary itinerary;
    ConvexPolygon source;
    ConvexPolygon image;
  };
  std::vector<Piece> pieces;

  Rational total_area() const;
};

/// Requires b != 0 (std::domain_error otherwise).
PiecewiseImage image_piecewise(const LoziParams& p, unsigned n, const ConvexPolygon& src,
                               std::size_t budget = kDefaultFragmentBudget);

struct TrappingCertificate {
  struct Step {
    unsigned index = 0;  // 1-based: the image under L^(n * index)
    std::vector<PiecewiseImage::Piece> pieces;
    Rational area{0};
    Rational expected_area{0};  // |b|^(n * index) * area(region)
    bool area_law = false;
    bool contained = false;
    /// Largest float distance from a piece vertex to the reference segment.
    std::optional<double> max_distance_to_segment;
  };
  struct Failure {
    unsigned step = 0;
    std::size_t piece = 0;
    SignItinerary itinerary;
    ConvexPolygon image;
  };

  bool passed = false;
  unsigned period = 0;
  std::vector<Point2> region;
  std::vector<Step> steps;
  std::optional<Failure> first_failure;
  /// Distances to the reference segment strictly decrease from step to step.
  std::optional<bool> contracting;
};

/// Checks L^(n j)(region) is contained in region for j = 1..k, mapping the
/// pieces of each step forward to obtain the next. Stops at the first
/// offending piece. The optional segment drives the contraction diagnostic.
TrappingCertificate verify_trapping(const LoziParams& p, unsigned n, const ConvexPolygon& region, unsigned k = 2,
                                    std::optional<std::pair<Point2, Point2>> segment = std::nullopt,
                                    std::size_t budget = kDefaultFragmentBudget);

struct TrappingRegion {
  ConvexPolygon hexagon;
  Point2 f1, f2;
  Point2 r1, r2, r3, r4;
  Rational stable_slope{0};
};

/// Hexagon R1 F1 R2 R3 F2 R4 around the period-4 fixed segment F1F2 for
/// parameters with b = a - 1. F2 = (0, h), F1 = L^2(F2); the sides through F1
/// and F2 follow the stable direction of the branch fixing the segment.
/// Throws std::invalid_argument off that family and std::domain_error when the
/// stable direction is undefined.
TrappingRegion trapping_region_for(const LoziParams& p);

}  // namespace lozi
