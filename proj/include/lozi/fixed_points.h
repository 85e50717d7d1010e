#pragma once

#include <optional>
#include <vector>

#include "lozi/geometry.h"
#include "lozi/lozi_map.h"

namespace lozi {

/// Outcome of solving (I - M) x = c on one affine branch of L^n.
struct BranchSolution {
  enum class Kind { IsolatedPoint, Segment, WholeDomain, Empty, Unbounded };

  SignItinerary itinerary;
  Kind kind = Kind::Empty;
  std::optional<Point2> point;                    // IsolatedPoint
  std::optional<std::pair<Point2, Point2>> segment;  // Segment, closed, endpoints ordered
  /// Unique solution of the affine system when det(I - M) != 0, whether or
  /// not it lies in the branch domain.
  std::optional<Point2> candidate;
  /// Steps whose sign condition rejects the candidate.
  std::vector<std::size_t> violated;
};

BranchSolution solve_branch_fixed(const AffineBranch& br);

struct FixedPointSet {
  struct PointItem {
    Point2 point;
    std::vector<SignItinerary> sources;
  };
  struct SegmentItem {
    Point2 from;
    Point2 to;
    std::vector<SignItinerary> sources;
  };

  unsigned period = 0;
  std::vector<PointItem> points;      // lexicographic order
  std::vector<SegmentItem> segments;  // ordered by first endpoint
  std::vector<SignItinerary> whole_domains;
  std::vector<SignItinerary> unbounded;
  /// Per-branch diagnostics in itinerary order, including rejected candidates.
  std::vector<BranchSolution> branches;
};

inline constexpr unsigned kMaxEnumerationPeriod = 12;

/// All fixed points of L^n, 1 <= n <= 12. Throws std::invalid_argument
/// ("branch budget exceeded") above the cap.
FixedPointSet enumerate_fixed_points(const LoziParams& p, unsigned n);

/// (0, (1 - b^2) / (a (1 + b^2))), the x = 0 end of the period-4 segment on
/// the family b = a - 1. Throws std::domain_error when a == 0.
Point2 f2_point(const LoziParams& p);

}  // namespace lozi
