#pragma once

// Floating-point evidence tools: orbits, unstable manifold tracing, critical
// lines and a separated-set entropy estimate. Nothing here is a certificate.

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "lozi/lozi_map.h"

namespace lozi {

struct PointF {
  double x = 0;
  double y = 0;
  friend bool operator==(const PointF&, const PointF&) = default;
};

struct MapF {
  double a = 0;
  double b = 0;

  static MapF from(const LoziParams& p) { return {p.a.to_double(), p.b.to_double()}; }
  PointF apply(PointF q) const { return {1.0 - a * (q.x < 0 ? -q.x : q.x) + b * q.y, q.x}; }
  PointF inverse(PointF q) const;  // requires b != 0
  PointF iterate(PointF q, unsigned n) const;
};

struct Viewport {
  double xmin = -2, xmax = 2, ymin = -2, ymax = 2;
  bool contains(PointF q) const { return q.x >= xmin && q.x <= xmax && q.y >= ymin && q.y <= ymax; }
};

enum class PolylineRole { UnstableLeft, UnstableRight, Stable, CriticalLine, Image };
std::string to_string(PolylineRole r);

struct PolylineF64 {
  PolylineRole role = PolylineRole::Image;
  std::vector<PointF> points;
  bool escaped = false;
  /// For critical lines: k such that the line is the pullback of {x = 0} by L^k.
  unsigned level = 0;

  double length() const;
};

double distance_to_segment(PointF q, PointF a, PointF b);

enum class Side { Left, Right };

inline constexpr double kEscapeRadius = 1e6;

/// Branch of the unstable manifold of the saddle p1 (the fixed point in x > 0).
/// The left branch starts into x < 0 and is the union of L^4 images of a short
/// seed segment along the unstable eigenvector; the right branch is its image
/// under L. Points are addressed by a parameter s >= 0 equal to the distance
/// from p1 along the seed line before iteration.
class UnstableCurve {
public:
  /// Throws std::domain_error when p1 is not a saddle.
  explicit UnstableCurve(const LoziParams& p, Side side, double seed_length = 1e-6);

  /// nullopt once the orbit leaves the escape radius or stops being finite.
  std::optional<PointF> at(double s) const;
  PointF saddle() const { return p1_; }
  Side side() const { return side_; }

private:
  MapF f_;
  Side side_;
  PointF p1_;
  PointF dir_;
  double multiplier_;
  double seed_;
};

/// Samples the curve from p1 until the polyline reaches `arclength`, halving
/// parameter steps while consecutive points are farther apart than refine_tol.
PolylineF64 trace_unstable(const LoziParams& p, Side side, double arclength, double refine_tol);

/// First crossing of y = 0 along the branch, refined by bisection on the
/// curve parameter.
std::optional<PointF> first_y_zero_crossing(const LoziParams& p, Side side, double arclength, double refine_tol);

/// Pullbacks of {x = 0} under L^k for k = 0..depth-1 inside the viewport, as
/// broken lines tagged with their level. Computed exactly and rounded at the
/// end. depth must be in 1..8.
std::vector<PolylineF64> critical_line(const LoziParams& p, unsigned depth, const Viewport& view = {});

/// Forward image of a polyline under L^n, with the breakpoints on x = 0 of each
/// intermediate step inserted so that images of broken lines stay exact.
PolylineF64 image_polyline(const LoziParams& p, const PolylineF64& line, unsigned n);

struct EntropyEstimateOptions {
  unsigned steps = 14;
  double eps = 0.2;
  Viewport view{-1, 1, -1, 1};
  /// Sample points per axis. Each point sits at a fixed irrational offset
  /// inside its grid cell; a single row lies on the horizontal mid-line.
  std::size_t grid_x = 400000;
  std::size_t grid_y = 1;
  unsigned burn_in = 0;
  /// The estimate is the least-squares slope of log(N(m) - N(m-1)) over the
  /// last `fit_window` values of m <= steps.
  unsigned fit_window = 7;
  /// Orbits leaving the box |x|, |y| <= bound_radius within
  /// burn_in + steps + lookahead iterations are dropped from the sample.
  double bound_radius = 10;
  unsigned lookahead = 14;
};

struct EntropyEstimate {
  double estimate = 0;
  double raw = 0;                   // log(N(steps)) / steps
  std::vector<std::size_t> counts;  // N(m) for m = 1..steps
  std::size_t samples = 0;
  std::size_t discarded = 0;  // orbits that left the bounding box
  std::string tag = "numerical evidence";
};

/// Orbits of equal length stored back to back.
struct OrbitSample {
  unsigned length = 0;
  std::vector<PointF> points;

  std::size_t size() const { return length == 0 ? 0 : points.size() / length; }
  const PointF* orbit(std::size_t i) const { return points.data() + i * length; }
};

/// Size of the greedy (sample-order) maximal subset that is (n, eps)-separated
/// under max_{k<n} |.|_inf. Requires n <= sample.length.
std::size_t greedy_separated_count(const OrbitSample& sample, unsigned n, double eps);

OrbitSample orbit_sample(const LoziParams& p, const EntropyEstimateOptions& opt, std::size_t* discarded = nullptr);

/// Non-rigorous: labelled "numerical evidence".
EntropyEstimate estimate_entropy(const LoziParams& p, const EntropyEstimateOptions& opt = {});

}  // namespace lozi
