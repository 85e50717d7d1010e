#include "lozi/trapping.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lozi {

namespace {

AffineMap2 lozi_branch(const LoziParams& p, Sign s) {
  return AffineMap2{Mat2{-p.a * Rational(sign_factor(s)), p.b, Rational(1), Rational(0)},
                    Point2{Rational(1), Rational(0)}};
}

double distance_to_segment(const Point2& q, const std::pair<Point2, Point2>& seg) {
  const double px = q.x.to_double(), py = q.y.to_double();
  const double ax = seg.first.x.to_double(), ay = seg.first.y.to_double();
  const double bx = seg.second.x.to_double(), by = seg.second.y.to_double();
  const double dx = bx - ax, dy = by - ay;
  const double len2 = dx * dx + dy * dy;
  double t = len2 > 0 ? ((px - ax) * dx + (py - ay) * dy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::hypot(px - ax - t * dx, py - ay - t * dy);
}

}  // namespace

std::vector<Fragment> split_by_itinerary(const LoziParams& p, unsigned n, const ConvexPolygon& src,
                                         std::size_t budget) {
  std::vector<Fragment> cur{{SignItinerary{}, src, AffineMap2{}}};
  for (unsigned k = 0; k < n; ++k) {
    std::vector<Fragment> next;
    for (auto& f : cur) {
      const Mat2& m = f.map.linear;
      const Rational& c = f.map.offset.x;
      std::optional<ConvexPolygon> parts[2];
      if (m.m11.is_zero() && m.m12.is_zero()) {
        parts[c.sign() < 0 ? 1 : 0] = f.source;
      } else {
        const HalfPlane nonneg(m.m11, m.m12, -c, true);
        parts[0] = clip_polygon(f.source, nonneg);
        parts[1] = clip_polygon(f.source, nonneg.complement().closure());
      }
      for (int i = 0; i < 2; ++i) {
        if (!parts[i]) continue;
        const Sign s = i == 0 ? Sign::NonNeg : Sign::Neg;
        SignItinerary it = f.itinerary;
        it.push_back(s);
        next.push_back({std::move(it), std::move(*parts[i]), lozi_branch(p, s).after(f.map)});
        if (next.size() > budget) throw std::runtime_error("fragment budget exceeded");
      }
    }
    cur = std::move(next);
  }
  return cur;
}

Rational PiecewiseImage::total_area() const {
  Rational sum(0);
  for (const auto& pc : pieces) sum += polygon_area(pc.image);
  return sum;
}

PiecewiseImage image_piecewise(const LoziParams& p, unsigned n, const ConvexPolygon& src, std::size_t budget) {
  if (p.b.is_zero()) throw std::domain_error("non-invertible branch");
  PiecewiseImage out;
  for (auto& f : split_by_itinerary(p, n, src, budget))
    out.pieces.push_back({f.itinerary, f.source, affine_image(f.map, f.source)});
  return out;
}

TrappingCertificate verify_trapping(const LoziParams& p, unsigned n, const ConvexPolygon& region, unsigned k,
                                    std::optional<std::pair<Point2, Point2>> segment, std::size_t budget) {
  if (n == 0) throw std::invalid_argument("period must be positive");
  if (k == 0) throw std::invalid_argument("steps must be positive");

  TrappingCertificate cert;
  cert.period = n;
  cert.region = region.vertices();
  const Rational jac = pow(p.b.abs(), n);
  Rational expected = polygon_area(region);

  std::vector<ConvexPolygon> current{region};
  for (unsigned j = 1; j <= k; ++j) {
    TrappingCertificate::Step step;
    step.index = j;
    expected *= jac;
    step.expected_area = expected;
    for (const auto& poly : current) {
      auto img = image_piecewise(p, n, poly, budget);
      for (auto& pc : img.pieces) step.pieces.push_back(std::move(pc));
    }
    step.contained = true;
    for (std::size_t i = 0; i < step.pieces.size(); ++i) {
      const auto& pc = step.pieces[i];
      step.area += polygon_area(pc.image);
      if (step.contained && !contains_polygon(region, pc.image)) {
        step.contained = false;
        cert.first_failure = TrappingCertificate::Failure{j, i, pc.itinerary, pc.image};
      }
    }
    step.area_law = step.area == step.expected_area;
    if (segment) {
      double worst = 0;
      for (const auto& pc : step.pieces)
        for (const auto& v : pc.image.vertices()) worst = std::max(worst, distance_to_segment(v, *segment));
      step.max_distance_to_segment = worst;
    }

    current.clear();
    for (const auto& pc : step.pieces) current.push_back(pc.image);
    const bool ok = step.contained;
    cert.steps.push_back(std::move(step));
    if (!ok) break;
  }

  cert.passed = !cert.first_failure.has_value();
  if (segment && cert.steps.size() > 1) {
    bool decreasing = true;
    for (std::size_t i = 1; i < cert.steps.size(); ++i)
      decreasing = decreasing && *cert.steps[i].max_distance_to_segment < *cert.steps[i - 1].max_distance_to_segment;
    cert.contracting = decreasing;
  }
  return cert;
}

TrappingRegion trapping_region_for(const LoziParams& p) {
  if (p.b != p.a - Rational(1)) throw std::invalid_argument("parameters are not on the family b = a - 1");

  const Point2 f2{Rational(0), (Rational(1) - p.b * p.b) / (p.a * (Rational(1) + p.b * p.b))};
  const Point2 f1 = lozi_iterate(p, f2, 2);

  // the branch fixing the segment has eigenvalues 1 and det; the stable
  // direction is the kernel of M - det I
  const Mat2 m = compose_branch(p, SignItinerary::parse("-+-+")).map.linear;
  const Rational det = m.det();
  if (m.trace() != Rational(1) + det || det == Rational(1))
    throw std::domain_error("stable direction undefined");
  Point2 dir = !(m.m12.is_zero()) ? Point2{m.m12, det - m.m11} : Point2{det - m.m22, m.m21};
  if (dir.x.is_zero()) throw std::domain_error("stable direction undefined");
  const Rational slope = dir.y / dir.x;

  const Point2 r1 = f1 + Point2{Rational(0), rat(1, 5)};
  const Point2 r2 = f1 + Point2{rat(1, 10), slope * rat(1, 10)};
  const Point2 r3 = f2 + Point2{Rational(0), rat(-1, 4)};
  const Point2 r4 = f2 + Point2{rat(-1, 5), slope * rat(-1, 5)};
  TrappingRegion r{ConvexPolygon::make({r1, f1, r2, r3, f2, r4}), f1, f2, r1, r2, r3, r4, slope};
  return r;
}

}  // namespace lozi
