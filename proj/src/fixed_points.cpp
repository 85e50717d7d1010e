#include "lozi/fixed_points.h"

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace lozi {

namespace {

struct Bound {
  Rational value;
  bool closed;
};

void order_endpoints(Point2& a, Point2& b) {
  if (b < a) std::swap(a, b);
}

bool collinear(const Point2& a, const Point2& b, const Point2& c) { return orient(a, b, c).is_zero(); }

bool on_segment(const Point2& q, const Point2& from, const Point2& to) {
  return collinear(from, to, q) && !(q < from) && !(to < q);
}

void add_sources(std::vector<SignItinerary>& into, const std::vector<SignItinerary>& from) {
  into.insert(into.end(), from.begin(), from.end());
  std::sort(into.begin(), into.end());
  into.erase(std::unique(into.begin(), into.end()), into.end());
}

BranchSolution solve_rank_one(BranchSolution sol, const AffineBranch& br, const Mat2& k, const Point2& c) {
  using Kind = BranchSolution::Kind;
  // pick a nonzero row r with r . p = cr; the other row must be a multiple of it
  Rational rx = k.m11, ry = k.m12, cr = c.x;
  Rational ox = k.m21, oy = k.m22, oc = c.y;
  if (rx.is_zero() && ry.is_zero()) {
    std::swap(rx, ox);
    std::swap(ry, oy);
    std::swap(cr, oc);
  }
  // consistency: (ox, oy, oc) = lambda (rx, ry, cr)
  const Rational lambda = rx.is_zero() ? oy / ry : ox / rx;
  if (!(lambda * cr == oc)) {
    sol.kind = Kind::Empty;
    return sol;
  }

  const Point2 origin = rx.is_zero() ? Point2{Rational(0), cr / ry} : Point2{cr / rx, Rational(0)};
  const Point2 dir{-ry, rx};

  std::optional<Bound> lo, hi;
  auto tighten_lo = [&](Rational v, bool closed) {
    if (!lo || v > lo->value || (v == lo->value && !closed)) lo = Bound{std::move(v), closed};
  };
  auto tighten_hi = [&](Rational v, bool closed) {
    if (!hi || v < hi->value || (v == hi->value && !closed)) hi = Bound{std::move(v), closed};
  };

  for (const auto& con : br.domain) {
    // form(origin + t dir) = alpha + beta t
    const Rational alpha = con.form.eval(origin);
    const Rational beta = con.form.cx * dir.x + con.form.cy * dir.y;
    const bool nonneg = con.sign == Sign::NonNeg;
    if (beta.is_zero()) {
      const int s = alpha.sign();
      if (nonneg ? s < 0 : s >= 0) {
        sol.kind = Kind::Empty;
        return sol;
      }
      continue;
    }
    const Rational root = -alpha / beta;
    if (beta.sign() > 0) {
      if (nonneg) tighten_lo(root, true);
      else tighten_hi(root, false);
    } else {
      if (nonneg) tighten_hi(root, true);
      else tighten_lo(root, false);
    }
  }

  if (!lo || !hi) {
    sol.kind = Kind::Unbounded;
    return sol;
  }
  if (lo->value > hi->value || (lo->value == hi->value && !(lo->closed && hi->closed))) {
    sol.kind = Kind::Empty;
    return sol;
  }
  Point2 a = origin + lo->value * dir;
  Point2 b = origin + hi->value * dir;
  if (lo->value == hi->value) {
    sol.kind = Kind::IsolatedPoint;
    sol.point = a;
    return sol;
  }
  order_endpoints(a, b);
  sol.kind = Kind::Segment;
  sol.segment = std::make_pair(std::move(a), std::move(b));
  return sol;
}

}  // namespace

BranchSolution solve_branch_fixed(const AffineBranch& br) {
  using Kind = BranchSolution::Kind;
  BranchSolution sol;
  sol.itinerary = br.itinerary;

  const Mat2& m = br.map.linear;
  const Mat2 k{Rational(1) - m.m11, -m.m12, -m.m21, Rational(1) - m.m22};
  const Point2& c = br.map.offset;  // fixed points satisfy k p = c
  const Rational det = k.det();

  if (!det.is_zero()) {
    Point2 q{(c.x * k.m22 - k.m12 * c.y) / det, (k.m11 * c.y - k.m21 * c.x) / det};
    sol.violated = violated_steps(br, q);
    sol.candidate = q;
    if (sol.violated.empty()) {
      sol.kind = Kind::IsolatedPoint;
      sol.point = std::move(q);
    } else {
      sol.kind = Kind::Empty;
    }
    return sol;
  }

  const bool k_zero = k.m11.is_zero() && k.m12.is_zero() && k.m21.is_zero() && k.m22.is_zero();
  if (k_zero) {
    const bool whole = c.x.is_zero() && c.y.is_zero();
    sol.kind = whole ? Kind::WholeDomain : Kind::Empty;
    if (whole) {
      for (const auto& con : br.domain)
        if (con.form.is_constant() && !con.constant_truth()) sol.kind = Kind::Empty;
    }
    return sol;
  }
  return solve_rank_one(std::move(sol), br, k, c);
}

FixedPointSet enumerate_fixed_points(const LoziParams& p, unsigned n) {
  if (n == 0) throw std::invalid_argument("period must be positive");
  if (n > kMaxEnumerationPeriod) throw std::invalid_argument("branch budget exceeded");

  FixedPointSet out;
  out.period = n;
  const unsigned branches = 1u << n;
  out.branches.reserve(branches);

  for (unsigned idx = 0; idx < branches; ++idx) {
    auto it = SignItinerary::from_index(idx, n);
    auto sol = solve_branch_fixed(compose_branch(p, it));
    using Kind = BranchSolution::Kind;
    switch (sol.kind) {
      case Kind::IsolatedPoint:
        out.points.push_back({*sol.point, {it}});
        break;
      case Kind::Segment:
        out.segments.push_back({sol.segment->first, sol.segment->second, {it}});
        break;
      case Kind::WholeDomain:
        out.whole_domains.push_back(it);
        break;
      case Kind::Unbounded:
        out.unbounded.push_back(it);
        break;
      case Kind::Empty:
        break;
    }
    out.branches.push_back(std::move(sol));
  }

  // merge collinear segments that overlap or touch
  auto& segs = out.segments;
  for (bool merged = true; merged;) {
    merged = false;
    for (std::size_t i = 0; i < segs.size() && !merged; ++i) {
      for (std::size_t j = i + 1; j < segs.size() && !merged; ++j) {
        auto& s = segs[i];
        auto& t = segs[j];
        if (!collinear(s.from, s.to, t.from) || !collinear(s.from, s.to, t.to)) continue;
        if (std::max(s.from, t.from) > std::min(s.to, t.to)) continue;
        s.from = std::min(s.from, t.from);
        s.to = std::max(s.to, t.to);
        add_sources(s.sources, t.sources);
        segs.erase(segs.begin() + static_cast<std::ptrdiff_t>(j));
        merged = true;
      }
    }
  }
  std::sort(segs.begin(), segs.end(), [](const auto& a, const auto& b) {
    return std::tie(a.from, a.to) < std::tie(b.from, b.to);
  });

  // points absorbed by segments, then duplicates
  std::vector<FixedPointSet::PointItem> kept;
  for (auto& pt : out.points) {
    bool absorbed = false;
    for (auto& s : segs) {
      if (on_segment(pt.point, s.from, s.to)) {
        add_sources(s.sources, pt.sources);
        absorbed = true;
        break;
      }
    }
    if (absorbed) continue;
    auto dup = std::find_if(kept.begin(), kept.end(), [&](const auto& k) { return k.point == pt.point; });
    if (dup != kept.end())
      add_sources(dup->sources, pt.sources);
    else
      kept.push_back(std::move(pt));
  }
  std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) { return a.point < b.point; });
  out.points = std::move(kept);
  return out;
}

Point2 f2_point(const LoziParams& p) {
  if (p.a.is_zero()) throw std::domain_error("a must be nonzero");
  const Rational b2 = p.b * p.b;
  return {Rational(0), (Rational(1) - b2) / (p.a * (Rational(1) + b2))};
}

}  // namespace lozi
