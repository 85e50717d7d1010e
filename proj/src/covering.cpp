#include "lozi/covering.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace lozi {

// ---------------------------------------------------------------------------
// MarkedQuadrilateral

MarkedQuadrilateral MarkedQuadrilateral::make(std::array<Point2, 4> v) {
  std::vector<Point2> cycle(v.begin(), v.end());
  auto poly = ConvexPolygon::from_cycle(cycle);
  if (!poly || poly->size() != 4) throw std::invalid_argument("quadrilateral is not strictly convex");
  if (signed_area2(cycle).sign() < 0) v = {v[1], v[0], v[3], v[2]};

  MarkedQuadrilateral q(std::move(v));
  const Line l0 = Line::through(q.v_[0], q.v_[1]);
  const Line l1 = Line::through(q.v_[2], q.v_[3]);
  if (auto x = intersect_lines(l0, l1); x && q.polygon().contains_point(*x))
    throw std::invalid_argument("vertical support lines meet inside the quadrilateral");
  return q;
}

std::pair<Point2, Point2> MarkedQuadrilateral::vertical_edge(std::size_t i) const {
  if (i > 1) throw std::out_of_range("vertical edge index");
  return i == 0 ? std::make_pair(v_[0], v_[1]) : std::make_pair(v_[2], v_[3]);
}

ConvexPolygon MarkedQuadrilateral::polygon() const {
  return ConvexPolygon::make({v_[0], v_[1], v_[2], v_[3]});
}

HalfPlane MarkedQuadrilateral::strip_side(std::size_t i) const {
  auto [a, b] = vertical_edge(i);
  return HalfPlane::left_of(a, b);
}

MarkedQuadrilateral MarkedQuadrilateral::swapped_verticals() const {
  return MarkedQuadrilateral({v_[2], v_[3], v_[0], v_[1]});
}

// ---------------------------------------------------------------------------
// Singularity clearance

ClearanceRecord singularity_clearance(const LoziParams& p, unsigned n, std::span<const Point2> vertices) {
  ClearanceRecord rec;
  std::vector<Point2> cur(vertices.begin(), vertices.end());
  for (unsigned k = 0; k < n; ++k) {
    bool any_pos = false, any_neg = false;
    for (const auto& q : cur) {
      any_pos = any_pos || q.x.sign() > 0;
      any_neg = any_neg || q.x.sign() < 0;
    }
    if (any_pos && any_neg) {
      rec.failed_step = k;
      return rec;
    }
    rec.itinerary.push_back(any_neg ? Sign::Neg : Sign::NonNeg);
    for (auto& q : cur) q = lozi_apply(p, q);
  }
  rec.clear = true;
  return rec;
}

ClearanceRecord singularity_clearance(const LoziParams& p, unsigned n, const ConvexPolygon& q) {
  return singularity_clearance(p, n, std::span<const Point2>(q.vertices()));
}

// ---------------------------------------------------------------------------
// Covering test

std::string to_string(CoverVerdict::Status s) {
  switch (s) {
    case CoverVerdict::Status::Covered: return "Covered";
    case CoverVerdict::Status::NotCovered: return "NotCovered";
    case CoverVerdict::Status::Indeterminate: return "Indeterminate";
  }
  return "?";
}

CoverVerdict check_cover_images(const std::array<Point2, 4>& w, const MarkedQuadrilateral& target) {
  using Status = CoverVerdict::Status;
  CoverVerdict v;
  v.image_vertices = w;
  v.image = ConvexPolygon::from_cycle({w[0], w[1], w[2], w[3]});
  if (!v.image) throw std::domain_error("non-invertible branch");

  const HalfPlane side0 = target.strip_side(0);
  const HalfPlane side1 = target.strip_side(1);
  auto beyond = [](const HalfPlane& h, const Point2& a, const Point2& b) {
    return h.eval(a).sign() < 0 && h.eval(b).sign() < 0;
  };

  // S2b: no image point outside both support lines (vacuous for parallel lines)
  if (auto outside = clip_polygon(*v.image, side0.complement().closure())) {
    if (clip_polygon(*outside, side1.complement().closure())) {
      v.status = Status::Indeterminate;
      v.failure = "S2b: image reaches beyond both vertical support lines";
      return v;
    }
  }

  // S2: images of the source vertical edges strictly beyond opposite lines
  if (beyond(side0, w[0], w[1]) && beyond(side1, w[2], w[3])) {
    v.first_edge_side = 0;
  } else if (beyond(side1, w[0], w[1]) && beyond(side0, w[2], w[3])) {
    v.first_edge_side = 1;
  } else {
    v.status = Status::NotCovered;
    v.failure = "S2: vertical edge images do not straddle the strip";
    return v;
  }

  // S3: the part of the image inside the strip lies in the target
  std::optional<ConvexPolygon> part = clip_polygon(*v.image, side0);
  if (part) part = clip_polygon(*part, side1);
  v.strip_part = part;
  if (!part || !contains_polygon(target.polygon(), *part)) {
    v.status = Status::NotCovered;
    v.failure = "S3: image inside the strip leaves the target";
    return v;
  }
  v.status = Status::Covered;
  return v;
}

CoverVerdict check_cover_affine(const AffineMap2& f, const MarkedQuadrilateral& source,
                                const MarkedQuadrilateral& target) {
  if (f.linear.det().is_zero()) throw std::domain_error("non-invertible branch");
  std::array<Point2, 4> w;
  for (std::size_t i = 0; i < 4; ++i) w[i] = f.apply(source[i]);
  return check_cover_images(w, target);
}

CoverVerdict check_cover(const LoziParams& p, unsigned n, const MarkedQuadrilateral& source,
                         const MarkedQuadrilateral& target) {
  if (p.b.is_zero()) throw std::domain_error("non-invertible branch");
  auto rec = singularity_clearance(p, n, std::span<const Point2>(source.vertices()));
  if (!rec.clear) {
    CoverVerdict v;
    v.status = CoverVerdict::Status::Indeterminate;
    v.itinerary = rec.itinerary;
    v.failure = "S0: source meets the singularity locus at step " + std::to_string(*rec.failed_step);
    return v;
  }
  std::array<Point2, 4> w;
  for (std::size_t i = 0; i < 4; ++i) w[i] = lozi_iterate(p, source[i], n);
  CoverVerdict v = check_cover_images(w, target);
  v.itinerary = rec.itinerary;
  return v;
}

TransitionMatrix build_matrix(const std::vector<std::vector<CoverVerdict>>& verdicts) {
  TransitionMatrix m;
  m.size = verdicts.size();
  m.entries.assign(m.size, std::vector<int>(m.size, 0));
  for (std::size_t i = 0; i < m.size; ++i) {
    if (verdicts[i].size() != m.size) throw std::invalid_argument("verdict grid is not square");
    for (std::size_t j = 0; j < m.size; ++j)
      m.entries[i][j] = verdicts[i][j].status == CoverVerdict::Status::Covered ? 1 : 0;
  }
  return m;
}

// ---------------------------------------------------------------------------
// Spectral radius

namespace {

using Poly = std::vector<Rational>;  // coefficients, lowest degree first

void trim(Poly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

Rational eval(const Poly& p, const Rational& x) {
  Rational acc(0);
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return acc;
}

Poly derivative(const Poly& p) {
  Poly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * Rational(static_cast<long>(i)));
  trim(d);
  return d;
}

Poly remainder(Poly num, const Poly& den) {
  trim(num);
  while (num.size() >= den.size() && !num.empty()) {
    const Rational f = num.back() / den.back();
    const std::size_t shift = num.size() - den.size();
    for (std::size_t i = 0; i < den.size(); ++i) num[shift + i] -= f * den[i];
    trim(num);
  }
  return num;
}

// det(x I - A) via Faddeev-LeVerrier in exact arithmetic.
Poly characteristic_polynomial(const TransitionMatrix& m) {
  const std::size_t n = m.size;
  using RMat = std::vector<std::vector<Rational>>;
  auto mul = [n](const RMat& a, const RMat& b) {
    RMat r(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        if (!a[i][k].is_zero())
          for (std::size_t j = 0; j < n; ++j) r[i][j] += a[i][k] * b[k][j];
    return r;
  };
  RMat a(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = Rational(m.entries[i][j]);

  Poly c(n + 1, Rational(0));
  c[n] = Rational(1);
  RMat mk(n, std::vector<Rational>(n, Rational(0)));  // M_0 = 0
  for (std::size_t k = 1; k <= n; ++k) {
    // M_k = A M_{k-1} + c_{n-k+1} I ; c_{n-k} = -tr(A M_k) / k
    RMat next = mul(a, mk);
    for (std::size_t i = 0; i < n; ++i) next[i][i] += c[n - k + 1];
    mk = std::move(next);
    RMat am = mul(a, mk);
    Rational tr(0);
    for (std::size_t i = 0; i < n; ++i) tr += am[i][i];
    c[n - k] = -tr / Rational(static_cast<long>(k));
  }
  return c;
}

std::vector<Poly> sturm_chain(const Poly& p) {
  std::vector<Poly> chain{p, derivative(p)};
  while (!chain.back().empty() && chain.back().size() > 1) {
    Poly r = remainder(chain[chain.size() - 2], chain.back());
    if (r.empty()) break;
    for (auto& c : r) c = -c;
    chain.push_back(std::move(r));
  }
  return chain;
}

int sign_changes_at(const std::vector<Poly>& chain, const Rational& x) {
  int changes = 0, last = 0;
  for (const auto& p : chain) {
    const int s = eval(p, x).sign();
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

int sign_changes_at_infinity(const std::vector<Poly>& chain) {
  int changes = 0, last = 0;
  for (const auto& p : chain) {
    if (p.empty()) continue;
    const int s = p.back().sign();
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

// number of distinct real roots in (x, inf)
int roots_above(const std::vector<Poly>& chain, const Rational& x) {
  return sign_changes_at(chain, x) - sign_changes_at_infinity(chain);
}

double round_down(const Rational& r) {
  double d = r.to_double();  // truncates toward zero
  if (r.sign() < 0 && Rational::from_double(d) != r) d = std::nextafter(d, -HUGE_VAL);
  return d;
}

double round_up(const Rational& r) {
  double d = r.to_double();
  if (Rational::from_double(d) < r) d = std::nextafter(d, HUGE_VAL);
  return d;
}

}  // namespace

EntropyBound entropy_lower_bound(const TransitionMatrix& m, unsigned iterate) {
  if (iterate == 0) throw std::invalid_argument("iterate must be positive");
  const std::size_t n = m.size;
  if (m.entries.size() != n) throw std::invalid_argument("matrix is not square");
  for (const auto& row : m.entries) {
    if (row.size() != n) throw std::invalid_argument("matrix is not square");
    for (int e : row)
      if (e != 0 && e != 1) throw std::invalid_argument("matrix entries must be 0 or 1");
  }

  EntropyBound out;
  out.iterate = iterate;
  long max_row = 0;
  for (const auto& row : m.entries) max_row = std::max<long>(max_row, std::count(row.begin(), row.end(), 1));
  if (max_row == 0 || n == 0) return out;

  // power iteration from the all-ones vector
  std::vector<double> x(n, 1.0);
  for (int it = 0; it < 200; ++it) {
    std::vector<double> y(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (m.entries[i][j]) y[i] += x[j];
    const double norm = *std::max_element(y.begin(), y.end());
    if (norm == 0.0) {
      x.assign(n, 0.0);
      break;
    }
    for (auto& v : y) v /= norm;
    x = std::move(y);
  }

  // Collatz-Wielandt: for x >= 0, x != 0, rho >= min_{x_i > 0} (Ax)_i / x_i,
  // and for x > 0, rho <= max_i (Ax)_i / x_i. Evaluated exactly on the doubles.
  std::vector<Rational> xr;
  xr.reserve(n);
  for (double v : x) xr.push_back(Rational::from_double(v));
  std::optional<Rational> lower, upper;
  bool positive = true;
  for (std::size_t i = 0; i < n; ++i) {
    if (xr[i].sign() <= 0) {
      positive = false;
      continue;
    }
    Rational ax(0);
    for (std::size_t j = 0; j < n; ++j)
      if (m.entries[i][j]) ax += xr[j];
    const Rational ratio = ax / xr[i];
    if (!lower || ratio < *lower) lower = ratio;
    if (!upper || ratio > *upper) upper = ratio;
  }
  const Rational row_bound(max_row);
  const Rational lo = lower.value_or(Rational(0));
  const Rational hi = (positive && upper) ? min(*upper, row_bound) : row_bound;

  out.spectral_radius_lower_exact = lo;
  out.spectral_radius_lower = round_down(lo);
  out.spectral_radius_upper = round_up(hi);
  if (out.spectral_radius_lower > 1.0) {
    // glibc log is accurate to within one ulp; step down twice to be safe
    double l = std::log(out.spectral_radius_lower);
    l = std::nextafter(std::nextafter(l, -HUGE_VAL), -HUGE_VAL);
    out.bound = std::max(0.0, std::nextafter(l / static_cast<double>(iterate), -HUGE_VAL));
  }

  if (n <= 4) {
    const auto chain = sturm_chain(characteristic_polynomial(m));
    // rho is the largest real root; lo must not exceed it
    const bool lo_is_root = eval(chain.front(), lo).is_zero();
    const int above = roots_above(chain, lo);
    out.charpoly_confirmed = lo_is_root || above >= 1;
    if (*out.charpoly_confirmed) {
      Rational a = lo, b = hi + Rational(1);
      if (!lo_is_root) {
        for (int it = 0; it < 60; ++it) {
          Rational mid = (a + b) / Rational(2);
          if (roots_above(chain, mid) >= 1 || eval(chain.front(), mid).is_zero())
            a = mid;
          else
            b = mid;
        }
      } else {
        b = lo;
      }
      out.charpoly_bracket = std::make_pair(round_down(a), round_up(b));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Boxes around the x = 0 end of the period-4 segment

std::pair<Rational, Rational> entropy_box_offset(char id) {
  switch (id) {
    case 'A': return {Rational(0), Rational(-1)};
    case 'B': return {Rational(1), rat(7, 2)};
    case 'C': return {rat(5, 2), rat(5, 2)};
    case 'D': return {rat(3, 2), Rational(-2)};
    case 'E': return {Rational(-3), rat(7, 2)};
    case 'F': return {Rational(-2), rat(5, 6)};
    case 'G': return {Rational(0), rat(-1, 2)};
    case 'H': return {Rational(-1), rat(13, 6)};
    default: throw std::invalid_argument(std::string("unknown box vertex '") + id + "'");
  }
}

Point2 entropy_box_vertex(char id, const Rational& eps1, const Rational& height) {
  auto [dx, dy] = entropy_box_offset(id);
  return {dx * eps1, height + dy * eps1};
}

std::pair<MarkedQuadrilateral, MarkedQuadrilateral> entropy_boxes(const Rational& eps1, const Rational& height) {
  if (eps1.sign() <= 0) throw std::invalid_argument("eps1 must be positive");
  auto v = [&](char id) { return entropy_box_vertex(id, eps1, height); };
  return {MarkedQuadrilateral::make({v('A'), v('B'), v('C'), v('D')}),
          MarkedQuadrilateral::make({v('E'), v('F'), v('G'), v('H')})};
}

}  // namespace lozi
