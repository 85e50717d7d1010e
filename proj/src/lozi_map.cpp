#include "lozi/lozi_map.h"

#include <cmath>
#include <stdexcept>

namespace lozi {

Sign sign_of(const Rational& x) { return x.sign() >= 0 ? Sign::NonNeg : Sign::Neg; }

SignItinerary::SignItinerary(std::vector<Sign> signs) : signs_(std::move(signs)) {}

SignItinerary SignItinerary::parse(std::string_view text) {
  std::vector<Sign> signs;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '+') {
      signs.push_back(Sign::NonNeg);
    } else if (c == '-') {
      signs.push_back(Sign::Neg);
    } else if (text.substr(i, 3) == "\xE2\x88\x92") {  // U+2212 minus sign
      signs.push_back(Sign::Neg);
      i += 2;
    } else {
      throw std::invalid_argument("bad itinerary '" + std::string(text) + "'");
    }
  }
  if (signs.empty()) throw std::invalid_argument("empty itinerary");
  return SignItinerary(std::move(signs));
}

SignItinerary SignItinerary::from_index(unsigned index, unsigned length) {
  std::vector<Sign> signs(length);
  for (unsigned k = 0; k < length; ++k)
    signs[k] = ((index >> (length - 1 - k)) & 1u) ? Sign::Neg : Sign::NonNeg;
  return SignItinerary(std::move(signs));
}

std::string SignItinerary::str() const {
  std::string s;
  for (Sign g : signs_) s += g == Sign::NonNeg ? '+' : '-';
  return s;
}

Point2 lozi_apply(const LoziParams& p, const Point2& pt) {
  return {Rational(1) - p.a * pt.x.abs() + p.b * pt.y, pt.x};
}

Point2 lozi_inverse(const LoziParams& p, const Point2& pt) {
  if (p.b.is_zero()) throw std::domain_error("not invertible");
  // u = 1 - a|x| + b y, v = x  =>  x = v, y = (u - 1 + a|v|) / b
  return {pt.y, (pt.x - Rational(1) + p.a * pt.y.abs()) / p.b};
}

Point2 lozi_iterate(const LoziParams& p, Point2 pt, unsigned n) {
  for (unsigned k = 0; k < n; ++k) pt = lozi_apply(p, pt);
  return pt;
}

SignItinerary orbit_itinerary(const LoziParams& p, Point2 pt, unsigned n) {
  SignItinerary it;
  for (unsigned k = 0; k < n; ++k) {
    it.push_back(sign_of(pt.x));
    pt = lozi_apply(p, pt);
  }
  return it;
}

bool StepConstraint::satisfied(const Point2& p) const {
  const int s = form.eval(p).sign();
  return sign == Sign::NonNeg ? s >= 0 : s < 0;
}

std::optional<HalfPlane> StepConstraint::half_plane() const {
  if (form.is_constant()) return std::nullopt;
  // NonNeg: cx x + cy y >= -c0 (closed); Neg: -cx x - cy y > c0 (open)
  if (sign == Sign::NonNeg) return HalfPlane(form.cx, form.cy, -form.c0, true);
  return HalfPlane(-form.cx, -form.cy, form.c0, false);
}

bool StepConstraint::constant_truth() const {
  const int s = form.c0.sign();
  return sign == Sign::NonNeg ? s >= 0 : s < 0;
}

AffineBranch compose_branch(const LoziParams& p, const SignItinerary& it) {
  AffineForm x{Rational(1), Rational(0), Rational(0)};
  AffineForm y{Rational(0), Rational(1), Rational(0)};
  AffineBranch br;
  br.itinerary = it;
  br.domain.reserve(it.size());
  for (Sign s : it.signs()) {
    br.domain.push_back({x, s});
    const Rational slope = -p.a * Rational(sign_factor(s));
    AffineForm nx{slope * x.cx + p.b * y.cx, slope * x.cy + p.b * y.cy,
                  Rational(1) + slope * x.c0 + p.b * y.c0};
    y = std::move(x);
    x = std::move(nx);
  }
  br.map.linear = Mat2{x.cx, x.cy, y.cx, y.cy};
  br.map.offset = Point2{x.c0, y.c0};
  return br;
}

bool branch_contains(const AffineBranch& br, const Point2& pt) {
  for (const auto& c : br.domain)
    if (!c.satisfied(pt)) return false;
  return true;
}

std::vector<std::size_t> violated_steps(const AffineBranch& br, const Point2& pt) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < br.domain.size(); ++k)
    if (!br.domain[k].satisfied(pt)) out.push_back(k);
  return out;
}

EigenData saddle_data(const LoziParams& p, Sign side) {
  const Rational s(sign_factor(side));
  const Rational denom = Rational(1) + s * p.a - p.b;
  if (denom.is_zero()) throw std::domain_error("no saddle on this side");
  const Rational x = Rational(1) / denom;
  if (sign_of(x) != side) throw std::domain_error("no saddle on this side");

  // Jacobian [[-s a, b], [1, 0]]: lambda^2 + s a lambda - b = 0
  const double sa = (s * p.a).to_double();
  const double b = p.b.to_double();
  const double disc = sa * sa + 4.0 * b;
  if (disc <= 0.0) throw std::domain_error("no saddle on this side");
  // stable quadratic roots: q = -(B + sign(B) sqrt(disc)) / 2, roots q and C/q
  const double root = std::sqrt(disc);
  const double q = -0.5 * (sa + std::copysign(root, sa == 0.0 ? 1.0 : sa));
  const double r1 = q;
  const double r2 = -b / q;
  const double lo = std::fabs(r1) < std::fabs(r2) ? r1 : r2;
  const double hi = std::fabs(r1) < std::fabs(r2) ? r2 : r1;
  if (!(std::fabs(lo) < 1.0 && std::fabs(hi) > 1.0)) throw std::domain_error("no saddle on this side");

  EigenData e;
  e.fixed_point = {x, x};
  e.lambda_stable = lo;
  e.lambda_unstable = hi;
  e.v_stable = {lo, 1.0};
  e.v_unstable = {hi, 1.0};
  return e;
}

}  // namespace lozi
