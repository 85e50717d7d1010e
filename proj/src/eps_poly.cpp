#include "lozi/eps_poly.h"

#include <stdexcept>

namespace lozi {

EpsPoly::EpsPoly(std::size_t degree_cap) : coeffs_(degree_cap + 1, Rational(0)) {
  if (degree_cap < 1) throw std::invalid_argument("eps degree cap must be >= 1");
}

EpsPoly::EpsPoly(std::vector<Rational> coefficients, std::size_t degree_cap) : EpsPoly(degree_cap) {
  for (std::size_t i = 0; i < coefficients.size(); ++i) {
    if (i <= degree_cap)
      coeffs_[i] = std::move(coefficients[i]);
    else if (!coefficients[i].is_zero())
      truncated_ = true;
  }
}

EpsPoly EpsPoly::constant(Rational c, std::size_t degree_cap) {
  EpsPoly p(degree_cap);
  p.coeffs_[0] = std::move(c);
  return p;
}

EpsPoly EpsPoly::linear(Rational c0, Rational c1, std::size_t degree_cap) {
  EpsPoly p(degree_cap);
  p.coeffs_[0] = std::move(c0);
  p.coeffs_[1] = std::move(c1);
  return p;
}

bool EpsPoly::is_zero() const { return !lowest_nonzero().has_value(); }

std::optional<std::size_t> EpsPoly::lowest_nonzero() const {
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    if (!coeffs_[i].is_zero()) return i;
  return std::nullopt;
}

int EpsPoly::sign_at_zero_plus() const {
  auto i = lowest_nonzero();
  return i ? coeffs_[*i].sign() : 0;
}

Rational EpsPoly::eval(const Rational& eps) const {
  Rational acc(0);
  for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * eps + coeffs_[i];
  return acc;
}

void EpsPoly::check_cap(const EpsPoly& o) const {
  if (o.coeffs_.size() != coeffs_.size()) throw std::invalid_argument("eps degree caps differ");
}

EpsPoly& EpsPoly::operator+=(const EpsPoly& o) {
  check_cap(o);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  truncated_ = truncated_ || o.truncated_;
  return *this;
}

EpsPoly& EpsPoly::operator-=(const EpsPoly& o) {
  check_cap(o);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  truncated_ = truncated_ || o.truncated_;
  return *this;
}

EpsPoly& EpsPoly::operator*=(const Rational& s) {
  for (auto& c : coeffs_) c *= s;
  if (s.is_zero()) truncated_ = false;
  return *this;
}

EpsPoly operator*(const EpsPoly& a, const EpsPoly& b) {
  a.check_cap(b);
  const std::size_t cap = a.degree_cap();
  EpsPoly r(cap);
  bool dropped = false;
  for (std::size_t i = 0; i <= cap; ++i) {
    if (a.coeffs_[i].is_zero()) continue;
    for (std::size_t j = 0; j <= cap; ++j) {
      if (b.coeffs_[j].is_zero()) continue;
      if (i + j <= cap)
        r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
      else
        dropped = true;
    }
  }
  // a dropped tail of either factor only matters against a nonzero partner
  const bool tail = (a.truncated_ && !b.is_zero()) || (b.truncated_ && !a.is_zero());
  r.truncated_ = dropped || tail;
  return r;
}

EpsPoly operator-(const EpsPoly& a) {
  EpsPoly r = a;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

EpsPoly eps_abs(const EpsPoly& p, SignChoice* choice) {
  const auto w = p.lowest_nonzero();
  if (!w && p.truncated()) throw IndeterminateSign();
  const int s = w ? p[*w].sign() : 0;
  if (choice) *choice = {s, w};
  return s < 0 ? -p : p;
}

EpsPoint lozi_apply_eps(const EpsPoly& a, const EpsPoly& b, const EpsPoint& pt, SignChoice* choice) {
  const std::size_t cap = pt.x.degree_cap();
  EpsPoly nx = EpsPoly::constant(Rational(1), cap) - a * eps_abs(pt.x, choice) + b * pt.y;
  return {std::move(nx), pt.x};
}

}  // namespace lozi
