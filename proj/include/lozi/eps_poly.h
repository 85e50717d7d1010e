#pragma once

// Truncated polynomials in a small positive parameter eps, used for
// first-order perturbation work. Arithmetic keeps coefficients up to a fixed
// degree cap and records whether higher-order terms were dropped.

#include <optional>
#include <stdexcept>
#include <vector>

#include "lozi/geometry.h"
#include "lozi/rational.h"

namespace lozi {

inline constexpr std::size_t kDefaultEpsDegree = 2;

class EpsPoly {
public:
  explicit EpsPoly(std::size_t degree_cap = kDefaultEpsDegree);
  /// c0 + c1 eps + ...; extra coefficients beyond the cap set the truncated flag.
  EpsPoly(std::vector<Rational> coefficients, std::size_t degree_cap = kDefaultEpsDegree);

  static EpsPoly constant(Rational c, std::size_t degree_cap = kDefaultEpsDegree);
  /// c0 + c1 eps
  static EpsPoly linear(Rational c0, Rational c1, std::size_t degree_cap = kDefaultEpsDegree);

  std::size_t degree_cap() const { return coeffs_.size() - 1; }
  const Rational& operator[](std::size_t i) const { return coeffs_[i]; }
  const std::vector<Rational>& coefficients() const { return coeffs_; }
  bool truncated() const { return truncated_; }

  bool is_zero() const;
  /// Index of the lowest nonzero coefficient.
  std::optional<std::size_t> lowest_nonzero() const;
  /// Sign as eps -> 0+: sign of the lowest nonzero coefficient, 0 if none.
  int sign_at_zero_plus() const;

  Rational eval(const Rational& eps) const;

  EpsPoly& operator+=(const EpsPoly& o);
  EpsPoly& operator-=(const EpsPoly& o);
  EpsPoly& operator*=(const Rational& s);
  friend EpsPoly operator+(EpsPoly a, const EpsPoly& b) { return a += b; }
  friend EpsPoly operator-(EpsPoly a, const EpsPoly& b) { return a -= b; }
  friend EpsPoly operator*(EpsPoly a, const Rational& s) { return a *= s; }
  friend EpsPoly operator*(const Rational& s, EpsPoly a) { return a *= s; }
  friend EpsPoly operator*(const EpsPoly& a, const EpsPoly& b);
  friend EpsPoly operator-(const EpsPoly& a);

  friend bool operator==(const EpsPoly&, const EpsPoly&) = default;

private:
  void check_cap(const EpsPoly& o) const;

  std::vector<Rational> coeffs_;
  bool truncated_ = false;
};

struct EpsPoint {
  EpsPoly x;
  EpsPoly y;

  Point2 eval(const Rational& eps) const { return {x.eval(eps), y.eval(eps)}; }
  friend bool operator==(const EpsPoint&, const EpsPoint&) = default;
};

/// Which branch of |.| was taken: +1 / -1, or 0 for the zero polynomial.
/// `witness` is the index of the coefficient that decided the sign.
struct SignChoice {
  int sign = 0;
  std::optional<std::size_t> witness;
};

/// Thrown when every stored coefficient is zero but higher-order terms were
/// dropped, so the sign at 0+ cannot be decided.
class IndeterminateSign : public std::runtime_error {
public:
  explicit IndeterminateSign(std::size_t step = 0)
      : std::runtime_error("indeterminate sign"), step_(step) {}
  std::size_t step() const { return step_; }

private:
  std::size_t step_;
};

EpsPoly eps_abs(const EpsPoly& p, SignChoice* choice = nullptr);

/// (1 - a|x| + b y, x) in truncated eps-arithmetic. Optionally records the
/// sign choice made for |x|.
EpsPoint lozi_apply_eps(const EpsPoly& a, const EpsPoly& b, const EpsPoint& pt,
                        SignChoice* choice = nullptr);

}  // namespace lozi
