#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lozi/geometry.h"
#include "lozi/rational.h"

namespace lozi {

/// (x, y) -> (1 - a|x| + b y, x).
struct LoziParams {
  Rational a;
  Rational b;

  friend bool operator==(const LoziParams&, const LoziParams&) = default;
};

/// NonNeg encodes x >= 0, Neg encodes x < 0.
enum class Sign { NonNeg, Neg };

inline int sign_factor(Sign s) { return s == Sign::NonNeg ? 1 : -1; }
Sign sign_of(const Rational& x);

class SignItinerary {
public:
  SignItinerary() = default;
  explicit SignItinerary(std::vector<Sign> signs);

  /// Parses a string over {+,-}; U+2212 is accepted as '-'.
  static SignItinerary parse(std::string_view text);
  /// Itinerary number `index` of length n: bit (n-1-k) set means step k is Neg.
  static SignItinerary from_index(unsigned index, unsigned length);

  std::size_t size() const { return signs_.size(); }
  Sign operator[](std::size_t k) const { return signs_[k]; }
  const std::vector<Sign>& signs() const { return signs_; }
  void push_back(Sign s) { signs_.push_back(s); }
  std::string str() const;

  friend bool operator==(const SignItinerary&, const SignItinerary&) = default;
  friend auto operator<=>(const SignItinerary&, const SignItinerary&) = default;

private:
  std::vector<Sign> signs_;
};

Point2 lozi_apply(const LoziParams& p, const Point2& pt);
/// Throws std::domain_error("not invertible") when b == 0.
Point2 lozi_inverse(const LoziParams& p, const Point2& pt);
Point2 lozi_iterate(const LoziParams& p, Point2 pt, unsigned n);

/// Sign sequence of x along the first n points of the orbit of pt.
SignItinerary orbit_itinerary(const LoziParams& p, Point2 pt, unsigned n);

/// cx x + cy y + c0, in initial coordinates.
struct AffineForm {
  Rational cx{0}, cy{0}, c0{0};
  Rational eval(const Point2& p) const { return cx * p.x + cy * p.y + c0; }
  bool is_constant() const { return cx.is_zero() && cy.is_zero(); }
  friend bool operator==(const AffineForm&, const AffineForm&) = default;
};

/// Step-k condition: the x-coordinate of the k-th iterate, pulled back to
/// initial coordinates, has the prescribed sign.
struct StepConstraint {
  AffineForm form;
  Sign sign;

  bool satisfied(const Point2& p) const;
  /// Half-open region as a HalfPlane; nullopt when the form is constant.
  std::optional<HalfPlane> half_plane() const;
  /// Constant forms are either always or never satisfied.
  bool constant_truth() const;
};

/// One affine piece of L^n: on points satisfying every step constraint the
/// n-fold iterate equals `map`.
struct AffineBranch {
  SignItinerary itinerary;
  AffineMap2 map;
  std::vector<StepConstraint> domain;

  std::size_t order() const { return itinerary.size(); }
};

AffineBranch compose_branch(const LoziParams& p, const SignItinerary& it);
bool branch_contains(const AffineBranch& br, const Point2& pt);
/// Indices of the step constraints violated by pt.
std::vector<std::size_t> violated_steps(const AffineBranch& br, const Point2& pt);

/// Saddle fixed point of L on one side of x = 0 and its float eigen-data.
/// Eigenvectors are reported as (lambda, 1).
struct EigenData {
  Point2 fixed_point;
  double lambda_stable = 0;
  double lambda_unstable = 0;
  std::array<double, 2> v_stable{};
  std::array<double, 2> v_unstable{};
};

/// Throws std::domain_error("no saddle on this side") when the one-step fixed
/// point on that side does not exist or is not a saddle.
EigenData saddle_data(const LoziParams& p, Sign side);

}  // namespace lozi
