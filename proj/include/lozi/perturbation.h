#pragma once

// First-order behaviour of the box vertices under L^4 as the parameter a moves
// off the segment b = a - 1, and re-verification of the box coverings along
// the perturbed family.

#include <array>
#include <string>
#include <vector>

#include "lozi/covering.h"
#include "lozi/eps_poly.h"

namespace lozi {

/// |eps2| below this is the regime in which the perturbation argument is made.
Rational perturbation_regime_bound();

/// Base parameters on the segment: (7/5 + eps2, 2/5 + eps2).
LoziParams family_params(const Rational& eps2);

struct CoefficientPair {
  char vertex = 'A';
  Point2 constant;   // eps1 = 0 limit of L^4(vertex)
  Rational x_lin{0};  // coefficient of eps1
  Rational y_lin{0};
  EpsPoint image;    // full truncated expansion
  std::vector<SignChoice> sign_log;  // one |x| resolution per step
  bool outside_regime = false;
};

/// L^4 of the box vertex with a = 7/5 + eps2 + eps1, b = 2/5 + eps2 and eps1
/// symbolic. Throws IndeterminateSign carrying the step index.
CoefficientPair vertex_expansion(const Rational& eps2, char vertex);

struct CoefficientDrift {
  Rational eps2{0};
  std::array<CoefficientPair, 8> rows;
  /// max over vertices of |x_lin - x_lin(0)| and |y_lin - y_lin(0)|
  Rational max_drift{0};
  bool outside_regime = false;
};

CoefficientDrift coefficient_drift(const Rational& eps2);

/// Decimal digits of r truncated toward zero, e.g. (-0.5121, 2) -> "-0.51".
std::string truncate_decimal(const Rational& r, unsigned digits);

struct FamilyCovering {
  LoziParams params;
  Rational height{0};
  std::array<std::array<CoverVerdict, 2>, 2> verdicts;
  TransitionMatrix matrix;
  EntropyBound bound;
  bool any_indeterminate = false;
};

/// Boxes of size eps1 at (0, f2 height on the base family) tested under
/// L^4 with a = 7/5 + eps1 + eps2, b = 2/5 + eps2, all numbers exact.
FamilyCovering covering_family_check(const Rational& eps1, const Rational& eps2);

}  // namespace lozi
