#include "lozi/perturbation.h"

#include <stdexcept>

#include "lozi/fixed_points.h"

namespace lozi {

namespace {

constexpr const char kVertices[] = "ABCDEFGH";

}  // namespace

Rational perturbation_regime_bound() { return rat(1, 10); }

LoziParams family_params(const Rational& eps2) { return {rat(7, 5) + eps2, rat(2, 5) + eps2}; }

CoefficientPair vertex_expansion(const Rational& eps2, char vertex) {
  const LoziParams base = family_params(eps2);
  const Rational h = f2_point(base).y;
  const auto [dx, dy] = entropy_box_offset(vertex);

  CoefficientPair out;
  out.vertex = vertex;
  out.outside_regime = !(eps2.abs() < perturbation_regime_bound());

  const EpsPoly a = EpsPoly::linear(base.a, Rational(1));
  const EpsPoly b = EpsPoly::constant(base.b);
  EpsPoint pt{EpsPoly::linear(Rational(0), dx), EpsPoly::linear(h, dy)};
  for (std::size_t step = 0; step < 4; ++step) {
    SignChoice choice;
    try {
      pt = lozi_apply_eps(a, b, pt, &choice);
    } catch (const IndeterminateSign&) {
      throw IndeterminateSign(step);
    }
    out.sign_log.push_back(choice);
  }
  out.constant = {pt.x[0], pt.y[0]};
  out.x_lin = pt.x[1];
  out.y_lin = pt.y[1];
  out.image = std::move(pt);
  return out;
}

CoefficientDrift coefficient_drift(const Rational& eps2) {
  CoefficientDrift out;
  out.eps2 = eps2;
  out.outside_regime = !(eps2.abs() < perturbation_regime_bound());
  for (std::size_t i = 0; i < 8; ++i) {
    out.rows[i] = vertex_expansion(eps2, kVertices[i]);
    if (eps2.is_zero()) continue;
    const CoefficientPair ref = vertex_expansion(Rational(0), kVertices[i]);
    out.max_drift = max(out.max_drift, (out.rows[i].x_lin - ref.x_lin).abs());
    out.max_drift = max(out.max_drift, (out.rows[i].y_lin - ref.y_lin).abs());
  }
  return out;
}

std::string truncate_decimal(const Rational& r, unsigned digits) {
  mpz_class scale = 1;
  for (unsigned i = 0; i < digits; ++i) scale *= 10;
  const mpq_class scaled = abs(r.raw()) * scale;
  const mpz_class q = scaled.get_num() / scaled.get_den();  // floor of a nonnegative value
  std::string body = q.get_str();
  if (body.size() <= digits) body.insert(0, digits + 1 - body.size(), '0');
  std::string out = body.substr(0, body.size() - digits);
  if (digits > 0) out += "." + body.substr(body.size() - digits);
  if (r.sign() < 0 && q != 0) out.insert(0, "-");
  return out;
}

FamilyCovering covering_family_check(const Rational& eps1, const Rational& eps2) {
  if (eps1.sign() <= 0) throw std::invalid_argument("eps1 must be positive");
  const LoziParams base = family_params(eps2);
  FamilyCovering out;
  out.params = {base.a + eps1, base.b};
  out.height = f2_point(base).y;
  const auto boxes = entropy_boxes(eps1, out.height);
  const MarkedQuadrilateral* n[2] = {&boxes.first, &boxes.second};

  std::vector<std::vector<CoverVerdict>> grid(2, std::vector<CoverVerdict>(2));
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      grid[i][j] = check_cover(out.params, 4, *n[i], *n[j]);
      out.verdicts[i][j] = grid[i][j];
      out.any_indeterminate = out.any_indeterminate || grid[i][j].status == CoverVerdict::Status::Indeterminate;
    }
  }
  out.matrix = build_matrix(grid);
  out.bound = entropy_lower_bound(out.matrix, 4);
  return out;
}

}  // namespace lozi
