#include "doctest.h"

#include <cmath>
#include <random>

#include "lozi/eps_poly.h"
#include "lozi/fixed_points.h"
#include "lozi/lozi_map.h"

using namespace lozi;

namespace {
const LoziParams kBase{rat(7, 5), rat(2, 5)};
}

TEST_SUITE("piecewise_affine") {
  TEST_CASE("forward and inverse map") {
    CHECK(lozi_apply(kBase, {0, 0}) == Point2{1, 0});
    CHECK(lozi_apply(kBase, {rat(1, 2), rat(1, 2)}) == Point2{rat(1, 2), rat(1, 2)});
    CHECK(lozi_apply(kBase, {rat(-5, 4), rat(-5, 4)}) == Point2{rat(-5, 4), rat(-5, 4)});
    CHECK(lozi_inverse(kBase, {1, 0}) == Point2{0, 0});
    CHECK_THROWS_AS(lozi_inverse({rat(7, 5), Rational(0)}, {1, 0}), std::domain_error);
  }

  TEST_CASE("inverse roundtrip on random rational points") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<long> num(-300, 300), den(1, 61);
    for (int i = 0; i < 1000; ++i) {
      const Point2 q{rat(num(rng), den(rng)), rat(num(rng), den(rng))};
      REQUIRE(lozi_inverse(kBase, lozi_apply(kBase, q)) == q);
    }
  }

  TEST_CASE("itinerary encoding") {
    CHECK(SignItinerary::from_index(0b0101, 4).str() == "+-+-");
    CHECK(SignItinerary::parse("+−").str() == "+-");
    CHECK_THROWS_AS(SignItinerary::parse("+x"), std::invalid_argument);
  }

  TEST_CASE("single-step branch") {
    const AffineBranch br = compose_branch(kBase, SignItinerary::parse("+"));
    CHECK(br.map.linear == Mat2{rat(-7, 5), rat(2, 5), 1, 0});
    CHECK(br.map.offset == Point2{1, 0});
  }

  TEST_CASE("composed branches agree with iteration and scale area by b^n") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<long> num(-200, 200);
    for (unsigned idx = 0; idx < 16; ++idx) {
      const AffineBranch br = compose_branch(kBase, SignItinerary::from_index(idx, 4));
      CHECK(br.map.linear.det().abs() == pow(kBase.b, 4));
      for (int i = 0; i < 200; ++i) {
        const Point2 q{rat(num(rng), 97), rat(num(rng), 89)};
        if (branch_contains(br, q)) CHECK(br.map.apply(q) == lozi_iterate(kBase, q, 4));
      }
    }
  }

  TEST_CASE("composed fixed-line equations") {
    // signs + - + -: both rows of (I - M) p = c are multiples of 1.624 x - 1.624 y = 1.96
    const AffineBranch br = compose_branch(kBase, SignItinerary::parse("+-+-"));
    const Mat2& m = br.map.linear;
    const Point2& c = br.map.offset;
    const Rational k = rat(1624, 1000), r = rat(196, 100);
    CHECK((Rational(1) - m.m11) * r == c.x * k);
    CHECK(-m.m12 * r == -c.x * k);
    CHECK(-m.m21 * r == c.y * k);
    CHECK((Rational(1) - m.m22) * r == -c.y * k);
  }

  TEST_CASE("branch membership uses the half-open convention") {
    // domain numbering: d - 1 = 8[B<0] + 4[C<0] + 2[x<0] + [A<0] over signs of (x, C, B, A)
    const AffineBranch d1 = compose_branch(kBase, SignItinerary::parse("++++"));
    const AffineBranch d4 = compose_branch(kBase, SignItinerary::parse("-++-"));
    const AffineBranch d5 = compose_branch(kBase, SignItinerary::parse("+-++"));
    CHECK(branch_contains(d1, {rat(1, 2), rat(1, 2)}));
    CHECK_FALSE(branch_contains(d4, {rat(-3, 4), rat(-7, 4)}));
    CHECK_FALSE(branch_contains(d5, {rat(490, 261), rat(175, 261)}));
    CHECK(branch_contains(compose_branch(kBase, SignItinerary::parse("+")), {0, 3}));
    CHECK_FALSE(branch_contains(compose_branch(kBase, SignItinerary::parse("-")), {0, 3}));
  }

  TEST_CASE("saddle data") {
    const EigenData p1 = saddle_data(kBase, Sign::NonNeg);
    CHECK(p1.fixed_point == Point2{rat(1, 2), rat(1, 2)});
    CHECK(p1.lambda_stable == doctest::Approx((-7 + std::sqrt(89.0)) / 10).epsilon(1e-12));
    const EigenData p2 = saddle_data(kBase, Sign::Neg);
    CHECK(p2.fixed_point == Point2{rat(-5, 4), rat(-5, 4)});
    CHECK(std::abs(p2.lambda_unstable) == doctest::Approx((7 + std::sqrt(89.0)) / 10).epsilon(1e-12));
    for (const EigenData& e : {p1, p2}) {
      CHECK(std::abs(e.lambda_stable * e.lambda_unstable + 0.4) < 1e-12);
      // ||J v - lambda v|| for v = (lambda, 1) on the branch with |x| = sign * x
      const double s = e.fixed_point.x.sign() >= 0 ? 1 : -1;
      for (const auto& [lam, v] : {std::pair{e.lambda_stable, e.v_stable}, std::pair{e.lambda_unstable, e.v_unstable}}) {
        const double jx = -1.4 * s * v[0] + 0.4 * v[1], jy = v[0];
        CHECK(std::hypot(jx - lam * v[0], jy - lam * v[1]) < 1e-12);
      }
    }
  }
}

TEST_SUITE("eps_poly") {
  TEST_CASE("absolute value follows the lowest nonzero coefficient") {
    CHECK(eps_abs(EpsPoly({Rational(0), Rational(-2), Rational(5)})) == EpsPoly({Rational(0), Rational(2), Rational(-5)}));
    const EpsPoly p = EpsPoly::linear(rat(15, 29), rat(-1, 2));
    CHECK(eps_abs(p) == p);
    CHECK(eps_abs(EpsPoly()).is_zero());
  }

  TEST_CASE("hidden sign is indeterminate") {
    const EpsPoly hidden({Rational(0), Rational(0), Rational(0), Rational(1)});
    CHECK(hidden.truncated());
    CHECK_THROWS_AS(eps_abs(hidden), IndeterminateSign);
  }

  TEST_CASE("products truncate at the degree cap") {
    const EpsPoly e = EpsPoly::linear(0, 1);
    const EpsPoly e2 = e * e;
    CHECK(e2[2] == Rational(1));
    CHECK_FALSE(e2.truncated());
    CHECK((e2 * e).truncated());
  }

  TEST_CASE("constant evaluation reproduces the period-4 orbit of F2") {
    const EpsPoly a = EpsPoly::constant(rat(7, 5)), b = EpsPoly::constant(rat(2, 5));
    EpsPoint pt{EpsPoly::constant(0), EpsPoly::constant(rat(15, 29))};
    for (int i = 0; i < 4; ++i) pt = lozi_apply_eps(a, b, pt);
    CHECK(pt.eval(0) == Point2{0, rat(15, 29)});
  }
}

TEST_SUITE("fixed_points") {
  using Kind = BranchSolution::Kind;

  TEST_CASE("period one") {
    const FixedPointSet s = enumerate_fixed_points(kBase, 1);
    REQUIRE(s.points.size() == 2);
    CHECK(s.points[0].point == Point2{rat(-5, 4), rat(-5, 4)});
    CHECK(s.points[1].point == Point2{rat(1, 2), rat(1, 2)});
    CHECK(s.segments.empty());
  }

  TEST_CASE("period four on the segment") {
    const FixedPointSet s = enumerate_fixed_points(kBase, 4);
    REQUIRE(s.points.size() == 2);
    REQUIRE(s.segments.size() == 2);
    CHECK(s.segments[0].from == Point2{rat(-20, 29), rat(35, 29)});
    CHECK(s.segments[0].to == Point2{0, rat(15, 29)});
    CHECK(s.segments[1].from == Point2{rat(15, 29), rat(-20, 29)});
    CHECK(s.segments[1].to == Point2{rat(35, 29), 0});
    for (const auto& seg : s.segments) {
      CHECK(lozi_iterate(kBase, seg.from, 4) == seg.from);
      CHECK(lozi_iterate(kBase, seg.to, 4) == seg.to);
      const Point2 mid = rat(1, 2) * (seg.from + seg.to);
      CHECK(lozi_iterate(kBase, mid, 4) == mid);
    }
    for (const auto& pt : s.points) CHECK(lozi_iterate(kBase, pt.point, 4) == pt.point);
  }

  TEST_CASE("per-branch outcomes") {
    CHECK(solve_branch_fixed(compose_branch(kBase, SignItinerary::parse("++++"))).point ==
          Point2{rat(1, 2), rat(1, 2)});
    const BranchSolution d6 = solve_branch_fixed(compose_branch(kBase, SignItinerary::parse("+-+-")));
    REQUIRE(d6.kind == Kind::Segment);
    for (const Point2& e : {d6.segment->first, d6.segment->second}) CHECK(e.y == e.x - rat(35, 29));
    // fixed point of the affine branch with signs (+, +, -, -) has x0 >= 0 and fails a later step
    const BranchSolution d12 = solve_branch_fixed(compose_branch(kBase, SignItinerary::parse("++--")));
    CHECK(d12.kind == Kind::Empty);
    CHECK(d12.candidate);
    CHECK_FALSE(d12.violated.empty());
  }

  TEST_CASE("segments disappear to the right of the parameter segment") {
    const FixedPointSet s = enumerate_fixed_points({rat(7, 5) + rat(1, 1000), rat(2, 5)}, 4);
    CHECK(s.segments.empty());
    CHECK_FALSE(s.points.empty());
  }

  TEST_CASE("budget and degenerate input") {
    CHECK_THROWS_AS(enumerate_fixed_points(kBase, 13), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_fixed_points(kBase, 0), std::invalid_argument);
    // b = 0 is allowed: the map is still piecewise affine
    CHECK_NOTHROW(enumerate_fixed_points({Rational(2), Rational(0)}, 3));
  }

  TEST_CASE("f2 point") {
    CHECK(f2_point(kBase) == Point2{0, rat(15, 29)});
    CHECK(f2_point({rat(7, 5), Rational(1)}) == Point2{0, 0});
    // direct evaluation of (1 - b^2) / (a (1 + b^2)) at a = 141/100, b = 41/100
    CHECK(f2_point({rat(141, 100), rat(41, 100)}).y == rat(277300, 549007));
    CHECK_THROWS_AS(f2_point({Rational(0), rat(1, 2)}), std::domain_error);
  }
}
