#include "doctest.h"

#include "lozi/fixed_points.h"
#include "lozi/perturbation.h"
#include "lozi/trapping.h"

using namespace lozi;

namespace {

const LoziParams kBase{rat(7, 5), rat(2, 5)};

ConvexPolygon square(const Rational& x0, const Rational& y0, const Rational& side) {
  return ConvexPolygon::make({{x0, y0}, {x0 + side, y0}, {x0 + side, y0 + side}, {x0, y0 + side}});
}

Rational overlap(const ConvexPolygon& p, const ConvexPolygon& q) {
  const auto i = intersect(p, q);
  return i ? polygon_area(*i) : Rational(0);
}

}  // namespace

TEST_SUITE("trapping") {
  TEST_CASE("splitting by itinerary") {
    const auto one = split_by_itinerary(kBase, 1, square(1, 0, 1));
    REQUIRE(one.size() == 1);
    CHECK(one[0].itinerary.str() == "+");
    const auto two = split_by_itinerary(kBase, 1, square(-1, -1, 2));
    CHECK(two.size() == 2);
  }

  TEST_CASE("fragments partition the source") {
    const TrappingRegion r = trapping_region_for(kBase);
    for (const ConvexPolygon& src : {r.hexagon, square(-1, -1, 2)}) {
      const auto frags = split_by_itinerary(kBase, 4, src);
      Rational total(0);
      for (std::size_t i = 0; i < frags.size(); ++i) {
        total += polygon_area(frags[i].source);
        for (std::size_t j = i + 1; j < frags.size(); ++j) CHECK(overlap(frags[i].source, frags[j].source) == Rational(0));
        // the fragment's affine map is L^4 on its interior: check at the centroid
        Point2 c{0, 0};
        for (const auto& v : frags[i].source.vertices()) c = c + v;
        c = Rational(1, static_cast<long>(frags[i].source.size())) * c;
        CHECK(frags[i].map.apply(c) == lozi_iterate(kBase, c, 4));
      }
      CHECK(total == polygon_area(src));
    }
  }

  TEST_CASE("piecewise images obey the area law") {
    const ConvexPolygon src = square(-1, -1, 2);
    for (unsigned n : {1u, 2u, 4u}) {
      const PiecewiseImage img = image_piecewise(kBase, n, src);
      CHECK(img.total_area() == pow(kBase.b, n) * polygon_area(src));
    }
    CHECK_THROWS_AS(image_piecewise({rat(7, 5), Rational(0)}, 1, src), std::domain_error);
  }

  TEST_CASE("fragment budget") {
    CHECK_THROWS_AS(split_by_itinerary(kBase, 8, square(-3, -3, 6), 4), std::runtime_error);
  }

  TEST_CASE("the hexagon traps the fixed segment") {
    const TrappingRegion r = trapping_region_for(kBase);
    CHECK(r.f2 == Point2{0, rat(15, 29)});
    CHECK(r.f1 == Point2{rat(-20, 29), rat(35, 29)});
    CHECK(r.hexagon.size() == 6);
    CHECK(r.r1 == Point2{rat(-20, 29), rat(35, 29) + rat(1, 5)});
    CHECK(r.r2 == Point2{rat(-20, 29) + rat(1, 10), rat(35, 29) - rat(1, 4)});
    CHECK(r.r3 == Point2{0, rat(15, 29) - rat(1, 4)});
    CHECK(r.r4 == Point2{rat(-1, 5), rat(15, 29) + rat(1, 2)});
    CHECK(r.stable_slope == rat(-5, 2));
    const TrappingCertificate c = verify_trapping(kBase, 4, r.hexagon, 2, std::make_pair(r.f1, r.f2));
    CHECK(c.passed);
    REQUIRE(c.steps.size() == 2);
    for (const auto& s : c.steps) {
      CHECK(s.area_law);
      CHECK(s.contained);
      CHECK(s.area == s.expected_area);
    }
    CHECK(c.contracting == std::optional<bool>(true));
    CHECK(*c.steps[1].max_distance_to_segment < *c.steps[0].max_distance_to_segment);
  }

  TEST_CASE("the first image of a quarter of the hexagon stays inside") {
    const TrappingRegion r = trapping_region_for(kBase);
    const ConvexPolygon quad = ConvexPolygon::make({r.r1, r.f1, r.f2, r.r4});
    for (const auto& piece : image_piecewise(kBase, 4, quad).pieces) CHECK(contains_polygon(r.hexagon, piece.image));
  }

  TEST_CASE("perturbed hexagons") {
    for (const Rational& e2 : {rat(1, 1000), rat(-1, 1000), rat(1, 100)}) {
      const LoziParams p = family_params(e2);
      const TrappingRegion r = trapping_region_for(p);
      CHECK(r.f2 == f2_point(p));
      CHECK(verify_trapping(p, 4, r.hexagon, 2).passed);
    }
    CHECK_THROWS_AS(trapping_region_for({rat(7, 5), rat(1, 2)}), std::invalid_argument);
  }

  TEST_CASE("the trap breaks to the right of the parameter segment") {
    const TrappingRegion r = trapping_region_for(kBase);
    const TrappingCertificate c = verify_trapping({rat(7, 5) + rat(1, 100), rat(2, 5)}, 4, r.hexagon, 1);
    CHECK_FALSE(c.passed);
    REQUIRE(c.first_failure);
    CHECK(c.first_failure->step == 1);
    CHECK_FALSE(contains_polygon(r.hexagon, c.first_failure->image));
  }

  TEST_CASE("a thin sleeve around the segment is not invariant") {
    const Point2 f1{rat(-20, 29), rat(35, 29)}, f2{0, rat(15, 29)};
    const Rational d = rat(1, 100000);
    const ConvexPolygon sleeve = ConvexPolygon::make({f1 + Point2{-d, 0}, f2 + Point2{-d, 0}, f2 + Point2{0, d}, f1 + Point2{0, d}});
    const TrappingCertificate c = verify_trapping(kBase, 4, sleeve, 1);
    CHECK_FALSE(c.passed);
    CHECK(c.first_failure);
  }
}
