#include "doctest.h"

#include <cmath>
#include <limits>
#include <set>

#include "lozi/simulation.h"

using namespace lozi;

namespace {

const LoziParams kBase{rat(7, 5), rat(2, 5)};

double distance_to_polyline(PointF q, const PolylineF64& line) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < line.points.size(); ++i)
    best = std::min(best, distance_to_segment(q, line.points[i - 1], line.points[i]));
  return best;
}

}  // namespace

TEST_SUITE("simulation") {
  TEST_CASE("float map and inverse") {
    const MapF f = MapF::from(kBase);
    const PointF q{0.3, -0.7};
    const PointF r = f.inverse(f.apply(q));
    CHECK(r.x == doctest::Approx(q.x).epsilon(1e-14));
    CHECK(r.y == doctest::Approx(q.y).epsilon(1e-14));
    CHECK(f.iterate({0.5, 0.5}, 10).x == doctest::Approx(0.5));
  }

  TEST_CASE("segment distance") {
    CHECK(distance_to_segment({0, 1}, {-1, 0}, {1, 0}) == doctest::Approx(1.0));
    CHECK(distance_to_segment({2, 0}, {-1, 0}, {1, 0}) == doctest::Approx(1.0));
  }

  TEST_CASE("unstable branches") {
    const PolylineF64 left = trace_unstable(kBase, Side::Left, 5.0, 1e-3);
    CHECK(left.role == PolylineRole::UnstableLeft);
    CHECK(left.length() >= 5.0);
    CHECK(left.points.front().x == doctest::Approx(0.5).epsilon(1e-5));
    for (std::size_t i = 1; i < left.points.size(); ++i)
      CHECK(std::hypot(left.points[i].x - left.points[i - 1].x, left.points[i].y - left.points[i - 1].y) <= 1e-3);
    const PolylineF64 right = trace_unstable(kBase, Side::Right, 5.0, 1e-3);
    CHECK(right.role == PolylineRole::UnstableRight);
  }

  TEST_CASE("the unstable branch is forward invariant") {
    const PolylineF64 left = trace_unstable(kBase, Side::Left, 20.0, 1e-3);
    const MapF f = MapF::from(kBase);
    const std::size_t head = left.points.size() / 20;
    for (std::size_t i = 0; i < head; i += std::max<std::size_t>(1, head / 100))
      CHECK(distance_to_polyline(f.iterate(left.points[i], 4), left) < 2e-3);
  }

  TEST_CASE("first crossing of y = 0 on the right branch") {
    const auto z = first_y_zero_crossing(kBase, Side::Right, 20.0, 1e-3);
    REQUIRE(z);
    CHECK(std::abs(z->x - (17 + std::sqrt(89.0)) / 20) < 1e-6);
    CHECK(std::abs(z->y) < 1e-9);
  }

  TEST_CASE("critical lines") {
    const auto one = critical_line(kBase, 1);
    REQUIRE(one.size() == 1);
    for (const auto& q : one[0].points) CHECK(q.x == 0.0);

    const auto lines = critical_line(kBase, 3);
    std::set<unsigned> levels;
    for (const auto& l : lines) levels.insert(l.level);
    CHECK(levels == std::set<unsigned>{0, 1, 2});
    const MapF f = MapF::from(kBase);
    for (const auto& l : lines) {
      CHECK(l.role == PolylineRole::CriticalLine);
      for (const auto& q : l.points) CHECK(std::abs(f.iterate(q, l.level).x) < 1e-9);
    }
    CHECK_THROWS_AS(critical_line(kBase, 0), std::invalid_argument);
    CHECK_THROWS_AS(critical_line(kBase, 9), std::invalid_argument);
  }

  TEST_CASE("images of broken lines keep their breakpoints") {
    const auto lines = critical_line(kBase, 2);
    const MapF f = MapF::from(kBase);
    for (const auto& l : lines) {
      const PolylineF64 img = image_polyline(kBase, l, 2);
      CHECK(img.points.size() >= l.points.size());
      for (const auto& q : l.points) {
        const PointF r = f.iterate(q, 2);
        CHECK(distance_to_polyline(r, img) < 1e-9);
      }
    }
  }

  TEST_CASE("greedy separated counts shrink as eps grows") {
    EntropyEstimateOptions opt;
    opt.grid_x = 4000;
    const OrbitSample sample = orbit_sample({rat(3, 2), Rational(0)}, opt);
    REQUIRE(sample.size() > 0);
    for (unsigned n : {1u, 6u, 12u}) {
      for (double eps : {0.05, 0.1, 0.2, 0.4}) CHECK(greedy_separated_count(sample, n, 2 * eps) <= greedy_separated_count(sample, n, eps));
      CHECK(greedy_separated_count(sample, n, 0.2) <= greedy_separated_count(sample, n + 1, 0.2));
    }
  }

  TEST_CASE("entropy estimates are labelled and deterministic") {
    EntropyEstimateOptions opt;
    opt.grid_x = 20000;
    const EntropyEstimate a = estimate_entropy({Rational(2), Rational(0)}, opt);
    const EntropyEstimate b = estimate_entropy({Rational(2), Rational(0)}, opt);
    CHECK(a.tag == "numerical evidence");
    CHECK(a.estimate == b.estimate);
    CHECK(a.counts == b.counts);
    CHECK(a.estimate >= 0.0);
  }
}
