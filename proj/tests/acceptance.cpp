// Acceptance checks, one line per criterion. Run with no argument for all
// criteria or with a criterion number for one. Exit status is nonzero when any
// selected criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "lozi/covering.h"
#include "lozi/fixed_points.h"
#include "lozi/perturbation.h"
#include "lozi/simulation.h"
#include "lozi/trapping.h"

using namespace lozi;

namespace {

struct Result {
  bool pass = true;
  std::vector<std::string> notes;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back(what);
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const LoziParams kBase{rat(7, 5), rat(2, 5)};

// Domain number d selects the signs of (x, C, B, A) = (x0, x1, x2, x3):
// d - 1 = 8[B<0] + 4[C<0] + 2[x<0] + [A<0].
SignItinerary domain_itinerary(int d) {
  const int k = d - 1;
  auto s = [](bool neg) { return neg ? Sign::Neg : Sign::NonNeg; };
  return SignItinerary({s(k & 2), s(k & 4), s(k & 8), s(k & 1)});
}

struct RejectedCandidate {
  int domain;
  double x, y;            // candidate as printed
  std::optional<Point2> exact;
  std::size_t step;       // quantity said to have the wrong sign: 0 = x, 1 = C, 2 = B, 3 = A
};

Result criterion1() {
  Result r;
  const auto t0 = std::chrono::steady_clock::now();
  const FixedPointSet s = enumerate_fixed_points(kBase, 4);
  const double elapsed = seconds_since(t0);

  r.check(s.points.size() == 2 && s.points[0].point == Point2{rat(-5, 4), rat(-5, 4)} &&
              s.points[1].point == Point2{rat(1, 2), rat(1, 2)},
          "isolated fixed points differ");
  r.check(s.segments.size() == 2 && s.segments[0].from == Point2{rat(-20, 29), rat(35, 29)} &&
              s.segments[0].to == Point2{Rational(0), rat(15, 29)} &&
              s.segments[1].from == Point2{rat(15, 29), rat(-20, 29)} &&
              s.segments[1].to == Point2{rat(35, 29), Rational(0)},
          "fixed segments differ");
  r.check(s.whole_domains.empty() && s.unbounded.empty(), "unexpected whole-domain or unbounded branch");

  const std::vector<RejectedCandidate> table = {
      {4, -0.75, -1.75, Point2{rat(-3, 4), rat(-7, 4)}, 1},
      {5, 490.0 / 261, 175.0 / 261, Point2{rat(490, 261), rat(175, 261)}, 2},
      {7, 35.0 / 29, 140.0 / 87, Point2{rat(35, 29), rat(140, 87)}, 0},
      {8, 0.3485, -1.1948, std::nullopt, 0},
      {10, -0.75, -0.75, Point2{rat(-3, 4), rat(-3, 4)}, 0},
      {12, 3.8813, -3.3641, std::nullopt, 0},
      {13, 1.75, -0.75, Point2{rat(7, 4), rat(-3, 4)}, 3},
      {14, 1.7241, 0.5172, std::nullopt, 3},
      {15, -35.0 / 29, 50.0 / 29, Point2{rat(-35, 29), rat(50, 29)}, 1},
  };
  const char* names[] = {"x", "C", "B", "A"};
  for (const auto& row : table) {
    const BranchSolution sol = solve_branch_fixed(compose_branch(kBase, domain_itinerary(row.domain)));
    const std::string tag = "domain " + std::to_string(row.domain) + ": ";
    if (!sol.candidate) {
      r.check(false, tag + "no unique candidate");
      continue;
    }
    const Point2& c = *sol.candidate;
    if (row.exact) {
      r.check(c == *row.exact, tag + "candidate " + c.x.str() + "," + c.y.str() + " differs from the printed one");
    } else {
      r.check(std::abs(c.x.to_double() - row.x) < 1e-4 && std::abs(c.y.to_double() - row.y) < 1e-4,
              tag + "candidate (" + std::to_string(c.x.to_double()) + ", " + std::to_string(c.y.to_double()) +
                  ") differs from the printed approximation");
    }
    if (sol.kind != BranchSolution::Kind::Empty) {
      r.check(false, tag + "candidate is accepted");
      continue;
    }
    bool stated = false;
    std::string found;
    for (auto v : sol.violated) {
      stated = stated || v == row.step;
      found += names[v];
    }
    r.check(stated, tag + "rejected by " + found + ", not by " + names[row.step]);
  }
  r.check(elapsed < 1.0, "runtime " + std::to_string(elapsed) + " s");
  return r;
}

Result criterion2() {
  Result r;
  const auto t0 = std::chrono::steady_clock::now();
  const TransitionMatrix expected{2, {{1, 1}, {1, 0}}};
  for (const Rational& eps1 : {rat(1, 1000), rat(1, 10000)}) {
    for (const Rational& eps2 : {Rational(0), rat(1, 1000), rat(-1, 1000)}) {
      const FamilyCovering f = covering_family_check(eps1, eps2);
      const std::string tag = "eps1=" + eps1.str() + " eps2=" + eps2.str() + ": ";
      using St = CoverVerdict::Status;
      r.check(f.verdicts[0][0].status == St::Covered, tag + "(N1,N1) " + to_string(f.verdicts[0][0].status));
      r.check(f.verdicts[0][1].status == St::Covered, tag + "(N1,N2) " + to_string(f.verdicts[0][1].status));
      r.check(f.verdicts[1][0].status == St::Covered, tag + "(N2,N1) " + to_string(f.verdicts[1][0].status));
      r.check(f.verdicts[1][1].status == St::NotCovered, tag + "(N2,N2) " + to_string(f.verdicts[1][1].status));
      r.check(f.matrix == expected, tag + "matrix differs");
      r.check(f.bound.bound > 0.1203 && f.bound.bound < 0.12031, tag + "bound " + std::to_string(f.bound.bound));
    }
  }
  const double elapsed = seconds_since(t0);
  r.check(elapsed < 5.0, "runtime " + std::to_string(elapsed) + " s");
  return r;
}

Result criterion3() {
  Result r;
  const auto t0 = std::chrono::steady_clock::now();
  struct Row {
    char id;
    Rational x, y;
    const char* x2;
    const char* y2;
  };
  const Row rows[] = {
      {'A', rat(30476, 18125), rat(-6363, 3625), "1.68", "-1.75"},
      {'B', rat(6188, 3625), rat(-1319, 725), "1.70", "-1.81"},
      {'C', rat(-4769, 1450), rat(847, 290), "-3.28", "2.92"},
      {'D', rat(-120153, 36250), rat(21639, 7250), "-3.31", "2.98"},
      {'E', rat(-9283, 18125), rat(1554, 3625), "-0.51", "0.42"},
      {'F', rat(-23209, 54375), rat(3792, 10875), "-0.42", "0.34"},
      {'G', rat(36363, 18125), rat(-7494, 3625), "2.00", "-2.06"},
      {'H', rat(113584, 54375), rat(-22917, 10875), "2.08", "-2.10"},
  };
  for (const auto& row : rows) {
    const CoefficientPair c = vertex_expansion(Rational(0), row.id);
    const std::string tag = std::string(1, row.id) + ": ";
    r.check(c.constant == Point2{Rational(0), rat(15, 29)}, tag + "constant term differs");
    r.check(c.x_lin == row.x && c.y_lin == row.y,
            tag + "computed (" + c.x_lin.str() + ", " + c.y_lin.str() + ") vs printed (" + row.x.str() + ", " +
                row.y.str() + ")");
    const std::string x2 = truncate_decimal(c.x_lin, 2), y2 = truncate_decimal(c.y_lin, 2);
    r.check(x2 == row.x2 && y2 == row.y2, tag + "rounded (" + x2 + ", " + y2 + ") vs printed (" + row.x2 + ", " +
                                             row.y2 + ")");
  }
  const double elapsed = seconds_since(t0);
  r.check(elapsed < 1.0, "runtime " + std::to_string(elapsed) + " s");
  return r;
}

Result criterion4() {
  Result r;
  const auto t0 = std::chrono::steady_clock::now();
  for (const Rational& eps2 : {Rational(0), rat(1, 1000), rat(-1, 1000)}) {
    const LoziParams p = family_params(eps2);
    const TrappingRegion region = trapping_region_for(p);
    const TrappingCertificate c = verify_trapping(p, 4, region.hexagon, 2, std::make_pair(region.f1, region.f2));
    const std::string tag = "eps2=" + eps2.str() + ": ";
    r.check(c.passed, tag + "trapping fails");
    r.check(c.steps.size() == 2, tag + "expected two steps");
    const Rational area = polygon_area(region.hexagon);
    for (const auto& s : c.steps) {
      Rational sum(0);
      for (const auto& piece : s.pieces) sum += polygon_area(piece.image);
      const Rational expected = pow(p.b.abs(), 4 * s.index) * area;
      r.check(sum == expected && s.area_law, tag + "area law fails at step " + std::to_string(s.index));
    }
  }
  const double elapsed = seconds_since(t0);
  r.check(elapsed < 2.0, "runtime " + std::to_string(elapsed) + " s");
  return r;
}

Result criterion5() {
  Result r;
  const CoefficientPair c = vertex_expansion(Rational(0), 'A');
  for (const Rational& eps1 : {rat(1, 1000), rat(1, 10000)}) {
    const LoziParams p{kBase.a + eps1, kBase.b};
    const Point2 start = entropy_box_vertex('A', eps1, rat(15, 29));
    const Point2 exact = lozi_iterate(p, start, 4);
    const Rational dx = (exact.x - (c.constant.x + c.x_lin * eps1)).abs();
    const Rational dy = (exact.y - (c.constant.y + c.y_lin * eps1)).abs();
    const Rational limit = Rational(100) * eps1 * eps1;
    r.check(dx <= limit && dy <= limit, "eps1=" + eps1.str() + ": remainder (" + std::to_string(dx.to_double()) +
                                            ", " + std::to_string(dy.to_double()) + ")");
  }
  return r;
}

// Image of each fiber joining the two vertical edges of the source must run
// from beyond one vertical line of the target to beyond the other and stay in
// the target in between.
bool fiber_crosses(const LoziParams& p, const MarkedQuadrilateral& src, const MarkedQuadrilateral& dst,
                   const Rational& t) {
  const auto& v = src.vertices();
  const Point2 from = v[0] + t * (v[1] - v[0]);
  const Point2 to = v[3] + t * (v[2] - v[3]);
  const Point2 a = lozi_iterate(p, from, 4), b = lozi_iterate(p, to, 4);
  const HalfPlane s0 = dst.strip_side(0), s1 = dst.strip_side(1);
  const bool ends = (s0.eval(a) < 0 && s1.eval(b) < 0) || (s1.eval(a) < 0 && s0.eval(b) < 0);
  if (!ends) return false;
  // the parameters where the image segment meets the two vertical lines
  auto hit = [&](const HalfPlane& h) {
    const Rational ea = h.eval(a), eb = h.eval(b);
    const Rational u = ea / (ea - eb);
    return a + u * (b - a);
  };
  const ConvexPolygon target = dst.polygon();
  return target.contains_point(hit(s0)) && target.contains_point(hit(s1));
}

Result criterion6() {
  Result r;
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<long> num(-5000, 5000), den(1, 997);
  for (const LoziParams& p : {kBase, LoziParams{rat(17, 10), rat(-1, 2)}}) {
    for (int i = 0; i < 1000; ++i) {
      const Point2 q{rat(num(rng), den(rng)), rat(num(rng), den(rng))};
      if (!(lozi_inverse(p, lozi_apply(p, q)) == q) || !(lozi_apply(p, lozi_inverse(p, q)) == q)) {
        r.check(false, "inverse roundtrip fails");
        break;
      }
    }
  }
  for (unsigned idx = 0; idx < 16; ++idx) {
    const AffineBranch br = compose_branch(kBase, SignItinerary::from_index(idx, 4));
    r.check(br.map.linear.det().abs() == pow(kBase.b, 4), "det mismatch on branch " + br.itinerary.str());
  }
  for (Sign side : {Sign::NonNeg, Sign::Neg}) {
    const EigenData e = saddle_data(kBase, side);
    r.check(std::abs(e.lambda_stable * e.lambda_unstable + kBase.b.to_double()) <= 1e-12, "eigenvalue product");
  }
  for (const Rational& eps1 : {rat(1, 1000), rat(1, 10000)}) {
    for (const Rational& eps2 : {Rational(0), rat(1, 1000), rat(-1, 1000)}) {
      const FamilyCovering f = covering_family_check(eps1, eps2);
      const auto boxes = entropy_boxes(eps1, f.height);
      const MarkedQuadrilateral* box[] = {&boxes.first, &boxes.second};
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
          if (f.verdicts[i][j].status != CoverVerdict::Status::Covered) continue;
          for (int k = 0; k < 50; ++k)
            if (!fiber_crosses(f.params, *box[i], *box[j], rat(2 * k + 1, 100))) {
              r.check(false, "fiber " + std::to_string(k) + " of (N" + std::to_string(i + 1) + ",N" +
                                 std::to_string(j + 1) + ") at eps1=" + eps1.str() + " eps2=" + eps2.str());
              break;
            }
        }
    }
  }
  return r;
}

Result criterion7() {
  Result r;
  const auto t0 = std::chrono::steady_clock::now();
  for (const auto& [a, name] : {std::pair{rat(3, 2), "a=1.5"}, std::pair{Rational(2), "a=2"}}) {
    const EntropyEstimate e = estimate_entropy({a, Rational(0)});
    const double target = std::min(std::log(a.to_double()), std::log(2.0));
    std::ostringstream os;
    os << name << " b=0: estimate " << e.estimate << " vs " << target;
    r.check(std::abs(e.estimate - target) <= 0.1, os.str());
  }
  const EntropyEstimate e = estimate_entropy(kBase);
  std::ostringstream os;
  os << "(7/5,2/5): estimate " << e.estimate;
  r.check(e.estimate <= 0.1, os.str());
  const double elapsed = seconds_since(t0);
  r.check(elapsed < 60.0, "runtime " + std::to_string(elapsed) + " s");
  return r;
}

Result criterion8() {
  Result r;
  const PolylineF64 left = trace_unstable(kBase, Side::Left, 20.0, 1e-3);
  const PointF l1a{-20.0 / 29, 35.0 / 29}, l1b{0, 15.0 / 29};
  std::vector<double> cum{0};
  for (std::size_t i = 1; i < left.points.size(); ++i)
    cum.push_back(cum.back() + std::hypot(left.points[i].x - left.points[i - 1].x,
                                          left.points[i].y - left.points[i - 1].y));
  double worst = 0;
  for (std::size_t i = 0; i < left.points.size(); ++i)
    if (cum[i] >= 0.9 * cum.back()) worst = std::max(worst, distance_to_segment(left.points[i], l1a, l1b));
  r.check(!left.escaped && worst <= 1e-3, "left terminal distance " + std::to_string(worst));

  const auto z = first_y_zero_crossing(kBase, Side::Right, 20.0, 1e-3);
  const double zx = (17 + std::sqrt(89.0)) / 20;
  if (!z) {
    r.check(false, "no y = 0 crossing on the right branch");
  } else {
    const double err = std::hypot(z->x - zx, z->y);
    std::ostringstream os;
    os << "right crossing error " << err;
    r.check(err <= 1e-6, os.str());
  }
  return r;
}

const std::vector<std::pair<const char*, std::function<Result()>>> kCriteria = {
    {"fixed points of L^4 and rejected candidates", criterion1},
    {"entropy bound from covering relations", criterion2},
    {"first-order coefficient table", criterion3},
    {"trapping region and area law", criterion4},
    {"quadratic remainder of vertex A", criterion5},
    {"structural invariants", criterion6},
    {"entropy estimator sanity", criterion7},
    {"unstable manifold evidence", criterion8},
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> selected;
  if (argc > 1) {
    selected.push_back(std::atoi(argv[1]));
    if (selected[0] < 1 || selected[0] > static_cast<int>(kCriteria.size())) {
      std::cerr << "criterion must be 1.." << kCriteria.size() << "\n";
      return 2;
    }
  } else {
    for (int i = 1; i <= static_cast<int>(kCriteria.size()); ++i) selected.push_back(i);
  }
  bool all = true;
  for (int n : selected) {
    const auto& [name, run] = kCriteria[n - 1];
    Result res;
    try {
      res = run();
    } catch (const std::exception& e) {
      res.check(false, std::string("exception: ") + e.what());
    }
    all = all && res.pass;
    std::cout << "criterion " << n << " " << (res.pass ? "PASS" : "FAIL") << ": " << name;
    for (std::size_t i = 0; i < res.notes.size(); ++i) std::cout << (i ? "; " : " | ") << res.notes[i];
    std::cout << std::endl;
  }
  return all ? 0 : 1;
}
