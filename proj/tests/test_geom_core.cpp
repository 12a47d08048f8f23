#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "linecut/error.hpp"
#include "linecut/family.hpp"
#include "linecut/geometry.hpp"
#include "linecut/io.hpp"
#include "linecut/random.hpp"
#include "test_support.hpp"

using namespace linecut;
using linecut::testing::random_family;
using linecut::Rng;

namespace {

Line slope_line(long m, long c) { return Line::from_slope(Scalar(m), Scalar(c)); }

LineFamily three_lines() {
  return {"L", {slope_line(1, 0), slope_line(-1, 2), slope_line(3, -4)}};
}

}  // namespace

TEST(Scalar, ParsesAndFormatsCanonically) {
  EXPECT_EQ(format_scalar(parse_scalar("6/4")), "3/2");
  EXPECT_EQ(format_scalar(parse_scalar("-6/-4")), "3/2");
  EXPECT_EQ(format_scalar(parse_scalar("5")), "5/1");
  EXPECT_EQ(format_scalar(parse_scalar("0/7")), "0/1");
  EXPECT_THROW(parse_scalar("1/0"), ParseError);
  EXPECT_THROW(parse_scalar("x"), ParseError);
  EXPECT_THROW(parse_scalar(""), ParseError);
  EXPECT_EQ(ratio(4, -6), Scalar(-2, 3));
}

TEST(Line, NormalizesSoEqualLociCompareEqual) {
  const Line l1(Scalar(2), Scalar(-2), Scalar(4));
  const Line l2(Scalar(-1), Scalar(1), Scalar(-2));
  EXPECT_TRUE(l1.same_locus(l2));
  EXPECT_EQ(l1.a(), 1);
  const Line horizontal(Scalar(0), Scalar(-3), Scalar(6));
  EXPECT_EQ(horizontal.b(), 1);
  EXPECT_EQ(horizontal.c(), -2);
  EXPECT_THROW(Line(Scalar(0), Scalar(0), Scalar(1)), Error);
}

TEST(IntersectLines, SmallCases) {
  EXPECT_EQ(intersect_lines(slope_line(1, 0), slope_line(-1, 0)), (Point{0, 0}));
  EXPECT_EQ(intersect_lines(slope_line(1, 0), slope_line(3, -4)), (Point{2, 2}));
  EXPECT_THROW(intersect_lines(slope_line(0, 1), slope_line(0, 2)), ParallelLines);
}

TEST(IntersectLines, ExactAndSymmetricOnRandomPairs) {
  Rng rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    const auto f = random_family(rng, 2, "P");
    const Point p = intersect_lines(f.line(0), f.line(1));
    EXPECT_EQ(p, intersect_lines(f.line(1), f.line(0)));
    EXPECT_TRUE(f.line(0).contains(p));
    EXPECT_TRUE(f.line(1).contains(p));
  }
}

TEST(IncidenceSet, ThreeLines) {
  EXPECT_TRUE(incidence_set(LineFamily("one", {slope_line(1, 0)})).empty());
  const auto incs = incidence_set(three_lines());
  ASSERT_EQ(incs.size(), 3U);
  EXPECT_EQ(incs[0].point, (Point{1, 1}));
  EXPECT_EQ(incs[1].point, (Point{2, 2}));
  EXPECT_EQ(incs[2].point, (Point{Scalar(3, 2), Scalar(1, 2)}));
  EXPECT_EQ(incs[2].first, 1);
  EXPECT_EQ(incs[2].second, 2);
}

TEST(IncidenceSet, ParallelPairNamed) {
  const LineFamily f("F", {slope_line(1, 0), slope_line(2, 0), slope_line(1, 5)});
  try {
    incidence_set(f);
    FAIL() << "expected ParallelLines";
  } catch (const ParallelLines& e) {
    EXPECT_EQ(e.first(), 0);
    EXPECT_EQ(e.second(), 2);
  }
}

TEST(IncidenceSet, SizeIsBinomialOnRandomFamilies) {
  Rng rng(11);
  for (int n = 0; n <= 12; ++n) {
    const auto f = random_family(rng, n, "R");
    ASSERT_TRUE(validate_general_position(f).ok);
    EXPECT_EQ(incidence_set(f).size(), static_cast<std::size_t>(n * (n - 1) / 2));
  }
}

TEST(GeneralPosition, ReportsEachViolationKind) {
  EXPECT_TRUE(validate_general_position(three_lines()).ok);

  const auto parallel =
      validate_general_position(LineFamily("p", {slope_line(1, 0), slope_line(1, 1), slope_line(0, 0)}));
  ASSERT_FALSE(parallel.ok);
  EXPECT_EQ(parallel.violations[0].kind, ViolationKind::ParallelPair);
  EXPECT_EQ(parallel.violations[0].ids, (std::vector<int>{0, 1}));

  const auto concurrent =
      validate_general_position(LineFamily("c", {slope_line(1, 0), slope_line(-1, 0), slope_line(0, 0)}));
  ASSERT_FALSE(concurrent.ok);
  EXPECT_EQ(concurrent.violations[0].kind, ViolationKind::ConcurrentTriple);
  EXPECT_EQ(concurrent.violations[0].ids, (std::vector<int>{0, 1, 2}));
}

TEST(GeneralPosition, DetectsCollinearIncidencesOffFamilyLines) {
  // y = x and y = -x meet at (0,0); y = 2x - 4 and y = -2x + 4 meet at (2,0);
  // y = 3x - 12 and y = -3x + 12 meet at (4,0). Three points on y = 0.
  const LineFamily f("col", {slope_line(1, 0), slope_line(-1, 0), slope_line(2, -4),
                             slope_line(-2, 4), slope_line(3, -12), slope_line(-3, 12)});
  const auto report = validate_general_position(f);
  ASSERT_FALSE(report.ok);
  const bool found = std::any_of(report.violations.begin(), report.violations.end(), [](const Violation& v) {
    return v.kind == ViolationKind::CollinearIncidences && v.ids == std::vector<int>{0, 1, 2, 3, 4, 5};
  });
  EXPECT_TRUE(found);
}

TEST(GeneralPosition, CollinearityAgreesWithBruteForce) {
  Rng rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    // Small coefficient ranges make accidental collinearities common.
    std::vector<Line> lines;
    std::set<std::pair<long, long>> used;
    while (lines.size() < 6) {
      const long m = rng.uniform_int(-3, 3);
      const long c = rng.uniform_int(-3, 3);
      bool parallel = false;
      for (const auto& l : lines) parallel |= (*l.slope() == m);
      if (!parallel && used.insert({m, c}).second) lines.push_back(slope_line(m, c));
    }
    const LineFamily f("B", lines);
    const auto incs = incidence_set(f);
    bool concurrent = false;
    bool collinear = false;
    // Points where three lines meet are reported as concurrency and left out
    // of the collinearity condition.
    std::vector<char> multi(incs.size(), 0);
    for (std::size_t i = 0; i < incs.size(); ++i) {
      for (std::size_t j = i + 1; j < incs.size(); ++j) {
        if (incs[i].point == incs[j].point) concurrent = multi[i] = multi[j] = 1;
      }
    }
    for (std::size_t i = 0; i < incs.size(); ++i) {
      for (std::size_t j = i + 1; j < incs.size(); ++j) {
        for (std::size_t k = j + 1; k < incs.size(); ++k) {
          const auto& p = incs[i];
          const auto& q = incs[j];
          const auto& s = incs[k];
          if (multi[i] || multi[j] || multi[k]) continue;
          if (cross(q.point - p.point, s.point - p.point) != 0) continue;
          // Exempt triples lying on a common family line.
          std::set<int> common{p.first, p.second};
          std::set<int> on_all;
          for (int id : common) {
            if (f.line(id).contains(q.point) && f.line(id).contains(s.point)) on_all.insert(id);
          }
          if (on_all.empty()) collinear = true;
        }
      }
    }
    const auto report = validate_general_position(f);
    bool rep_concurrent = false;
    bool rep_collinear = false;
    for (const auto& v : report.violations) {
      rep_concurrent |= v.kind == ViolationKind::ConcurrentTriple;
      rep_collinear |= v.kind == ViolationKind::CollinearIncidences;
    }
    EXPECT_EQ(rep_concurrent, concurrent) << "trial " << trial;
    EXPECT_EQ(rep_collinear, collinear) << "trial " << trial;
  }
}

TEST(RegionContains, BasicCases) {
  EXPECT_TRUE(Region().contains({Scalar(12345), Scalar(-7)}));
  const HalfPlane left = HalfPlane::leq(1, 0, 0);
  EXPECT_FALSE(ConvexRegion::from_halfplane(left).contains({1, 0}));
  EXPECT_TRUE(ConvexRegion::from_halfplane(left).contains({0, 5}));
  const ConvexRegion quadrant{{HalfPlane::leq(-1, 0, 0), HalfPlane::leq(0, -1, 0)}, RegionKind::Wedge};
  EXPECT_TRUE(quadrant.contains({0, 0}));
  EXPECT_FALSE(quadrant.contains({-1, 0}));
}

TEST(RegionContains, MonotoneUnderAddedConstraints) {
  Rng rng(5);
  const auto rnd = [&] { return ratio(rng.uniform_int(-20, 20), rng.uniform_int(1, 5)); };
  for (int trial = 0; trial < 300; ++trial) {
    ConvexRegion r;
    for (int k = 0; k < 3; ++k) {
      Scalar a = rnd();
      Scalar b = rnd();
      if (a == 0 && b == 0) a = 1;
      ConvexRegion bigger = r;
      r.halfplanes.push_back(HalfPlane::leq(a, b, rnd()));
      for (int s = 0; s < 10; ++s) {
        const Point p{rnd(), rnd()};
        if (r.contains(p)) EXPECT_TRUE(bigger.contains(p));
        EXPECT_EQ(FastRegion(Region(r)).contains(p), r.contains(p));
      }
    }
  }
}

TEST(Sector, WedgeHalfPlaneRayAndReflex) {
  const Point o{0, 0};
  const Direction down = Direction::down();
  const Direction left(-1, 0);
  const Direction up(0, 1);
  const Direction right(1, 0);
  // Clockwise from down reaches left first.
  const Region quarter = sector(o, down, left);
  EXPECT_TRUE(quarter.convex());
  EXPECT_TRUE(quarter.contains({-1, -1}));
  EXPECT_FALSE(quarter.contains({1, -1}));
  const Region half = sector(o, down, up);
  EXPECT_TRUE(half.contains({-5, 3}));
  EXPECT_FALSE(half.contains({5, 3}));
  const Region ray = sector(o, down, down);
  EXPECT_TRUE(ray.contains({0, -4}));
  EXPECT_FALSE(ray.contains({0, 4}));
  EXPECT_FALSE(ray.contains({1, -4}));
  const Region reflex = sector(o, down, right);
  EXPECT_FALSE(reflex.convex());
  EXPECT_TRUE(reflex.contains({-1, 1}));
  EXPECT_TRUE(reflex.contains({1, 1}));
  EXPECT_FALSE(reflex.contains({1, -1}));
  EXPECT_THROW(convex_sector(o, down, right), DegenerateWedge);
}

TEST(Frame, MapsDownToNegativeYAndPreservesIncidence) {
  Rng rng(9);
  const Direction u(3, -2);
  const Frame frame(u);
  const Point image = frame.to_frame(u.vec());
  EXPECT_EQ(image.x, 0);
  EXPECT_LT(image.y, 0);
  for (int trial = 0; trial < 50; ++trial) {
    const auto f = random_family(rng, 2, "F");
    const Point p = intersect_lines(f.line(0), f.line(1));
    const Line l0 = frame.to_frame(f.line(0));
    EXPECT_TRUE(l0.contains(frame.to_frame(p)));
    EXPECT_EQ(frame.from_frame(frame.to_frame(p)), p);
    EXPECT_TRUE(frame.from_frame(l0).same_locus(f.line(0)));
    const HalfPlane h(l0, 1);
    const Point q{Scalar(rng.uniform_int(-9, 9)), Scalar(rng.uniform_int(-9, 9))};
    EXPECT_EQ(frame.from_frame(h).contains(q), h.contains(frame.to_frame(q)));
  }
}

TEST(ReferenceDirection, Examples) {
  EXPECT_EQ(choose_reference_direction({}), Direction::down());
  const std::vector<LineFamily> one{LineFamily("A", {slope_line(1, 0), slope_line(-1, 0)})};
  EXPECT_EQ(choose_reference_direction(one), Direction::down());
  // (0,0) from the first two lines and (0,2) from y = 2 +- x: same x.
  const std::vector<LineFamily> two{
      LineFamily("A", {slope_line(1, 0), slope_line(-1, 0)}),
      LineFamily("B", {slope_line(1, 2), slope_line(-1, 2)})};
  const Direction u = choose_reference_direction(two);
  EXPECT_FALSE(u == Direction::down());
  const Scalar k0 = -u.dy() * 0 + u.dx() * 0;
  const Scalar k1 = -u.dy() * 0 + u.dx() * 2;
  EXPECT_NE(k0, k1);
}

TEST(ReferenceDirection, ProjectionsDistinctOnRandomInputs) {
  Rng rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    // Integer slopes and intercepts produce many shared x-coordinates.
    std::vector<Line> lines;
    std::set<long> slopes;
    while (lines.size() < 6) {
      const long m = rng.uniform_int(-6, 6);
      if (slopes.insert(m).second) lines.push_back(slope_line(m, rng.uniform_int(-2, 2)));
    }
    const std::vector<LineFamily> fs{LineFamily("A", lines)};
    const Direction u = choose_reference_direction(fs);
    std::set<Point, bool (*)(const Point&, const Point&)> points(
        [](const Point& p, const Point& q) { return p.x != q.x ? p.x < q.x : p.y < q.y; });
    for (const auto& inc : incidence_set(fs[0])) points.insert(inc.point);
    std::set<Scalar> keys;
    for (const auto& p : points) keys.insert(-u.dy() * p.x + u.dx() * p.y);
    EXPECT_EQ(keys.size(), points.size());
    for (const auto& l : fs[0].lines()) EXPECT_FALSE(u.parallel_to(l));
  }
}

TEST(Perturb, KeepsSlopesAndShiftsInterceptsDistinctly) {
  const LineFamily f("A", {slope_line(1, 0), slope_line(-1, 0), slope_line(0, 0)});
  const auto g = perturb_intercepts(f, Scalar(1, 100), 4);
  EXPECT_TRUE(validate_general_position(g).ok);
  for (int i = 0; i < 3; ++i) {
    EXPECT_TRUE(g.line(i).parallel_to(f.line(i)));
    EXPECT_LE(abs_value(g.line(i).c() - f.line(i).c()), Scalar(1, 100));
  }
  EXPECT_EQ(perturb_intercepts(f, Scalar(1, 100), 4), g);
}

TEST(Json, RoundTripsFamiliesRegionsAndWitnesses) {
  Rng rng(2);
  const auto f = random_family(rng, 7, "A");
  EXPECT_EQ(family_from_json(parse_json(dump(to_json(f)))), f);
  const Region wedge = sector({Scalar(1, 3), 2}, Direction::down(), Direction(-1, 1));
  EXPECT_EQ(region_from_json(parse_json(dump(to_json(wedge)))), wedge);
  const Region reflex = sector({0, 0}, Direction::down(), Direction(1, 0));
  EXPECT_EQ(region_from_json(parse_json(dump(to_json(reflex)))), reflex);
  const Region ray = sector({0, 0}, Direction::down(), Direction::down());
  EXPECT_EQ(region_from_json(parse_json(dump(to_json(ray)))), ray);
  EXPECT_EQ(region_from_json(parse_json(dump(to_json(Region())))), Region());
  const EnclosureWitness w{"A", {0, 2, 5}, wedge};
  const auto back = witness_from_json(parse_json(dump(to_json(w))));
  EXPECT_EQ(back.family, w.family);
  EXPECT_EQ(back.subset, w.subset);
  EXPECT_EQ(back.region, w.region);
}

TEST(Json, FamilyFormatAndErrors) {
  const auto f = family_from_json(parse_json(
      R"({"name": "A", "lines": [{"a":"1/1","b":"-1/1","c":"0/1"}, {"a":"2","b":"4/2","c":"1/3"}]})"));
  ASSERT_EQ(f.size(), 2);
  EXPECT_EQ(f.line(1).a(), 1);
  EXPECT_EQ(f.line(1).c(), Scalar(1, 6));
  EXPECT_EQ(f.line(1).id(), 1);
  EXPECT_THROW(family_from_json(parse_json(R"({"lines": [{"a":"0","b":"0","c":"1"}]})")), ParseError);
  EXPECT_THROW(family_from_json(parse_json(R"({"lines": [{"a":"1/0","b":"0","c":"1"}]})")), ParseError);
  EXPECT_THROW(parse_json("{"), ParseError);
}
