#include <gtest/gtest.h>

#include "linecut/adversarial.hpp"
#include "linecut/error.hpp"
#include "test_support.hpp"

using namespace linecut;
using namespace linecut::testing;

namespace {

int top_index(const std::vector<int>& x, const std::vector<int>& y) {
  for (int i = static_cast<int>(x.size()) - 1; i >= 0; --i) {
    if (x[static_cast<std::size_t>(i)] != y[static_cast<std::size_t>(i)]) return i;
  }
  return -1;
}

// Counts the pairs checked and fails on any slope outside its interval.
int check_separation(const HardInstance& inst) {
  int pairs = 0;
  const auto& pts = inst.points;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const int m = top_index(inst.coords[i], inst.coords[j]);
      EXPECT_GE(m, 0);
      const Scalar dx = pts[j].x - pts[i].x;
      EXPECT_NE(dx, 0);
      if (dx == 0) continue;
      const Scalar slope = (pts[j].y - pts[i].y) / dx;
      const Scalar centre(m + 1);
      EXPECT_LE(abs_value(slope - centre), Scalar(1, 4)) << i << " " << j;
      ++pairs;
    }
  }
  return pairs;
}

}  // namespace

TEST(HardFamily, SingleLine) {
  const auto inst = build_hard_family(1, 3);
  EXPECT_EQ(inst.a.size(), 1);
  EXPECT_TRUE(verify_strip_hardness(inst).hard);
}

TEST(HardFamily, SeparationHoldsForAllPairs) {
  const auto two_two = build_hard_family(2, 2);
  EXPECT_EQ(two_two.a.size(), 4);
  EXPECT_EQ(check_separation(two_two), 6);
  EXPECT_TRUE(separation_violations(two_two).empty());

  const auto two_three = build_hard_family(2, 3);
  EXPECT_EQ(two_three.a.size(), 8);
  EXPECT_EQ(check_separation(two_three), 28);

  const auto three_two = build_hard_family(3, 2);
  EXPECT_EQ(three_two.a.size(), 9);
  EXPECT_EQ(check_separation(three_two), 36);
}

TEST(HardFamily, ParamsAndGeneralPosition) {
  const auto inst = build_hard_family(3, 3);
  const auto& p = inst.params;
  ASSERT_EQ(p.slopes.size(), 3U);
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(p.slopes[static_cast<std::size_t>(i)], Scalar(i + 1));
    const Point& v = p.vectors[static_cast<std::size_t>(i)];
    EXPECT_EQ(v.y / v.x, p.slopes[static_cast<std::size_t>(i)]);
  }
  for (std::size_t i = 1; i < p.norms.size(); ++i) EXPECT_GE(p.norms[i], p.norms[i - 1]);
  // Disjoint intervals.
  for (std::size_t i = 1; i < p.slopes.size(); ++i) {
    EXPECT_LT(p.slopes[i - 1] + p.epsilon, p.slopes[i] - p.epsilon);
  }
  EXPECT_TRUE(validate_general_position(inst.a).ok);
  // Points sit within the perturbation of the lattice combinations.
  for (std::size_t k = 0; k < inst.points.size(); ++k) {
    Point base{0, 0};
    for (std::size_t i = 0; i < 3; ++i) base = base + Scalar(inst.coords[k][i]) * p.vectors[i];
    EXPECT_EQ(inst.points[k].x, base.x);
    EXPECT_LE(abs_value(inst.points[k].y - base.y), p.perturbation);
    const Line& l = inst.a.line(static_cast<int>(k));
    EXPECT_EQ(*l.slope(), inst.points[k].x);
    EXPECT_TRUE(l.contains({0, inst.points[k].y}));
  }
  const auto j = to_json(p);
  EXPECT_EQ(j["growth_factors"].size(), 2U);
  EXPECT_EQ(j["epsilon"], "1/4");
}

TEST(HardFamily, SizeCap) {
  BuildOptions options;
  options.size_cap = 100;
  EXPECT_THROW(build_hard_family(5, 3, options), SizeCap);
  EXPECT_NO_THROW(build_hard_family(10, 2, options));
}

TEST(HardFamily, SlopeIntersectionDuality) {
  const auto inst = build_hard_family(3, 2);
  const auto& pts = inst.points;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const Point x = intersect_lines(inst.a.line(static_cast<int>(i)), inst.a.line(static_cast<int>(j)));
      const Scalar slope = (pts[j].y - pts[i].y) / (pts[j].x - pts[i].x);
      EXPECT_EQ(x.x, -slope);
      // So every incidence abscissa sits in -I_m for the top differing index m.
      const int m = top_index(inst.coords[i], inst.coords[j]);
      EXPECT_LE(abs_value(x.x + Scalar(m + 1)), Scalar(1, 4));
    }
  }
}

TEST(StripHardness, HardInstances) {
  for (const auto& [a, r] : std::vector<std::pair<int, int>>{{2, 2}, {3, 2}, {2, 3}}) {
    const auto inst = build_hard_family(a, r);
    const auto report = verify_strip_hardness(inst);
    EXPECT_TRUE(report.hard) << a << "," << r;
    EXPECT_FALSE(report.violation.has_value());
    EXPECT_GT(report.partitions, 0);
  }
}

TEST(StripHardness, TwoTwoAgainstBruteForce) {
  const auto inst = build_hard_family(2, 2);
  std::vector<Scalar> xs;
  for (const auto& inc : incidence_set(inst.a)) xs.push_back(inc.point.x);
  std::sort(xs.begin(), xs.end());
  // Candidate boundaries: every abscissa, every midpoint and both ends.
  std::vector<Scalar> ts{xs.front() - 1, xs.back() + 1};
  for (std::size_t i = 0; i < xs.size(); ++i) {
    ts.push_back(xs[i]);
    if (i + 1 < xs.size()) ts.push_back((xs[i] + xs[i + 1]) / 2);
  }
  for (const auto& t : ts) {
    const Region left(ConvexRegion::from_halfplane(HalfPlane::leq(1, 0, t)));
    const Region right(ConvexRegion::from_halfplane(HalfPlane::leq(-1, 0, -t)));
    EXPECT_TRUE(brute_force_mu(inst.a, left) <= 2 || brute_force_mu(inst.a, right) <= 2);
  }
  EXPECT_EQ(verify_strip_hardness(inst).partitions, static_cast<long>(2 * xs.size() + 1));
}

TEST(StripHardness, FlatNormScheduleIsNotHard) {
  BuildOptions options;
  options.norms = {Scalar(1), Scalar(1), Scalar(1)};
  const auto inst = build_hard_family(2, 3, options);
  EXPECT_FALSE(separation_violations(inst).empty());
  const auto report = verify_strip_hardness(inst);
  EXPECT_FALSE(report.hard);
  ASSERT_TRUE(report.violation.has_value());
  const auto& bad = *report.violation;
  ASSERT_EQ(bad.boundaries.size(), 2U);
  ASSERT_EQ(bad.mu.size(), 3U);
  EXPECT_LE(bad.boundaries[0], bad.boundaries[1]);
  // Every strip encloses more than a lines.
  const std::vector<Region> strips{
      Region(ConvexRegion::from_halfplane(HalfPlane::leq(1, 0, bad.boundaries[0]))),
      Region(ConvexRegion::from_halfplane(HalfPlane::leq(-1, 0, -bad.boundaries[0]))
                 .intersect(ConvexRegion::from_halfplane(HalfPlane::leq(1, 0, bad.boundaries[1])))),
      Region(ConvexRegion::from_halfplane(HalfPlane::leq(-1, 0, -bad.boundaries[1])))};
  for (std::size_t s = 0; s < 3; ++s) {
    EXPECT_EQ(brute_force_mu(inst.a, strips[s]), bad.mu[s]);
    EXPECT_GT(bad.mu[s], 2);
  }
}

TEST(StripHardness, OracleCap) {
  const auto inst = build_hard_family(2, 5);
  EXPECT_THROW(verify_strip_hardness(inst, 30), OracleCap);
}

TEST(TwoFamily, RemoteUnitDisk) {
  const Scalar h(1000000);
  const auto inst = build_two_family_instance(2, 2, h);
  EXPECT_EQ(inst.hard.a.size(), 4);
  EXPECT_EQ(inst.b.size(), 4);
  EXPECT_EQ(inst.center.y, inst.top_of_a + h);
  Scalar worst(0);
  for (const auto& inc : incidence_set(inst.b)) {
    const Point d = inc.point - inst.center;
    worst = std::max(worst, Scalar(d.x * d.x + d.y * d.y));
  }
  EXPECT_LE(worst, 1);
  EXPECT_NEAR(inst.disk_radius * inst.disk_radius, to_double(worst), 1e-9);
  for (const auto& inc : incidence_set(inst.hard.a)) EXPECT_LE(inc.point.y, inst.top_of_a);
  EXPECT_TRUE(validate_general_position(inst.hard.a.merged_with(inst.b)).ok);
}

TEST(TwoFamily, SingleLines) {
  const auto inst = build_two_family_instance(1, 1, Scalar(5));
  EXPECT_EQ(inst.hard.a.size(), 1);
  EXPECT_EQ(inst.b.size(), 1);
  EXPECT_THROW(build_two_family_instance(1, 1, Scalar(0)), Error);
}

TEST(TwoFamily, JointGeneralPositionAcrossSizes) {
  for (const auto& [a, r] : std::vector<std::pair<int, int>>{{2, 3}, {3, 2}, {4, 2}}) {
    const auto inst = build_two_family_instance(a, r, Scalar(50));
    EXPECT_TRUE(validate_general_position(inst.hard.a.merged_with(inst.b)).ok);
    EXPECT_LE(inst.disk_radius, 1.0);
  }
}

TEST(HardFamily, Deterministic) {
  const auto first = build_hard_family(2, 3);
  const auto second = build_hard_family(2, 3);
  EXPECT_EQ(dump(to_json(first.a)), dump(to_json(second.a)));
  EXPECT_EQ(dump(to_json(first.params)), dump(to_json(second.params)));
}
