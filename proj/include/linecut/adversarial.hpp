#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "linecut/family.hpp"
#include "linecut/geometry.hpp"
#include "linecut/io.hpp"

namespace linecut {

struct AdversarialParams {
  int a = 1;
  int r = 1;
  std::vector<Scalar> slopes;   // l_i = i
  std::vector<Scalar> norms;    // scale s_i of v_i = s_i (1, l_i)
  Scalar epsilon{1, 4};
  std::vector<Point> vectors;   // v_i
  Scalar perturbation;          // intercept shift magnitude actually used
  std::uint64_t perturbation_seed = 0;
};

struct HardInstance {
  LineFamily a;
  AdversarialParams params;
  std::vector<Point> points;  // X after perturbation, as (slope, intercept)
  std::vector<std::vector<int>> coords;  // the [a]^r coordinates of each point
};

struct BuildOptions {
  std::size_t size_cap = 4096;
  std::uint64_t seed = 1;
  // Fixed norm scales; when empty they are found by doubling.
  std::vector<Scalar> norms;
};

// Throws SizeCap when a^r exceeds the cap.
HardInstance build_hard_family(int a, int r, const BuildOptions& options = {});

// Pairs (p, q) of X whose difference slope leaves I_{m(p,q)}; empty when the
// separation property holds.
std::vector<std::pair<int, int>> separation_violations(const HardInstance& inst);

struct StripPartition {
  std::vector<Scalar> boundaries;  // t_1 <= ... <= t_{r-1}
  std::vector<int> mu;             // per strip
};

struct StripHardnessReport {
  bool hard = true;
  long partitions = 0;
  std::optional<StripPartition> violation;  // every strip has mu > a
};

// Throws OracleCap when |A| exceeds the cap.
StripHardnessReport verify_strip_hardness(const HardInstance& inst, int oracle_cap = 30);

struct TwoFamilyInstance {
  HardInstance hard;
  LineFamily b;
  Scalar height;
  Point center;         // of the disk holding I(B)
  double disk_radius;   // max distance from center to I(B)
  Scalar top_of_a;      // max y over I(A)
};

TwoFamilyInstance build_two_family_instance(int a, int r, const Scalar& h, const BuildOptions& options = {});

Json to_json(const AdversarialParams& p);

}  // namespace linecut
