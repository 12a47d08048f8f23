#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "linecut/cuts.hpp"
#include "linecut/family.hpp"
#include "linecut/geometry.hpp"
#include "linecut/io.hpp"

namespace linecut {

// r^{ln(2/3)} n^{1/r} - 2r and the smallest witness size meeting it.
struct BoundValue {
  double value = 0;
  long required = 0;  // max(0, ceil(value))
};

BoundValue bound_value(long n, int r);

struct SolverConfig {
  TwoCutOptions two_cut;
  SignOptions signs;
  ThreeCutOptions three_cut;
  int fallback_directions = 64;
  // When false, skip the equitable two-cut sweep and go straight to signs.
  bool equitable_two_cuts = true;
  std::uint64_t seed = 0;  // echoed; the solver itself is deterministic
};

Json to_json(const SolverConfig& config);
SolverConfig solver_config_from_json(const Json& j);

enum class NodeKind { Leaf, TwoCut, ThreeCut };
// How an internal node's cut was obtained.
enum class CutMethod { None, Equitable, SignRecovered, SummandsPair, SummandsTriple, Fallback };

std::string to_string(NodeKind kind);
std::string to_string(CutMethod method);

struct CutNode {
  NodeKind kind = NodeKind::Leaf;
  CutMethod method = CutMethod::None;
  int r = 1;
  // Two-cut: children are {line <= 0} side first, then the other side.
  std::optional<HalfPlane> cut;
  // Three-cut: C1 = sector(apex, down, ray1), C2 = sector(apex, ray2, down),
  // C3 = sector(apex, ray1, ray2), or the plane when both rays point down.
  std::optional<Point> apex;
  std::array<Direction, 3> rays{Direction::down(), Direction::down(), Direction::down()};
  std::vector<CutNode> children;

  // Leaves: ids into the top-level families.
  std::vector<int> a_ids;
  std::vector<int> b_ids;
  Region region;  // intersection of the ancestors' regions
  long required_a = 0;
  long required_b = 0;
  long achieved_a = 0;
  long achieved_b = 0;
};

// Child regions of an internal node, recomputed from its geometry.
std::vector<Region> child_regions(const CutNode& node);
Region intersect_regions(const Region& r, const Region& s);

struct PartitionCertificate {
  std::string schema = "linecut.certificate/1";
  SolverConfig config;
  LineFamily a;
  LineFamily b;
  int r = 1;
  CutNode tree;
  bool degraded = false;
};

Json to_json(const PartitionCertificate& cert);
PartitionCertificate certificate_from_json(const Json& j);

// Throws NotGeneralPosition when A and B together are not in general position.
PartitionCertificate partition(const LineFamily& a, const LineFamily& b, int r,
                               const SolverConfig& config = {});

struct LeafFailure {
  int leaf = 0;       // depth-first index
  std::string path;   // child indices from the root, e.g. "0.2"
  std::string family; // "A", "B" or "" for structural failures
  std::string reason;
};

struct VerificationReport {
  bool ok = true;
  bool bound_met = true;
  bool degraded = false;
  int leaves = 0;
  std::vector<LeafFailure> failures;
};

Json to_json(const VerificationReport& report);

VerificationReport verify_certificate(const LineFamily& a, const LineFamily& b,
                                      const PartitionCertificate& cert);

}  // namespace linecut
