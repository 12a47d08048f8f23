#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "linecut/family.hpp"
#include "linecut/geometry.hpp"

namespace linecut {

// A sub-family together with a region that contains all of its pairwise
// intersections. Singletons and the empty set are vacuously enclosed.
struct EnclosureWitness {
  std::string family;
  std::vector<int> subset;  // sorted ids
  Region region;

  int size() const { return static_cast<int>(subset.size()); }
};

// Throws BadId for ids outside the family and ParallelLines for parallel
// subset lines.
bool verify_witness(const LineFamily& f, const EnclosureWitness& w);

// One vertex per line; i ~ j when lines i and j meet inside the region.
// mu is the clique number of this graph.
class EnclosureGraph {
 public:
  explicit EnclosureGraph(int n);
  EnclosureGraph(const Arrangement& arr, const Region& region);

  int size() const { return n_; }
  bool adjacent(int i, int j) const {
    return (rows_[static_cast<std::size_t>(i) * words_ + static_cast<std::size_t>(j >> 6)] >>
            (j & 63)) & 1U;
  }
  void add_edge(int i, int j);
  void remove_edge(int i, int j);
  int degree(int i) const;

 private:
  friend class CliqueSearch;
  const std::uint64_t* row(int i) const { return rows_.data() + static_cast<std::size_t>(i) * words_; }

  int n_;
  std::size_t words_;
  std::vector<std::uint64_t> rows_;
};

struct CliqueOptions {
  // Decision mode: stop at the first clique of at least this size.
  std::optional<int> target;
  // Branch-and-bound node budget; 0 means unlimited. Exceeding it throws
  // SearchBudgetExceeded.
  std::uint64_t node_limit = 0;
};

// Sorted vertex ids. Without a target: the lexicographically smallest maximum
// clique. With a target: a clique of size >= target when one exists,
// otherwise a single vertex (or nothing for the empty graph).
std::vector<int> max_clique(const EnclosureGraph& g, const CliqueOptions& options = {});

struct MuResult {
  int size = 0;  // witness size
  EnclosureWitness witness;
  // True when size equals mu exactly. Decision-mode answers are lower bounds
  // when they reach the target and certify mu < target when they do not.
  bool exact = true;
};

MuResult mu_exact(const Arrangement& arr, const Region& region,
                  std::optional<int> target = std::nullopt, std::uint64_t node_limit = 0);
MuResult mu_exact(const LineFamily& f, const Region& region,
                  std::optional<int> target = std::nullopt, std::uint64_t node_limit = 0);

// Exact mu for a closed half-plane in O(n log n): lines ordered by where they
// cross the boundary are enclosed exactly when their slopes, measured in a
// frame attached to the boundary, increase. Throws BoundaryDegeneracy when a
// line is parallel to the boundary or an incidence point lies on it.
MuResult mu_halfplane(const LineFamily& f, const HalfPlane& h);

// ---------------------------------------------------------------------------
// Wedges.

// Two rays from a common apex; c1() is the convex side.
struct Wedge {
  Point apex;
  Direction r1;
  Direction r2;

  ConvexRegion c1() const;
  Region c2() const;
};

enum class LineType { Type1 = 1, Type2 = 2, Type3 = 3, Type4 = 4 };

struct PosetDecomposition {
  std::vector<LineType> types;
  // Ray parameters of the crossing with r2 (d) and with r1 (d_prime);
  // proportional to the distance from the apex.
  std::vector<std::optional<Scalar>> d;
  std::vector<std::optional<Scalar>> d_prime;
  // Ground sets A_1, A_2, A_3 (line ids, ascending).
  std::array<std::vector<int>, 3> ground;
  // less[k][i * n + j]: i strictly precedes j in the order on A_{k+1}.
  std::array<std::vector<char>, 3> less;

  int size() const { return static_cast<int>(types.size()); }
  bool precedes(int k, int i, int j) const {
    return less[static_cast<std::size_t>(k)][static_cast<std::size_t>(i * size() + j)] != 0;
  }
};

// Throws DegenerateWedge when the rays are parallel, a line passes through
// the apex or is parallel to a ray, or an incidence point lies on a ray.
PosetDecomposition decompose_wedge(const LineFamily& f, const Wedge& w);

// Triples (i, j, k) with i < j < k in some order but not i < k.
std::vector<std::array<int, 3>> transitivity_failures(const PosetDecomposition& poset, int k);

struct WedgeDilworthResult {
  EnclosureWitness chain;      // pairwise meets in C1
  EnclosureWitness antichain;  // pairwise meets in C2
  int ground_index = 0;        // 0, 1, 2 for A_1, A_2, A_3
  int ground_size = 0;
  PosetDecomposition poset;
  // Both witnesses passed verify_witness. A false value is the distinguished
  // diagnostic for a poset whose antichains are not enclosed by C2.
  bool verified = false;
};

WedgeDilworthResult wedge_dilworth(const LineFamily& f, const Wedge& w);

}  // namespace linecut
