#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "linecut/enclosure.hpp"
#include "linecut/error.hpp"
#include "linecut/family.hpp"
#include "linecut/geometry.hpp"

namespace linecut {

// ---------------------------------------------------------------------------
// Thresholds. For a family of n lines split into r parts, part r_i must keep
// (2n/3)^{r_i/r} - 2 lines. The integer level is M_i = ceil((2n/3)^{r_i/r}) - 2,
// i.e. M_i + 2 = min{k : k^r * 3^{r_i} >= (2n)^{r_i}}.

struct ThresholdPart {
  int r_i = 0;
  int level = 0;  // M_i
};

struct Thresholds {
  int n = 0;
  int r = 0;
  std::vector<ThresholdPart> parts;
};

// Throws BadPartition unless parts are positive and sum to r, and n >= 1.
Thresholds compute_thresholds(int n, int r, const std::vector<int>& parts);

int threshold_level(int n, int r, int r_i);
// m >= (2n/3)^{r_i/r} - 2, exactly. For integer m this agrees with m >= M_i.
bool meets_threshold(long m, int n, int r, int r_i);
// m > (2n/3)^{r_i/r} - 2, exactly.
bool exceeds_threshold(long m, int n, int r, int r_i);

// ---------------------------------------------------------------------------

struct CriticalHalfPlane {
  HalfPlane halfplane;  // {d . p <= translate}
  Direction direction;
  Scalar translate;
  int level = 0;
  EnclosureWitness witness;  // size >= level, inside halfplane
};

// Smallest closed half-plane {d . p <= t} enclosing at least m lines; t is a
// projection of an incidence point. Throws LevelTooSmall (m <= 1) and
// NoSuchLevel (m > n).
CriticalHalfPlane critical_halfplane(const LineFamily& f, const Direction& d, int m);
CriticalHalfPlane critical_halfplane(const Arrangement& arr, const Direction& d, int m);

// mu of a closed half-plane with a maximum witness; uses the O(n log n)
// method and falls back to branch-and-bound on boundary degeneracies.
MuResult mu_of_halfplane(const Arrangement& arr, const HalfPlane& h);

// ---------------------------------------------------------------------------

struct TwoCutOptions {
  int initial_directions = 64;
  int max_directions = 1024;
  // Node budget for exact witnesses when the cut meets an incidence point.
  std::uint64_t clique_node_limit = 2'000'000;
  // Bisection steps between grid directions whose signs differ.
  int bisection_steps = 64;
};

// C1 = {d . p <= c} carries r1 parts, C2 = {d . p >= c} carries r2 parts.
struct TwoCut {
  Direction direction;
  Scalar offset;
  int r1 = 0;
  int r2 = 0;
  std::array<HalfPlane, 2> regions;
  std::array<EnclosureWitness, 2> a_witness;
  std::array<EnclosureWitness, 2> b_witness;
};

// Sweeps cut directions (the reference direction of the pair, then an
// adaptively refined angular grid) and returns the first cut meeting all
// four levels, checked with exact mu.
std::optional<TwoCut> find_equitable_two_cut(const Arrangement& a, const Arrangement& b, int r1,
                                             int r2, const TwoCutOptions& options = {});
std::optional<TwoCut> find_equitable_two_cut(const LineFamily& a, const LineFamily& b, int r1,
                                             int r2, const TwoCutOptions& options = {});

// The two-cut, if any, at one direction.
std::optional<TwoCut> two_cut_at(const Arrangement& a, const Arrangement& b, int r1, int r2,
                                 const Direction& d, const TwoCutOptions& options = {});

// ---------------------------------------------------------------------------

enum class Sign { Positive, Negative };

inline Sign opposite(Sign s) { return s == Sign::Positive ? Sign::Negative : Sign::Positive; }

// Signs of r_1 = 1..r-1 for family A; B carries the opposite signs.
struct SignTable {
  int r = 0;
  std::map<int, Sign> signs;

  Sign for_a(int r1) const { return signs.at(r1); }
  Sign for_b(int r1) const { return opposite(signs.at(r1)); }
  friend bool operator==(const SignTable&, const SignTable&) = default;
};

// Raised when the spot-check directions disagree about a sign: by the
// continuity argument an equitable cut lies between them, and this carries
// the cut that was located.
class TwoCutMissed : public Error {
 public:
  explicit TwoCutMissed(TwoCut cut)
      : Error("sign table inconsistent; recovered an equitable two-cut"), cut_(std::move(cut)) {}
  const TwoCut& cut() const { return cut_; }

 private:
  TwoCut cut_;
};

struct SignOptions {
  int extra_directions = 3;
  int bisection_steps = 48;
  TwoCutOptions two_cut;
};

// Sign of r_1 for A: positive when mu_B of A's r_1-critical half-plane in
// direction `reference` exceeds B's level. When A's level is at most 1 the
// sign is read from B's critical half-plane instead and negated.
SignTable assign_signs(const Arrangement& a, const Arrangement& b, int r, const Direction& reference,
                       const SignOptions& options = {});

// Sign at one direction (exposed for tests).
Sign sign_at(const Arrangement& a, const Arrangement& b, int r, int r1, const Direction& d);

struct Summands {
  std::vector<int> parts;  // 2 or 3 parts, ascending
  Sign sign = Sign::Positive;
};

// Lexicographically first same-signed pair, else triple, summing to r with
// every part <= 2r/3. Throws SummandsNotFound when none exists.
Summands find_summands(const SignTable& signs, int r);

// ---------------------------------------------------------------------------
// Canonical cuttings. Everything here is in frame coordinates: the reference
// direction is (0, -1) and incidence projections onto x are distinct.

enum class CuttingMode { Direct, Blended };

std::string to_string(CuttingMode mode);

struct CuttingContext {
  Scalar x0;  // left critical boundary x <= x0
  Scalar x1;  // right critical boundary x >= x1
  // Needed by the blended mode only.
  const Arrangement* b = nullptr;
  int n1 = 0;  // B levels for C1 and C2
  int n2 = 0;
  std::optional<Scalar> epsilon;  // defaults to half the minimum projection gap of I(A)
};

struct CanonicalCutting {
  Point apex;
  Direction down = Direction::down();
  Direction ray1 = Direction::down();  // end of C1, clockwise from down
  Direction ray2 = Direction::down();  // start of C2, counter-clockwise from down
  std::array<Region, 3> regions;
  CuttingMode mode = CuttingMode::Direct;
  std::optional<Scalar> epsilon;
  std::optional<Scalar> blend_t;  // strip or vertical blend parameter in effect
  std::optional<Scalar> blend_s;  // x0/x1 blend parameter in effect
  // C3 is convex (the apex lies in the region R).
  bool c3_convex = false;
};

// Half of the smallest gap between distinct x-coordinates of I(A).
Scalar blending_epsilon(const Arrangement& a);

// Throws OutOfStrip when p is outside [x0, x1] and ThresholdUnreachable when
// a full half-plane sweep does not reach the level.
CanonicalCutting canonical_cutting(const Arrangement& a, const Point& p, int m1, int m2,
                                   CuttingMode mode, const CuttingContext& context);

// Minimal clockwise (side = +1) or counter-clockwise (side = -1) sweep from
// the down ray at apex p whose closed sector encloses `level` lines of `arr`,
// optionally never using the incidence of `excluded`. Returns the ray
// direction, or nullopt when a half-turn does not suffice.
std::optional<Direction> minimal_sweep(const Arrangement& arr, const Point& p, int side, int level,
                                       std::optional<std::pair<int, int>> excluded = std::nullopt);

// ---------------------------------------------------------------------------

struct KkmSearchState {
  Scalar x0;
  Scalar x1;
  Scalar y_floor;  // \tilde y
  Scalar y_top;
  int resolution = 0;   // grid cells per side at each level
  int levels_used = 0;
  int samples = 0;
  int samples_in_r = 0;
  int tricolored = 0;
};

struct ThreeCutOptions {
  int grid = 12;
  int budget = 3;           // refinement levels; 0 returns nothing
  int cells_per_level = 6;  // refined cells kept per level
  std::uint64_t clique_node_limit = 2'000'000;
};

struct ThreeCut {
  CanonicalCutting cutting;  // frame coordinates
  std::array<int, 3> parts{};
  std::array<EnclosureWitness, 3> a_witness;
  std::array<EnclosureWitness, 3> b_witness;
  KkmSearchState state;
};

// A and B in frame coordinates; the triple must be positive for A. Returns
// the first sampled apex whose canonical cutting passes every level check.
std::optional<ThreeCut> find_equitable_three_cut(const Arrangement& a, const Arrangement& b,
                                                 const std::array<int, 3>& parts,
                                                 const ThreeCutOptions& options,
                                                 KkmSearchState* state_out = nullptr);

}  // namespace linecut
