#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "linecut/geometry.hpp"

namespace linecut {

// Ordered list of lines; line i carries id i.
class LineFamily {
 public:
  LineFamily() = default;
  LineFamily(std::string name, std::vector<Line> lines);

  const std::string& name() const { return name_; }
  const std::vector<Line>& lines() const { return lines_; }
  const Line& line(int id) const;
  int size() const { return static_cast<int>(lines_.size()); }
  bool empty() const { return lines_.empty(); }

  // Sub-family on the given ids, re-indexed 0..k-1 in the order given.
  LineFamily subfamily(std::span<const int> ids, std::string name = {}) const;
  // Concatenation; lines of `other` follow and are re-indexed.
  LineFamily merged_with(const LineFamily& other, std::string name = {}) const;
  LineFamily transformed(const Frame& frame) const;

  friend bool operator==(const LineFamily& f, const LineFamily& g) {
    return f.name_ == g.name_ && f.lines_ == g.lines_;
  }

 private:
  std::string name_;
  std::vector<Line> lines_;
};

struct Incidence {
  Point point;
  int first;   // smaller line id
  int second;  // larger line id
};

// Throws ParallelLines naming the first offending pair (in id order).
std::vector<Incidence> incidence_set(const LineFamily& f);

// Family plus its cached incidence set, with double shadows of every
// coordinate for filtered predicates. Requires pairwise non-parallel lines.
class Arrangement {
 public:
  explicit Arrangement(LineFamily family);

  const LineFamily& family() const { return family_; }
  int size() const { return family_.size(); }
  const std::vector<Incidence>& incidences() const { return incidences_; }
  const Incidence& incidence(int i, int j) const;
  double approx_x(std::size_t k) const { return approx_[k].first; }
  double approx_y(std::size_t k) const { return approx_[k].second; }
  // Position of pair (i, j) in incidences().
  std::size_t pair_index(int i, int j) const;

 private:
  LineFamily family_;
  std::vector<Incidence> incidences_;
  std::vector<std::pair<double, double>> approx_;
};

enum class ViolationKind { ParallelPair, ConcurrentTriple, CollinearIncidences };

std::string to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::vector<int> ids;  // offending line ids
};

struct GeneralPositionReport {
  bool ok = true;
  std::vector<Violation> violations;
  // The collinear-incidences condition is quadratic in |I(L)|; it is skipped
  // above the caller's limit and the skip is recorded here.
  bool collinearity_checked = true;
};

// Default limit on |I(L)| for the collinearity condition.
inline constexpr std::size_t kCollinearityCheckLimit = 6000;

GeneralPositionReport validate_general_position(
    const LineFamily& f, std::size_t collinearity_limit = kCollinearityCheckLimit);

// A direction u, parallel to no line, such that the projections of every
// incidence point of every family onto the normal of u are pairwise
// distinct. Deterministic; (0, -1) when it already works.
Direction choose_reference_direction(std::span<const LineFamily> families);

// Shifts every intercept c_i by magnitude * h_i with distinct pseudo-random
// h_i in (0, 1] drawn from `seed`.
LineFamily perturb_intercepts(const LineFamily& f, const Scalar& magnitude, std::uint64_t seed);

class Rng;

// n lines y = m*x + c in general position with small-denominator rational
// m and c; redraws until the family validates.
LineFamily random_family(Rng& rng, int n, std::string name);
LineFamily random_family(int n, std::uint64_t seed, std::string name);

}  // namespace linecut
