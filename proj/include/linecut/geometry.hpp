#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "linecut/scalar.hpp"

namespace linecut {

// Points double as plane vectors (differences of points, ray directions).
struct Point {
  Scalar x;
  Scalar y;

  friend bool operator==(const Point& p, const Point& q) { return p.x == q.x && p.y == q.y; }
  friend Point operator-(const Point& p, const Point& q) { return {p.x - q.x, p.y - q.y}; }
  friend Point operator+(const Point& p, const Point& q) { return {p.x + q.x, p.y + q.y}; }
  friend Point operator*(const Scalar& s, const Point& p) { return {s * p.x, s * p.y}; }
};

inline Scalar cross(const Point& u, const Point& v) { return u.x * v.y - u.y * v.x; }
inline Scalar dot(const Point& u, const Point& v) { return u.x * v.x + u.y * v.y; }

// The locus a*x + b*y = c. Coefficients are scaled so the first nonzero of
// (a, b) equals 1, which makes equal loci compare equal.
class Line {
 public:
  Line(Scalar a, Scalar b, Scalar c, int id = 0);

  // y = m*x + c
  static Line from_slope(const Scalar& m, const Scalar& c, int id = 0);
  static Line through(const Point& p, const Point& q, int id = 0);

  const Scalar& a() const { return a_; }
  const Scalar& b() const { return b_; }
  const Scalar& c() const { return c_; }
  int id() const { return id_; }
  Line with_id(int id) const;

  // a*x + b*y - c; zero exactly on the line.
  Scalar eval(const Point& p) const { return a_ * p.x + b_ * p.y - c_; }
  bool contains(const Point& p) const { return eval(p) == 0; }
  bool parallel_to(const Line& other) const { return a_ * other.b_ - b_ * other.a_ == 0; }
  bool same_locus(const Line& other) const {
    return a_ == other.a_ && b_ == other.b_ && c_ == other.c_;
  }
  // -a/b, absent for vertical lines.
  std::optional<Scalar> slope() const;
  // A vector along the line.
  Point direction() const { return {b_, -a_}; }

  friend bool operator==(const Line& l, const Line& m) {
    return l.same_locus(m) && l.id_ == m.id_;
  }

 private:
  Scalar a_;
  Scalar b_;
  Scalar c_;
  int id_;
};

// Throws ParallelLines when the normals are proportional.
Point intersect_lines(const Line& l1, const Line& l2);

// Orientation-preserving canonical form: scaled by a positive factor so the
// first nonzero component has absolute value 1.
class Direction {
 public:
  Direction(Scalar dx, Scalar dy);
  explicit Direction(const Point& v) : Direction(v.x, v.y) {}

  static Direction down() { return {0, -1}; }

  const Scalar& dx() const { return dx_; }
  const Scalar& dy() const { return dy_; }
  Point vec() const { return {dx_, dy_}; }
  Direction opposite() const { return {-dx_, -dy_}; }
  bool parallel_to(const Line& l) const { return l.a() * dx_ + l.b() * dy_ == 0; }

  friend bool operator==(const Direction& u, const Direction& v) {
    return u.dx_ == v.dx_ && u.dy_ == v.dy_;
  }

 private:
  Scalar dx_;
  Scalar dy_;
};

// Closed half-plane {p : side * (a*x + b*y - c) <= 0}.
class HalfPlane {
 public:
  HalfPlane(const Line& boundary, int side);

  // {a*x + b*y <= c}
  static HalfPlane leq(const Scalar& a, const Scalar& b, const Scalar& c);
  // {d . p <= t}
  static HalfPlane below(const Direction& d, const Scalar& t);

  const Line& boundary() const { return boundary_; }
  int side() const { return side_; }

  bool contains(const Point& p) const { return side_ * sign(boundary_.eval(p)) <= 0; }
  bool interior_contains(const Point& p) const { return side_ * sign(boundary_.eval(p)) < 0; }
  // Closure of the complement: same boundary, other side.
  HalfPlane flipped() const { return {boundary_, -side_}; }

  friend bool operator==(const HalfPlane& h, const HalfPlane& k) {
    return h.side_ == k.side_ && h.boundary_.same_locus(k.boundary_);
  }

 private:
  Line boundary_;
  int side_;
};

struct Ray {
  Point apex;
  Direction dir;
};

enum class RegionKind { WholePlane, HalfPlane, Wedge, Strip, FanCell, Cell };

std::string to_string(RegionKind kind);
RegionKind region_kind_from_string(const std::string& text);

// Finite intersection of closed half-planes. No half-planes means the plane.
struct ConvexRegion {
  std::vector<HalfPlane> halfplanes;
  RegionKind kind = RegionKind::WholePlane;

  static ConvexRegion whole_plane() { return {}; }
  static ConvexRegion from_halfplane(const HalfPlane& h) { return {{h}, RegionKind::HalfPlane}; }

  bool contains(const Point& p) const;
  // Intersection; the result is tagged Cell unless one side is the plane.
  ConvexRegion intersect(const ConvexRegion& other) const;

  friend bool operator==(const ConvexRegion& r, const ConvexRegion& s) {
    return r.kind == s.kind && r.halfplanes == s.halfplanes;
  }
};

// Finite union of convex regions. Needed for the non-convex side of a wedge
// and for fan sectors wider than a half-plane.
struct Region {
  std::vector<ConvexRegion> pieces;

  Region() : pieces{ConvexRegion::whole_plane()} {}
  Region(ConvexRegion r) : pieces{std::move(r)} {}  // NOLINT(google-explicit-constructor)
  explicit Region(std::vector<ConvexRegion> ps) : pieces(std::move(ps)) {}

  bool contains(const Point& p) const;
  bool convex() const { return pieces.size() == 1; }

  friend bool operator==(const Region& r, const Region& s) { return r.pieces == s.pieces; }
};

// ---------------------------------------------------------------------------
// Angular helpers. Angles are clockwise sweeps measured from a start vector.

// True when v is reached before w when sweeping clockwise from `from`
// (angles taken in [0, 2*pi)).
bool cw_before(const Point& from, const Point& v, const Point& w);
// Same, sweeping counter-clockwise.
bool ccw_before(const Point& from, const Point& v, const Point& w);
// Clockwise angle from `from` to `to` is at most pi.
bool cw_within_half_turn(const Point& from, const Point& to);

// Closed sector swept clockwise from ray (apex, from) to ray (apex, to).
// Equal directions give the ray itself. Sweeps above pi come back as the
// union of two convex pieces.
Region sector(const Point& apex, const Direction& from, const Direction& to);
// Convex sector; throws DegenerateWedge when the sweep exceeds pi.
ConvexRegion convex_sector(const Point& apex, const Direction& from, const Direction& to);

// ---------------------------------------------------------------------------
// Floating-point filter. `approx` is a double evaluation of a polynomial
// expression and `magnitude` the sum of absolute values of its terms; when the
// filter cannot certify the sign, `exact` is called.
template <class ExactFn>
int filtered_sign(double approx, double magnitude, ExactFn&& exact) {
  constexpr double kRelativeError = 1e-13;
  if (std::isfinite(approx) && std::isfinite(magnitude)) {
    const double bound = magnitude * kRelativeError;
    if (approx > bound) return 1;
    if (approx < -bound) return -1;
  }
  return exact();
}

// Region containment with cached double coefficients.
class FastRegion {
 public:
  explicit FastRegion(const Region& region);

  bool contains(const Point& p, double px, double py) const;
  bool contains(const Point& p) const { return contains(p, to_double(p.x), to_double(p.y)); }

 private:
  struct Constraint {
    HalfPlane halfplane;
    double a, b, c;
  };
  std::vector<std::vector<Constraint>> pieces_;
};

// ---------------------------------------------------------------------------
// Linear change of coordinates that makes `down` the negative y-axis:
// frame x = n . p with n = (-down.y, down.x), frame y = -down . p.
// Orientation preserving, exact in rationals.
class Frame {
 public:
  explicit Frame(const Direction& down);

  const Direction& down() const { return down_; }
  bool identity() const { return down_ == Direction::down(); }

  Point to_frame(const Point& p) const;
  Point from_frame(const Point& q) const;
  Line to_frame(const Line& l) const;
  Line from_frame(const Line& l) const;
  HalfPlane from_frame(const HalfPlane& h) const;
  ConvexRegion from_frame(const ConvexRegion& r) const;
  Region from_frame(const Region& r) const;
  Direction from_frame(const Direction& d) const;

 private:
  Direction down_;
  Scalar det_;
};

}  // namespace linecut
