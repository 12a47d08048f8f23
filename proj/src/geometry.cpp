#include "linecut/geometry.hpp"

#include <algorithm>

#include "linecut/error.hpp"

namespace linecut {

Scalar parse_scalar(std::string_view text) {
  const std::string s(text);
  if (s.empty()) throw ParseError("empty rational");
  const auto slash = s.find('/');
  const auto valid_int = [](const std::string& part) {
    if (part.empty()) return false;
    std::size_t start = (part[0] == '-' || part[0] == '+') ? 1 : 0;
    if (start == part.size()) return false;
    return std::all_of(part.begin() + static_cast<std::ptrdiff_t>(start), part.end(),
                       [](char ch) { return ch >= '0' && ch <= '9'; });
  };
  const std::string num = s.substr(0, slash);
  const std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den)) throw ParseError("malformed rational '" + s + "'");
  const auto strip_plus = [](std::string part) {
    if (!part.empty() && part[0] == '+') part.erase(0, 1);
    return part;
  };
  mpz_class n(strip_plus(num), 10);
  mpz_class d(strip_plus(den), 10);
  if (d == 0) throw ParseError("zero denominator in '" + s + "'");
  Scalar value(n, d);
  value.canonicalize();
  return value;
}

std::string format_scalar(const Scalar& value) {
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

// ---------------------------------------------------------------------------

Line::Line(Scalar a, Scalar b, Scalar c, int id)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), id_(id) {
  const Scalar lead = a_ != 0 ? a_ : b_;
  if (lead == 0) throw Error("degenerate line: a and b are both zero");
  a_ /= lead;
  b_ /= lead;
  c_ /= lead;
}

Line Line::from_slope(const Scalar& m, const Scalar& c, int id) {
  // y = m x + c  <=>  -m x + y = c
  return {-m, 1, c, id};
}

Line Line::through(const Point& p, const Point& q, int id) {
  const Point d = q - p;
  if (d.x == 0 && d.y == 0) throw Error("line through coincident points");
  // normal (d.y, -d.x)
  return {d.y, -d.x, d.y * p.x - d.x * p.y, id};
}

Line Line::with_id(int id) const {
  Line copy = *this;
  copy.id_ = id;
  return copy;
}

std::optional<Scalar> Line::slope() const {
  if (b_ == 0) return std::nullopt;
  return Scalar(-a_ / b_);
}

Point intersect_lines(const Line& l1, const Line& l2) {
  const Scalar det = l1.a() * l2.b() - l1.b() * l2.a();
  if (det == 0) throw ParallelLines(l1.id(), l2.id());
  return {(l1.c() * l2.b() - l1.b() * l2.c()) / det, (l1.a() * l2.c() - l1.c() * l2.a()) / det};
}

Direction::Direction(Scalar dx, Scalar dy) : dx_(std::move(dx)), dy_(std::move(dy)) {
  Scalar lead = dx_ != 0 ? dx_ : dy_;
  if (lead == 0) throw Error("zero direction");
  lead = abs(lead);
  dx_ /= lead;
  dy_ /= lead;
}

HalfPlane::HalfPlane(const Line& boundary, int side) : boundary_(boundary.with_id(0)), side_(side) {
  if (side != 1 && side != -1) throw Error("half-plane side must be +1 or -1");
}

HalfPlane HalfPlane::leq(const Scalar& a, const Scalar& b, const Scalar& c) {
  // Line normalisation divides by the leading coefficient; a negative leader
  // flips the inequality.
  const Scalar& lead = a != 0 ? a : b;
  return {Line(a, b, c), sign(lead)};
}

HalfPlane HalfPlane::below(const Direction& d, const Scalar& t) { return leq(d.dx(), d.dy(), t); }

std::string to_string(RegionKind kind) {
  switch (kind) {
    case RegionKind::WholePlane: return "whole-plane";
    case RegionKind::HalfPlane: return "halfplane";
    case RegionKind::Wedge: return "wedge";
    case RegionKind::Strip: return "strip";
    case RegionKind::FanCell: return "fan-cell";
    case RegionKind::Cell: return "cell";
  }
  return "cell";
}

RegionKind region_kind_from_string(const std::string& text) {
  if (text == "whole-plane") return RegionKind::WholePlane;
  if (text == "halfplane") return RegionKind::HalfPlane;
  if (text == "wedge") return RegionKind::Wedge;
  if (text == "strip") return RegionKind::Strip;
  if (text == "fan-cell") return RegionKind::FanCell;
  if (text == "cell") return RegionKind::Cell;
  throw ParseError("unknown region kind '" + text + "'");
}

bool ConvexRegion::contains(const Point& p) const {
  return std::all_of(halfplanes.begin(), halfplanes.end(),
                     [&](const HalfPlane& h) { return h.contains(p); });
}

ConvexRegion ConvexRegion::intersect(const ConvexRegion& other) const {
  if (halfplanes.empty()) return other;
  if (other.halfplanes.empty()) return *this;
  ConvexRegion out{halfplanes, RegionKind::Cell};
  out.halfplanes.insert(out.halfplanes.end(), other.halfplanes.begin(), other.halfplanes.end());
  return out;
}

bool Region::contains(const Point& p) const {
  return std::any_of(pieces.begin(), pieces.end(),
                     [&](const ConvexRegion& r) { return r.contains(p); });
}

// ---------------------------------------------------------------------------

namespace {

// 0 for clockwise angles in [0, pi), 1 for [pi, 2*pi).
int cw_half(const Point& from, const Point& v) {
  const int c = sign(cross(from, v));
  if (c < 0) return 0;
  if (c == 0 && sign(dot(from, v)) > 0) return 0;
  return 1;
}

int ccw_half(const Point& from, const Point& v) {
  const int c = sign(cross(from, v));
  if (c > 0) return 0;
  if (c == 0 && sign(dot(from, v)) > 0) return 0;
  return 1;
}

}  // namespace

bool cw_before(const Point& from, const Point& v, const Point& w) {
  const int hv = cw_half(from, v);
  const int hw = cw_half(from, w);
  if (hv != hw) return hv < hw;
  return sign(cross(v, w)) < 0;
}

bool ccw_before(const Point& from, const Point& v, const Point& w) {
  const int hv = ccw_half(from, v);
  const int hw = ccw_half(from, w);
  if (hv != hw) return hv < hw;
  return sign(cross(v, w)) > 0;
}

bool cw_within_half_turn(const Point& from, const Point& to) {
  const int c = sign(cross(from, to));
  return c < 0 || c == 0;
}

namespace {

// {q : cross(d, q - apex) <= 0}: the closed side clockwise of the directed
// line through apex along d.
HalfPlane cw_side(const Point& apex, const Point& d) {
  // d.x*(qy - ay) - d.y*(qx - ax) <= 0
  return HalfPlane::leq(-d.y, d.x, d.x * apex.y - d.y * apex.x);
}

}  // namespace

ConvexRegion convex_sector(const Point& apex, const Direction& from, const Direction& to) {
  const Point f = from.vec();
  const Point t = to.vec();
  const int c = sign(cross(f, t));
  if (c > 0) throw DegenerateWedge("sector sweep exceeds a half-turn");
  if (c == 0 && sign(dot(f, t)) > 0) {
    // The ray itself.
    const HalfPlane side = cw_side(apex, f);
    const HalfPlane forward = HalfPlane::leq(-f.x, -f.y, -(f.x * apex.x + f.y * apex.y));
    return {{side, side.flipped(), forward}, RegionKind::Wedge};
  }
  if (c == 0) return {{cw_side(apex, f)}, RegionKind::HalfPlane};
  // cross(t, q - apex) >= 0  <=>  q lies counter-clockwise of `to`.
  return {{cw_side(apex, f), cw_side(apex, t).flipped()}, RegionKind::Wedge};
}

Region sector(const Point& apex, const Direction& from, const Direction& to) {
  if (cw_within_half_turn(from.vec(), to.vec())) return convex_sector(apex, from, to);
  const Direction mid = from.opposite();
  ConvexRegion first = convex_sector(apex, from, mid);
  ConvexRegion second = convex_sector(apex, mid, to);
  first.kind = RegionKind::FanCell;
  second.kind = RegionKind::FanCell;
  return Region({std::move(first), std::move(second)});
}

// ---------------------------------------------------------------------------

FastRegion::FastRegion(const Region& region) {
  pieces_.reserve(region.pieces.size());
  for (const auto& piece : region.pieces) {
    std::vector<Constraint> cs;
    cs.reserve(piece.halfplanes.size());
    for (const auto& h : piece.halfplanes) {
      const Line& l = h.boundary();
      cs.push_back({h, to_double(l.a()), to_double(l.b()), to_double(l.c())});
    }
    pieces_.push_back(std::move(cs));
  }
}

bool FastRegion::contains(const Point& p, double px, double py) const {
  for (const auto& piece : pieces_) {
    bool inside = true;
    for (const auto& c : piece) {
      const double ax = c.a * px;
      const double by = c.b * py;
      const double value = ax + by - c.c;
      const double mag = std::abs(ax) + std::abs(by) + std::abs(c.c);
      const int s = filtered_sign(value, mag, [&] { return sign(c.halfplane.boundary().eval(p)); });
      if (c.halfplane.side() * s > 0) {
        inside = false;
        break;
      }
    }
    if (inside) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------

Frame::Frame(const Direction& down)
    : down_(down), det_(down.dx() * down.dx() + down.dy() * down.dy()) {}

// M = [[-u.y, u.x], [-u.x, -u.y]]
Point Frame::to_frame(const Point& p) const {
  const Scalar& ux = down_.dx();
  const Scalar& uy = down_.dy();
  return {-uy * p.x + ux * p.y, -ux * p.x - uy * p.y};
}

// M^-1 = (1/det) [[-u.y, -u.x], [u.x, -u.y]]
Point Frame::from_frame(const Point& q) const {
  const Scalar& ux = down_.dx();
  const Scalar& uy = down_.dy();
  return {(-uy * q.x - ux * q.y) / det_, (ux * q.x - uy * q.y) / det_};
}

Line Frame::to_frame(const Line& l) const {
  // a . p = c with p = M^-1 q  =>  (M^-T a) . q = c
  const Scalar& ux = down_.dx();
  const Scalar& uy = down_.dy();
  const Scalar a = (-uy * l.a() + ux * l.b()) / det_;
  const Scalar b = (-ux * l.a() - uy * l.b()) / det_;
  return {a, b, l.c(), l.id()};
}

Line Frame::from_frame(const Line& l) const {
  // a' . (M p) = c  =>  (M^T a') . p = c
  const Scalar& ux = down_.dx();
  const Scalar& uy = down_.dy();
  const Scalar a = -uy * l.a() - ux * l.b();
  const Scalar b = ux * l.a() - uy * l.b();
  return {a, b, l.c(), l.id()};
}

HalfPlane Frame::from_frame(const HalfPlane& h) const {
  const Line& l = h.boundary();
  const Scalar& ux = down_.dx();
  const Scalar& uy = down_.dy();
  const Scalar a = -uy * l.a() - ux * l.b();
  const Scalar b = ux * l.a() - uy * l.b();
  // side * (a'.q - c) <= 0 keeps its sign; leq() re-normalises.
  if (h.side() > 0) return HalfPlane::leq(a, b, l.c());
  return HalfPlane::leq(-a, -b, -l.c());
}

ConvexRegion Frame::from_frame(const ConvexRegion& r) const {
  ConvexRegion out{{}, r.kind};
  out.halfplanes.reserve(r.halfplanes.size());
  for (const auto& h : r.halfplanes) out.halfplanes.push_back(from_frame(h));
  return out;
}

Region Frame::from_frame(const Region& r) const {
  std::vector<ConvexRegion> pieces;
  pieces.reserve(r.pieces.size());
  for (const auto& piece : r.pieces) pieces.push_back(from_frame(piece));
  return Region(std::move(pieces));
}

Direction Frame::from_frame(const Direction& d) const {
  const Point q = d.vec();
  const Scalar& ux = down_.dx();
  const Scalar& uy = down_.dy();
  return {(-uy * q.x - ux * q.y), (ux * q.x - uy * q.y)};
}

}  // namespace linecut
