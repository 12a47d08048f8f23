#include "linecut/family.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "linecut/error.hpp"
#include "linecut/random.hpp"

namespace linecut {

LineFamily::LineFamily(std::string name, std::vector<Line> lines)
    : name_(std::move(name)), lines_(std::move(lines)) {
  for (std::size_t i = 0; i < lines_.size(); ++i) lines_[i] = lines_[i].with_id(static_cast<int>(i));
}

const Line& LineFamily::line(int id) const {
  if (id < 0 || id >= size()) throw BadId(id);
  return lines_[static_cast<std::size_t>(id)];
}

LineFamily LineFamily::subfamily(std::span<const int> ids, std::string name) const {
  std::vector<Line> out;
  out.reserve(ids.size());
  for (int id : ids) out.push_back(line(id));
  return {name.empty() ? name_ : std::move(name), std::move(out)};
}

LineFamily LineFamily::merged_with(const LineFamily& other, std::string name) const {
  std::vector<Line> out = lines_;
  out.insert(out.end(), other.lines_.begin(), other.lines_.end());
  return {name.empty() ? name_ + "+" + other.name_ : std::move(name), std::move(out)};
}

LineFamily LineFamily::transformed(const Frame& frame) const {
  std::vector<Line> out;
  out.reserve(lines_.size());
  for (const auto& l : lines_) out.push_back(frame.to_frame(l));
  return {name_, std::move(out)};
}

std::vector<Incidence> incidence_set(const LineFamily& f) {
  std::vector<Incidence> out;
  const int n = f.size();
  out.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(std::max(n - 1, 0)) / 2);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      out.push_back({intersect_lines(f.line(i), f.line(j)), i, j});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

Arrangement::Arrangement(LineFamily family)
    : family_(std::move(family)), incidences_(incidence_set(family_)) {
  approx_.reserve(incidences_.size());
  for (const auto& inc : incidences_) {
    approx_.emplace_back(to_double(inc.point.x), to_double(inc.point.y));
  }
}

std::size_t Arrangement::pair_index(int i, int j) const {
  if (i > j) std::swap(i, j);
  const auto n = static_cast<std::size_t>(size());
  const auto a = static_cast<std::size_t>(i);
  const auto b = static_cast<std::size_t>(j);
  // Row i starts after sum_{k<i} (n-1-k) entries.
  return a * (2 * n - a - 1) / 2 + (b - a - 1);
}

const Incidence& Arrangement::incidence(int i, int j) const {
  return incidences_[pair_index(i, j)];
}

// ---------------------------------------------------------------------------

std::string to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::ParallelPair: return "parallel-pair";
    case ViolationKind::ConcurrentTriple: return "concurrent-triple";
    case ViolationKind::CollinearIncidences: return "collinear-incidences";
  }
  return "unknown";
}

namespace {

constexpr std::size_t kMaxReportedCollinear = 64;

bool share_line(const Incidence& p, const Incidence& q) {
  return p.first == q.first || p.first == q.second || p.second == q.first ||
         p.second == q.second;
}

// Canonical representative of the undirected direction of v: upper half-plane.
Point undirected(Point v) {
  if (sign(v.y) < 0 || (v.y == 0 && sign(v.x) < 0)) return {-v.x, -v.y};
  return v;
}

bool undirected_less(const Point& u, const Point& v) { return sign(cross(u, v)) > 0; }

void collinear_violations(const std::vector<Incidence>& pts, GeneralPositionReport& report) {
  std::set<std::vector<int>> seen;
  const std::size_t n = pts.size();
  std::vector<double> px(n), py(n);
  for (std::size_t k = 0; k < n; ++k) {
    px[k] = to_double(pts[k].point.x);
    py[k] = to_double(pts[k].point.y);
  }
  const auto record = [&](std::size_t a, std::size_t b, std::size_t c) {
    std::set<int> ids{pts[a].first, pts[a].second, pts[b].first,
                      pts[b].second, pts[c].first, pts[c].second};
    std::vector<int> key(ids.begin(), ids.end());
    if (seen.size() < kMaxReportedCollinear && seen.insert(key).second) {
      report.violations.push_back({ViolationKind::CollinearIncidences, key});
    }
  };
  constexpr double kUnit = 0x1.0p-52;
  std::vector<std::pair<double, std::size_t>> angles;
  std::vector<std::pair<Point, std::size_t>> exact_dirs;
  for (std::size_t k = 0; k < n; ++k) {
    angles.clear();
    double max_err = 0.0;
    bool exact_mode = !std::isfinite(px[k]) || !std::isfinite(py[k]);
    for (std::size_t q = 0; q < n && !exact_mode; ++q) {
      if (q == k || share_line(pts[k], pts[q])) continue;
      const double dx = px[q] - px[k];
      const double dy = py[q] - py[k];
      const double len = std::hypot(dx, dy);
      const double scale = std::abs(px[q]) + std::abs(px[k]) + std::abs(py[q]) + std::abs(py[k]);
      if (!std::isfinite(len) || len == 0.0) {
        exact_mode = true;
        break;
      }
      max_err = std::max(max_err, 8 * kUnit * scale / len);
      double theta = std::atan2(dy, dx);
      if (theta < 0) theta += M_PI;
      if (theta >= M_PI) theta -= M_PI;
      angles.emplace_back(theta, q);
    }
    if (!exact_mode && max_err < 1e-7) {
      std::sort(angles.begin(), angles.end());
      const double window = 2 * max_err + 1e-15;
      const auto check = [&](std::size_t a, std::size_t b) {
        const Point u = pts[a].point - pts[k].point;
        const Point v = pts[b].point - pts[k].point;
        if (cross(u, v) == 0) record(k, a, b);
      };
      for (std::size_t i = 0; i < angles.size(); ++i) {
        for (std::size_t j = i + 1; j < angles.size() && angles[j].first - angles[i].first <= window;
             ++j) {
          check(angles[i].second, angles[j].second);
        }
      }
      // Directions near 0 and near pi are the same undirected direction.
      for (std::size_t i = 0; i < angles.size() && angles[i].first <= window; ++i) {
        for (std::size_t j = angles.size(); j-- > i + 1 && M_PI - angles[j].first <= window;) {
          check(angles[i].second, angles[j].second);
        }
      }
      continue;
    }
    exact_dirs.clear();
    for (std::size_t q = 0; q < n; ++q) {
      if (q == k || share_line(pts[k], pts[q])) continue;
      exact_dirs.emplace_back(undirected(pts[q].point - pts[k].point), q);
    }
    std::sort(exact_dirs.begin(), exact_dirs.end(),
              [](const auto& u, const auto& v) { return undirected_less(u.first, v.first); });
    for (std::size_t i = 1; i < exact_dirs.size(); ++i) {
      if (cross(exact_dirs[i - 1].first, exact_dirs[i].first) == 0) {
        record(k, exact_dirs[i - 1].second, exact_dirs[i].second);
      }
    }
  }
}

bool point_less(const Point& p, const Point& q) {
  if (p.x != q.x) return p.x < q.x;
  return p.y < q.y;
}

}  // namespace

GeneralPositionReport validate_general_position(const LineFamily& f,
                                                std::size_t collinearity_limit) {
  GeneralPositionReport report;
  const int n = f.size();
  std::vector<Incidence> pts;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (f.line(i).parallel_to(f.line(j))) {
        report.violations.push_back({ViolationKind::ParallelPair, {i, j}});
      } else {
        pts.push_back({intersect_lines(f.line(i), f.line(j)), i, j});
      }
    }
  }

  // Concurrency: equal incidence points from different pairs.
  std::vector<std::size_t> order(pts.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return point_less(pts[a].point, pts[b].point); });
  std::vector<char> concurrent(pts.size(), 0);
  for (std::size_t s = 0; s < order.size();) {
    std::size_t e = s + 1;
    while (e < order.size() && pts[order[e]].point == pts[order[s]].point) ++e;
    if (e - s > 1) {
      std::set<int> ids;
      for (std::size_t k = s; k < e; ++k) {
        ids.insert(pts[order[k]].first);
        ids.insert(pts[order[k]].second);
        concurrent[order[k]] = 1;
      }
      report.violations.push_back(
          {ViolationKind::ConcurrentTriple, std::vector<int>(ids.begin(), ids.end())});
    }
    s = e;
  }

  if (pts.size() <= collinearity_limit) {
    // Coincident points are already reported; check distinct points only.
    std::vector<Incidence> distinct;
    for (std::size_t k = 0; k < pts.size(); ++k) {
      if (!concurrent[k]) distinct.push_back(pts[k]);
    }
    collinear_violations(distinct, report);
  } else {
    report.collinearity_checked = false;
  }
  report.ok = report.violations.empty();
  return report;
}

// ---------------------------------------------------------------------------

namespace {

bool separates(const Direction& u, const std::vector<Point>& points,
               std::span<const LineFamily> families) {
  for (const auto& f : families) {
    for (const auto& l : f.lines()) {
      if (u.parallel_to(l)) return false;
    }
  }
  const Scalar nx = -u.dy();
  const Scalar ny = u.dx();
  std::vector<Scalar> keys;
  keys.reserve(points.size());
  for (const auto& p : points) keys.push_back(nx * p.x + ny * p.y);
  std::sort(keys.begin(), keys.end());
  return std::adjacent_find(keys.begin(), keys.end()) == keys.end();
}

}  // namespace

Direction choose_reference_direction(std::span<const LineFamily> families) {
  std::vector<Point> points;
  for (const auto& f : families) {
    for (auto& inc : incidence_set(f)) points.push_back(std::move(inc.point));
  }
  std::sort(points.begin(), points.end(), point_less);
  points.erase(std::unique(points.begin(), points.end()), points.end());

  const Direction down = Direction::down();
  if (separates(down, points, families)) return down;
  for (int s = 1;; ++s) {
    for (int p = 1; p <= s; ++p) {
      for (int sgn : {1, -1}) {
        const Direction u(sgn * p, -s);
        if (separates(u, points, families)) return u;
      }
    }
  }
}

LineFamily perturb_intercepts(const LineFamily& f, const Scalar& magnitude, std::uint64_t seed) {
  Rng rng(seed);
  constexpr std::int64_t kDen = std::int64_t{1} << 30;
  std::set<std::int64_t> used;
  std::vector<Line> out;
  out.reserve(f.lines().size());
  for (const auto& l : f.lines()) {
    std::int64_t h = rng.uniform_int(1, kDen);
    while (!used.insert(h).second) h = rng.uniform_int(1, kDen);
    const Scalar shift = magnitude * ratio(static_cast<long>(h), static_cast<long>(kDen));
    out.emplace_back(l.a(), l.b(), l.c() + shift, l.id());
  }
  return {f.name(), std::move(out)};
}

LineFamily random_family(Rng& rng, int n, std::string name) {
  const auto draw = [&] {
    return ratio(static_cast<long>(rng.uniform_int(-1000, 1000)),
                 static_cast<long>(rng.uniform_int(1, 60)));
  };
  for (;;) {
    std::vector<Line> lines;
    lines.reserve(static_cast<std::size_t>(std::max(n, 0)));
    for (int i = 0; i < n; ++i) lines.push_back(Line::from_slope(draw(), draw()));
    LineFamily f(name, std::move(lines));
    if (validate_general_position(f).ok) return f;
  }
}

LineFamily random_family(int n, std::uint64_t seed, std::string name) {
  Rng rng(seed);
  return random_family(rng, n, std::move(name));
}

}  // namespace linecut
