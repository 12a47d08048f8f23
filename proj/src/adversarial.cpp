#include "linecut/adversarial.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>

#include "linecut/enclosure.hpp"
#include "linecut/error.hpp"
#include "linecut/random.hpp"

namespace linecut {

namespace {

constexpr int kMaxHalvings = 80;

std::vector<std::vector<int>> lattice(int a, int r) {
  std::vector<std::vector<int>> out{{}};
  for (int i = 0; i < r; ++i) {
    std::vector<std::vector<int>> next;
    next.reserve(out.size() * static_cast<std::size_t>(a));
    for (const auto& prefix : out) {
      for (int x = 1; x <= a; ++x) {
        auto v = prefix;
        v.push_back(x);
        next.push_back(std::move(v));
      }
    }
    out = std::move(next);
  }
  return out;
}

Point combine(const std::vector<int>& x, const std::vector<Point>& vectors, std::size_t upto) {
  Point p{0, 0};
  for (std::size_t i = 0; i < upto; ++i) p = p + Scalar(x[i]) * vectors[i];
  return p;
}

// Highest differing coordinate, 0-based; -1 when equal.
int top_difference(const std::vector<int>& x, const std::vector<int>& y, std::size_t upto) {
  for (std::size_t i = upto; i-- > 0;) {
    if (x[i] != y[i]) return static_cast<int>(i);
  }
  return -1;
}

bool separated(const Point& p, const Point& q, const Scalar& slope, const Scalar& eps) {
  const Point d = p - q;
  if (d.x == 0) return false;
  const Scalar s = d.y / d.x;
  return s >= slope - eps && s <= slope + eps;
}

std::vector<std::pair<int, int>> violations(const std::vector<Point>& pts,
                                            const std::vector<std::vector<int>>& coords,
                                            const AdversarialParams& params, std::size_t upto,
                                            int only_level, bool first_only) {
  std::vector<std::pair<int, int>> out;
  const int n = static_cast<int>(pts.size());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const int m = top_difference(coords[static_cast<std::size_t>(i)],
                                   coords[static_cast<std::size_t>(j)], upto);
      if (m < 0 || (only_level >= 0 && m != only_level)) continue;
      if (!separated(pts[static_cast<std::size_t>(i)], pts[static_cast<std::size_t>(j)],
                     params.slopes[static_cast<std::size_t>(m)], params.epsilon)) {
        out.emplace_back(i, j);
        if (first_only) return out;
      }
    }
  }
  return out;
}

std::vector<Point> make_vectors(const AdversarialParams& params) {
  std::vector<Point> v;
  for (std::size_t i = 0; i < params.norms.size(); ++i) {
    v.push_back({params.norms[i], params.norms[i] * params.slopes[i]});
  }
  return v;
}

LineFamily lines_of(const std::vector<Point>& pts, const std::string& name) {
  std::vector<Line> lines;
  lines.reserve(pts.size());
  for (std::size_t k = 0; k < pts.size(); ++k) {
    lines.push_back(Line::from_slope(pts[k].x, pts[k].y, static_cast<int>(k)));
  }
  return {name, std::move(lines)};
}

// Distinct values in (0, 1] with a fixed denominator.
std::vector<Scalar> distinct_fractions(Rng& rng, std::size_t count) {
  constexpr std::int64_t kDen = std::int64_t{1} << 30;
  std::set<std::int64_t> used;
  std::vector<Scalar> out;
  for (std::size_t k = 0; k < count; ++k) {
    std::int64_t h = rng.uniform_int(1, kDen);
    while (!used.insert(h).second) h = rng.uniform_int(1, kDen);
    out.push_back(ratio(static_cast<long>(h), static_cast<long>(kDen)));
  }
  return out;
}

bool distinct_slopes(const std::vector<Point>& pts) {
  std::set<Scalar> seen;
  for (const auto& p : pts) {
    if (!seen.insert(p.x).second) return false;
  }
  return true;
}

}  // namespace

HardInstance build_hard_family(int a, int r, const BuildOptions& options) {
  if (a < 1 || r < 1) throw Error("build_hard_family needs a >= 1 and r >= 1");
  double size = 1;
  for (int i = 0; i < r; ++i) size *= a;
  if (size > static_cast<double>(options.size_cap)) {
    throw SizeCap("a^r = " + std::to_string(static_cast<long long>(size)) + " exceeds the cap of " +
                  std::to_string(options.size_cap));
  }

  HardInstance inst;
  AdversarialParams& params = inst.params;
  params.a = a;
  params.r = r;
  params.epsilon = Scalar(1, 4);
  for (int i = 1; i <= r; ++i) params.slopes.emplace_back(i);
  inst.coords = lattice(a, r);

  const bool fixed_norms = !options.norms.empty();
  if (fixed_norms) {
    if (static_cast<int>(options.norms.size()) != r) throw Error("norm schedule needs r entries");
    params.norms = options.norms;
  } else {
    params.norms.assign(static_cast<std::size_t>(r), Scalar(1));
    for (int j = 1; j < r; ++j) {
      params.norms[static_cast<std::size_t>(j)] = params.norms[static_cast<std::size_t>(j - 1)];
      const auto sub = lattice(a, j + 1);
      for (;;) {
        const auto v = make_vectors(params);
        std::vector<Point> pts;
        for (const auto& x : sub) pts.push_back(combine(x, v, static_cast<std::size_t>(j + 1)));
        if (violations(pts, sub, params, static_cast<std::size_t>(j + 1), j, true).empty()) break;
        params.norms[static_cast<std::size_t>(j)] *= 2;
      }
    }
  }
  params.vectors = make_vectors(params);

  std::vector<Point> base;
  for (const auto& x : inst.coords) base.push_back(combine(x, params.vectors, x.size()));
  if (!fixed_norms && !violations(base, inst.coords, params, static_cast<std::size_t>(r), -1, true).empty()) {
    throw Error("separation property failed after norm search");
  }

  // A fixed schedule may collapse slopes; those are spread as well.
  const bool spread_slopes = !distinct_slopes(base);
  params.perturbation_seed = options.seed;
  Rng rng(options.seed);
  const auto dc = distinct_fractions(rng, base.size());
  const auto dm = distinct_fractions(rng, base.size());
  Scalar magnitude(1, 8);
  for (int attempt = 0; attempt < kMaxHalvings; ++attempt, magnitude /= 2) {
    std::vector<Point> pts = base;
    if (base.size() > 2) {
      for (std::size_t k = 0; k < pts.size(); ++k) {
        pts[k].y += magnitude * dc[k];
        if (spread_slopes) pts[k].x += magnitude * dm[k];
      }
    }
    if (!distinct_slopes(pts)) continue;
    if (!fixed_norms &&
        !violations(pts, inst.coords, params, static_cast<std::size_t>(r), -1, true).empty()) {
      continue;
    }
    LineFamily fam = lines_of(pts, "A");
    if (!validate_general_position(fam).ok) continue;
    params.perturbation = base.size() > 2 ? magnitude : Scalar(0);
    inst.points = std::move(pts);
    inst.a = std::move(fam);
    return inst;
  }
  throw Error("could not perturb the hard family into general position");
}

std::vector<std::pair<int, int>> separation_violations(const HardInstance& inst) {
  return violations(inst.points, inst.coords, inst.params,
                    static_cast<std::size_t>(inst.params.r), -1, false);
}

StripHardnessReport verify_strip_hardness(const HardInstance& inst, int oracle_cap) {
  if (inst.a.size() > oracle_cap) {
    throw OracleCap("family of " + std::to_string(inst.a.size()) +
                    " lines exceeds the exact-oracle cap of " + std::to_string(oracle_cap));
  }
  StripHardnessReport report;
  const int r = inst.params.r;
  const int a = inst.params.a;
  const Arrangement arr(inst.a);

  std::vector<Scalar> xs;
  for (const auto& inc : arr.incidences()) xs.push_back(inc.point.x);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  const int k = static_cast<int>(xs.size());

  // Position 2i is the gap before xs[i] (2k is after the last); 2i+1 is xs[i].
  const int positions = 2 * k + 1;
  const auto place = [&](int pos) -> Scalar {
    if (pos % 2 == 1) return xs[static_cast<std::size_t>(pos / 2)];
    const int i = pos / 2;
    if (k == 0) return Scalar(0);
    if (i == 0) return Scalar(xs.front() - 1);
    if (i == k) return Scalar(xs.back() + 1);
    return Scalar((xs[static_cast<std::size_t>(i - 1)] + xs[static_cast<std::size_t>(i)]) / 2);
  };

  std::map<std::pair<int, int>, int> memo;
  const auto strip_mu = [&](int lo, int hi) {
    const auto key = std::make_pair(lo, hi);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    ConvexRegion region = ConvexRegion::whole_plane();
    if (lo >= 0) region = region.intersect(ConvexRegion::from_halfplane(HalfPlane::leq(-1, 0, -place(lo))));
    if (hi < positions) region = region.intersect(ConvexRegion::from_halfplane(HalfPlane::leq(1, 0, place(hi))));
    const int mu = mu_exact(arr, Region(region)).size;
    memo.emplace(key, mu);
    return mu;
  };

  std::vector<int> bounds;
  const std::function<void(int)> walk = [&](int from) {
    if (!report.hard) return;
    if (static_cast<int>(bounds.size()) == r - 1) {
      ++report.partitions;
      std::vector<int> mus;
      bool ok = false;
      for (int s = 0; s < r; ++s) {
        const int lo = s == 0 ? -1 : bounds[static_cast<std::size_t>(s - 1)];
        const int hi = s == r - 1 ? positions : bounds[static_cast<std::size_t>(s)];
        const int mu = strip_mu(lo, hi);
        mus.push_back(mu);
        if (mu <= a) {
          ok = true;
          break;
        }
      }
      if (!ok) {
        report.hard = false;
        StripPartition bad;
        for (int b : bounds) bad.boundaries.push_back(place(b));
        bad.mu = std::move(mus);
        report.violation = std::move(bad);
      }
      return;
    }
    for (int pos = from; pos < positions; ++pos) {
      bounds.push_back(pos);
      walk(pos);
      bounds.pop_back();
    }
  };
  walk(0);
  return report;
}

TwoFamilyInstance build_two_family_instance(int a, int r, const Scalar& h, const BuildOptions& options) {
  if (h <= 0) throw Error("placement height must be positive");
  TwoFamilyInstance out;
  out.hard = build_hard_family(a, r, options);
  out.height = h;

  const auto incidences = incidence_set(out.hard.a);
  Scalar xmin(0), xmax(0), ymax(0);
  if (!incidences.empty()) {
    xmin = xmax = incidences.front().point.x;
    ymax = incidences.front().point.y;
    for (const auto& inc : incidences) {
      xmin = std::min(xmin, inc.point.x);
      xmax = std::max(xmax, inc.point.x);
      ymax = std::max(ymax, inc.point.y);
    }
  }
  out.top_of_a = ymax;
  out.center = {Scalar((xmin + xmax) / 2), Scalar(ymax + h)};

  const int n = out.hard.a.size();
  Rng rng(options.seed ^ 0x9e3779b97f4a7c15ULL);
  Scalar rho(1, 4 * (n + 4) * (n + 4));
  for (int attempt = 0; attempt < kMaxHalvings; ++attempt) {
    // Slopes k - (n-1)/2 + 1/3 stay off the integer slopes of A.
    const auto ts = distinct_fractions(rng, static_cast<std::size_t>(n));
    std::vector<Line> lines;
    for (int k = 0; k < n; ++k) {
      const Scalar& t = ts[static_cast<std::size_t>(k)];
      const Point on_circle{Scalar((1 - t * t) / (1 + t * t)), Scalar(2 * t / (1 + t * t))};
      const Point q = out.center + rho * on_circle;
      const Scalar slope = Scalar(k) - ratio(n - 1, 2) + Scalar(1, 3) + ratio(attempt, 7);
      lines.push_back(Line::from_slope(slope, Scalar(q.y - slope * q.x), k));
    }
    LineFamily b("B", std::move(lines));
    Scalar worst(0);
    for (const auto& inc : incidence_set(b)) {
      const Point d = inc.point - out.center;
      worst = std::max(worst, Scalar(dot(d, d)));
    }
    if (worst > 1) {
      rho /= 2;
      continue;
    }
    if (!validate_general_position(out.hard.a.merged_with(b)).ok) continue;
    out.b = std::move(b);
    out.disk_radius = std::sqrt(to_double(worst));
    return out;
  }
  throw Error("could not place the second family in general position");
}

Json to_json(const AdversarialParams& p) {
  Json j;
  j["a"] = p.a;
  j["r"] = p.r;
  j["slopes"] = Json::array();
  for (const auto& s : p.slopes) j["slopes"].push_back(to_json(s));
  j["epsilon"] = to_json(p.epsilon);
  j["norms"] = Json::array();
  for (const auto& s : p.norms) j["norms"].push_back(to_json(s));
  j["growth_factors"] = Json::array();
  for (std::size_t i = 1; i < p.norms.size(); ++i) {
    j["growth_factors"].push_back(to_json(Scalar(p.norms[i] / p.norms[i - 1])));
  }
  j["vectors"] = Json::array();
  for (const auto& v : p.vectors) j["vectors"].push_back(to_json(v));
  j["perturbation"] = to_json(p.perturbation);
  j["perturbation_seed"] = p.perturbation_seed;
  return j;
}

}  // namespace linecut
