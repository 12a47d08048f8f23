#include "linecut/cuts.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace linecut {

// ---------------------------------------------------------------------------
// Thresholds.

namespace {

mpz_class ipow(const mpz_class& base, unsigned long e) {
  mpz_class out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
  return out;
}

// sign of k^r * 3^ri - (2n)^ri
int compare_level(long k, int n, int r, int r_i) {
  const mpz_class lhs = ipow(mpz_class(k), static_cast<unsigned long>(r)) *
                        ipow(mpz_class(3), static_cast<unsigned long>(r_i));
  const mpz_class rhs = ipow(mpz_class(2L * n), static_cast<unsigned long>(r_i));
  return cmp(lhs, rhs) < 0 ? -1 : (cmp(lhs, rhs) > 0 ? 1 : 0);
}

}  // namespace

int threshold_level(int n, int r, int r_i) {
  if (n <= 0) return -2;
  const double estimate = std::ceil(std::pow(2.0 * n / 3.0, static_cast<double>(r_i) / r));
  long k = std::max(0L, static_cast<long>(estimate) - 2);
  while (compare_level(k, n, r, r_i) < 0) ++k;
  while (k > 0 && compare_level(k - 1, n, r, r_i) >= 0) --k;
  return static_cast<int>(k) - 2;
}

bool meets_threshold(long m, int n, int r, int r_i) {
  if (m + 2 < 0) return false;
  return compare_level(m + 2, n, r, r_i) >= 0;
}

bool exceeds_threshold(long m, int n, int r, int r_i) {
  if (m + 2 < 0) return false;
  return compare_level(m + 2, n, r, r_i) > 0;
}

Thresholds compute_thresholds(int n, int r, const std::vector<int>& parts) {
  if (n < 1) throw BadPartition("family must be nonempty");
  if (parts.empty()) throw BadPartition("no parts given");
  int sum = 0;
  for (int p : parts) {
    if (p <= 0) throw BadPartition("parts must be positive");
    sum += p;
  }
  if (sum != r) throw BadPartition("parts must sum to r");
  Thresholds out{n, r, {}};
  for (int p : parts) out.parts.push_back({p, threshold_level(n, r, p)});
  return out;
}

// ---------------------------------------------------------------------------
// Projections of the incidence set onto a vector, sorted with a floating
// filter and grouped into exactly equal values.

namespace {

class ProjectionIndex {
 public:
  ProjectionIndex(const Arrangement& arr, const Point& v) : arr_(arr), v_(v) {
    const std::size_t n = arr.incidences().size();
    const double vx = to_double(v.x);
    const double vy = to_double(v.y);
    approx_.resize(n);
    magnitude_.resize(n);
    exact_.resize(n);
    order_.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
      const double px = arr.approx_x(k);
      const double py = arr.approx_y(k);
      approx_[k] = vx * px + vy * py;
      magnitude_[k] = std::abs(vx * px) + std::abs(vy * py) + 1e-300;
    }
    std::iota(order_.begin(), order_.end(), 0);
    std::sort(order_.begin(), order_.end(),
              [&](std::size_t a, std::size_t b) { return approx_[a] < approx_[b]; });
    // Insertion pass with the exact comparator repairs near-ties.
    for (std::size_t i = 1; i < n; ++i) {
      for (std::size_t j = i; j > 0 && compare(order_[j], order_[j - 1]) < 0; --j) {
        std::swap(order_[j], order_[j - 1]);
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == 0 || compare(order_[i - 1], order_[i]) != 0) group_start_.push_back(i);
    }
  }

  std::size_t groups() const { return group_start_.size(); }
  const Scalar& value(std::size_t g) { return exact(order_[group_start_[g]]); }
  // Incidence indices in group g.
  std::vector<std::size_t> members(std::size_t g) const {
    const std::size_t end = g + 1 < group_start_.size() ? group_start_[g + 1] : order_.size();
    return {order_.begin() + static_cast<std::ptrdiff_t>(group_start_[g]),
            order_.begin() + static_cast<std::ptrdiff_t>(end)};
  }

 private:
  const Scalar& exact(std::size_t k) {
    if (!exact_[k]) exact_[k] = dot(v_, arr_.incidences()[k].point);
    return *exact_[k];
  }

  int compare(std::size_t a, std::size_t b) {
    return filtered_sign(approx_[a] - approx_[b], magnitude_[a] + magnitude_[b], [&] {
      return sign(exact(a) - exact(b));
    });
  }

  const Arrangement& arr_;
  Point v_;
  std::vector<double> approx_;
  std::vector<double> magnitude_;
  std::vector<std::optional<Scalar>> exact_;
  std::vector<std::size_t> order_;
  std::vector<std::size_t> group_start_;
};

bool boundary_parallel_to_family(const Arrangement& arr, const Direction& d) {
  for (const auto& l : arr.family().lines()) {
    if (l.a() * d.dy() - l.b() * d.dx() == 0) return true;
  }
  return false;
}

// Decision-mode enclosure test with a maximum witness when affordable.
MuResult witness_in(const Arrangement& arr, const Region& region, int level,
                    std::uint64_t node_limit) {
  if (region.convex() && region.pieces.front().halfplanes.size() == 1) {
    try {
      return mu_halfplane(arr.family(), region.pieces.front().halfplanes.front());
    } catch (const BoundaryDegeneracy&) {
    }
  }
  try {
    return mu_exact(arr, region, std::nullopt, node_limit);
  } catch (const SearchBudgetExceeded&) {
    return mu_exact(arr, region, std::max(level, 0));
  }
}

bool encloses_at_least(const Arrangement& arr, const Region& region, int level,
                       std::optional<std::pair<int, int>> excluded = std::nullopt) {
  if (level <= 0) return true;
  if (level == 1) return arr.size() >= 1;
  EnclosureGraph g(arr, region);
  if (excluded) g.remove_edge(excluded->first, excluded->second);
  return static_cast<int>(max_clique(g, {level, 0}).size()) >= level;
}

}  // namespace

MuResult mu_of_halfplane(const Arrangement& arr, const HalfPlane& h) {
  try {
    return mu_halfplane(arr.family(), h);
  } catch (const BoundaryDegeneracy&) {
    return mu_exact(arr, ConvexRegion::from_halfplane(h));
  }
}

CriticalHalfPlane critical_halfplane(const Arrangement& arr, const Direction& d, int m) {
  if (m <= 1) throw LevelTooSmall("critical half-planes need a level of at least 2");
  if (m > arr.size()) {
    throw NoSuchLevel("level " + std::to_string(m) + " exceeds family size " +
                      std::to_string(arr.size()));
  }
  const bool parallel = boundary_parallel_to_family(arr, d);
  ProjectionIndex index(arr, d.vec());
  const std::size_t groups = index.groups();
  // Probe k: a translate strictly between group k and group k + 1, so no
  // incidence lies on the boundary and the enclosed sets match group k.
  const auto probe = [&](std::size_t k) {
    const Scalar t = k + 1 < groups ? Scalar((index.value(k) + index.value(k + 1)) / 2) : Scalar(index.value(k) + 1);
    const HalfPlane h = HalfPlane::below(d, t);
    if (!parallel) return mu_halfplane(arr.family(), h);
    return mu_exact(arr, ConvexRegion::from_halfplane(h), m);
  };
  std::size_t lo = 0;
  std::size_t hi = groups - 1;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (probe(mid).size >= m) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  MuResult found = probe(lo);
  CriticalHalfPlane out{HalfPlane::below(d, index.value(lo)), d, index.value(lo), m, {}};
  found.witness.region = ConvexRegion::from_halfplane(out.halfplane);
  out.witness = std::move(found.witness);
  return out;
}

CriticalHalfPlane critical_halfplane(const LineFamily& f, const Direction& d, int m) {
  return critical_halfplane(Arrangement(f), d, m);
}

// ---------------------------------------------------------------------------
// Two-cuts.

namespace {

Direction grid_direction(int k, int count) {
  const double theta = 2.0 * M_PI * k / count;
  const auto dx = std::llround(std::cos(theta) * 4096.0);
  const auto dy = std::llround(std::sin(theta) * 4096.0);
  return {Scalar(static_cast<long>(dx)), Scalar(static_cast<long>(dy))};
}

Direction rotate_quarter(const Direction& d, int quarters) {
  Point v = d.vec();
  for (int q = 0; q < quarters; ++q) v = Point{-v.y, v.x};
  return Direction(v);
}

Direction direction_between(const Direction& u, const Direction& v) {
  // Exact: the sum of L1-normalized vectors bisects the shorter arc in L1 angle.
  const Scalar nu = abs(u.dx()) + abs(u.dy());
  const Scalar nv = abs(v.dx()) + abs(v.dy());
  const Point mid{u.dx() / nu + v.dx() / nv, u.dy() / nu + v.dy() / nv};
  if (mid.x == 0 && mid.y == 0) return rotate_quarter(u, 1);
  return Direction(mid);
}

}  // namespace

std::optional<TwoCut> two_cut_at(const Arrangement& a, const Arrangement& b, int r1, int r2,
                                 const Direction& d, const TwoCutOptions& options) {
  const int r = r1 + r2;
  const std::array<int, 2> parts{r1, r2};
  std::optional<Scalar> lo;
  std::optional<Scalar> hi;
  std::array<std::array<int, 2>, 2> levels{};
  const std::array<const Arrangement*, 2> fams{&a, &b};
  for (int f = 0; f < 2; ++f) {
    const Arrangement& arr = *fams[static_cast<std::size_t>(f)];
    for (int side = 0; side < 2; ++side) {
      const int level = threshold_level(arr.size(), r, parts[static_cast<std::size_t>(side)]);
      levels[static_cast<std::size_t>(f)][static_cast<std::size_t>(side)] = level;
      if (level <= 1) continue;
      if (level > arr.size()) return std::nullopt;
      if (side == 0) {
        const Scalar t = critical_halfplane(arr, d, level).translate;
        if (!lo || t > *lo) lo = t;
      } else {
        const Scalar t = -critical_halfplane(arr, d.opposite(), level).translate;
        if (!hi || t < *hi) hi = t;
      }
    }
  }
  if (lo && hi && *lo > *hi) return std::nullopt;
  Scalar c;
  if (lo && hi) {
    c = (*lo + *hi) / 2;
  } else if (lo) {
    c = *lo + 1;
  } else if (hi) {
    c = *hi - 1;
  } else {
    c = 0;
  }
  TwoCut cut{d, c, r1, r2, {HalfPlane::below(d, c), HalfPlane::below(d, c).flipped()}, {}, {}};
  for (int f = 0; f < 2; ++f) {
    const Arrangement& arr = *fams[static_cast<std::size_t>(f)];
    for (int side = 0; side < 2; ++side) {
      const int level = levels[static_cast<std::size_t>(f)][static_cast<std::size_t>(side)];
      MuResult mu = witness_in(arr, ConvexRegion::from_halfplane(cut.regions[static_cast<std::size_t>(side)]),
                               level, options.clique_node_limit);
      if (mu.size < level) return std::nullopt;
      auto& slot = f == 0 ? cut.a_witness : cut.b_witness;
      slot[static_cast<std::size_t>(side)] = std::move(mu.witness);
    }
  }
  return cut;
}

std::optional<TwoCut> find_equitable_two_cut(const Arrangement& a, const Arrangement& b, int r1,
                                             int r2, const TwoCutOptions& options) {
  if (r1 < 1 || r2 < 1) throw BadPartition("two-cut parts must be positive");
  const std::vector<LineFamily> fams{a.family(), b.family()};
  const Direction reference = choose_reference_direction(fams);
  if (auto cut = two_cut_at(a, b, r1, r2, reference, options)) return cut;
  const int start = std::max(options.initial_directions, 1);
  for (int k = 0; k < start; ++k) {
    if (auto cut = two_cut_at(a, b, r1, r2, grid_direction(k, start), options)) return cut;
  }
  for (int count = 2 * start; count <= options.max_directions; count *= 2) {
    for (int k = 1; k < count; k += 2) {
      if (auto cut = two_cut_at(a, b, r1, r2, grid_direction(k, count), options)) return cut;
    }
  }
  const int r = r1 + r2;
  std::vector<Direction> ring;
  std::vector<Sign> signs;
  for (int k = 0; k < start; ++k) {
    ring.push_back(grid_direction(k, start));
    signs.push_back(sign_at(a, b, r, r1, ring.back()));
  }
  for (std::size_t k = 0; k < ring.size(); ++k) {
    const std::size_t next = (k + 1) % ring.size();
    if (signs[k] == signs[next]) continue;
    Direction same = ring[k];
    Direction diff = ring[next];
    for (int step = 0; step < options.bisection_steps; ++step) {
      const Direction mid = direction_between(same, diff);
      if (auto cut = two_cut_at(a, b, r1, r2, mid, options)) return cut;
      if (sign_at(a, b, r, r1, mid) == signs[k]) {
        same = mid;
      } else {
        diff = mid;
      }
    }
  }
  return std::nullopt;
}

std::optional<TwoCut> find_equitable_two_cut(const LineFamily& a, const LineFamily& b, int r1,
                                             int r2, const TwoCutOptions& options) {
  return find_equitable_two_cut(Arrangement(a), Arrangement(b), r1, r2, options);
}

// ---------------------------------------------------------------------------
// Signs and summands.

Sign sign_at(const Arrangement& a, const Arrangement& b, int r, int r1, const Direction& d) {
  const int level_a = threshold_level(a.size(), r, r1);
  const int level_b = threshold_level(b.size(), r, r1);
  if (level_a >= 2 && level_a <= a.size()) {
    const HalfPlane h = critical_halfplane(a, d, level_a).halfplane;
    const int mu_b = mu_of_halfplane(b, h).size;
    return exceeds_threshold(mu_b, b.size(), r, r1) ? Sign::Positive : Sign::Negative;
  }
  if (level_b >= 2 && level_b <= b.size()) {
    const HalfPlane h = critical_halfplane(b, d, level_b).halfplane;
    const int mu_a = mu_of_halfplane(a, h).size;
    return exceeds_threshold(mu_a, a.size(), r, r1) ? Sign::Negative : Sign::Positive;
  }
  return Sign::Positive;
}

SignTable assign_signs(const Arrangement& a, const Arrangement& b, int r, const Direction& reference,
                       const SignOptions& options) {
  SignTable table{r, {}};
  for (int r1 = 1; r1 < r; ++r1) table.signs[r1] = sign_at(a, b, r, r1, reference);
  for (int q = 1; q <= std::min(options.extra_directions, 3); ++q) {
    const Direction other = rotate_quarter(reference, q);
    for (int r1 = 1; r1 < r; ++r1) {
      const Sign expected = table.signs[r1];
      if (sign_at(a, b, r, r1, other) == expected) continue;
      // Walk toward the sign change; an equitable cut sits at the switch.
      Direction same = reference;
      Direction diff = other;
      for (const Direction& d : {same, diff}) {
        if (auto cut = two_cut_at(a, b, r1, r - r1, d, options.two_cut)) throw TwoCutMissed(*cut);
      }
      for (int step = 0; step < options.bisection_steps; ++step) {
        const Direction mid = direction_between(same, diff);
        if (mid == same || mid == diff) break;
        if (auto cut = two_cut_at(a, b, r1, r - r1, mid, options.two_cut)) throw TwoCutMissed(*cut);
        if (sign_at(a, b, r, r1, mid) == expected) {
          same = mid;
        } else {
          diff = mid;
        }
      }
    }
  }
  return table;
}

Summands find_summands(const SignTable& signs, int r) {
  if (r < 2) throw BadPartition("summands need r >= 2");
  const auto small = [&](int p) { return 3 * p <= 2 * r; };
  const auto sign_of = [&](int p) {
    const auto it = signs.signs.find(p);
    if (it == signs.signs.end()) throw BadPartition("sign table misses " + std::to_string(p));
    return it->second;
  };
  for (int r1 = 1; 2 * r1 <= r; ++r1) {
    const int r2 = r - r1;
    if (small(r1) && small(r2) && sign_of(r1) == sign_of(r2)) return {{r1, r2}, sign_of(r1)};
  }
  for (int r1 = 1; 3 * r1 <= r; ++r1) {
    for (int r2 = r1; r1 + 2 * r2 <= r; ++r2) {
      const int r3 = r - r1 - r2;
      if (!small(r1) || !small(r2) || !small(r3)) continue;
      if (sign_of(r1) == sign_of(r2) && sign_of(r2) == sign_of(r3)) {
        return {{r1, r2, r3}, sign_of(r1)};
      }
    }
  }
  throw SummandsNotFound("no same-signed pair or triple for r = " + std::to_string(r));
}

// ---------------------------------------------------------------------------
// Canonical cuttings.

std::string to_string(CuttingMode mode) {
  return mode == CuttingMode::Direct ? "direct" : "blended";
}

Scalar blending_epsilon(const Arrangement& a) {
  std::vector<Scalar> xs;
  for (const auto& inc : a.incidences()) xs.push_back(inc.point.x);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  if (xs.size() < 2) return 1;
  Scalar gap = xs[1] - xs[0];
  for (std::size_t i = 2; i < xs.size(); ++i) gap = std::min(gap, Scalar(xs[i] - xs[i - 1]));
  return gap / 2;
}

namespace {

struct SweepEvent {
  Point v;  // incidence minus apex
  double key;
  double err;
  std::size_t incidence;
};

// Sweep order from the down ray: clockwise for side +1, counter-clockwise
// for side -1. Zero vectors (incidence at the apex) come first.
bool sweep_before(const SweepEvent& a, const SweepEvent& b, int side) {
  if (std::abs(a.key - b.key) > a.err + b.err) return a.key < b.key;
  const Point down{0, -1};
  const bool za = a.v.x == 0 && a.v.y == 0;
  const bool zb = b.v.x == 0 && b.v.y == 0;
  if (za || zb) return za && !zb;
  return side > 0 ? cw_before(down, a.v, b.v) : ccw_before(down, a.v, b.v);
}

Direction event_direction(const Point& v) {
  if (v.x == 0 && v.y == 0) return Direction::down();
  return Direction(v);
}

Region sweep_region(const Point& apex, int side, const Direction& d) {
  return side > 0 ? sector(apex, Direction::down(), d) : sector(apex, d, Direction::down());
}

// Direction along u (t = 0) to v (t = 1), staying inside the half-turn on
// the given side of the down ray.
Direction blend(const Direction& u, const Direction& v, const Scalar& t, int side) {
  if (u == v || t == 0) return u;
  if (t == 1) return v;
  const Point a = u.vec();
  const Point b = v.vec();
  if (sign(cross(a, b)) == 0 && sign(dot(a, b)) < 0) {
    const Direction perp = side > 0 ? Direction(-1, 0) : Direction(1, 0);
    if (t <= Scalar(1, 2)) return blend(u, perp, 2 * t, side);
    return blend(perp, v, 2 * t - 1, side);
  }
  const Scalar na = abs_value(a.x) + abs_value(a.y);
  const Scalar nb = abs_value(b.x) + abs_value(b.y);
  const Point w = (1 - t) / na * a + t / nb * b;
  return Direction(w);
}

Direction later(const Direction& u, const Direction& v, int side) {
  const Point down{0, -1};
  const bool before = side > 0 ? cw_before(down, u.vec(), v.vec()) : ccw_before(down, u.vec(), v.vec());
  return before ? v : u;
}

const Incidence* incidence_at_x(const Arrangement& a, const Scalar& x) {
  for (const auto& inc : a.incidences()) {
    if (inc.point.x == x) return &inc;
  }
  return nullptr;
}

}  // namespace

std::optional<Direction> minimal_sweep(const Arrangement& arr, const Point& p, int side, int level,
                                       std::optional<std::pair<int, int>> excluded) {
  if (level <= 0) return Direction::down();
  if (level == 1) {
    if (arr.size() >= 1) return Direction::down();
    return std::nullopt;
  }
  const double px = to_double(p.x);
  const double py = to_double(p.y);
  std::vector<SweepEvent> events;
  const auto& incs = arr.incidences();
  for (std::size_t k = 0; k < incs.size(); ++k) {
    const Point v = incs[k].point - p;
    const int sx = sign(v.x);
    if (side > 0 ? sx > 0 : sx < 0) continue;
    const double vx = arr.approx_x(k) - px;
    const double vy = arr.approx_y(k) - py;
    const double len = std::hypot(vx, vy);
    const double scale = std::abs(arr.approx_x(k)) + std::abs(arr.approx_y(k)) + std::abs(px) + std::abs(py);
    const double key = side > 0 ? std::atan2(-vx, -vy) : std::atan2(vx, -vy);
    double err = len > 0 ? 16 * 0x1.0p-52 * scale / len + 1e-15 : INFINITY;
    if (!std::isfinite(err) || !std::isfinite(key)) err = INFINITY;
    events.push_back({v, std::isfinite(key) ? std::abs(key) : 0.0, err, k});
  }
  std::sort(events.begin(), events.end(), [](const SweepEvent& a, const SweepEvent& b) { return a.key < b.key; });
  for (std::size_t i = 1; i < events.size(); ++i) {
    for (std::size_t j = i; j > 0 && sweep_before(events[j], events[j - 1], side); --j) {
      std::swap(events[j], events[j - 1]);
    }
  }
  if (events.empty()) return std::nullopt;
  const auto holds = [&](std::size_t k) {
    return encloses_at_least(arr, sweep_region(p, side, event_direction(events[k].v)), level, excluded);
  };
  if (!holds(events.size() - 1)) return std::nullopt;
  std::size_t lo = 0;
  std::size_t hi = events.size() - 1;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (holds(mid)) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return event_direction(events[lo].v);
}

CanonicalCutting canonical_cutting(const Arrangement& a, const Point& p, int m1, int m2,
                                   CuttingMode mode, const CuttingContext& context) {
  if (p.x < context.x0 || p.x > context.x1) throw OutOfStrip("apex outside the critical strip");
  CanonicalCutting out;
  out.apex = p;
  out.mode = mode;
  const auto sweep = [&](const Point& q, int side, int level) {
    auto d = minimal_sweep(a, q, side, level);
    if (!d) throw ThresholdUnreachable("a half-turn sweep does not reach level " + std::to_string(level));
    return *d;
  };
  Direction ray1 = sweep(p, 1, m1);
  Direction ray2 = sweep(p, -1, m2);

  if (mode == CuttingMode::Blended) {
    const Scalar eps = context.epsilon ? *context.epsilon : blending_epsilon(a);
    out.epsilon = eps;
    const Direction up(0, 1);
    // Blend near the left and right strip boundaries. The corner angle is
    // taken at p itself, which agrees with (x0, y) on the boundary line.
    const auto boundary_blend = [&](const Scalar& xb, const Scalar& s, int side, int level, int b_level) {
      const Incidence* corner = incidence_at_x(a, xb);
      const Point& q = p;
      Direction tilde = up;
      if (corner == nullptr || p.y >= corner->point.y) {
        Direction target = sweep(q, side, level);
        if (context.b != nullptr) {
          if (auto beta = minimal_sweep(*context.b, q, side, b_level)) target = later(target, *beta, side);
        }
        tilde = target;
        if (corner != nullptr && p.y <= corner->point.y + eps) {
          const Scalar t = (p.y - corner->point.y) / eps;
          tilde = blend(up, target, t, side);
          out.blend_t = t;
        }
      }
      out.blend_s = s;
      return tilde;
    };
    if (p.x <= context.x0 + eps) {
      const Scalar s = (p.x - context.x0) / eps;
      ray1 = blend(boundary_blend(context.x0, s, 1, m1, context.n1), ray1, s, 1);
    }
    if (p.x >= context.x1 - eps) {
      const Scalar s = (context.x1 - p.x) / eps;
      ray2 = blend(boundary_blend(context.x1, s, -1, m2, context.n2), ray2, s, -1);
    }
    // Blend next to interior incidence points.
    for (const auto& inc : a.incidences()) {
      const Scalar& xp = inc.point.x;
      if (xp <= context.x0 || xp >= context.x1) continue;
      const std::pair<int, int> pair{inc.first, inc.second};
      if (p.x >= xp && p.x <= xp + eps) {
        const Scalar t = (p.x - xp) / eps;
        auto without = minimal_sweep(a, p, 1, m1, pair);
        if (without) ray1 = blend(*without, ray1, t, 1);
        out.blend_t = t;
      }
      if (p.x <= xp && p.x >= xp - eps) {
        const Scalar t = (xp - p.x) / eps;
        auto without = minimal_sweep(a, p, -1, m2, pair);
        if (without) ray2 = blend(*without, ray2, t, -1);
        out.blend_t = t;
      }
    }
  }

  out.ray1 = ray1;
  out.ray2 = ray2;
  out.regions[0] = sector(p, Direction::down(), ray1);
  out.regions[1] = sector(p, ray2, Direction::down());
  if (ray1 == Direction::down() && ray2 == Direction::down()) {
    out.regions[2] = Region();
  } else {
    out.regions[2] = sector(p, ray1, ray2);
  }
  out.c3_convex = out.regions[2].convex();
  return out;
}

// ---------------------------------------------------------------------------
// Three-cuts.

namespace {

struct Sample {
  bool in_r = false;
  unsigned colours = 0;  // bit i for colour i + 1
};

struct PointLess {
  bool operator()(const Point& p, const Point& q) const {
    if (p.x != q.x) return p.x < q.x;
    return p.y < q.y;
  }
};

}  // namespace

std::optional<ThreeCut> find_equitable_three_cut(const Arrangement& a, const Arrangement& b,
                                                 const std::array<int, 3>& parts,
                                                 const ThreeCutOptions& options,
                                                 KkmSearchState* state_out) {
  KkmSearchState state;
  state.resolution = std::max(options.grid, 1);
  const auto finish = [&](std::optional<ThreeCut> result) {
    if (result) result->state = state;
    if (state_out != nullptr) *state_out = state;
    return result;
  };
  if (options.budget <= 0) return finish(std::nullopt);
  const int r = parts[0] + parts[1] + parts[2];
  std::array<int, 3> m{};
  std::array<int, 3> nb{};
  for (std::size_t i = 0; i < 3; ++i) {
    m[i] = threshold_level(a.size(), r, parts[i]);
    nb[i] = threshold_level(b.size(), r, parts[i]);
  }

  Scalar xmin = 0, xmax = 0, ymin = 0, ymax = 0;
  bool first = true;
  for (const Arrangement* arr : {&a, &b}) {
    for (const auto& inc : arr->incidences()) {
      if (first) {
        xmin = xmax = inc.point.x;
        ymin = ymax = inc.point.y;
        first = false;
      }
      xmin = std::min(xmin, inc.point.x);
      xmax = std::max(xmax, inc.point.x);
      ymin = std::min(ymin, inc.point.y);
      ymax = std::max(ymax, inc.point.y);
    }
  }
  Scalar x0 = m[0] >= 2 ? critical_halfplane(a, Direction(1, 0), m[0]).translate : Scalar(xmin - 1);
  Scalar x1 = m[1] >= 2 ? Scalar(-critical_halfplane(a, Direction(-1, 0), m[1]).translate) : Scalar(xmax + 1);
  if (x0 > x1) return finish(std::nullopt);
  state.x0 = x0;
  state.x1 = x1;
  CuttingContext context{x0, x1, &b, nb[0], nb[1], std::nullopt};

  std::map<Point, Sample, PointLess> memo;
  const auto evaluate = [&](const Point& p) -> Sample {
    if (auto it = memo.find(p); it != memo.end()) return it->second;
    Sample s;
    ++state.samples;
    try {
      const CanonicalCutting cut = canonical_cutting(a, p, m[0], m[1], CuttingMode::Direct, context);
      s.in_r = cut.c3_convex;
      if (s.in_r) {
        ++state.samples_in_r;
        for (std::size_t i = 0; i < 3; ++i) {
          if (encloses_at_least(b, cut.regions[i], nb[i])) s.colours |= 1U << i;
        }
      }
    } catch (const ThresholdUnreachable&) {
    }
    memo.emplace(p, s);
    return s;
  };
  const auto validate = [&](const Point& p) -> std::optional<ThreeCut> {
    const CanonicalCutting cut = canonical_cutting(a, p, m[0], m[1], CuttingMode::Direct, context);
    ThreeCut out{cut, parts, {}, {}, {}};
    for (std::size_t i = 0; i < 3; ++i) {
      MuResult ma = witness_in(a, cut.regions[i], m[i], options.clique_node_limit);
      MuResult mb = witness_in(b, cut.regions[i], nb[i], options.clique_node_limit);
      if (ma.size < m[i] || mb.size < nb[i]) return std::nullopt;
      out.a_witness[i] = std::move(ma.witness);
      out.b_witness[i] = std::move(mb.witness);
    }
    return out;
  };

  const int g = state.resolution;
  const Scalar span = std::max({Scalar(ymax - ymin), Scalar(x1 - x0), Scalar(xmax - xmin), Scalar(1)});
  const auto column = [&](int i) -> Scalar { return x0 + (x1 - x0) * ratio(i, g); };

  // Lower the floor until the bottom row carries colours 1 and 2.
  Scalar floor = ymin - span;
  Scalar step = span;
  for (int attempt = 0; attempt < 40; ++attempt) {
    bool good = true;
    for (int i = 0; i <= g && good; ++i) {
      const Sample s = evaluate({column(i), floor});
      good = s.in_r && (s.colours & 3U) == 3U;
    }
    if (good) break;
    step *= 2;
    floor -= step;
  }
  state.y_floor = floor;
  state.y_top = ymax + span;

  struct Cell {
    Scalar x_lo, x_hi, y_lo, y_hi;
  };
  std::vector<Cell> cells{{x0, x1, floor, state.y_top}};
  for (int level = 0; level < options.budget && !cells.empty(); ++level) {
    state.levels_used = level + 1;
    std::vector<Cell> next;
    for (const Cell& cell : cells) {
      const auto px = [&](int i) -> Scalar { return cell.x_lo + (cell.x_hi - cell.x_lo) * ratio(i, g); };
      const auto py = [&](int j) -> Scalar { return cell.y_lo + (cell.y_hi - cell.y_lo) * ratio(j, g); };
      std::vector<Sample> grid(static_cast<std::size_t>((g + 1) * (g + 1)));
      for (int j = 0; j <= g; ++j) {
        for (int i = 0; i <= g; ++i) {
          const Point p{px(i), py(j)};
          const Sample s = evaluate(p);
          grid[static_cast<std::size_t>(j * (g + 1) + i)] = s;
          if (s.in_r && s.colours == 7U) {
            ++state.tricolored;
            if (auto found = validate(p)) return finish(found);
          }
        }
      }
      for (int j = 0; j < g; ++j) {
        for (int i = 0; i < g; ++i) {
          unsigned seen = 0;
          for (auto [di, dj] : {std::pair{0, 0}, {1, 0}, {0, 1}, {1, 1}}) {
            const Sample& s = grid[static_cast<std::size_t>((j + dj) * (g + 1) + i + di)];
            if (s.in_r) seen |= s.colours;
          }
          if (seen == 7U && static_cast<int>(next.size()) < options.cells_per_level) {
            next.push_back({px(i), px(i + 1), py(j), py(j + 1)});
          }
        }
      }
    }
    cells = std::move(next);
  }
  return finish(std::nullopt);
}

}  // namespace linecut
