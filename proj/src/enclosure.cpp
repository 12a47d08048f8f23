#include "linecut/enclosure.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>

#include "linecut/error.hpp"

namespace linecut {

bool verify_witness(const LineFamily& f, const EnclosureWitness& w) {
  for (int id : w.subset) f.line(id);
  for (std::size_t i = 0; i < w.subset.size(); ++i) {
    for (std::size_t j = i + 1; j < w.subset.size(); ++j) {
      const Line& l1 = f.line(w.subset[i]);
      const Line& l2 = f.line(w.subset[j]);
      if (!w.region.contains(intersect_lines(l1, l2))) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------

EnclosureGraph::EnclosureGraph(int n)
    : n_(n),
      words_(static_cast<std::size_t>((n + 63) / 64)),
      rows_(static_cast<std::size_t>(n) * words_, 0) {}

EnclosureGraph::EnclosureGraph(const Arrangement& arr, const Region& region)
    : EnclosureGraph(arr.size()) {
  const FastRegion fast(region);
  const auto& incs = arr.incidences();
  for (std::size_t k = 0; k < incs.size(); ++k) {
    if (fast.contains(incs[k].point, arr.approx_x(k), arr.approx_y(k))) {
      add_edge(incs[k].first, incs[k].second);
    }
  }
}

void EnclosureGraph::add_edge(int i, int j) {
  rows_[static_cast<std::size_t>(i) * words_ + static_cast<std::size_t>(j >> 6)] |=
      std::uint64_t{1} << (j & 63);
  rows_[static_cast<std::size_t>(j) * words_ + static_cast<std::size_t>(i >> 6)] |=
      std::uint64_t{1} << (i & 63);
}

void EnclosureGraph::remove_edge(int i, int j) {
  rows_[static_cast<std::size_t>(i) * words_ + static_cast<std::size_t>(j >> 6)] &=
      ~(std::uint64_t{1} << (j & 63));
  rows_[static_cast<std::size_t>(j) * words_ + static_cast<std::size_t>(i >> 6)] &=
      ~(std::uint64_t{1} << (i & 63));
}

int EnclosureGraph::degree(int i) const {
  int d = 0;
  const std::uint64_t* r = row(i);
  for (std::size_t w = 0; w < words_; ++w) d += std::popcount(r[w]);
  return d;
}

class CliqueSearch {
 public:
  CliqueSearch(const EnclosureGraph& g, std::uint64_t node_limit)
      : g_(g), node_limit_(node_limit) {}

  // Size of a maximum clique, or a clique of size >= target if one exists
  // (stopping early). Fills best_.
  void maximum(int floor, std::optional<int> target) {
    best_size_ = floor;
    target_ = target;
    std::vector<int> order = degeneracy_order();
    std::vector<int> current;
    expand(current, order);
  }

  // Lexicographically smallest clique of exactly k vertices.
  std::vector<int> lex_smallest(int k) {
    std::vector<int> all(static_cast<std::size_t>(g_.size()));
    std::iota(all.begin(), all.end(), 0);
    std::vector<int> current;
    if (!lex_search(current, all, k)) return {};
    return current;
  }

  int best_size() const { return best_size_; }
  const std::vector<int>& best() const { return best_; }

 private:
  void tick() {
    if (node_limit_ != 0 && ++nodes_ > node_limit_) {
      throw SearchBudgetExceeded("max-clique node budget exhausted");
    }
  }

  // Vertices ordered so that each has few neighbours among those after it;
  // the search expands from the end, so dense cores are tried first.
  std::vector<int> degeneracy_order() const {
    const int n = g_.size();
    std::vector<int> deg(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) deg[static_cast<std::size_t>(v)] = g_.degree(v);
    std::vector<char> removed(static_cast<std::size_t>(n), 0);
    std::vector<int> order;
    order.reserve(static_cast<std::size_t>(n));
    for (int step = 0; step < n; ++step) {
      int pick = -1;
      for (int v = 0; v < n; ++v) {
        if (removed[static_cast<std::size_t>(v)]) continue;
        if (pick < 0 || deg[static_cast<std::size_t>(v)] < deg[static_cast<std::size_t>(pick)]) {
          pick = v;
        }
      }
      removed[static_cast<std::size_t>(pick)] = 1;
      order.push_back(pick);
      for (int u = 0; u < n; ++u) {
        if (!removed[static_cast<std::size_t>(u)] && g_.adjacent(pick, u)) {
          --deg[static_cast<std::size_t>(u)];
        }
      }
    }
    return order;
  }

  // Greedy colouring of `cands` in order; returns vertices sorted by colour
  // with the colour number (1-based) of each.
  void colour_sort(const std::vector<int>& cands, std::vector<int>& sorted,
                   std::vector<int>& colours) const {
    std::vector<std::vector<int>> classes;
    for (int v : cands) {
      std::size_t c = 0;
      for (; c < classes.size(); ++c) {
        bool clash = false;
        for (int u : classes[c]) {
          if (g_.adjacent(u, v)) {
            clash = true;
            break;
          }
        }
        if (!clash) break;
      }
      if (c == classes.size()) classes.emplace_back();
      classes[c].push_back(v);
    }
    sorted.clear();
    colours.clear();
    for (std::size_t c = 0; c < classes.size(); ++c) {
      for (int v : classes[c]) {
        sorted.push_back(v);
        colours.push_back(static_cast<int>(c) + 1);
      }
    }
  }

  bool done() const { return target_ && best_size_ >= *target_; }

  void expand(std::vector<int>& current, const std::vector<int>& cands) {
    tick();
    std::vector<int> sorted;
    std::vector<int> colours;
    colour_sort(cands, sorted, colours);
    for (std::size_t i = sorted.size(); i-- > 0;) {
      if (static_cast<int>(current.size()) + colours[i] <= best_size_) return;
      const int v = sorted[i];
      current.push_back(v);
      std::vector<int> next;
      for (std::size_t j = 0; j < i; ++j) {
        if (g_.adjacent(v, sorted[j])) next.push_back(sorted[j]);
      }
      if (next.empty()) {
        if (static_cast<int>(current.size()) > best_size_) {
          best_size_ = static_cast<int>(current.size());
          best_ = current;
        }
      } else {
        expand(current, next);
      }
      current.pop_back();
      if (done()) return;
    }
  }

  bool lex_search(std::vector<int>& current, const std::vector<int>& cands, int k) {
    tick();
    if (static_cast<int>(current.size()) == k) return true;
    // Colour in descending id order; the largest colour among cands[i..]
    // bounds the clique size inside that suffix.
    const std::size_t m = cands.size();
    std::vector<int> colour(m, 0);
    std::vector<std::vector<int>> classes;
    for (std::size_t idx = m; idx-- > 0;) {
      const int v = cands[idx];
      std::size_t c = 0;
      for (; c < classes.size(); ++c) {
        bool clash = false;
        for (int u : classes[c]) {
          if (g_.adjacent(u, v)) {
            clash = true;
            break;
          }
        }
        if (!clash) break;
      }
      if (c == classes.size()) classes.emplace_back();
      classes[c].push_back(v);
      colour[idx] = static_cast<int>(c) + 1;
    }
    std::vector<int> suffix_max(m + 1, 0);
    for (std::size_t idx = m; idx-- > 0;) suffix_max[idx] = std::max(suffix_max[idx + 1], colour[idx]);

    for (std::size_t i = 0; i < m; ++i) {
      if (static_cast<int>(current.size()) + suffix_max[i] < k) return false;
      const int v = cands[i];
      current.push_back(v);
      std::vector<int> next;
      for (std::size_t j = i + 1; j < m; ++j) {
        if (g_.adjacent(v, cands[j])) next.push_back(cands[j]);
      }
      if (lex_search(current, next, k)) return true;
      current.pop_back();
    }
    return false;
  }

  const EnclosureGraph& g_;
  std::uint64_t node_limit_;
  std::uint64_t nodes_ = 0;
  int best_size_ = 0;
  std::optional<int> target_;
  std::vector<int> best_;
};

std::vector<int> max_clique(const EnclosureGraph& g, const CliqueOptions& options) {
  const int n = g.size();
  if (n == 0) return {};
  if (options.target && *options.target <= 1) return {0};
  CliqueSearch search(g, options.node_limit);
  if (options.target) {
    search.maximum(*options.target - 1, options.target);
    if (search.best().empty()) return {0};
    std::vector<int> out = search.best();
    std::sort(out.begin(), out.end());
    return out;
  }
  search.maximum(0, std::nullopt);
  return search.lex_smallest(search.best_size());
}

MuResult mu_exact(const Arrangement& arr, const Region& region, std::optional<int> target,
                  std::uint64_t node_limit) {
  const EnclosureGraph g(arr, region);
  MuResult out;
  out.witness.family = arr.family().name();
  out.witness.region = region;
  out.witness.subset = max_clique(g, {target, node_limit});
  out.size = out.witness.size();
  out.exact = !target.has_value();
  return out;
}

MuResult mu_exact(const LineFamily& f, const Region& region, std::optional<int> target,
                  std::uint64_t node_limit) {
  return mu_exact(Arrangement(f), region, target, node_limit);
}

// ---------------------------------------------------------------------------

MuResult mu_halfplane(const LineFamily& f, const HalfPlane& h) {
  MuResult out;
  out.witness.family = f.name();
  out.witness.region = ConvexRegion::from_halfplane(h);
  const int n = f.size();
  if (n == 0) return out;

  // Frame attached to the boundary: x' = side*(a x + b y - c) (so H is
  // x' <= 0) and y' = -b x + a y. Orientation of this frame is positive.
  const Line& bd = h.boundary();
  const Scalar& a = bd.a();
  const Scalar& b = bd.b();
  const int side = h.side();
  struct Entry {
    Scalar s;  // y' where the line crosses the boundary
    Scalar m;  // slope dy'/dx'
    int id;
  };
  std::vector<Entry> entries;
  entries.reserve(static_cast<std::size_t>(n));
  for (const auto& l : f.lines()) {
    if (l.parallel_to(bd)) {
      throw BoundaryDegeneracy("line " + std::to_string(l.id()) + " is parallel to the boundary");
    }
    const Point p = intersect_lines(bd, l);
    const Point d = l.direction();
    const Scalar dx = side * (a * d.x + b * d.y);
    const Scalar dy = -b * d.x + a * d.y;
    entries.push_back({-b * p.x + a * p.y, dy / dx, l.id()});
  }
  std::sort(entries.begin(), entries.end(),
            [](const Entry& u, const Entry& v) { return u.s < v.s; });
  for (std::size_t i = 1; i < entries.size(); ++i) {
    if (entries[i].s == entries[i - 1].s) {
      throw BoundaryDegeneracy("lines " + std::to_string(entries[i - 1].id) + " and " +
                               std::to_string(entries[i].id) + " meet on the boundary");
    }
  }

  // Longest strictly increasing run of slopes, patience sorting.
  std::vector<std::size_t> tails;  // index of smallest tail per length
  std::vector<std::ptrdiff_t> parent(entries.size(), -1);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto it = std::lower_bound(
        tails.begin(), tails.end(), i,
        [&](std::size_t t, std::size_t cur) { return entries[t].m < entries[cur].m; });
    const auto pos = static_cast<std::size_t>(it - tails.begin());
    if (pos > 0) parent[i] = static_cast<std::ptrdiff_t>(tails[pos - 1]);
    if (pos == tails.size()) {
      tails.push_back(i);
    } else {
      tails[pos] = i;
    }
  }
  std::vector<int> subset;
  for (auto k = static_cast<std::ptrdiff_t>(tails.back()); k >= 0; k = parent[static_cast<std::size_t>(k)]) {
    subset.push_back(entries[static_cast<std::size_t>(k)].id);
  }
  std::sort(subset.begin(), subset.end());
  out.witness.subset = std::move(subset);
  out.size = out.witness.size();
  return out;
}

// ---------------------------------------------------------------------------

namespace {

// Orientation of the convex side: clockwise from `first` to `second`.
std::pair<Direction, Direction> convex_order(const Wedge& w) {
  const int c = sign(cross(w.r1.vec(), w.r2.vec()));
  if (c == 0) throw DegenerateWedge("wedge rays are parallel");
  if (c < 0) return {w.r1, w.r2};
  return {w.r2, w.r1};
}

bool on_ray(const Point& apex, const Direction& d, const Point& q) {
  const Point v = q - apex;
  return sign(cross(d.vec(), v)) == 0 && sign(dot(d.vec(), v)) >= 0;
}

// Parameter t with apex + t*d on the line.
Scalar ray_parameter(const Line& l, const Point& apex, const Direction& d) {
  return -l.eval(apex) / (l.a() * d.dx() + l.b() * d.dy());
}

}  // namespace

ConvexRegion Wedge::c1() const {
  const auto [from, to] = convex_order(*this);
  return convex_sector(apex, from, to);
}

Region Wedge::c2() const {
  const auto [from, to] = convex_order(*this);
  return sector(apex, to, from);
}

PosetDecomposition decompose_wedge(const LineFamily& f, const Wedge& w) {
  convex_order(w);
  const int n = f.size();
  PosetDecomposition out;
  out.types.resize(static_cast<std::size_t>(n));
  out.d.resize(static_cast<std::size_t>(n));
  out.d_prime.resize(static_cast<std::size_t>(n));
  for (const auto& l : f.lines()) {
    if (l.contains(w.apex)) {
      throw DegenerateWedge("line " + std::to_string(l.id()) + " passes through the apex");
    }
    if (w.r1.parallel_to(l) || w.r2.parallel_to(l)) {
      throw DegenerateWedge("line " + std::to_string(l.id()) + " is parallel to a ray");
    }
    const auto i = static_cast<std::size_t>(l.id());
    const Scalar t1 = ray_parameter(l, w.apex, w.r1);
    const Scalar t2 = ray_parameter(l, w.apex, w.r2);
    const bool m1 = sign(t1) > 0;
    const bool m2 = sign(t2) > 0;
    if (m1) out.d_prime[i] = t1;
    if (m2) out.d[i] = t2;
    out.types[i] = m1 && m2 ? LineType::Type3
                   : m1     ? LineType::Type1
                   : m2     ? LineType::Type2
                            : LineType::Type4;
  }
  const Arrangement arr(f);
  for (const auto& inc : arr.incidences()) {
    if (on_ray(w.apex, w.r1, inc.point) || on_ray(w.apex, w.r2, inc.point)) {
      throw DegenerateWedge("incidence of lines " + std::to_string(inc.first) + " and " +
                            std::to_string(inc.second) + " lies on a ray");
    }
  }

  const ConvexRegion c1 = w.c1();
  std::vector<char> comparable(static_cast<std::size_t>(n * n), 0);
  for (const auto& inc : arr.incidences()) {
    if (c1.contains(inc.point)) {
      comparable[static_cast<std::size_t>(inc.first * n + inc.second)] = 1;
      comparable[static_cast<std::size_t>(inc.second * n + inc.first)] = 1;
    }
  }

  const auto type = [&](int i) { return out.types[static_cast<std::size_t>(i)]; };
  const auto dist = [&](int i) -> const Scalar& { return *out.d[static_cast<std::size_t>(i)]; };
  const auto dist_p = [&](int i) -> const Scalar& {
    return *out.d_prime[static_cast<std::size_t>(i)];
  };
  using T = LineType;
  const std::array<std::function<bool(int)>, 3> member{
      [&](int i) { return type(i) != T::Type1; },
      [&](int i) { return type(i) != T::Type2; },
      [&](int i) { return type(i) == T::Type1 || type(i) == T::Type2; },
  };
  const std::array<std::function<bool(int, int)>, 3> before{
      [&](int i, int j) {
        if (type(i) == T::Type2 && type(j) == T::Type3) return true;
        return type(i) == type(j) && type(i) != T::Type4 && dist(i) < dist(j);
      },
      [&](int i, int j) {
        if (type(i) == T::Type1 && type(j) == T::Type3) return true;
        return type(i) == type(j) && type(i) != T::Type4 && dist_p(i) < dist_p(j);
      },
      [&](int i, int j) {
        if (type(i) == T::Type1 && type(j) == T::Type2) return true;
        if (type(i) == T::Type2 && type(j) == T::Type2) return dist(i) < dist(j);
        if (type(i) == T::Type1 && type(j) == T::Type1) return dist_p(i) > dist_p(j);
        return false;
      },
  };
  for (int k = 0; k < 3; ++k) {
    auto& ground = out.ground[static_cast<std::size_t>(k)];
    auto& less = out.less[static_cast<std::size_t>(k)];
    less.assign(static_cast<std::size_t>(n * n), 0);
    for (int i = 0; i < n; ++i) {
      if (member[static_cast<std::size_t>(k)](i)) ground.push_back(i);
    }
    for (int i : ground) {
      for (int j : ground) {
        if (i != j && comparable[static_cast<std::size_t>(i * n + j)] &&
            before[static_cast<std::size_t>(k)](i, j)) {
          less[static_cast<std::size_t>(i * n + j)] = 1;
        }
      }
    }
  }
  return out;
}

std::vector<std::array<int, 3>> transitivity_failures(const PosetDecomposition& poset, int k) {
  std::vector<std::array<int, 3>> out;
  const auto& ground = poset.ground[static_cast<std::size_t>(k)];
  for (int i : ground) {
    for (int j : ground) {
      if (!poset.precedes(k, i, j)) continue;
      for (int l : ground) {
        if (poset.precedes(k, j, l) && !poset.precedes(k, i, l)) out.push_back({i, j, l});
      }
    }
  }
  return out;
}

namespace {

// Longest path in the order restricted to `ground`.
std::vector<int> longest_chain(const PosetDecomposition& poset, int k,
                               const std::vector<int>& ground) {
  const std::size_t m = ground.size();
  std::vector<int> len(m, 0);
  std::vector<std::ptrdiff_t> next(m, -1);
  std::function<int(std::size_t)> visit = [&](std::size_t a) -> int {
    if (len[a] != 0) return len[a];
    int best = 1;
    for (std::size_t b = 0; b < m; ++b) {
      if (!poset.precedes(k, ground[a], ground[b])) continue;
      const int cand = 1 + visit(b);
      if (cand > best) {
        best = cand;
        next[a] = static_cast<std::ptrdiff_t>(b);
      }
    }
    return len[a] = best;
  };
  std::size_t start = 0;
  for (std::size_t a = 0; a < m; ++a) {
    if (visit(a) > visit(start)) start = a;
  }
  std::vector<int> chain;
  if (m == 0) return chain;
  for (auto a = static_cast<std::ptrdiff_t>(start); a >= 0; a = next[static_cast<std::size_t>(a)]) {
    chain.push_back(ground[static_cast<std::size_t>(a)]);
  }
  std::sort(chain.begin(), chain.end());
  return chain;
}

// Maximum antichain of the transitive closure via Koenig's theorem on the
// split bipartite graph of the strict order.
std::vector<int> maximum_antichain(const PosetDecomposition& poset, int k,
                                   const std::vector<int>& ground) {
  const std::size_t m = ground.size();
  std::vector<std::vector<char>> reach(m, std::vector<char>(m, 0));
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) reach[a][b] = poset.precedes(k, ground[a], ground[b]) ? 1 : 0;
  }
  for (std::size_t via = 0; via < m; ++via) {
    for (std::size_t a = 0; a < m; ++a) {
      if (!reach[a][via]) continue;
      for (std::size_t b = 0; b < m; ++b) {
        if (reach[via][b]) reach[a][b] = 1;
      }
    }
  }

  std::vector<std::ptrdiff_t> match_left(m, -1);
  std::vector<std::ptrdiff_t> match_right(m, -1);
  std::vector<char> seen;
  std::function<bool(std::size_t)> augment = [&](std::size_t a) -> bool {
    for (std::size_t b = 0; b < m; ++b) {
      if (!reach[a][b] || seen[b]) continue;
      seen[b] = 1;
      if (match_right[b] < 0 || augment(static_cast<std::size_t>(match_right[b]))) {
        match_left[a] = static_cast<std::ptrdiff_t>(b);
        match_right[b] = static_cast<std::ptrdiff_t>(a);
        return true;
      }
    }
    return false;
  };
  for (std::size_t a = 0; a < m; ++a) {
    seen.assign(m, 0);
    augment(a);
  }

  // Alternating reachability from unmatched left vertices.
  std::vector<char> left_z(m, 0);
  std::vector<char> right_z(m, 0);
  std::vector<std::size_t> stack;
  for (std::size_t a = 0; a < m; ++a) {
    if (match_left[a] < 0) {
      left_z[a] = 1;
      stack.push_back(a);
    }
  }
  while (!stack.empty()) {
    const std::size_t a = stack.back();
    stack.pop_back();
    for (std::size_t b = 0; b < m; ++b) {
      if (!reach[a][b] || right_z[b]) continue;
      right_z[b] = 1;
      const auto a2 = match_right[b];
      if (a2 >= 0 && !left_z[static_cast<std::size_t>(a2)]) {
        left_z[static_cast<std::size_t>(a2)] = 1;
        stack.push_back(static_cast<std::size_t>(a2));
      }
    }
  }
  std::vector<int> antichain;
  for (std::size_t a = 0; a < m; ++a) {
    if (left_z[a] && !right_z[a]) antichain.push_back(ground[a]);
  }
  return antichain;
}

}  // namespace

WedgeDilworthResult wedge_dilworth(const LineFamily& f, const Wedge& w) {
  WedgeDilworthResult out;
  out.poset = decompose_wedge(f, w);
  int best = 0;
  for (int k = 1; k < 3; ++k) {
    if (out.poset.ground[static_cast<std::size_t>(k)].size() >
        out.poset.ground[static_cast<std::size_t>(best)].size()) {
      best = k;
    }
  }
  out.ground_index = best;
  const auto& ground = out.poset.ground[static_cast<std::size_t>(best)];
  out.ground_size = static_cast<int>(ground.size());
  out.chain = {f.name(), longest_chain(out.poset, best, ground), w.c1()};
  out.antichain = {f.name(), maximum_antichain(out.poset, best, ground), w.c2()};
  out.verified = verify_witness(f, out.chain) && verify_witness(f, out.antichain);
  return out;
}

}  // namespace linecut
