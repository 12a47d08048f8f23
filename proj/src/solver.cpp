#include "linecut/solver.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <functional>

namespace linecut {

// ---------------------------------------------------------------------------
// Bound.

BoundValue bound_value(long n, int r) {
  if (r < 1) throw BadPartition("r must be positive");
  if (n <= 0) return {static_cast<double>(-2 * r), 0};
  if (r == 1) return {static_cast<double>(n - 2), std::max(0L, n - 2)};
  BoundValue out;
  long hi_ceil = 0;
  for (mpfr_prec_t prec = 64; prec <= 4096; prec *= 2) {
    mpfr_t lr, l23, v, root, margin, lo, hi;
    for (mpfr_ptr x : {lr, l23, v, root, margin, lo, hi}) mpfr_init2(x, prec);
    mpfr_set_ui(lr, static_cast<unsigned long>(r), MPFR_RNDN);
    mpfr_log(lr, lr, MPFR_RNDN);
    mpfr_set_ui(l23, 2, MPFR_RNDN);
    mpfr_div_ui(l23, l23, 3, MPFR_RNDN);
    mpfr_log(l23, l23, MPFR_RNDN);
    mpfr_mul(v, lr, l23, MPFR_RNDN);
    mpfr_exp(v, v, MPFR_RNDN);
    mpfr_set_si(root, n, MPFR_RNDN);
    mpfr_rootn_ui(root, root, static_cast<unsigned long>(r), MPFR_RNDN);
    mpfr_mul(v, v, root, MPFR_RNDN);
    // A handful of correctly rounded steps: a few dozen ulps cover the error.
    mpfr_abs(margin, v, MPFR_RNDU);
    mpfr_add_ui(margin, margin, 1, MPFR_RNDU);
    mpfr_mul_2si(margin, margin, -(prec - 10), MPFR_RNDU);
    mpfr_sub(lo, v, margin, MPFR_RNDD);
    mpfr_add(hi, v, margin, MPFR_RNDU);
    mpfr_sub_si(lo, lo, 2L * r, MPFR_RNDD);
    mpfr_sub_si(hi, hi, 2L * r, MPFR_RNDU);
    out.value = mpfr_get_d(v, MPFR_RNDN) - 2.0 * r;
    mpfr_ceil(lo, lo);
    mpfr_ceil(hi, hi);
    const long lo_ceil = mpfr_get_si(lo, MPFR_RNDN);
    hi_ceil = mpfr_get_si(hi, MPFR_RNDN);
    for (mpfr_ptr x : {lr, l23, v, root, margin, lo, hi}) mpfr_clear(x);
    if (lo_ceil == hi_ceil) {
      out.required = std::max(0L, hi_ceil);
      return out;
    }
  }
  out.required = std::max(0L, hi_ceil);
  return out;
}

// ---------------------------------------------------------------------------
// Names and config.

std::string to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::Leaf: return "leaf";
    case NodeKind::TwoCut: return "two-cut";
    case NodeKind::ThreeCut: return "three-cut";
  }
  return "leaf";
}

std::string to_string(CutMethod method) {
  switch (method) {
    case CutMethod::None: return "none";
    case CutMethod::Equitable: return "equitable";
    case CutMethod::SignRecovered: return "sign-recovered";
    case CutMethod::SummandsPair: return "summands-pair";
    case CutMethod::SummandsTriple: return "summands-triple";
    case CutMethod::Fallback: return "fallback";
  }
  return "none";
}

namespace {

NodeKind node_kind_from_string(const std::string& s) {
  for (NodeKind k : {NodeKind::Leaf, NodeKind::TwoCut, NodeKind::ThreeCut}) {
    if (to_string(k) == s) return k;
  }
  throw ParseError("unknown node kind '" + s + "'");
}

CutMethod cut_method_from_string(const std::string& s) {
  for (CutMethod m : {CutMethod::None, CutMethod::Equitable, CutMethod::SignRecovered,
                      CutMethod::SummandsPair, CutMethod::SummandsTriple, CutMethod::Fallback}) {
    if (to_string(m) == s) return m;
  }
  throw ParseError("unknown cut method '" + s + "'");
}

}  // namespace

Json to_json(const SolverConfig& c) {
  Json j;
  j["two_cut"] = {{"initial_directions", c.two_cut.initial_directions},
                  {"max_directions", c.two_cut.max_directions},
                  {"bisection_steps", c.two_cut.bisection_steps},
                  {"clique_node_limit", c.two_cut.clique_node_limit}};
  j["signs"] = {{"extra_directions", c.signs.extra_directions},
                {"bisection_steps", c.signs.bisection_steps}};
  j["three_cut"] = {{"grid", c.three_cut.grid},
                    {"budget", c.three_cut.budget},
                    {"cells_per_level", c.three_cut.cells_per_level},
                    {"clique_node_limit", c.three_cut.clique_node_limit}};
  j["fallback_directions"] = c.fallback_directions;
  j["equitable_two_cuts"] = c.equitable_two_cuts;
  j["seed"] = c.seed;
  return j;
}

SolverConfig solver_config_from_json(const Json& j) {
  SolverConfig c;
  try {
    const auto& t = j.at("two_cut");
    c.two_cut.initial_directions = t.at("initial_directions").get<int>();
    c.two_cut.max_directions = t.at("max_directions").get<int>();
    c.two_cut.bisection_steps = t.value("bisection_steps", c.two_cut.bisection_steps);
    c.two_cut.clique_node_limit = t.at("clique_node_limit").get<std::uint64_t>();
    const auto& s = j.at("signs");
    c.signs.extra_directions = s.at("extra_directions").get<int>();
    c.signs.bisection_steps = s.at("bisection_steps").get<int>();
    c.signs.two_cut = c.two_cut;
    const auto& h = j.at("three_cut");
    c.three_cut.grid = h.at("grid").get<int>();
    c.three_cut.budget = h.at("budget").get<int>();
    c.three_cut.cells_per_level = h.at("cells_per_level").get<int>();
    c.three_cut.clique_node_limit = h.at("clique_node_limit").get<std::uint64_t>();
    c.fallback_directions = j.at("fallback_directions").get<int>();
    c.equitable_two_cuts = j.at("equitable_two_cuts").get<bool>();
    c.seed = j.at("seed").get<std::uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad solver config: ") + e.what());
  }
  return c;
}

// ---------------------------------------------------------------------------
// Regions.

Region intersect_regions(const Region& r, const Region& s) {
  std::vector<ConvexRegion> pieces;
  for (const auto& p : r.pieces) {
    for (const auto& q : s.pieces) {
      if (p.halfplanes.empty()) {
        pieces.push_back(q);
      } else if (q.halfplanes.empty()) {
        pieces.push_back(p);
      } else {
        pieces.push_back(p.intersect(q));
      }
    }
  }
  return Region(std::move(pieces));
}

std::vector<Region> child_regions(const CutNode& node) {
  if (node.kind == NodeKind::TwoCut) {
    if (!node.cut) throw ParseError("two-cut node without a cut line");
    return {ConvexRegion::from_halfplane(*node.cut), ConvexRegion::from_halfplane(node.cut->flipped())};
  }
  if (node.kind == NodeKind::ThreeCut) {
    if (!node.apex) throw ParseError("three-cut node without an apex");
    const auto& [down, ray1, ray2] = node.rays;
    std::vector<Region> out{sector(*node.apex, down, ray1), sector(*node.apex, ray2, down)};
    if (ray1 == down && ray2 == down) {
      out.emplace_back();
    } else {
      out.push_back(sector(*node.apex, ray1, ray2));
    }
    return out;
  }
  return {};
}

// ---------------------------------------------------------------------------
// Partition.

namespace {

struct Child {
  int r = 1;
  EnclosureWitness a;
  EnclosureWitness b;
};

struct Split {
  CutNode node;  // geometry only
  std::vector<Child> children;
};

Split split_from_two_cut(const TwoCut& cut, CutMethod method) {
  Split s;
  s.node.kind = NodeKind::TwoCut;
  s.node.method = method;
  s.node.cut = cut.regions[0];
  s.children = {{cut.r1, cut.a_witness[0], cut.b_witness[0]}, {cut.r2, cut.a_witness[1], cut.b_witness[1]}};
  return s;
}

double normalized(int mu, int n, int r, int r_i) {
  if (n == 0) return INFINITY;
  return mu / std::pow(2.0 * n / 3.0, static_cast<double>(r_i) / r);
}

// Best split at (ceil(r/2), floor(r/2)) over a grid of directions: for each
// direction, binary search the crossing of the nondecreasing left score and
// the nonincreasing right score.
TwoCut fallback_cut(const Arrangement& a, const Arrangement& b, int r, const Direction& reference,
                    int directions) {
  const int r1 = (r + 1) / 2;
  const int r2 = r / 2;
  std::vector<Direction> dirs{reference};
  for (int k = 0; k < std::max(directions, 1); ++k) {
    const double theta = 2.0 * M_PI * k / directions;
    dirs.emplace_back(Scalar(static_cast<long>(std::llround(std::cos(theta) * 4096.0))),
                      Scalar(static_cast<long>(std::llround(std::sin(theta) * 4096.0))));
  }
  std::optional<TwoCut> best;
  double best_score = -1;
  for (const Direction& d : dirs) {
    std::vector<Scalar> keys;
    for (const Arrangement* arr : {&a, &b}) {
      for (const auto& inc : arr->incidences()) keys.push_back(dot(d.vec(), inc.point));
    }
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    std::vector<Scalar> offsets;
    if (keys.empty()) {
      offsets.push_back(0);
    } else {
      offsets.push_back(keys.front() - 1);
      for (std::size_t i = 0; i + 1 < keys.size(); ++i) offsets.push_back((keys[i] + keys[i + 1]) / 2);
      offsets.push_back(keys.back() + 1);
    }
    struct Eval {
      double left, right;
      std::array<MuResult, 4> mu;
    };
    const auto evaluate = [&](std::size_t k) {
      const HalfPlane h = HalfPlane::below(d, offsets[k]);
      Eval e;
      e.mu = {mu_of_halfplane(a, h), mu_of_halfplane(b, h), mu_of_halfplane(a, h.flipped()),
              mu_of_halfplane(b, h.flipped())};
      e.left = std::min(normalized(e.mu[0].size, a.size(), r, r1), normalized(e.mu[1].size, b.size(), r, r1));
      e.right = std::min(normalized(e.mu[2].size, a.size(), r, r2), normalized(e.mu[3].size, b.size(), r, r2));
      return e;
    };
    std::size_t lo = 0;
    std::size_t hi = offsets.size() - 1;
    while (lo < hi) {
      const std::size_t mid = lo + (hi - lo) / 2;
      const Eval e = evaluate(mid);
      if (e.left >= e.right) {
        hi = mid;
      } else {
        lo = mid + 1;
      }
    }
    for (std::size_t k : {lo, lo > 0 ? lo - 1 : lo}) {
      Eval e = evaluate(k);
      const double score = std::min(e.left, e.right);
      if (score > best_score) {
        best_score = score;
        const HalfPlane h = HalfPlane::below(d, offsets[k]);
        best = TwoCut{d, offsets[k], r1, r2, {h, h.flipped()},
                      {std::move(e.mu[0].witness), std::move(e.mu[2].witness)},
                      {std::move(e.mu[1].witness), std::move(e.mu[3].witness)}};
      }
    }
  }
  return *best;
}

class Solver {
 public:
  Solver(const SolverConfig& config, long required_a, long required_b)
      : config_(config), required_a_(required_a), required_b_(required_b) {}

  bool degraded() const { return degraded_; }

  CutNode solve(const LineFamily& a, const std::vector<int>& a_map, const LineFamily& b,
                const std::vector<int>& b_map, int r, const Region& region) {
    if (r == 1) {
      CutNode leaf;
      leaf.a_ids = a_map;
      leaf.b_ids = b_map;
      std::sort(leaf.a_ids.begin(), leaf.a_ids.end());
      std::sort(leaf.b_ids.begin(), leaf.b_ids.end());
      leaf.region = region;
      leaf.required_a = required_a_;
      leaf.required_b = required_b_;
      leaf.achieved_a = static_cast<long>(leaf.a_ids.size());
      leaf.achieved_b = static_cast<long>(leaf.b_ids.size());
      return leaf;
    }
    const Arrangement arr_a(a);
    const Arrangement arr_b(b);
    Split split = choose_split(arr_a, arr_b, r);
    CutNode node = std::move(split.node);
    node.r = r;
    const std::vector<Region> regions = child_regions(node);
    for (std::size_t i = 0; i < split.children.size(); ++i) {
      const Child& child = split.children[i];
      std::vector<int> ca;
      std::vector<int> cb;
      for (int id : child.a.subset) ca.push_back(a_map[static_cast<std::size_t>(id)]);
      for (int id : child.b.subset) cb.push_back(b_map[static_cast<std::size_t>(id)]);
      CutNode sub = solve(a.subfamily(child.a.subset), ca, b.subfamily(child.b.subset), cb, child.r,
                          intersect_regions(region, regions[i]));
      sub.r = child.r;
      node.children.push_back(std::move(sub));
    }
    return node;
  }

 private:
  Split choose_split(const Arrangement& a, const Arrangement& b, int r) {
    // Equitable two-cuts, most balanced first.
    for (int r1 = r / 2; config_.equitable_two_cuts && r1 >= 1; --r1) {
      if (auto cut = find_equitable_two_cut(a, b, r1, r - r1, config_.two_cut)) {
        return split_from_two_cut(*cut, CutMethod::Equitable);
      }
    }
    const std::vector<LineFamily> fams{a.family(), b.family()};
    const Direction reference = choose_reference_direction(fams);
    SignTable signs;
    try {
      SignOptions options = config_.signs;
      options.two_cut = config_.two_cut;
      signs = assign_signs(a, b, r, reference, options);
    } catch (const TwoCutMissed& missed) {
      return split_from_two_cut(missed.cut(), CutMethod::SignRecovered);
    }
    const Summands summands = find_summands(signs, r);
    if (summands.parts.size() == 2) {
      for (int q = 0; q < 4; ++q) {
        Point v = reference.vec();
        for (int k = 0; k < q; ++k) v = Point{-v.y, v.x};
        if (auto cut = two_cut_at(a, b, summands.parts[0], summands.parts[1], Direction(v), config_.two_cut)) {
          return split_from_two_cut(*cut, CutMethod::SummandsPair);
        }
      }
    } else if (auto split = three_cut_split(a, b, reference, summands)) {
      return *split;
    }
    degraded_ = true;
    return split_from_two_cut(fallback_cut(a, b, r, reference, config_.fallback_directions), CutMethod::Fallback);
  }

  std::optional<Split> three_cut_split(const Arrangement& a, const Arrangement& b, const Direction& reference,
                                       const Summands& summands) {
    const Frame frame(reference);
    const bool swap = summands.sign == Sign::Negative;
    const Arrangement fa(a.family().transformed(frame));
    const Arrangement fb(b.family().transformed(frame));
    const std::array<int, 3> parts{summands.parts[0], summands.parts[1], summands.parts[2]};
    const auto cut = swap ? find_equitable_three_cut(fb, fa, parts, config_.three_cut)
                          : find_equitable_three_cut(fa, fb, parts, config_.three_cut);
    if (!cut) return std::nullopt;
    Split s;
    s.node.kind = NodeKind::ThreeCut;
    s.node.method = CutMethod::SummandsTriple;
    s.node.apex = frame.from_frame(cut->cutting.apex);
    s.node.rays = {frame.from_frame(cut->cutting.down), frame.from_frame(cut->cutting.ray1),
                   frame.from_frame(cut->cutting.ray2)};
    for (std::size_t i = 0; i < 3; ++i) {
      const EnclosureWitness& wa = swap ? cut->b_witness[i] : cut->a_witness[i];
      const EnclosureWitness& wb = swap ? cut->a_witness[i] : cut->b_witness[i];
      s.children.push_back({parts[i], wa, wb});
    }
    return s;
  }

  const SolverConfig& config_;
  long required_a_;
  long required_b_;
  bool degraded_ = false;
};

}  // namespace

PartitionCertificate partition(const LineFamily& a, const LineFamily& b, int r, const SolverConfig& config) {
  if (r < 1) throw BadPartition("r must be positive");
  const auto report = validate_general_position(a.merged_with(b));
  if (!report.ok) {
    const Violation& v = report.violations.front();
    std::string ids;
    for (int id : v.ids) ids += (ids.empty() ? "" : ",") + std::to_string(id);
    throw NotGeneralPosition("A and B together: " + to_string(v.kind) + " among merged lines " + ids);
  }
  PartitionCertificate cert;
  cert.config = config;
  cert.a = a;
  cert.b = b;
  cert.r = r;
  Solver solver(config, bound_value(a.size(), r).required, bound_value(b.size(), r).required);
  std::vector<int> a_map(static_cast<std::size_t>(a.size()));
  std::vector<int> b_map(static_cast<std::size_t>(b.size()));
  for (int i = 0; i < a.size(); ++i) a_map[static_cast<std::size_t>(i)] = i;
  for (int i = 0; i < b.size(); ++i) b_map[static_cast<std::size_t>(i)] = i;
  cert.tree = solver.solve(a, a_map, b, b_map, r, Region());
  cert.tree.r = r;
  cert.degraded = solver.degraded();
  return cert;
}

// ---------------------------------------------------------------------------
// JSON.

namespace {

Json node_to_json(const CutNode& node) {
  Json j;
  j["kind"] = to_string(node.kind);
  j["r"] = node.r;
  if (node.kind == NodeKind::Leaf) {
    j["region"] = to_json(node.region);
    j["a_witness"] = node.a_ids;
    j["b_witness"] = node.b_ids;
    j["required_a"] = node.required_a;
    j["required_b"] = node.required_b;
    j["achieved_a"] = node.achieved_a;
    j["achieved_b"] = node.achieved_b;
    return j;
  }
  j["method"] = to_string(node.method);
  if (node.kind == NodeKind::TwoCut) {
    j["line"] = to_json(*node.cut);
  } else {
    j["apex"] = to_json(*node.apex);
    j["rays"] = Json::array({to_json(node.rays[0]), to_json(node.rays[1]), to_json(node.rays[2])});
  }
  Json children = Json::array();
  for (const auto& child : node.children) children.push_back(node_to_json(child));
  j["children"] = std::move(children);
  return j;
}

CutNode node_from_json(const Json& j) {
  CutNode node;
  node.kind = node_kind_from_string(j.at("kind").get<std::string>());
  node.r = j.at("r").get<int>();
  if (node.kind == NodeKind::Leaf) {
    node.region = region_from_json(j.at("region"));
    node.a_ids = j.at("a_witness").get<std::vector<int>>();
    node.b_ids = j.at("b_witness").get<std::vector<int>>();
    node.required_a = j.at("required_a").get<long>();
    node.required_b = j.at("required_b").get<long>();
    node.achieved_a = j.at("achieved_a").get<long>();
    node.achieved_b = j.at("achieved_b").get<long>();
    return node;
  }
  node.method = cut_method_from_string(j.at("method").get<std::string>());
  if (node.kind == NodeKind::TwoCut) {
    node.cut = halfplane_from_json(j.at("line"));
  } else {
    node.apex = point_from_json(j.at("apex"));
    const auto& rays = j.at("rays");
    if (!rays.is_array() || rays.size() != 3) throw ParseError("three-cut needs three rays");
    for (std::size_t i = 0; i < 3; ++i) node.rays[i] = direction_from_json(rays[i]);
  }
  for (const auto& child : j.at("children")) node.children.push_back(node_from_json(child));
  return node;
}

}  // namespace

Json to_json(const PartitionCertificate& cert) {
  Json j;
  j["schema"] = cert.schema;
  j["config"] = to_json(cert.config);
  j["r"] = cert.r;
  j["n_a"] = cert.a.size();
  j["n_b"] = cert.b.size();
  j["degraded"] = cert.degraded;
  j["a"] = to_json(cert.a);
  j["b"] = to_json(cert.b);
  j["tree"] = node_to_json(cert.tree);
  return j;
}

PartitionCertificate certificate_from_json(const Json& j) {
  try {
    PartitionCertificate cert;
    cert.schema = j.at("schema").get<std::string>();
    if (cert.schema != "linecut.certificate/1") throw ParseError("unsupported schema '" + cert.schema + "'");
    cert.config = solver_config_from_json(j.at("config"));
    cert.r = j.at("r").get<int>();
    cert.degraded = j.at("degraded").get<bool>();
    cert.a = family_from_json(j.at("a"));
    cert.b = family_from_json(j.at("b"));
    cert.tree = node_from_json(j.at("tree"));
    return cert;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad certificate: ") + e.what());
  }
}

Json to_json(const VerificationReport& report) {
  Json j;
  j["ok"] = report.ok;
  j["bound_met"] = report.bound_met;
  j["degraded"] = report.degraded;
  j["leaves"] = report.leaves;
  Json failures = Json::array();
  for (const auto& f : report.failures) {
    failures.push_back({{"leaf", f.leaf}, {"path", f.path}, {"family", f.family}, {"reason", f.reason}});
  }
  j["failures"] = std::move(failures);
  return j;
}

// ---------------------------------------------------------------------------
// Verification.

namespace {

class Verifier {
 public:
  Verifier(const LineFamily& a, const LineFamily& b, int r, VerificationReport& report)
      : a_(a), b_(b), report_(report), required_a_(bound_value(a.size(), r).required),
        required_b_(bound_value(b.size(), r).required) {}

  void visit(const CutNode& node, const Region& region, const std::string& path, bool degraded) {
    if (node.r < 1) fail(path, "", "node r must be positive");
    if (node.kind == NodeKind::Leaf) {
      visit_leaf(node, region, path, degraded);
      return;
    }
    std::vector<Region> regions;
    try {
      regions = child_regions(node);
    } catch (const Error& e) {
      fail(path, "", e.what());
      return;
    }
    if (node.children.size() != regions.size()) {
      fail(path, "", "expected " + std::to_string(regions.size()) + " children, found " +
                         std::to_string(node.children.size()));
      return;
    }
    if (node.kind == NodeKind::ThreeCut) {
      const auto& [down, ray1, ray2] = node.rays;
      if (!cw_within_half_turn(down.vec(), ray1.vec()) || !cw_within_half_turn(ray2.vec(), down.vec())) {
        fail(path, "", "three-cut rays are not a convex fan around the down ray");
      }
    }
    int sum = 0;
    for (const auto& child : node.children) sum += child.r;
    if (sum != node.r) fail(path, "", "children carry r = " + std::to_string(sum) + ", node has " + std::to_string(node.r));
    const bool child_degraded = degraded || node.method == CutMethod::Fallback;
    for (std::size_t i = 0; i < node.children.size(); ++i) {
      const std::string child_path = path.empty() ? std::to_string(i) : path + "." + std::to_string(i);
      visit(node.children[i], intersect_regions(region, regions[i]), child_path, child_degraded);
    }
  }

 private:
  void fail(const std::string& path, const std::string& family, const std::string& reason) {
    report_.ok = false;
    report_.failures.push_back({current_leaf_, path, family, reason});
  }

  void visit_leaf(const CutNode& leaf, const Region& region, const std::string& path, bool degraded) {
    if (leaf.r != 1) fail(path, "", "leaf must carry r = 1");
    if (!(leaf.region == region)) fail(path, "", "recorded region differs from the cut geometry");
    if (degraded) report_.degraded = true;
    check_family(a_, "A", leaf.a_ids, leaf.achieved_a, leaf.required_a, required_a_, region, path, degraded);
    check_family(b_, "B", leaf.b_ids, leaf.achieved_b, leaf.required_b, required_b_, region, path, degraded);
    ++current_leaf_;
  }

  void check_family(const LineFamily& f, const std::string& name, const std::vector<int>& ids, long achieved,
                    long recorded_required, long required, const Region& region, const std::string& path,
                    bool degraded) {
    std::vector<int> sorted = ids;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) fail(path, name, "repeated witness id");
    try {
      if (!verify_witness(f, {f.name(), sorted, region})) {
        fail(path, name, "witness lines meet outside the leaf region");
      }
    } catch (const Error& e) {
      fail(path, name, e.what());
    }
    const long size = static_cast<long>(sorted.size());
    if (achieved != size) {
      fail(path, name, "recorded size " + std::to_string(achieved) + " but witness has " + std::to_string(size));
    }
    if (recorded_required != required) {
      fail(path, name, "recorded requirement " + std::to_string(recorded_required) + ", bound gives " +
                           std::to_string(required));
    }
    if (size < required) {
      report_.bound_met = false;
      if (!degraded) {
        fail(path, name, "witness size " + std::to_string(size) + " below required " + std::to_string(required));
      }
    }
  }

  const LineFamily& a_;
  const LineFamily& b_;
  VerificationReport& report_;
  long required_a_;
  long required_b_;
  int current_leaf_ = 0;

 public:
  int leaves() const { return current_leaf_; }
};

}  // namespace

VerificationReport verify_certificate(const LineFamily& a, const LineFamily& b, const PartitionCertificate& cert) {
  VerificationReport report;
  if (cert.r < 1) {
    report.ok = false;
    report.failures.push_back({0, "", "", "r must be positive"});
    return report;
  }
  if (!(cert.a == a)) report.failures.push_back({0, "", "A", "embedded family A differs from the input"});
  if (!(cert.b == b)) report.failures.push_back({0, "", "B", "embedded family B differs from the input"});
  if (!report.failures.empty()) report.ok = false;
  Verifier verifier(a, b, cert.r, report);
  if (cert.tree.r != cert.r) {
    report.ok = false;
    report.failures.push_back({0, "", "", "root carries r = " + std::to_string(cert.tree.r)});
  }
  verifier.visit(cert.tree, Region(), "", false);
  report.leaves = verifier.leaves();
  if (report.leaves != cert.r) {
    report.ok = false;
    report.failures.push_back({report.leaves, "", "", "found " + std::to_string(report.leaves) +
                                                          " leaves for r = " + std::to_string(cert.r)});
  }
  if (report.degraded != cert.degraded) {
    report.ok = false;
    report.failures.push_back({0, "", "", "degraded flag does not match the cut tree"});
  }
  return report;
}

}  // namespace linecut
