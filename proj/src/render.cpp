#include "linecut/render.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

namespace linecut {

Box Box::padded(const Scalar& fraction) const {
  const Scalar dx = (xmax - xmin) * fraction;
  const Scalar dy = (ymax - ymin) * fraction;
  return {Scalar(xmin - dx), Scalar(ymin - dy), Scalar(xmax + dx), Scalar(ymax + dy)};
}

Box incidence_box(const LineFamily& a, const LineFamily& b) {
  std::vector<Point> pts;
  for (const auto* f : {&a, &b}) {
    if (f->size() < 2) continue;
    for (const auto& inc : incidence_set(*f)) pts.push_back(inc.point);
  }
  if (pts.empty()) return {Scalar(-1), Scalar(-1), Scalar(1), Scalar(1)};
  Box box{pts[0].x, pts[0].y, pts[0].x, pts[0].y};
  for (const auto& p : pts) {
    box.xmin = std::min(box.xmin, p.x);
    box.xmax = std::max(box.xmax, p.x);
    box.ymin = std::min(box.ymin, p.y);
    box.ymax = std::max(box.ymax, p.y);
  }
  if (box.xmin == box.xmax) {
    box.xmin -= Scalar(1, 2);
    box.xmax += Scalar(1, 2);
  }
  if (box.ymin == box.ymax) {
    box.ymin -= Scalar(1, 2);
    box.ymax += Scalar(1, 2);
  }
  return box;
}

std::optional<Segment> clip_to(const Point& p, const Point& d, std::optional<Scalar> lo,
                               const ConvexRegion& region, const Box& box) {
  std::vector<HalfPlane> hs = region.halfplanes;
  hs.push_back(HalfPlane::leq(1, 0, box.xmax));
  hs.push_back(HalfPlane::leq(-1, 0, -box.xmin));
  hs.push_back(HalfPlane::leq(0, 1, box.ymax));
  hs.push_back(HalfPlane::leq(0, -1, -box.ymin));
  std::optional<Scalar> hi;
  for (const auto& h : hs) {
    const Line& l = h.boundary();
    const Scalar alpha = h.side() * l.eval(p);
    const Scalar beta = h.side() * (l.a() * d.x + l.b() * d.y);
    if (beta == 0) {
      if (alpha > 0) return std::nullopt;
      continue;
    }
    const Scalar t = -alpha / beta;
    if (beta > 0) {
      if (!hi || t < *hi) hi = t;
    } else if (!lo || t > *lo) {
      lo = t;
    }
  }
  // The box bounds both ends for any nonzero d.
  if (!lo || !hi || *lo > *hi) return std::nullopt;
  return Segment{p + *lo * d, p + *hi * d};
}

namespace {

class Canvas {
 public:
  Canvas(const Box& box, int width) : box_(box), width_(width) {
    const double w = to_double(box.xmax - box.xmin);
    const double h = to_double(box.ymax - box.ymin);
    const double natural = width * h / w;
    height_ = static_cast<int>(std::clamp(natural, width / 4.0, width * 2.0));
    out_ << std::fixed << std::setprecision(3);
  }

  double sx(const Scalar& x) const { return to_double((x - box_.xmin) / (box_.xmax - box_.xmin)) * width_; }
  double sy(const Scalar& y) const { return to_double((box_.ymax - y) / (box_.ymax - box_.ymin)) * height_; }

  void segment(const Segment& s, const std::string& attrs) {
    out_ << "  <line x1=\"" << sx(s.from.x) << "\" y1=\"" << sy(s.from.y) << "\" x2=\"" << sx(s.to.x)
         << "\" y2=\"" << sy(s.to.y) << "\" " << attrs << "/>\n";
  }
  void dot(const Point& p, const std::string& attrs) {
    out_ << "  <circle cx=\"" << sx(p.x) << "\" cy=\"" << sy(p.y) << "\" r=\"3\" " << attrs << "/>\n";
  }
  std::ostringstream& raw() { return out_; }
  int height() const { return height_; }
  const Box& box() const { return box_; }

 private:
  Box box_;
  int width_;
  int height_ = 0;
  std::ostringstream out_;
};

void draw_line(Canvas& c, const Line& l, const Region& region, const std::string& attrs) {
  const Point p = l.b() != 0 ? Point{0, Scalar(l.c() / l.b())} : Point{Scalar(l.c() / l.a()), 0};
  for (const auto& piece : region.pieces) {
    if (auto s = clip_to(p, l.direction(), std::nullopt, piece, c.box())) c.segment(*s, attrs);
  }
}

void draw_ray(Canvas& c, const Point& apex, const Direction& d, const Region& region,
              const std::string& attrs) {
  for (const auto& piece : region.pieces) {
    if (auto s = clip_to(apex, d.vec(), Scalar(0), piece, c.box())) c.segment(*s, attrs);
  }
}

void draw_cuts(Canvas& c, const CutNode& node, const Region& region, const std::string& stroke) {
  if (node.kind == NodeKind::Leaf) return;
  const std::string attrs = "class=\"cut\" stroke=\"" + stroke + "\" stroke-width=\"2.5\"";
  if (node.kind == NodeKind::TwoCut && node.cut) {
    draw_line(c, node.cut->boundary(), region, attrs);
  } else if (node.kind == NodeKind::ThreeCut && node.apex) {
    draw_ray(c, *node.apex, node.rays[0], region, attrs);
    draw_ray(c, *node.apex, node.rays[1], region, attrs);
    draw_ray(c, *node.apex, node.rays[2], region, attrs);
  }
  const auto regions = child_regions(node);
  for (std::size_t i = 0; i < node.children.size() && i < regions.size(); ++i) {
    draw_cuts(c, node.children[i], intersect_regions(region, regions[i]), stroke);
  }
}

void collect_leaves(const CutNode& node, std::vector<const CutNode*>& out) {
  if (node.kind == NodeKind::Leaf) {
    out.push_back(&node);
    return;
  }
  for (const auto& child : node.children) collect_leaves(child, out);
}

}  // namespace

std::string render_svg(const PartitionCertificate& cert, const RenderOptions& options) {
  const Box box = incidence_box(cert.a, cert.b).padded(Scalar(1, 10));
  Canvas c(box, options.width);
  const Region plane;

  for (const auto& l : cert.a.lines()) {
    draw_line(c, l, plane, "class=\"family-a\" stroke=\"#9ab\" stroke-width=\"0.6\"");
  }
  for (const auto& l : cert.b.lines()) {
    draw_line(c, l, plane, "class=\"family-b\" stroke=\"#ba9\" stroke-width=\"0.6\" stroke-dasharray=\"4 2\"");
  }

  std::vector<const CutNode*> leaves;
  collect_leaves(cert.tree, leaves);
  for (std::size_t k = 0; k < leaves.size(); ++k) {
    const CutNode& leaf = *leaves[k];
    const std::string& colour = options.palette[k % options.palette.size()];
    c.raw() << "  <g class=\"leaf\" id=\"leaf-" << k << "\">\n";
    const std::string line_attrs = "stroke=\"" + colour + "\" stroke-width=\"1.6\" stroke-opacity=\"0.8\"";
    for (const auto* ids : {&leaf.a_ids, &leaf.b_ids}) {
      const LineFamily& f = ids == &leaf.a_ids ? cert.a : cert.b;
      const std::string dash = ids == &leaf.a_ids ? "" : " stroke-dasharray=\"4 2\"";
      for (int id : *ids) {
        if (id >= 0 && id < f.size()) draw_line(c, f.line(id), plane, line_attrs + dash);
      }
      for (std::size_t i = 0; i < ids->size(); ++i) {
        for (std::size_t j = i + 1; j < ids->size(); ++j) {
          const int u = (*ids)[i];
          const int v = (*ids)[j];
          if (u < 0 || v < 0 || u >= f.size() || v >= f.size()) continue;
          const Line& l1 = f.line(u);
          const Line& l2 = f.line(v);
          if (l1.parallel_to(l2)) continue;
          c.dot(intersect_lines(l1, l2), "fill=\"" + colour + "\"");
        }
      }
    }
    c.raw() << "  </g>\n";
  }
  draw_cuts(c, cert.tree, plane, options.cut_stroke);

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << options.width << "\" height=\""
      << c.height() << "\" viewBox=\"0 0 " << options.width << " " << c.height() << "\">\n"
      << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << c.raw().str() << "</svg>\n";
  return svg.str();
}

}  // namespace linecut
