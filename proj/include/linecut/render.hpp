#pragma once

#include <string>
#include <vector>

#include "linecut/solver.hpp"

namespace linecut {

struct RenderOptions {
  int width = 800;
  std::vector<std::string> palette{"#1b9e77", "#d95f02", "#7570b3", "#e7298a",
                                   "#66a61e", "#e6ab02", "#a6761d", "#666666"};
  std::string cut_stroke = "#c00000";
};

// Axis-aligned box; padded() grows each side by a fraction of the extent.
struct Box {
  Scalar xmin, ymin, xmax, ymax;
  Box padded(const Scalar& fraction) const;
};

// Bounding box of I(A) and I(B); a unit box around the origin when empty,
// and widened to unit extent along a degenerate axis.
Box incidence_box(const LineFamily& a, const LineFamily& b);

struct Segment {
  Point from;
  Point to;
};
// Part of {p + t d : t >= lo} inside region and box; no lo means the whole
// line. Empty when it misses.
std::optional<Segment> clip_to(const Point& p, const Point& d, std::optional<Scalar> lo,
                               const ConvexRegion& region, const Box& box);

// Standalone SVG of the families, cut geometry and per-leaf witnesses.
std::string render_svg(const PartitionCertificate& cert, const RenderOptions& options = {});

}  // namespace linecut
