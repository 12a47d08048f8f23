#include "linecut/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "linecut/error.hpp"

namespace linecut {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ParseError(std::string("missing field '") + key + "'");
  }
  return j.at(key);
}

// Kind implied by a bare half-plane list.
RegionKind implied_kind(const std::vector<HalfPlane>& hs) {
  switch (hs.size()) {
    case 0: return RegionKind::WholePlane;
    case 1: return RegionKind::HalfPlane;
    case 2:
      return hs[0].boundary().parallel_to(hs[1].boundary()) ? RegionKind::Strip
                                                             : RegionKind::Wedge;
    default: return RegionKind::Cell;
  }
}

std::vector<HalfPlane> halfplanes_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("half-plane list must be an array");
  std::vector<HalfPlane> out;
  for (const auto& h : j) out.push_back(halfplane_from_json(h));
  return out;
}

ConvexRegion convex_from_json(const Json& j) {
  if (j.is_array()) {
    ConvexRegion r;
    r.halfplanes = halfplanes_from_json(j);
    r.kind = implied_kind(r.halfplanes);
    return r;
  }
  ConvexRegion r;
  r.halfplanes = halfplanes_from_json(field(j, "halfplanes"));
  r.kind = j.contains("kind") ? region_kind_from_string(j.at("kind").get<std::string>())
                              : implied_kind(r.halfplanes);
  return r;
}

}  // namespace

Json to_json(const Scalar& s) { return format_scalar(s); }

Scalar scalar_from_json(const Json& j) {
  if (j.is_string()) return parse_scalar(j.get<std::string>());
  if (j.is_number_integer()) return Scalar(j.get<long>());
  throw ParseError("rational must be a \"num/den\" string");
}

Json to_json(const Point& p) { return {{"x", to_json(p.x)}, {"y", to_json(p.y)}}; }

Point point_from_json(const Json& j) {
  return {scalar_from_json(field(j, "x")), scalar_from_json(field(j, "y"))};
}

Json to_json(const Direction& d) { return {{"dx", to_json(d.dx())}, {"dy", to_json(d.dy())}}; }

Direction direction_from_json(const Json& j) {
  return {scalar_from_json(field(j, "dx")), scalar_from_json(field(j, "dy"))};
}

Json to_json(const Line& l) {
  return {{"a", to_json(l.a())}, {"b", to_json(l.b())}, {"c", to_json(l.c())}};
}

Line line_from_json(const Json& j, int id) {
  try {
    return {scalar_from_json(field(j, "a")), scalar_from_json(field(j, "b")),
            scalar_from_json(field(j, "c")), id};
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
}

Json to_json(const LineFamily& f) {
  Json lines = Json::array();
  for (const auto& l : f.lines()) lines.push_back(to_json(l));
  return {{"name", f.name()}, {"lines", std::move(lines)}};
}

LineFamily family_from_json(const Json& j) {
  const Json& lines = field(j, "lines");
  if (!lines.is_array()) throw ParseError("'lines' must be an array");
  std::vector<Line> out;
  int id = 0;
  for (const auto& l : lines) out.push_back(line_from_json(l, id++));
  std::string name = j.contains("name") ? j.at("name").get<std::string>() : "";
  return {std::move(name), std::move(out)};
}

Json to_json(const HalfPlane& h) {
  Json j = to_json(h.boundary());
  j["side"] = h.side();
  return j;
}

HalfPlane halfplane_from_json(const Json& j) {
  const int side = field(j, "side").get<int>();
  if (side != 1 && side != -1) throw ParseError("half-plane side must be 1 or -1");
  return {line_from_json(j), side};
}

Json to_json(const ConvexRegion& r) {
  Json hs = Json::array();
  for (const auto& h : r.halfplanes) hs.push_back(to_json(h));
  if (implied_kind(r.halfplanes) == r.kind) return hs;
  return {{"kind", to_string(r.kind)}, {"halfplanes", std::move(hs)}};
}

Json to_json(const Region& r) {
  if (r.convex()) return to_json(r.pieces.front());
  Json pieces = Json::array();
  for (const auto& piece : r.pieces) {
    Json hs = Json::array();
    for (const auto& h : piece.halfplanes) hs.push_back(to_json(h));
    pieces.push_back({{"kind", to_string(piece.kind)}, {"halfplanes", std::move(hs)}});
  }
  return {{"pieces", std::move(pieces)}};
}

Region region_from_json(const Json& j) {
  if (j.is_object() && j.contains("pieces")) {
    std::vector<ConvexRegion> pieces;
    for (const auto& piece : j.at("pieces")) pieces.push_back(convex_from_json(piece));
    if (pieces.empty()) throw ParseError("region union needs at least one piece");
    return Region(std::move(pieces));
  }
  return convex_from_json(j);
}

Json to_json(const EnclosureWitness& w) {
  return {{"family", w.family}, {"region", to_json(w.region)}, {"subset", w.subset}};
}

EnclosureWitness witness_from_json(const Json& j) {
  EnclosureWitness w;
  w.family = field(j, "family").get<std::string>();
  w.region = region_from_json(field(j, "region"));
  w.subset = field(j, "subset").get<std::vector<int>>();
  return w;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const std::string& path, const std::string& contents) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write '" + tmp + "'");
    out << contents;
    out.flush();
    if (!out) throw Error("write failed for '" + tmp + "'");
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw Error("cannot rename '" + tmp + "' to '" + path + "'");
  }
}

}  // namespace linecut
