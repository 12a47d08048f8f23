#pragma once

#include <string>

#include "json.hpp"
#include "linecut/enclosure.hpp"
#include "linecut/family.hpp"
#include "linecut/geometry.hpp"

namespace linecut {

using Json = nlohmann::ordered_json;

Json to_json(const Scalar& s);
Scalar scalar_from_json(const Json& j);

Json to_json(const Point& p);
Point point_from_json(const Json& j);

Json to_json(const Direction& d);
Direction direction_from_json(const Json& j);

// {"a":..,"b":..,"c":..}
Json to_json(const Line& l);
Line line_from_json(const Json& j, int id = 0);

// {"name": .., "lines": [...]}
Json to_json(const LineFamily& f);
LineFamily family_from_json(const Json& j);

// {"a":..,"b":..,"c":..,"side":1|-1}
Json to_json(const HalfPlane& h);
HalfPlane halfplane_from_json(const Json& j);

// A convex region serializes as its half-plane list; a union as
// {"pieces": [{"kind":..,"halfplanes":[...]}, ...]}. Both forms parse.
Json to_json(const ConvexRegion& r);
Json to_json(const Region& r);
Region region_from_json(const Json& j);

Json to_json(const EnclosureWitness& w);
EnclosureWitness witness_from_json(const Json& j);

// Compact but stable text form (two-space indent, trailing newline).
std::string dump(const Json& j);
Json parse_json(const std::string& text);

std::string read_file(const std::string& path);
// Writes to a sibling temporary file and renames it into place.
void write_file_atomic(const std::string& path, const std::string& contents);

}  // namespace linecut
