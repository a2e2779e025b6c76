#pragma once

#include "leja/conformal_transport.h"
#include "leja/flip_univariate.h"
#include "leja/lagrange_bivariate.h"
#include "leja/leja_disk.h"

#include <json.hpp>

#include <string>
#include <vector>

namespace leja
{

using Json = nlohmann::json;

std::string compact_tag_name(CompactTag tag);
CompactTag compact_tag_from_name(const std::string& name);

/// index,re,im with a 1-based index.
std::string section_to_csv(const LejaSection& section);
LejaSection section_from_csv(const std::string& text, CompactTag tag = CompactTag::unit_disk);

/// {n, points: [{re, im}], compact_tag}
Json section_to_json(const LejaSection& section);
LejaSection section_from_json(const Json& j);

/// {kind: "ellipse", a, b}
Json map_to_json(const ExteriorMap& map);
ExteriorMap map_from_json(const Json& j);

/// Image points in the section layouts plus the map: an extra "map" column
/// (ellipse:a:b) in CSV, an extra "map" object in JSON.
std::string transported_to_csv(const TransportedSection& ts);
Json transported_to_json(const TransportedSection& ts);

/// {N, constant, argmax_angle, per_node_sup: [...]}
Json lebesgue_to_json(const LebesgueReport& report);
LebesgueReport lebesgue_from_json(const Json& j);

/// k,sup_k rows.
std::string lebesgue_to_csv(const LebesgueReport& report);

/// {N, n, m, nodes: [{z: {re, im}, w: {re, im}}]}
Json array_to_json(const IntertwiningArray& array);

struct TableRow
{
  int n = 0;
  std::size_t N = 0;
  double value = 0.0;
};

/// n,N,value rows.
std::string table_to_csv(const std::vector<TableRow>& rows);

} // namespace leja
