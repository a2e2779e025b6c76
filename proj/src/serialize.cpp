#include "leja/serialize.h"

#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace leja
{

namespace
{
/// Shortest round-trip representation.
std::string num(double x)
{
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x == 0.0 ? 0.0 : x);
  return {buf, res.ptr};
}

Json point_json(Complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }

Complex point_from(const Json& j) { return {j.at("re").get<double>(), j.at("im").get<double>()}; }

std::string map_token(const ExteriorMap& map)
{
  return "ellipse:" + num(map.a) + ":" + num(map.b);
}
} // namespace
//-----------------------------------------------------------------------------
std::string compact_tag_name(CompactTag tag)
{
  return tag == CompactTag::unit_disk ? "unit_disk" : "sampled_compact";
}
//-----------------------------------------------------------------------------
CompactTag compact_tag_from_name(const std::string& name)
{
  if (name == "unit_disk")
    return CompactTag::unit_disk;
  if (name == "sampled_compact")
    return CompactTag::sampled_compact;
  throw std::invalid_argument("unknown compact tag: " + name);
}
//-----------------------------------------------------------------------------
std::string section_to_csv(const LejaSection& section)
{
  std::string out = "index,re,im\n";
  for (std::size_t i = 0; i < section.size(); ++i)
    out += std::to_string(i + 1) + "," + num(section.points[i].real()) + ","
           + num(section.points[i].imag()) + "\n";
  return out;
}
//-----------------------------------------------------------------------------
LejaSection section_from_csv(const std::string& text, CompactTag tag)
{
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line.rfind("index,re,im", 0) != 0)
    throw std::invalid_argument("section CSV: missing header");

  LejaSection section;
  section.compact_tag = tag;
  while (std::getline(in, line))
  {
    if (line.empty())
      continue;
    std::istringstream row(line);
    std::string idx;
    std::string re;
    std::string im;
    if (!std::getline(row, idx, ',') || !std::getline(row, re, ',') || !std::getline(row, im, ','))
      throw std::invalid_argument("section CSV: malformed row: " + line);
    section.points.emplace_back(std::stod(re), std::stod(im));
  }
  if (!section.points.empty())
    section.origin = section.points.front();
  return section;
}
//-----------------------------------------------------------------------------
Json section_to_json(const LejaSection& section)
{
  Json pts = Json::array();
  for (const Complex& p : section.points)
    pts.push_back(point_json(p));
  return {{"n", section.size()}, {"points", pts},
          {"compact_tag", compact_tag_name(section.compact_tag)}};
}
//-----------------------------------------------------------------------------
LejaSection section_from_json(const Json& j)
{
  LejaSection section;
  section.compact_tag = compact_tag_from_name(j.at("compact_tag").get<std::string>());
  for (const Json& p : j.at("points"))
    section.points.push_back(point_from(p));
  if (section.points.size() != j.at("n").get<std::size_t>())
    throw std::invalid_argument("section JSON: n does not match the point count");
  if (!section.points.empty())
    section.origin = section.points.front();
  return section;
}
//-----------------------------------------------------------------------------
Json map_to_json(const ExteriorMap& map)
{
  return {{"kind", "ellipse"}, {"a", map.a}, {"b", map.b}};
}
//-----------------------------------------------------------------------------
ExteriorMap map_from_json(const Json& j)
{
  if (j.at("kind").get<std::string>() != "ellipse")
    throw std::invalid_argument("map JSON: unsupported kind");
  return ellipse_exterior_map(j.at("a").get<double>(), j.at("b").get<double>());
}
//-----------------------------------------------------------------------------
std::string transported_to_csv(const TransportedSection& ts)
{
  const std::string token = map_token(ts.map);
  std::string out = "index,re,im,map\n";
  for (std::size_t i = 0; i < ts.images.size(); ++i)
    out += std::to_string(i + 1) + "," + num(ts.images[i].real()) + ","
           + num(ts.images[i].imag()) + "," + token + "\n";
  return out;
}
//-----------------------------------------------------------------------------
Json transported_to_json(const TransportedSection& ts)
{
  Json pts = Json::array();
  for (const Complex& p : ts.images)
    pts.push_back(point_json(p));
  return {{"n", ts.images.size()},
          {"points", pts},
          {"compact_tag", compact_tag_name(CompactTag::sampled_compact)},
          {"map", map_to_json(ts.map)}};
}
//-----------------------------------------------------------------------------
Json lebesgue_to_json(const LebesgueReport& report)
{
  return {{"N", report.N},
          {"constant", report.constant},
          {"argmax_angle", report.argmax_angle},
          {"per_node_sup", report.per_node_sup}};
}
//-----------------------------------------------------------------------------
LebesgueReport lebesgue_from_json(const Json& j)
{
  LebesgueReport r;
  r.N = j.at("N").get<std::size_t>();
  r.constant = j.at("constant").get<double>();
  r.argmax_angle = j.at("argmax_angle").get<double>();
  r.per_node_sup = j.at("per_node_sup").get<std::vector<double>>();
  return r;
}
//-----------------------------------------------------------------------------
std::string lebesgue_to_csv(const LebesgueReport& report)
{
  std::string out = "k,sup_k\n";
  for (std::size_t k = 0; k < report.per_node_sup.size(); ++k)
    out += std::to_string(k + 1) + "," + num(report.per_node_sup[k]) + "\n";
  return out;
}
//-----------------------------------------------------------------------------
Json array_to_json(const IntertwiningArray& array)
{
  Json nodes = Json::array();
  for (const BivariatePoint& h : array.nodes)
    nodes.push_back({{"z", point_json(h.z)}, {"w", point_json(h.w)}});
  return {{"N", array.N}, {"n", array.n}, {"m", array.m}, {"nodes", nodes}};
}
//-----------------------------------------------------------------------------
std::string table_to_csv(const std::vector<TableRow>& rows)
{
  std::string out = "n,N,value\n";
  for (const TableRow& r : rows)
    out += std::to_string(r.n) + "," + std::to_string(r.N) + "," + num(r.value) + "\n";
  return out;
}

} // namespace leja
