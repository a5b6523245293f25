#include "toricmono/polygon_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace toricmono {

LatticePolygon polygon_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("polygon JSON parse error: ") + e.what());
  }
  if (!j.contains("vertices") || !j["vertices"].is_array()) {
    throw std::invalid_argument("polygon JSON must contain a \"vertices\" array");
  }
  std::vector<LatticePoint> verts;
  for (const auto& v : j["vertices"]) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number_integer() || !v[1].is_number_integer()) {
      throw std::invalid_argument("polygon vertices must be integer pairs");
    }
    verts.push_back({v[0].get<long long>(), v[1].get<long long>()});
  }
  return LatticePolygon::from_vertices(std::move(verts));
}

LatticePolygon polygon_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open polygon file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return polygon_from_json(ss.str());
}

std::string polygon_to_json(const LatticePolygon& poly) {
  nlohmann::ordered_json j;
  j["vertices"] = nlohmann::ordered_json::array();
  for (auto& v : poly.vertices()) {
    LatticePoint p = v + poly.original_offset();
    j["vertices"].push_back({p.x, p.y});
  }
  return j.dump();
}

}  // namespace toricmono
