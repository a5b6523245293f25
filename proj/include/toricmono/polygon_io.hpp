#ifndef TORICMONO_POLYGON_IO_HPP
#define TORICMONO_POLYGON_IO_HPP

#include <string>

#include "toricmono/geometry.hpp"

namespace toricmono {

/// Parse a polygon from JSON of the form {"vertices": [[x, y], ...]} with
/// integer entries. Clockwise input is reoriented; self-intersecting input
/// raises std::invalid_argument carrying the parse context.
LatticePolygon polygon_from_json(const std::string& text);
LatticePolygon polygon_from_file(const std::string& path);
std::string polygon_to_json(const LatticePolygon& poly);

}  // namespace toricmono

#endif
