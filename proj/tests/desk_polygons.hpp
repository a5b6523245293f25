#ifndef TORICMONO_TESTS_DESK_POLYGONS_HPP
#define TORICMONO_TESTS_DESK_POLYGONS_HPP

#include <vector>

#include "fixtures.hpp"

namespace toricmono::testing {

/// The fixed desk-scale polygon collection used by the verification suites.
inline std::vector<LatticePolygon> desk_polygons() {
  return {
      figure_triangle(),
      square(4),
      square(5),
      square(6),
      kite_small(),
      kite_k4(),
      LatticePolygon::from_vertices({{0, 0}, {4, 0}, {3, 2}, {1, 2}}),
      LatticePolygon::from_vertices({{0, 0}, {4, 0}, {0, 4}}),
      LatticePolygon::from_vertices({{0, 0}, {2, 0}, {3, 1}, {3, 3}, {1, 3}, {0, 2}}),
      LatticePolygon::from_vertices({{0, 0}, {6, 0}, {6, 3}, {0, 3}}),
  };
}

}  // namespace toricmono::testing

#endif
