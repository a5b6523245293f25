#ifndef TORICMONO_TESTS_FIXTURES_HPP
#define TORICMONO_TESTS_FIXTURES_HPP

#include <random>
#include <vector>

#include "toricmono/geometry.hpp"

namespace toricmono::testing {

inline LatticePolygon unit_triangle() {
  return LatticePolygon::from_vertices({{0, 0}, {1, 0}, {0, 1}});
}

inline LatticePolygon figure_triangle() {
  return LatticePolygon::from_vertices({{0, 0}, {5, 0}, {7, 6}});
}

inline LatticePolygon square(long long d) {
  return LatticePolygon::from_vertices({{0, 0}, {d, 0}, {d, d}, {0, d}});
}

inline LatticePolygon kite_small() {
  return LatticePolygon::from_vertices({{-1, 0}, {0, -2}, {1, 0}, {0, 2}});
}

inline LatticePolygon kite_k4() {
  return LatticePolygon::from_vertices({{-1, 0}, {0, -2}, {1, 0}, {0, 3}});
}

/// Random convex lattice polygon: hull of a handful of points in a box.
inline LatticePolygon random_polygon(std::mt19937_64& rng, long long box = 6, int tries = 64) {
  std::uniform_int_distribution<long long> coord(-box, box);
  std::uniform_int_distribution<int> count(3, 8);
  for (int attempt = 0; attempt < tries; ++attempt) {
    std::vector<LatticePoint> pts;
    int n = count(rng);
    for (int i = 0; i < n; ++i) pts.push_back({coord(rng), coord(rng)});
    auto hull = convex_hull_vertices(pts);
    if (hull.size() < 3) continue;
    return LatticePolygon::from_vertices(hull);
  }
  return square(2);
}

}  // namespace toricmono::testing

#endif
