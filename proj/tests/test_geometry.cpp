#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "fixtures.hpp"
#include "toricmono/geometry.hpp"

using namespace toricmono;
using namespace toricmono::testing;

TEST_CASE("edges of the unit triangle") {
  auto es = unit_triangle().edges();
  REQUIRE(es.size() == 3);
  CHECK(es[0].primitive == LatticePoint{1, 0});
  CHECK(es[1].primitive == LatticePoint{-1, 1});
  CHECK(es[2].primitive == LatticePoint{0, -1});
  for (auto& e : es) CHECK(e.length == 1);
}

TEST_CASE("edges of the worked triangle") {
  auto es = figure_triangle().edges();
  REQUIRE(es.size() == 3);
  CHECK(es[0].length == 5);
  CHECK(es[0].primitive == LatticePoint{1, 0});
  CHECK(es[1].length == 2);
  CHECK(es[1].primitive == LatticePoint{1, 3});
  CHECK(es[2].length == 1);
  CHECK(es[2].primitive == LatticePoint{-7, -6});
}

TEST_CASE("edges of the 5x5 square") {
  auto es = square(5).edges();
  REQUIRE(es.size() == 4);
  for (auto& e : es) {
    CHECK(e.length == 5);
    CHECK(lattice_length(e.primitive) == 1);
  }
}

TEST_CASE("edge vectors close up") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 50; ++i) {
    auto poly = random_polygon(rng);
    LatticePoint total{0, 0};
    for (auto& e : poly.edges()) total = total + e.length * e.primitive;
    CHECK(total == LatticePoint{0, 0});
  }
}

TEST_CASE("interior points") {
  CHECK(unit_triangle().interior_points().empty());
  CHECK(square(5).interior_points().size() == 16);

  auto pts = figure_triangle().interior_points();
  REQUIRE(pts.size() == 12);
  // Row counts by height 1..5: 4, 3, 2, 2, 1.
  int rows[6] = {0, 0, 0, 0, 0, 0};
  for (auto& p : pts) rows[p.y] += 1;
  CHECK(rows[1] == 4);
  CHECK(rows[2] == 3);
  CHECK(rows[3] == 2);
  CHECK(rows[4] == 2);
  CHECK(rows[5] == 1);
}

TEST_CASE("node counts") {
  CHECK(unit_triangle().node_count() == 0);
  CHECK(figure_triangle().node_count() == 12);
  CHECK(square(5).node_count() == 16);
}

TEST_CASE("Pick identity on random polygons") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i) {
    auto poly = random_polygon(rng);
    long long A2 = poly.twice_area();
    long long I = static_cast<long long>(poly.interior_points().size());
    long long B = static_cast<long long>(poly.boundary_points().size());
    CHECK(A2 == 2 * I + B - 2);
  }
}

TEST_CASE("affine sublattice index") {
  std::vector<LatticePoint> basis{{0, 0}, {1, 0}, {0, 1}};
  CHECK(affine_sublattice_index(basis) == 1);

  auto boundary = figure_triangle().boundary_points();
  CHECK(affine_sublattice_index(boundary) == 3);

  std::vector<LatticePoint> rank1{{0, 0}, {2, 0}};
  CHECK(!affine_sublattice_index(rank1).has_value());
}

TEST_CASE("sublattice index is invariant under unimodular maps") {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<long long> entry(-3, 3);
  for (int i = 0; i < 50; ++i) {
    auto poly = random_polygon(rng);
    auto pts = poly.boundary_points();
    auto idx = affine_sublattice_index(pts);

    IntMat2 u;
    do {
      u = {entry(rng), entry(rng), entry(rng), entry(rng)};
    } while (u.det() != 1 && u.det() != -1);
    LatticePoint shift{entry(rng), entry(rng)};
    std::vector<LatticePoint> mapped;
    for (auto& p : pts) mapped.push_back(u.apply(p) + shift);
    CHECK(affine_sublattice_index(mapped) == idx);
  }
}

TEST_CASE("edges commute with unimodular maps up to relabeling") {
  auto poly = figure_triangle();
  AffineMap f{{1, 1, 0, 1}, {3, -2}};
  auto mapped = poly.transformed(f);
  auto es = poly.edges();
  auto ms = mapped.edges();
  REQUIRE(es.size() == ms.size());
  std::vector<LatticePoint> expected, got;
  for (auto& e : es) expected.push_back(f.m.apply(e.primitive));
  for (auto& e : ms) got.push_back(e.primitive);
  std::sort(expected.begin(), expected.end());
  std::sort(got.begin(), got.end());
  CHECK(expected == got);
}

TEST_CASE("polygon construction") {
  CHECK_THROWS_AS(LatticePolygon::from_vertices({{0, 0}, {1, 0}, {2, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(LatticePolygon::from_vertices({{0, 0}, {1, 1}, {1, 0}, {0, 1}}),
                  std::invalid_argument);  // self-intersecting

  auto cw = LatticePolygon::from_vertices({{0, 0}, {0, 1}, {1, 0}});
  CHECK(cw.twice_area() > 0);
  CHECK(!cw.notes().empty());

  auto merged = LatticePolygon::from_vertices({{0, 0}, {1, 0}, {2, 0}, {2, 2}, {0, 2}});
  CHECK(merged.edge_count() == 4);
  bool noted = false;
  for (auto& n : merged.notes()) noted |= (n.find("collinear") != std::string::npos);
  CHECK(noted);
}

TEST_CASE("kite detection") {
  auto k3 = detect_kite(kite_small());
  REQUIRE(k3.has_value());
  CHECK(k3->interior_count == 3);
  // The normalizing map sends the two off-line points to (-1,0), (1,0).
  CHECK(k3->map.apply(k3->off_line_a) == LatticePoint{-1, 0});
  CHECK(k3->map.apply(k3->off_line_b) == LatticePoint{1, 0});
  CHECK(k3->map.m.det() * k3->map.m.det() == 1);

  CHECK(!detect_kite(square(5)).has_value());

  auto k4 = detect_kite(kite_k4());
  REQUIRE(k4.has_value());
  CHECK(k4->interior_count == 4);
}

TEST_CASE("kite normalization maps all points correctly") {
  for (auto poly : {kite_small(), kite_k4()}) {
    auto kn = detect_kite(poly);
    REQUIRE(kn.has_value());
    int off_line = 0;
    for (auto& p : poly.interior_points()) {
      LatticePoint q = kn->map.apply(p + poly.original_offset());
      if (q.x != 0) ++off_line;
    }
    CHECK(off_line == 0);  // interior points sit on the axis
    std::vector<LatticePoint> images;
    for (auto& p : poly.boundary_points()) {
      images.push_back(kn->map.apply(p + poly.original_offset()));
    }
    int off = 0;
    for (auto& q : images) {
      if (q.x != 0) {
        ++off;
        CHECK((q == LatticePoint{-1, 0} || q == LatticePoint{1, 0}));
      }
    }
    CHECK(off == 2);
  }
}

TEST_CASE("convex hull") {
  auto hull = convex_hull({{0, 0}, {2, 0}, {1, 1}, {2, 2}, {0, 2}, {1, 0}});
  CHECK(hull.vertices().size() == 4);
  CHECK(hull.twice_area() == 8);
}
