#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>

#include "fixtures.hpp"
#include "toricmono/obstruction.hpp"

using namespace toricmono;
using namespace toricmono::testing;

namespace {

std::vector<LatticePoint> triangle_edge_and_apex(const LatticePolygon& tri) {
  auto es = tri.edges();
  std::vector<LatticePoint> S;
  for (long long k = 0; k <= es[0].length; ++k) S.push_back(es[0].start + k * es[0].primitive);
  S.push_back(tri.vertices()[2]);
  return S;
}

}  // namespace

TEST_CASE("obstruction target basics") {
  auto full = obstruction_target({{0, 0}, {1, 0}, {0, 1}});
  CHECK(full.index() == 1);
  CHECK(full.class_count() == 1);

  auto bd = obstruction_target(figure_triangle().boundary_points());
  CHECK(bd.index() == 3);
  CHECK(bd.class_count() == 2);

  CHECK_THROWS_AS(obstruction_target({{0, 0}, {2, 0}}), std::invalid_argument);
}

TEST_CASE("triangle quotient has index q and floor(q/2)+1 classes") {
  for (long long q : {2, 3, 4, 5, 6, 7, 8}) {
    for (long long p : {1, 2, 3, 5}) {
      long long ell = 4;
      std::vector<LatticePoint> S;
      for (long long j = 0; j <= ell; ++j) S.push_back({j, 0});
      S.push_back({p, q});
      auto t = obstruction_target(S);
      CHECK(t.index() == q);
      CHECK(t.class_count() == static_cast<std::size_t>(q / 2 + 1));
    }
  }
}

TEST_CASE("reducer symmetry") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long long> coord(-9, 9);
  auto t = obstruction_target(figure_triangle().boundary_points());
  LatticePoint base = t.base_point();
  for (int i = 0; i < 200; ++i) {
    LatticePoint x{coord(rng), coord(rng)};
    CHECK(t.reduce(x) == t.reduce(LatticePoint{2 * base.x - x.x, 2 * base.y - x.y}));
    for (auto& g : t.generators()) {
      LatticePoint shifted = x + (g - base);
      CHECK(t.reduce(shifted) == t.reduce(x));
    }
  }
}

TEST_CASE("fiber partition of the worked triangle") {
  auto poly = figure_triangle();
  auto part = psi(std::span<const LatticePoint>(triangle_edge_and_apex(poly)), poly);
  auto sizes = part.fiber_sizes();
  std::multiset<std::size_t> got(sizes.begin(), sizes.end());
  CHECK(got == std::multiset<std::size_t>{5, 5, 2});

  auto bd = psi_boundary(poly);
  auto bsizes = bd.fiber_sizes();
  std::multiset<std::size_t> got2(bsizes.begin(), bsizes.end());
  CHECK(got2 == std::multiset<std::size_t>{2, 10});
}

TEST_CASE("index-one polygons have a single fiber") {
  auto part = psi_boundary(square(5));
  CHECK(part.fibers.size() == 1);
  CHECK(part.fibers[0].size() == 16);
}

TEST_CASE("deck order of a partition") {
  auto poly = figure_triangle();
  auto part = psi(std::span<const LatticePoint>(triangle_edge_and_apex(poly)), poly);
  CHECK(aut_order(part) == 28800);

  auto full = psi_boundary(square(5));
  CHECK(aut_order(full) == factorial(16));

  FiberPartition empty;
  CHECK(aut_order(empty) == 1);
}

TEST_CASE("nonsurjectivity certificates") {
  auto cert = nonsurjectivity_certificate(figure_triangle());
  REQUIRE(cert.has_value());
  CHECK(cert->index == 3);
  REQUIRE(cert->witness.has_value());
  CHECK(*cert->witness == LatticePoint{4, 3});

  CHECK(!nonsurjectivity_certificate(square(5)).has_value());

  // Index >= 4: certificate regardless of interior membership.
  auto big = LatticePolygon::from_vertices({{0, 0}, {4, 1}, {1, 4}});
  REQUIRE(affine_sublattice_index(big.boundary_points()) == 5);
  auto c2 = nonsurjectivity_certificate(big);
  REQUIRE(c2.has_value());
  CHECK(c2->index == 5);
  CHECK(!c2->witness.has_value());
}

TEST_CASE("pushout of finite maps") {
  FinMap f{4, 3, {0, 0, 1, 2}};  // collapses {0,1}
  FinMap g{4, 3, {0, 1, 1, 2}};  // collapses {1,2}
  FinMap push = pushout(f, g);
  auto fibers = push.fibers();
  std::multiset<std::size_t> sizes;
  for (auto& fb : fibers) {
    if (!fb.empty()) sizes.insert(fb.size());
  }
  CHECK(sizes == std::multiset<std::size_t>{3, 1});

  FinMap same = pushout(f, f);
  CHECK(same.to == std::vector<int>({0, 0, 1, 2}));

  FinMap inj1{3, 3, {0, 1, 2}}, inj2{3, 3, {2, 1, 0}};
  FinMap pi = pushout(inj1, inj2);
  std::set<int> values(pi.to.begin(), pi.to.end());
  CHECK(values.size() == 3);

  FinMap bad{5, 2, {0, 0, 0, 1, 1}};
  CHECK_THROWS_AS(pushout(f, bad), std::invalid_argument);
}

TEST_CASE("pushout is commutative and associative on partitions") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> lab(0, 3);
  for (int trial = 0; trial < 50; ++trial) {
    std::size_t n = 6;
    auto rand_map = [&] {
      FinMap m{n, 4, {}};
      for (std::size_t i = 0; i < n; ++i) m.to.push_back(lab(rng));
      return m;
    };
    FinMap f = rand_map(), g = rand_map(), h = rand_map();
    auto partition = [](const FinMap& m) {
      std::set<std::vector<int>> blocks;
      for (auto& fb : m.fibers()) {
        if (!fb.empty()) blocks.insert(fb);
      }
      return blocks;
    };
    CHECK(partition(pushout(f, g)) == partition(pushout(g, f)));
    CHECK(partition(pushout(pushout(f, g), h)) == partition(pushout(f, pushout(g, h))));
  }
}

TEST_CASE("push lemma") {
  auto poly = figure_triangle();
  auto S = triangle_edge_and_apex(poly);

  CHECK(verify_push_lemma(poly, S, S));

  // Wedges on consecutive edges sharing a vertex.
  auto bd = poly.boundary_points();
  std::vector<LatticePoint> w1, w2;
  auto es = poly.edges();
  for (long long k = 0; k <= es[0].length; ++k) w1.push_back(es[0].start + k * es[0].primitive);
  w1.push_back(poly.vertices()[2]);
  for (long long k = 0; k <= es[1].length; ++k) w2.push_back(es[1].start + k * es[1].primitive);
  w2.push_back(poly.vertices()[0]);
  CHECK(verify_push_lemma(poly, w1, w2));
}

TEST_CASE("push lemma rejects violated hypotheses") {
  auto poly = figure_triangle();
  std::vector<LatticePoint> S1{{0, 0}, {1, 0}, {0, 1}};
  std::vector<LatticePoint> S2{{5, 0}, {6, 3}, {7, 6}};
  CHECK_THROWS_AS(verify_push_lemma(poly, S1, S2), HypothesisViolation);  // no shared point
}

TEST_CASE("push lemma on sampled desk wedge pairs, fully surjective maps") {
  // Sampled version of the exhaustive acceptance run: pairs of wedges on the
  // desk polygons whose maps hit every class of their target.
  std::mt19937_64 rng(23);
  int checked = 0;
  for (auto& poly : {figure_triangle(), square(4), square(6)}) {
    auto es = poly.edges();
    auto boundary = poly.boundary_points();
    std::uniform_int_distribution<std::size_t> pick(0, boundary.size() - 1);
    for (int trial = 0; trial < 60; ++trial) {
      int j = static_cast<int>(pick(rng) % es.size());
      int j2 = static_cast<int>(pick(rng) % es.size());
      auto wedge_set = [&](int edge, LatticePoint apex) {
        std::vector<LatticePoint> S;
        for (long long k = 0; k <= es[edge].length; ++k) {
          S.push_back(es[edge].start + k * es[edge].primitive);
        }
        S.push_back(apex);
        return S;
      };
      LatticePoint a1 = boundary[pick(rng)], a2 = boundary[pick(rng)];
      std::vector<LatticePoint> A = wedge_set(j, a1), B = wedge_set(j2, a2);
      if (std::count(A.begin(), A.end(), a1) > 1 || std::count(B.begin(), B.end(), a2) > 1) {
        continue;  // apex fell on its own edge
      }
      auto surjective = [&](const std::vector<LatticePoint>& S) {
        try {
          auto q = obstruction_target(S);
          return psi(q, poly).fibers.size() == q.class_count();
        } catch (...) {
          return false;
        }
      };
      if (!surjective(A) || !surjective(B)) continue;
      bool ok;
      try {
        ok = verify_push_lemma(poly, A, B);
      } catch (const HypothesisViolation&) {
        continue;
      }
      CHECK(ok);
      ++checked;
    }
  }
  CHECK(checked > 0);
}

TEST_CASE("rotated boundary view") {
  auto poly = figure_triangle();
  auto view = psi_X_view(poly);
  auto bd = obstruction_target(poly.boundary_points());
  CHECK(view.index() == bd.index());
  CHECK(view.class_count() == bd.class_count());

  // The partitions agree through the rotation.
  auto interior = poly.interior_points();
  std::map<LatticePoint, std::set<LatticePoint>> via_view, via_bd;
  for (auto& p : interior) {
    via_view[view.reduce(IntMat2::rotation90().apply(p))].insert(p);
    via_bd[bd.reduce(p)].insert(p);
  }
  std::set<std::set<LatticePoint>> blocks_view, blocks_bd;
  for (auto& [k, v] : via_view) blocks_view.insert(v);
  for (auto& [k, v] : via_bd) blocks_bd.insert(v);
  CHECK(blocks_view == blocks_bd);

  auto trivial = psi_X_view(square(5));
  CHECK(trivial.class_count() == 1);
}

TEST_CASE("boundary index equals the vertex determinant gcd") {
  std::mt19937_64 rng(29);
  for (int i = 0; i < 60; ++i) {
    auto poly = random_polygon(rng);
    auto idx = affine_sublattice_index(poly.boundary_points());
    REQUIRE(idx.has_value());
    CHECK(*idx == vertex_determinant_gcd(poly));
    CHECK(obstruction_target(poly.boundary_points()).class_count() ==
          static_cast<std::size_t>(vertex_determinant_gcd(poly) / 2 + 1));
  }
}
