#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "toricmono/hypotheses.hpp"

using namespace toricmono;
using namespace toricmono::testing;

TEST_CASE("wedge enumeration") {
  auto tri = unit_triangle();
  auto ws = enumerate_wedges(tri);
  CHECK(ws.size() == 3);  // one admissible apex per edge
  for (auto& w : ws) CHECK(w.triangle().node_count() == 0);

  auto sq = square(5);
  auto wsq = enumerate_wedges(sq);
  // apex count per edge: boundary points minus the edge's own points.
  CHECK(wsq.size() == 4 * (20 - 6));

  Wedge w0 = distinguished_wedge(sq, 0);
  CHECK(w0.apex == LatticePoint{0, 5});
  CHECK(w0.edge_points.front() == LatticePoint{0, 0});
  CHECK(w0.edge_points.back() == LatticePoint{5, 0});

  CHECK_THROWS_AS(full_edge_wedge(sq, 0, LatticePoint{3, 0}), std::invalid_argument);
}

TEST_CASE("hypothesis checks on squares") {
  for (long long d : {5, 6}) {
    auto r = check_hypotheses(square(d));
    CHECK(r.A);
    CHECK(r.B);
    CHECK(r.C);
    CHECK(r.q == 1);
    CHECK(r.min_edge_length == d);
    CHECK(r.required_length == 4);
  }

  auto thin = check_hypotheses(square(2));
  CHECK(!thin.A);
  CHECK(!thin.a_failures.empty());
  CHECK(!thin.B);

  auto four = check_hypotheses(square(4));
  CHECK(four.B);  // length threshold met
  CHECK(!four.A); // but some class is hit only once on a wedge triangle
}

TEST_CASE("length constants") {
  CHECK(ell_constant(square(5)) == 5);
  CHECK(ell_constant(figure_triangle()) == 425);
  CHECK(ell_min(square(5), 3) == 5);
  CHECK(ell_min(figure_triangle(), 2) <= 425);
}

TEST_CASE("quadrilateral ratio formulas") {
  Vec2 A{0, 0}, B{1, 0}, C{1, 1}, D{0, 1};
  CHECK(quadri_ratio_direct(A, B, C, D) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(quadri_ratio_general(A, B, C, D) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(quadri_ratio_trapezoid(A, B, C, D) == doctest::Approx(0.5).epsilon(1e-12));

  Vec2 A2{0, 0}, B2{3, 0}, C2{3, 2}, D2{0, 1};
  double direct = quadri_ratio_direct(A2, B2, C2, D2);
  CHECK(std::abs(quadri_ratio_general(A2, B2, C2, D2) - direct) < 1e-12);

  CHECK_THROWS_AS(quadri_ratio_general({0, 0}, {2, 0}, {1, 3}, {1, 1}), std::invalid_argument);
}

TEST_CASE("quadrilateral formulas against the intersection oracle") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> coord(-5.0, 5.0);
  int done = 0;
  while (done < 100) {
    Vec2 P[4];
    for (auto& p : P) p = {coord(rng), coord(rng)};
    double direct;
    try {
      direct = quadri_ratio_direct(P[0], P[1], P[2], P[3]);
    } catch (const std::invalid_argument&) {
      continue;  // not in convex position
    }
    double general = quadri_ratio_general(P[0], P[1], P[2], P[3]);
    CHECK(std::abs(general - direct) < 1e-10 * std::max(1.0, std::abs(direct)));
    // The trapezoid variant applies when the side condition holds for the
    // given labeling or for the mirrored one.
    bool checked_v2 = false;
    double v2 = 0, ref = direct;
    try {
      v2 = quadri_ratio_trapezoid(P[0], P[1], P[2], P[3]);
      checked_v2 = true;
    } catch (const std::invalid_argument&) {
      try {
        v2 = quadri_ratio_trapezoid(P[1], P[0], P[3], P[2]);
        ref = quadri_ratio_direct(P[1], P[0], P[3], P[2]);
        checked_v2 = true;
      } catch (const std::invalid_argument&) {
      }
    }
    if (checked_v2) CHECK(std::abs(v2 - ref) < 1e-10 * std::max(1.0, std::abs(ref)));
    ++done;
  }
}

TEST_CASE("minoration identity is exact") {
  std::mt19937_64 rng(59);
  for (int i = 0; i < 40; ++i) {
    auto poly = random_polygon(rng);
    auto es = poly.edges();
    int n = poly.edge_count();
    for (int j = 0; j < n; ++j) {
      const auto& e1 = es[(j + n - 1) % n];
      const auto& e2 = es[j];
      long long qj = std::llabs(cross(e1.primitive, e2.primitive));
      // |E1| |E2| sin(theta) equals |det(E1, E2)| for the full edge vectors.
      long long full = std::llabs(cross(e1.length * e1.primitive, e2.length * e2.primitive));
      CHECK(full == qj * e1.length * e2.length);
    }
  }
}

TEST_CASE("wedge group generators") {
  auto fig = figure_triangle();
  auto domain = fig.interior_points();
  Wedge whole = full_edge_wedge(fig, 0, LatticePoint{7, 6});
  auto gens = wedge_group_generators(fig, whole, domain);
  CHECK(gens.size() == 21);  // C(5,2) + C(5,2) + C(2,2)

  // A wedge whose fibers are singletons contributes nothing.
  auto sq = square(5);
  auto sq_domain = sq.interior_points();
  Wedge small = full_edge_wedge(sq, 0, LatticePoint{0, 1});
  for (auto& g : wedge_group_generators(sq, small, sq_domain)) CHECK(!g.is_identity());
  CHECK(wedge_group_generators(sq, small, sq_domain).empty());
}

TEST_CASE("quadrilateral bounds from the proof configurations") {
  // (A)-configuration: quadrilaterals spanned by consecutive distinguished
  // wedges of the d x d square; the bound ell_Z(BC) * AO/AC > 5/3.
  for (long long d : {5, 6}) {
    Vec2 A{0, 0}, B{double(d), 0}, C{double(d), double(d)}, D{0, double(d)};
    double ratio = quadri_ratio_direct(A, B, C, D);
    CHECK(double(d) * ratio > 5.0 / 3.0);
  }
  // (C)-configuration: consecutive apexes on the far edge; AO/AC > 5/8.
  for (long long d : {5, 6}) {
    for (long long x = 1; x < d; ++x) {
      Vec2 A{0, 0}, B{double(d), 0}, C{double(x), double(d)}, D{double(x - 1), double(d)};
      CHECK(quadri_ratio_direct(A, B, C, D) > 5.0 / 8.0);
    }
  }
}

TEST_CASE("theorem check on the empty-interior triangle") {
  auto tc = verify_theorem_combinatorics(unit_triangle());
  // Hypotheses fail on such a small polygon; the check reports that rather
  // than a verification result.
  CHECK(!tc.hypotheses_met);
}

TEST_CASE("theorem check on the 5x5 square") {
  auto tc = verify_theorem_combinatorics(square(5));
  REQUIRE(tc.hypotheses_met);
  CHECK(tc.verified);
  CHECK(tc.deck_order == factorial(16));
  CHECK(tc.generated_order == factorial(16));
}

TEST_CASE("restriction and membership consequences on the 5x5 square") {
  auto sq = square(5);
  auto domain = sq.interior_points();
  int n = static_cast<int>(domain.size());
  auto bd = obstruction_target(sq.boundary_points());

  std::vector<Permutation> all_gens;
  for (const auto& w : enumerate_wedges(sq)) {
    auto g = wedge_group_generators(sq, w, domain);
    all_gens.insert(all_gens.end(), g.begin(), g.end());
  }
  PermGroup G = PermGroup::from_generators(n, all_gens);

  for (int j = 0; j < 4; ++j) {
    Wedge wj = distinguished_wedge(sq, j);
    LatticePolygon tj = wj.triangle();
    LatticePoint shift = tj.original_offset();
    std::vector<int> F;
    for (auto& p : tj.interior_points()) {
      LatticePoint q = p + shift;
      auto it = std::lower_bound(domain.begin(), domain.end(), q);
      if (it != domain.end() && *it == q) F.push_back(static_cast<int>(it - domain.begin()));
    }

    // Membership: transpositions inside itr(T_j) within a boundary fiber.
    for (std::size_t a = 0; a < F.size(); ++a) {
      for (std::size_t b = a + 1; b < F.size(); ++b) {
        if (bd.reduce(domain[F[a]]) == bd.reduce(domain[F[b]])) {
          CHECK(G.contains(Permutation::transposition(n, F[a], F[b])));
        }
      }
    }

    // Restriction: generators supported inside itr(T_j) already generate the
    // full deck group of the boundary map on that sub-domain.
    std::map<LatticePoint, std::vector<int>> fibers;
    for (std::size_t i = 0; i < F.size(); ++i) fibers[bd.reduce(domain[F[i]])].push_back((int)i);
    BigInt expected = 1;
    for (auto& [rep, pts] : fibers) expected *= factorial(pts.size());

    std::vector<Permutation> restricted;
    for (const auto& g : all_gens) {
      auto sup = g.support();
      bool inside = !sup.empty();
      for (int s : sup) inside &= std::binary_search(F.begin(), F.end(), s);
      if (!inside) continue;
      std::vector<int> img(F.size());
      for (std::size_t i = 0; i < F.size(); ++i) {
        int target = g(F[i]);
        img[i] = static_cast<int>(std::lower_bound(F.begin(), F.end(), target) - F.begin());
      }
      restricted.push_back(Permutation(img));
    }
    PermGroup GF = PermGroup::from_generators(static_cast<int>(F.size()), restricted);
    CHECK(GF.order() == expected);
  }
}
