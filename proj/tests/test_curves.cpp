#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "fixtures.hpp"
#include "toricmono/curves.hpp"

using namespace toricmono;
using namespace toricmono::testing;

namespace {

TriangleParam figure_curve() { return TriangleParam(5, 7, 6, std::vector<cplx>(5, cplx(1.0))); }

double line_distance(cplx t, double angle) {
  return std::abs(std::imag(t * std::polar(1.0, -angle)));
}

std::vector<cplx> random_params(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> mag(0.5, 2.0);
  std::uniform_real_distribution<double> arg(0.0, 2.0 * std::numbers::pi);
  std::vector<cplx> a;
  for (std::size_t i = 0; i < n; ++i) a.push_back(std::polar(mag(rng), arg(rng)));
  return a;
}

}  // namespace

TEST_CASE("harnack parameters are ordered along the boundary") {
  auto fig = harnack_parameters(figure_triangle());
  REQUIRE(fig.slots.size() == 8);
  for (std::size_t i = 0; i + 1 < fig.slots.size(); ++i) {
    CHECK(fig.slots[i].a.real() < fig.slots[i + 1].a.real());
    CHECK(fig.slots[i].a.imag() == 0.0);
  }

  CHECK(harnack_parameters(unit_triangle()).slots.size() == 3);

  auto sq = harnack_parameters(square(5));
  REQUIRE(sq.slots.size() == 20);
  for (int e = 0; e < 4; ++e) {
    int count = 0;
    for (auto& s : sq.slots) count += (s.edge == e);
    CHECK(count == 5);
  }
}

TEST_CASE("evaluation of the worked curve") {
  auto tri = figure_curve();
  EvalPoint p = tri.eval(cplx(2.0));
  CHECK(p.finite);
  CHECK(std::abs(p.x - cplx(64.0)) < 1e-12);
  CHECK(std::abs(p.y - cplx(1.0 / 128.0)) < 1e-15);

  EvalPoint pole = tri.eval(cplx(0.0));
  CHECK(!pole.finite);
}

TEST_CASE("conjugation symmetry for real parameters") {
  auto c = harnack_parameters(figure_triangle());
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> re(-2.0, 2.0);
  for (int i = 0; i < 40; ++i) {
    cplx t{re(rng), re(rng)};
    EvalPoint a = c.eval(t);
    EvalPoint b = c.eval(std::conj(t));
    if (!a.finite || !b.finite) continue;
    CHECK(std::abs(std::conj(a.x) - b.x) < 1e-12 * (1.0 + std::abs(a.x)));
    CHECK(std::abs(std::conj(a.y) - b.y) < 1e-12 * (1.0 + std::abs(a.y)));
  }
}

TEST_CASE("node polynomial supports") {
  auto tri = figure_curve();

  auto np2 = node_polynomial(tri, 2);
  CHECK(np2.regime == NodeRegime::generic);
  CHECK(np2.support == std::vector<int>({0, 2, 3, 5}));

  auto np3 = node_polynomial(tri, 3);
  CHECK(np3.regime == NodeRegime::halved);
  CHECK(np3.support == std::vector<int>({0, 1, 2}));
  CHECK(np3.poly.degree() == 2);

  CHECK_THROWS_AS(node_polynomial(tri, 0), std::out_of_range);
  CHECK_THROWS_AS(node_polynomial(tri, 4), std::out_of_range);
}

TEST_CASE("support matches the sine criterion") {
  for (long long q = 2; q <= 12; ++q) {
    for (long long ell = 2; ell <= 8; ++ell) {
      for (long long p = 1; p <= q; ++p) {
        std::vector<cplx> a;
        for (long long j = 0; j < ell; ++j) a.push_back(cplx(double(j + 1)));
        TriangleParam tri(ell, p, q, a);
        for (int k = 1; 2 * k <= q; ++k) {
          if (q == 2 * k) {
            auto np = node_polynomial(tri, k);
            long long top = (p % 2 == 0) ? (ell - 1) / 2 : ell / 2;
            std::vector<int> expect;
            for (long long m = 0; m <= top; ++m) expect.push_back(static_cast<int>(m));
            CHECK(np.support == expect);
            continue;
          }
          auto np = node_polynomial(tri, k);
          for (long long j = 0; j <= ell; ++j) {
            double s = std::sin(std::numbers::pi * k * double(p - j) / double(q));
            bool sine_nonzero = std::abs(s) > 1e-9;
            bool in_support =
                std::find(np.support.begin(), np.support.end(), static_cast<int>(j)) !=
                np.support.end();
            CHECK(in_support == sine_nonzero);
          }
        }
      }
    }
  }
}

TEST_CASE("halved-regime quadratic and its roots") {
  auto tri = figure_curve();
  auto np = node_polynomial(tri, 3);
  REQUIRE(np.poly.coeffs.size() == 3);
  // Quadratic-formula oracle.
  cplx c0 = np.poly.coeffs[0], c1 = np.poly.coeffs[1], c2 = np.poly.coeffs[2];
  cplx disc = std::sqrt(c1 * c1 - 4.0 * c2 * c0);
  cplx r1 = (-c1 + disc) / (2.0 * c2);
  cplx r2 = (-c1 - disc) / (2.0 * c2);

  auto rr = roots_in_cstar(np, 1e-9);
  REQUIRE(rr.roots.size() == 2);
  double direct = std::min(std::abs(rr.roots[0] - r1) + std::abs(rr.roots[1] - r2),
                           std::abs(rr.roots[0] - r2) + std::abs(rr.roots[1] - r1));
  CHECK(direct < 1e-10);
  // Both roots on the line e^{-i pi 7 k / 6} R* with k = 3, which is i R*.
  for (cplx t : rr.roots) CHECK(std::abs(t.real()) < 1e-9);
}

TEST_CASE("generic-regime roots on the expected line") {
  auto tri = figure_curve();
  auto np = node_polynomial(tri, 1);
  auto rr = roots_in_cstar(np, 1e-9);
  REQUIRE(rr.roots.size() == 5);
  double angle = -std::numbers::pi * 7.0 / 6.0;
  for (cplx t : rr.roots) CHECK(line_distance(t, angle) < 1e-8);
}

TEST_CASE("monomial polynomial has no roots in the torus") {
  NodePolynomial np;
  np.poly = Poly({cplx(0.0), cplx(0.0), cplx(3.0)});
  auto rr = roots_in_cstar(np, 1e-9);
  CHECK(rr.roots.empty());
}

TEST_CASE("worked triangle node counts") {
  auto tn = triangle_nodes(figure_curve(), 1e-9);
  REQUIRE(tn.classes.size() == 3);
  CHECK(tn.classes[0].expected == 5);
  CHECK(tn.classes[0].roots.size() == 5);
  CHECK(tn.classes[1].expected == 5);
  CHECK(tn.classes[1].roots.size() == 5);
  CHECK(tn.classes[2].expected == 2);
  CHECK(tn.classes[2].roots.size() == 2);
  CHECK(tn.total_found == 12);
  CHECK(tn.total_expected == 12);
  for (auto& cls : tn.classes) CHECK(cls.max_identity_residual < 1e-8);
}

TEST_CASE("triangles without interior points have no nodes") {
  TriangleParam tri(1, 1, 1, {cplx(1.0)});
  auto tn = triangle_nodes(tri, 1e-9);
  CHECK(tn.total_expected == 0);
  CHECK(tn.total_found == 0);
}

TEST_CASE("random triangles match their fiber sizes") {
  std::mt19937_64 rng(20160);
  std::uniform_int_distribution<long long> qd(2, 8), elld(2, 6);
  int done = 0;
  while (done < 20) {
    long long q = qd(rng), ell = elld(rng);
    std::uniform_int_distribution<long long> pd(1, q);
    long long p = pd(rng);
    TriangleParam tri(ell, p, q, random_params(rng, ell));
    TriangleNodes tn;
    try {
      tn = triangle_nodes(tri, 1e-9);
    } catch (const std::runtime_error&) {
      continue;  // resample near-discriminant draws
    }
    CHECK(tn.total_found == tn.total_expected);
    CHECK(tn.total_expected == tri.polygon().node_count());
    for (auto& cls : tn.classes) {
      CHECK(cls.roots.size() == cls.expected);
      CHECK(cls.max_identity_residual < 1e-7);
    }
    ++done;
  }
}

TEST_CASE("near-discriminant detection") {
  auto tri = figure_curve();
  for (int k = 1; k <= 3; ++k) CHECK(!near_discriminant(tri, k, 1e-6));

  // Force a double root of the halved quadratic by solving for a_5: the
  // discriminant c1^2 - 4 c2 c0 is polynomial in a_5; Newton from a seed.
  auto disc_val = [&](cplx a5) {
    std::vector<cplx> a(5, cplx(1.0));
    a[4] = a5;
    auto np = node_polynomial(TriangleParam(5, 7, 6, a), 3);
    cplx c0 = np.poly.coeffs[0], c1 = np.poly.coeffs[1], c2 = np.poly.coeffs[2];
    return c1 * c1 - 4.0 * c2 * c0;
  };
  cplx a5{0.3, 0.7};
  for (int it = 0; it < 60; ++it) {
    cplx f = disc_val(a5);
    cplx fp = (disc_val(a5 + 1e-6) - f) / 1e-6;
    a5 -= f / fp;
  }
  REQUIRE(std::abs(disc_val(a5)) < 1e-10);
  std::vector<cplx> forced(5, cplx(1.0));
  forced[4] = a5;
  CHECK(near_discriminant(TriangleParam(5, 7, 6, forced), 3, 1e-4));

  // Classes with at most one root never flag.
  TriangleParam small(2, 2, 4, {cplx(7.0), cplx(8.0)});
  CHECK(!near_discriminant(small, 1, 1e-2));
  CHECK(!near_discriminant(small, 2, 1e-2));
}

TEST_CASE("self-intersections agree with the class-by-class nodes") {
  auto tri = figure_curve();
  auto tn = triangle_nodes(tri, 1e-9);
  auto si = self_intersections(tri.as_curve_param(), 1e-9);
  CHECK(!si.degenerate);
  REQUIRE(si.pairs.size() == 12);

  // Every (t, t e^{2 pi i k / q}) pair appears among the intersections.
  cplx omega = std::polar(1.0, 2.0 * std::numbers::pi / 6.0);
  int matched = 0;
  for (auto& cls : tn.classes) {
    for (cplx t : cls.roots) {
      cplx t1, t2;
      if (cls.regime == NodeRegime::generic) {
        t1 = t;
        t2 = t * std::pow(omega, cls.k);
      } else {
        t1 = std::sqrt(cplx(0.0, -1.0) * t);
        t2 = -t1;
      }
      for (auto& np : si.pairs) {
        double direct = std::max(std::abs(np.t1 - t1), std::abs(np.t2 - t2));
        double swapped = std::max(std::abs(np.t1 - t2), std::abs(np.t2 - t1));
        if (std::min(direct, swapped) < 1e-7) {
          ++matched;
          break;
        }
      }
    }
  }
  CHECK(matched == 12);
}

TEST_CASE("self-intersections of Harnack kites") {
  auto kite = kite_small();
  auto si = self_intersections(harnack_parameters(kite), 1e-9);
  CHECK(!si.degenerate);
  CHECK(si.pairs.size() == 3);
  // Real curve: the isolated double points are real.
  for (auto& np : si.pairs) {
    CHECK(std::abs(np.point.x.imag()) < 1e-8);
    CHECK(std::abs(np.point.y.imag()) < 1e-8);
  }

  auto empty = self_intersections(harnack_parameters(unit_triangle()), 1e-9);
  CHECK(empty.pairs.empty());
  CHECK(!empty.degenerate);
}

TEST_CASE("total node count equals the interior count on random triangles") {
  std::mt19937_64 rng(77);
  int done = 0;
  while (done < 8) {
    std::uniform_int_distribution<long long> qd(2, 6), elld(2, 4);
    long long q = qd(rng), ell = elld(rng);
    std::uniform_int_distribution<long long> pd(1, q);
    TriangleParam tri(ell, pd(rng), q, random_params(rng, ell));
    TriangleNodes tn;
    try {
      tn = triangle_nodes(tri, 1e-9);
    } catch (const std::runtime_error&) {
      continue;
    }
    CHECK(tn.total_found == tri.polygon().node_count());
    ++done;
  }
}

TEST_CASE("harnack root-line property on random ordered real parameters") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> gap(0.3, 1.2);
  for (int trial = 0; trial < 10; ++trial) {
    long long ell = 4, q = 5 + (trial % 3), p = 1 + (trial % 5);
    std::vector<cplx> a;
    double v = 1.0;
    for (long long j = 0; j < ell; ++j) {
      a.push_back(cplx(v));
      v += gap(rng);
    }
    TriangleParam tri(ell, p, q, a);
    for (int k = 1; 2 * k <= q; ++k) {
      auto np = node_polynomial(tri, k);
      if (np.regime != NodeRegime::generic) continue;
      auto rr = roots_in_cstar(np, 1e-9);
      // Real nodes come from conjugate parameter pairs, which pins the
      // argument of every root to -pi k / q modulo pi.
      double angle = -std::numbers::pi * double(k) / double(q);
      for (cplx t : rr.roots) CHECK(line_distance(t, angle) < 1e-7 * (1.0 + std::abs(t)));
    }
  }
}
