#ifndef TORICMONO_CURVES_HPP
#define TORICMONO_CURVES_HPP

#include <complex>
#include <optional>
#include <vector>

#include "toricmono/geometry.hpp"
#include "toricmono/obstruction.hpp"
#include "toricmono/polynomial.hpp"

namespace toricmono {

/// Point of the torus (C*)^2, with a flag for evaluation at a pole.
struct EvalPoint {
  cplx x{}, y{};
  bool finite = true;
};

/// One root slot of a rational parametrization: the factor (t - a)^(alpha)
/// in the first coordinate and (t - a)^(beta) in the second. A slot at
/// infinity contributes the constant factor 1. (alpha, beta) is the
/// primitive inner normal of the boundary edge owning the slot.
struct CurveSlot {
  cplx a{};
  bool at_infinity = false;
  int alpha = 0, beta = 0;
  int edge = -1;
};

/// Rational curve parametrization
///   t -> (x_scale * t^x_tpow * prod (t-a)^alpha,
///         y_scale * t^y_tpow * prod (t-a)^beta).
struct CurveParam {
  cplx x_scale{1.0, 0.0}, y_scale{1.0, 0.0};
  int x_tpow = 0, y_tpow = 0;
  std::vector<CurveSlot> slots;
  LatticePolygon polygon;  // Newton polygon of the image curve

  EvalPoint eval(cplx t) const;
  /// Logarithmic derivatives (x'/x, y'/y) at t; infinite at poles/roots.
  std::pair<cplx, cplx> log_derivative(cplx t) const;
  std::vector<cplx> finite_parameters() const;
  CurveParam with_parameters(const std::vector<cplx>& params) const;
};

/// Real parameters in strictly increasing order along the counter-clockwise
/// boundary, spacing apart, scales 1. The resulting real curve is a simple
/// Harnack curve.
CurveParam harnack_parameters(const LatticePolygon& poly, double spacing = 1.0);

/// Normal form of a rational curve on the triangle (0,0), (ell,0), (p,q)
/// meeting the two non-horizontal toric divisors once:
///   t -> (t^q, t^(-p) * prod_j (t - a_j)),  all a_j in C*.
struct TriangleParam {
  long long ell = 0, p = 0, q = 0;
  std::vector<cplx> a;

  TriangleParam(long long ell_, long long p_, long long q_, std::vector<cplx> a_);
  EvalPoint eval(cplx t) const;
  LatticePolygon polygon() const;
  /// Fiber partition of the interior points under the obstruction map of
  /// the horizontal edge plus the apex.
  FiberPartition psi_triangle() const;
  CurveParam as_curve_param() const;
};

enum class NodeRegime { generic, halved };

/// Univariate polynomial whose roots in C* parametrize the nodes in one
/// obstruction class. In the halved regime (q == 2k) the variable is the
/// square of the node parameter.
struct NodePolynomial {
  int k = 0;
  NodeRegime regime = NodeRegime::generic;
  long long ell = 0, p = 0, q = 0;
  Poly poly;                      // exact zeros off the structural support
  std::vector<int> support;       // structural support J_k of the stored poly
  std::vector<cplx> multiplier;   // lambda_{k,j}, j = 0..ell (zero off support)
};

/// Throws std::out_of_range unless 1 <= k <= q/2.
NodePolynomial node_polynomial(const TriangleParam& tri, int k);

struct RootsResult {
  std::vector<cplx> roots;
  double max_residual = 0.0;
  bool well_conditioned = true;
};

/// Roots of the node polynomial away from 0 and infinity, each verified to
/// residual below tol * max|coeff| (the conditioning flag records failures),
/// ordered by argument then modulus.
RootsResult roots_in_cstar(const NodePolynomial& np, double tol);

/// Nodes of a triangle-normal-form curve, class by class, with the counting
/// and node-identity verifications.
struct TriangleNodes {
  struct PerClass {
    int k = 0;
    NodeRegime regime = NodeRegime::generic;
    std::vector<cplx> roots;        // roots of the node polynomial
    std::vector<EvalPoint> nodes;   // node positions in the torus
    std::size_t expected = 0;       // fiber size of the obstruction class
    double max_identity_residual = 0.0;  // relative to the node magnitude
  };
  std::vector<PerClass> classes;
  std::size_t total_expected = 0, total_found = 0;
  double max_root_residual = 0.0;
};

/// Throws std::runtime_error("non-generic parameters") when a node
/// polynomial has two roots closer than the separation guard (1000 * tol).
TriangleNodes triangle_nodes(const TriangleParam& tri, double tol);

/// True when the node polynomial of class k has two roots within tol.
bool near_discriminant(const TriangleParam& tri, int k, double tol);

/// An unordered parameter pair {t1, t2} mapping to the same point.
struct NodePair {
  cplx t1{}, t2{};
  EvalPoint point;
  double residual = 0.0;  // per-coordinate relative residual of the identity
};

struct SelfIntersections {
  std::vector<NodePair> pairs;
  bool degenerate = false;  // count disagrees with the interior point count
  double max_residual = 0.0;
};

/// All self-intersections of the parametrized curve: clears denominators of
/// the two coordinate differences, divides by (t - s), eliminates s by a
/// resultant, and polishes candidate pairs on the original system.
SelfIntersections self_intersections(const CurveParam& param, double tol);

/// Newton refinement of a parameter pair on phi(t) = phi(s); true when the
/// residual drops below tol relative to the point magnitude.
bool refine_node_pair(const CurveParam& c, cplx& t, cplx& s, double tol);

}  // namespace toricmono

#endif
