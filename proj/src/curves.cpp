#include "toricmono/curves.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <stdexcept>

namespace toricmono {

namespace {

cplx ipow(cplx z, int e) {
  if (e == 0) return cplx(1.0);
  bool neg = e < 0;
  unsigned long long n = neg ? static_cast<unsigned long long>(-(long long)e) : e;
  cplx r(1.0), base = z;
  while (n) {
    if (n & 1ULL) r *= base;
    base *= base;
    n >>= 1;
  }
  return neg ? cplx(1.0) / r : r;
}

double sin_exact_support(long long k, long long num, long long q, bool in_support) {
  if (!in_support) return 0.0;
  return std::sin(std::numbers::pi * static_cast<double>(k) * static_cast<double>(num) /
                  static_cast<double>(q));
}

// Elementary symmetric values sigma_0..sigma_n of the given numbers.
std::vector<cplx> elementary_symmetric(const std::vector<cplx>& a) {
  std::vector<cplx> sig(a.size() + 1, cplx(0.0));
  sig[0] = 1.0;
  std::size_t used = 0;
  for (cplx v : a) {
    ++used;
    for (std::size_t m = used; m >= 1; --m) sig[m] += v * sig[m - 1];
  }
  return sig;
}

}  // namespace

EvalPoint CurveParam::eval(cplx t) const {
  EvalPoint out;
  out.x = x_scale;
  out.y = y_scale;
  if (t == cplx(0.0) && (x_tpow < 0 || y_tpow < 0)) {
    out.finite = false;
    return out;
  }
  out.x *= ipow(t, x_tpow);
  out.y *= ipow(t, y_tpow);
  for (const auto& s : slots) {
    if (s.at_infinity) continue;
    cplx f = t - s.a;
    if (f == cplx(0.0) && (s.alpha < 0 || s.beta < 0)) {
      out.finite = false;
      return out;
    }
    out.x *= ipow(f, s.alpha);
    out.y *= ipow(f, s.beta);
  }
  return out;
}

std::pair<cplx, cplx> CurveParam::log_derivative(cplx t) const {
  cplx dx = 0, dy = 0;
  if (x_tpow != 0) dx += static_cast<double>(x_tpow) / t;
  if (y_tpow != 0) dy += static_cast<double>(y_tpow) / t;
  for (const auto& s : slots) {
    if (s.at_infinity) continue;
    cplx inv = cplx(1.0) / (t - s.a);
    dx += static_cast<double>(s.alpha) * inv;
    dy += static_cast<double>(s.beta) * inv;
  }
  return {dx, dy};
}

std::vector<cplx> CurveParam::finite_parameters() const {
  std::vector<cplx> out;
  for (const auto& s : slots) {
    if (!s.at_infinity) out.push_back(s.a);
  }
  return out;
}

CurveParam CurveParam::with_parameters(const std::vector<cplx>& params) const {
  CurveParam c = *this;
  std::size_t i = 0;
  for (auto& s : c.slots) {
    if (!s.at_infinity) s.a = params.at(i++);
  }
  if (i != params.size()) throw std::invalid_argument("parameter count mismatch");
  return c;
}

CurveParam harnack_parameters(const LatticePolygon& poly, double spacing) {
  if (spacing <= 0) throw std::invalid_argument("spacing must be positive");
  CurveParam c;
  c.polygon = poly;
  double value = 1.0;
  for (const auto& e : poly.edges()) {
    int alpha = static_cast<int>(-e.primitive.y);
    int beta = static_cast<int>(e.primitive.x);
    for (long long l = 0; l < e.length; ++l) {
      c.slots.push_back({cplx(value), false, alpha, beta, e.index});
      value += spacing;
    }
  }
  return c;
}

TriangleParam::TriangleParam(long long ell_, long long p_, long long q_, std::vector<cplx> a_)
    : ell(ell_), p(p_), q(q_), a(std::move(a_)) {
  if (ell < 1 || p < 1 || q < 1) throw std::invalid_argument("triangle data must be positive");
  if (static_cast<long long>(a.size()) != ell) throw std::invalid_argument("expected ell parameters");
  for (cplx v : a) {
    if (v == cplx(0.0)) throw std::invalid_argument("triangle parameters must be nonzero");
  }
}

EvalPoint TriangleParam::eval(cplx t) const {
  EvalPoint out;
  if (t == cplx(0.0)) {
    out.finite = false;
    return out;
  }
  out.x = ipow(t, static_cast<int>(q));
  cplx y = ipow(t, static_cast<int>(-p));
  for (cplx r : a) y *= (t - r);
  out.y = y;
  return out;
}

LatticePolygon TriangleParam::polygon() const {
  return LatticePolygon::from_vertices({{0, 0}, {ell, 0}, {p, q}});
}

FiberPartition TriangleParam::psi_triangle() const {
  std::vector<LatticePoint> S;
  for (long long j = 0; j <= ell; ++j) S.push_back({j, 0});
  S.push_back({p, q});
  return psi(std::span<const LatticePoint>(S), polygon());
}

CurveParam TriangleParam::as_curve_param() const {
  CurveParam c;
  c.polygon = polygon();
  c.x_tpow = static_cast<int>(q);
  c.y_tpow = static_cast<int>(-p);
  for (cplx r : a) c.slots.push_back({r, false, 0, 1, 0});
  return c;
}

NodePolynomial node_polynomial(const TriangleParam& tri, int k) {
  if (k < 1 || 2 * k > tri.q) throw std::out_of_range("class index k out of range");
  NodePolynomial np;
  np.k = k;
  np.ell = tri.ell;
  np.p = tri.p;
  np.q = tri.q;
  np.multiplier.assign(tri.ell + 1, cplx(0.0));

  std::vector<cplx> sigma = elementary_symmetric(tri.a);
  long long q = tri.q, p = tri.p, ell = tri.ell;

  if (q != 2 * k) {
    np.regime = NodeRegime::generic;
    long long modulus = q / gcd_ll(q, k);
    np.poly.coeffs.assign(ell + 1, cplx(0.0));
    for (long long j = 0; j <= ell; ++j) {
      bool in_support = ((p - j) % modulus) != 0;
      if (!in_support) continue;
      np.support.push_back(static_cast<int>(j));
      double s = sin_exact_support(k, p - j, q, true);
      cplx lam = s * std::polar(1.0, std::numbers::pi * k * static_cast<double>(j) / q);
      np.multiplier[j] = lam;
      double sign = ((ell - j) % 2 == 0) ? 1.0 : -1.0;
      np.poly.coeffs[j] = sign * sigma[ell - j] * lam;
    }
  } else {
    np.regime = NodeRegime::halved;
    bool p_even = (p % 2 == 0);
    long long top = p_even ? (ell - 1) / 2 : ell / 2;
    np.poly.coeffs.assign(std::max<long long>(top + 1, 1), cplx(0.0));
    for (long long j = 0; j <= ell; ++j) {
      if ((p - j) % 2 == 0) continue;  // sine vanishes
      long long m = p_even ? (j - 1) / 2 : j / 2;
      if (m < 0 || m > top) continue;
      np.support.push_back(static_cast<int>(m));
      double s = sin_exact_support(k, p - j, q, true);
      cplx lam = s * std::polar(1.0, std::numbers::pi * k * static_cast<double>(m) / q);
      np.multiplier[j] = lam;
      double sign = ((ell - j) % 2 == 0) ? 1.0 : -1.0;
      np.poly.coeffs[m] += sign * sigma[ell - j] * lam;
    }
    std::sort(np.support.begin(), np.support.end());
    np.support.erase(std::unique(np.support.begin(), np.support.end()), np.support.end());
  }
  return np;
}

RootsResult roots_in_cstar(const NodePolynomial& np, double tol) {
  if (tol <= 0) throw std::invalid_argument("tol must be positive");
  RootsResult out;
  PolyRoots pr = all_roots(np.poly);
  out.roots = std::move(pr.roots);
  out.max_residual = pr.max_residual;
  out.well_conditioned = pr.max_residual < tol;
  return out;
}

TriangleNodes triangle_nodes(const TriangleParam& tri, double tol) {
  TriangleNodes out;
  if (tri.q < 2) {
    return out;  // no interior points, nothing to locate
  }
  FiberPartition part = tri.psi_triangle();
  auto target = obstruction_target([&] {
    std::vector<LatticePoint> S;
    for (long long j = 0; j <= tri.ell; ++j) S.push_back({j, 0});
    S.push_back({tri.p, tri.q});
    return S;
  }());

  std::map<LatticePoint, std::size_t> fiber_size_by_rep;
  for (std::size_t f = 0; f < part.fibers.size(); ++f) {
    fiber_size_by_rep[part.fiber_reps[f]] = part.fibers[f].size();
  }

  cplx omega = std::polar(1.0, 2.0 * std::numbers::pi / static_cast<double>(tri.q));
  for (int k = 1; 2 * k <= tri.q; ++k) {
    TriangleNodes::PerClass cls;
    cls.k = k;
    NodePolynomial np = node_polynomial(tri, k);
    cls.regime = np.regime;
    RootsResult rr = roots_in_cstar(np, tol);
    out.max_root_residual = std::max(out.max_root_residual, rr.max_residual);

    for (std::size_t i = 0; i < rr.roots.size(); ++i) {
      for (std::size_t j = i + 1; j < rr.roots.size(); ++j) {
        if (std::abs(rr.roots[i] - rr.roots[j]) < 1000.0 * tol) {
          throw std::runtime_error("non-generic parameters");
        }
      }
    }

    LatticePoint rep = target.reduce({0, k});
    auto it = fiber_size_by_rep.find(rep);
    cls.expected = (it == fiber_size_by_rep.end()) ? 0 : it->second;
    cls.roots = rr.roots;

    for (cplx t : rr.roots) {
      EvalPoint n1, n2;
      if (np.regime == NodeRegime::generic) {
        n1 = tri.eval(t);
        n2 = tri.eval(t * ipow(omega, k));
      } else {
        // The halved variable is s^2 scaled by the phase e^{i pi k / q} = i
        // of the substitution, so the node parameters are +-sqrt(-i t).
        cplx s = std::sqrt(cplx(0.0, -1.0) * t);
        n1 = tri.eval(s);
        n2 = tri.eval(-s);
      }
      double scale = std::max({1.0, std::abs(n1.x), std::abs(n1.y)});
      double resid = std::max(std::abs(n1.x - n2.x), std::abs(n1.y - n2.y)) / scale;
      cls.max_identity_residual = std::max(cls.max_identity_residual, resid);
      cls.nodes.push_back(n1);
    }
    out.total_expected += cls.expected;
    out.total_found += cls.roots.size();
    out.classes.push_back(std::move(cls));
  }
  return out;
}

bool near_discriminant(const TriangleParam& tri, int k, double tol) {
  NodePolynomial np = node_polynomial(tri, k);
  PolyRoots pr = all_roots(np.poly);
  for (std::size_t i = 0; i < pr.roots.size(); ++i) {
    for (std::size_t j = i + 1; j < pr.roots.size(); ++j) {
      if (std::abs(pr.roots[i] - pr.roots[j]) < tol) return true;
    }
  }
  return false;
}

namespace {

// Numerator/denominator pair of one coordinate of the parametrization.
void coordinate_fraction(const CurveParam& c, bool first, Poly& num, Poly& den) {
  num = Poly::constant(first ? c.x_scale : c.y_scale);
  den = Poly::constant(cplx(1.0));
  int tpow = first ? c.x_tpow : c.y_tpow;
  auto mul_linear_power = [](Poly& p, cplx root, int mult) {
    for (int i = 0; i < mult; ++i) p = p * Poly({-root, cplx(1.0)});
  };
  if (tpow > 0) mul_linear_power(num, cplx(0.0), tpow);
  if (tpow < 0) mul_linear_power(den, cplx(0.0), -tpow);
  for (const auto& s : c.slots) {
    if (s.at_infinity) continue;
    int e = first ? s.alpha : s.beta;
    if (e > 0) mul_linear_power(num, s.a, e);
    if (e < 0) mul_linear_power(den, s.a, -e);
  }
}

}  // namespace

namespace {

// Residual of the pair system, each coordinate relative to its own
// magnitude; invariant under the torus action.
double pair_residual(const EvalPoint& pt, const EvalPoint& ps) {
  double sx = std::max(std::abs(pt.x), std::abs(ps.x));
  double sy = std::max(std::abs(pt.y), std::abs(ps.y));
  if (sx == 0.0 || sy == 0.0) return std::numeric_limits<double>::infinity();
  return std::max(std::abs(pt.x - ps.x) / sx, std::abs(pt.y - ps.y) / sy);
}

}  // namespace

bool refine_node_pair(const CurveParam& c, cplx& t, cplx& s, double tol) {
  for (int it = 0; it < 40; ++it) {
    EvalPoint pt = c.eval(t);
    EvalPoint ps = c.eval(s);
    if (!pt.finite || !ps.finite) return false;
    cplx f1 = pt.x - ps.x;
    cplx f2 = pt.y - ps.y;
    if (pair_residual(pt, ps) < 1e-13) return true;
    auto [dxt, dyt] = c.log_derivative(t);
    auto [dxs, dys] = c.log_derivative(s);
    cplx j11 = pt.x * dxt, j12 = -ps.x * dxs;
    cplx j21 = pt.y * dyt, j22 = -ps.y * dys;
    cplx det = j11 * j22 - j12 * j21;
    if (std::abs(det) < 1e-280) return false;
    cplx dt = (f1 * j22 - f2 * j12) / det;
    cplx ds = (j11 * f2 - j21 * f1) / det;
    t -= dt;
    s -= ds;
    if (!(std::isfinite(t.real()) && std::isfinite(s.real()))) return false;
  }
  EvalPoint pt = c.eval(t);
  EvalPoint ps = c.eval(s);
  if (!pt.finite || !ps.finite) return false;
  return pair_residual(pt, ps) < tol;
}

SelfIntersections self_intersections(const CurveParam& c, double tol) {
  if (tol <= 0) throw std::invalid_argument("tol must be positive");
  SelfIntersections out;
  std::size_t expected = c.polygon.node_count();
  if (expected == 0) {
    return out;
  }

  double r0 = 1.0;
  for (const auto& s : c.slots) {
    if (!s.at_infinity) r0 = std::max(r0, std::abs(s.a));
  }
  r0 *= 1.37;  // keep samples off the parameter moduli

  // Work in the rescaled variable t = r0 * u so the resultant is sampled on
  // the unit circle; otherwise the radius powers overflow at high degree.
  CurveParam scaled = c;
  for (auto& s : scaled.slots) s.a /= r0;

  Poly p1, q1, p2, q2;
  coordinate_fraction(scaled, true, p1, q1);
  coordinate_fraction(scaled, false, p2, q2);

  auto normalize = [](BiPoly& f) {
    double m = 0;
    for (auto& piece : f.by_s_power) m = std::max(m, piece.max_abs_coeff());
    if (m > 0) {
      for (auto& piece : f.by_s_power) piece *= cplx(1.0 / m);
    }
  };
  BiPoly f1 = outer_product(p1, q1) - outer_product(q1, p1);
  BiPoly f2 = outer_product(p2, q2) - outer_product(q2, p2);
  f1.trim();
  f2.trim();
  BiPoly g1 = divide_by_t_minus_s(f1);
  BiPoly g2 = divide_by_t_minus_s(f2);
  normalize(g1);
  normalize(g2);

  Poly res = resultant_in_s(g1, g2, 1.0);
  PolyRoots cand = all_roots(res, 1e-10);
  for (auto& r : cand.roots) r *= r0;

  double sep = std::max(1000.0 * tol, 1e-7);
  std::vector<NodePair> found;
  for (cplx t0 : cand.roots) {
    Poly g1s = g1.eval_t(t0 / r0);  // g1 lives in the rescaled variables
    PolyRoots sc = all_roots(g1s, 1e-10);
    for (cplx s0u : sc.roots) {
      cplx t = t0, s = s0u * r0;
      if (std::abs(t - s) < sep) continue;
      if (!refine_node_pair(c, t, s, tol)) continue;
      if (std::abs(t) < 1e-9 || std::abs(s) < 1e-9) continue;
      if (std::abs(t - s) < sep) continue;
      EvalPoint pt = c.eval(t);
      EvalPoint ps = c.eval(s);
      if (!pt.finite || !ps.finite) continue;
      if (pt.x == cplx(0.0) || pt.y == cplx(0.0)) continue;
      double resid = pair_residual(pt, ps);
      if (resid > tol) continue;

      auto arg_less = [](cplx a, cplx b) {
        double aa = std::arg(a), ab = std::arg(b);
        if (std::abs(aa - ab) > 1e-12) return aa < ab;
        return std::abs(a) < std::abs(b);
      };
      if (arg_less(s, t)) std::swap(t, s);

      bool duplicate = false;
      for (const auto& np : found) {
        double d_direct = std::max(std::abs(np.t1 - t), std::abs(np.t2 - s));
        double d_swapped = std::max(std::abs(np.t1 - s), std::abs(np.t2 - t));
        if (std::min(d_direct, d_swapped) < sep) {
          duplicate = true;
          break;
        }
      }
      if (duplicate) continue;
      found.push_back({t, s, pt, resid});
      out.max_residual = std::max(out.max_residual, resid);
    }
  }

  std::sort(found.begin(), found.end(), [](const NodePair& a, const NodePair& b) {
    double aa = std::arg(a.t1), ab = std::arg(b.t1);
    if (std::abs(aa - ab) > 1e-12) return aa < ab;
    return std::abs(a.t1) < std::abs(b.t1);
  });
  out.pairs = std::move(found);
  out.degenerate = out.pairs.size() != expected;
  return out;
}

}  // namespace toricmono
