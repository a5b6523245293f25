#include "toricmono/monodromy.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

namespace toricmono {

namespace {

cplx unit_phase(double turns) { return std::polar(1.0, 2.0 * std::numbers::pi * turns); }

}  // namespace

ParamLoop constant_loop(std::vector<cplx> base) {
  ParamLoop l;
  l.base = base;
  l.path = [base](double) { return base; };
  l.description = "constant";
  return l;
}

ParamLoop phase_loop(std::vector<cplx> base) {
  ParamLoop l;
  l.base = base;
  l.path = [base](double theta) {
    std::vector<cplx> a = base;
    cplx w = unit_phase(theta);
    for (auto& v : a) v *= w;
    return a;
  };
  l.description = "global phase rotation";
  return l;
}

ParamLoop lasso_loop(std::vector<cplx> base, std::size_t index, cplx center, double radius) {
  if (index >= base.size()) throw std::out_of_range("lasso_loop: parameter index");
  cplx start = base[index];
  cplx toward = start - center;
  double dist = std::abs(toward);
  cplx entry = (dist > radius) ? center + radius * (toward / dist)
                               : start;  // already inside: orbit from the start point
  ParamLoop l;
  l.base = base;
  l.path = [=](double theta) {
    std::vector<cplx> a = base;
    cplx v;
    if (theta <= 0.25) {
      v = start + (theta / 0.25) * (entry - start);
    } else if (theta <= 0.75) {
      v = center + (entry - center) * unit_phase((theta - 0.25) / 0.5);
    } else {
      v = entry + ((theta - 0.75) / 0.25) * (start - entry);
    }
    a[index] = v;
    return a;
  };
  l.description = "lasso around parameter " + std::to_string(index);
  return l;
}

ParamLoop detour_lasso(std::vector<cplx> base, std::size_t index, cplx center, double radius,
                       double lift) {
  if (index >= base.size()) throw std::out_of_range("detour_lasso: parameter index");
  cplx start = base[index];
  cplx lifted = start + cplx(0, lift);
  cplx entry_top = center + cplx(radius, lift);
  cplx entry = center + cplx(radius, 0);
  ParamLoop l;
  l.base = base;
  l.path = [=](double th) {
    std::vector<cplx> a = base;
    cplx v;
    if (th <= 0.15) {
      v = start + (th / 0.15) * (lifted - start);
    } else if (th <= 0.3) {
      v = lifted + ((th - 0.15) / 0.15) * (entry_top - lifted);
    } else if (th <= 0.4) {
      v = entry_top + ((th - 0.3) / 0.1) * (entry - entry_top);
    } else if (th <= 0.6) {
      v = center + (entry - center) * unit_phase((th - 0.4) / 0.2);
    } else if (th <= 0.7) {
      v = entry + ((th - 0.6) / 0.1) * (entry_top - entry);
    } else if (th <= 0.85) {
      v = entry_top + ((th - 0.7) / 0.15) * (lifted - entry_top);
    } else {
      v = lifted + ((th - 0.85) / 0.15) * (start - lifted);
    }
    a[index] = v;
    return a;
  };
  l.description = "detour lasso around parameter " + std::to_string(index);
  return l;
}

ParamLoop rotation_loop(std::vector<cplx> base, std::size_t index) {
  if (index >= base.size()) throw std::out_of_range("rotation_loop: parameter index");
  ParamLoop l;
  l.base = base;
  l.path = [base, index](double theta) {
    std::vector<cplx> a = base;
    a[index] *= unit_phase(theta);
    return a;
  };
  l.description = "rotation of parameter " + std::to_string(index) + " around the origin";
  return l;
}

ParamLoop concatenate(const ParamLoop& first, const ParamLoop& second) {
  ParamLoop l;
  l.base = first.base;
  auto f = first.path;
  auto s = second.path;
  l.path = [f, s](double theta) { return theta <= 0.5 ? f(2.0 * theta) : s(2.0 * theta - 1.0); };
  l.description = first.description + "; then " + second.description;
  return l;
}

std::vector<int> optimal_assignment(const std::vector<cplx>& from, const std::vector<cplx>& to) {
  int n = static_cast<int>(from.size());
  if (n != static_cast<int>(to.size())) throw std::invalid_argument("assignment size mismatch");
  if (n == 0) return {};
  // Jonker-Volgenant style O(n^3) assignment on the distance matrix.
  const double INF = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  auto cost = [&](int i, int j) { return std::abs(from[i] - to[j]); };
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, INF);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      int i0 = p[j0], j1 = -1;
      double delta = INF;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  std::vector<int> match(n);
  for (int j = 1; j <= n; ++j) match[p[j] - 1] = j - 1;
  return match;
}

namespace {

double min_separation(const std::vector<cplx>& pts) {
  double sep = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      sep = std::min(sep, std::abs(pts[i] - pts[j]));
    }
  }
  return sep;
}

double match_distance(const std::vector<cplx>& from, const std::vector<cplx>& to,
                      const std::vector<int>& match) {
  double d = 0;
  for (std::size_t i = 0; i < from.size(); ++i) d = std::max(d, std::abs(from[i] - to[match[i]]));
  return d;
}

}  // namespace

TrackedPermutation track_roots(const TriangleParam& tri, const ParamLoop& loop, int k, double tol,
                               TrackSettings settings) {
  NodePolynomial np0 = node_polynomial(tri, k);
  PolyRoots base = all_roots(np0.poly);
  TrackedPermutation out;
  int n = static_cast<int>(base.roots.size());
  if (n == 0) {
    out.perm = Permutation::identity(0);
    return out;
  }

  std::vector<cplx> cur = base.roots;
  double theta = 0.0;
  double h = 1.0 / settings.steps;
  double h0 = h;
  int accepted = 0;

  auto roots_at = [&](double th) {
    TriangleParam t2(tri.ell, tri.p, tri.q, loop.at(th));
    return all_roots(node_polynomial(t2, k).poly).roots;
  };

  while (theta < 1.0) {
    double next = std::min(1.0, theta + h);
    std::vector<cplx> target = roots_at(next);
    if (static_cast<int>(target.size()) != n) {
      h /= 2;
      if (h < settings.min_step_fraction) {
        throw std::runtime_error("tracking failure at theta=" + std::to_string(theta) +
                                 " (root count changed)");
      }
      continue;
    }
    std::vector<int> match = optimal_assignment(cur, target);
    double d = match_distance(cur, target, match);
    double sep = min_separation(target);
    if (d > sep / 3.0) {
      h /= 2;
      if (h < settings.min_step_fraction) {
        throw std::runtime_error("tracking failure at theta=" + std::to_string(theta) +
                                 " (path too close to the discriminant)");
      }
      continue;
    }
    std::vector<cplx> moved(n);
    for (int i = 0; i < n; ++i) moved[i] = target[match[i]];
    cur = std::move(moved);
    theta = next;
    out.max_step_match = std::max(out.max_step_match, d);
    ++out.steps_used;
    if (++accepted >= 4 && h < h0) {
      h = std::min(h0, 2 * h);
      accepted = 0;
    }
  }

  std::vector<int> closing = optimal_assignment(cur, base.roots);
  out.match_residual = match_distance(cur, base.roots, closing);
  if (out.match_residual > settings.match_tol) {
    throw std::runtime_error("tracking failure: loop endpoints do not match the base roots");
  }
  // cur[i] is the continuation of base root i and coincides with base root
  // closing[i]; the monodromy sends i to closing[i].
  out.perm = Permutation(closing);
  (void)tol;
  return out;
}

ParamLoop discriminant_loop(const TriangleParam& tri, int k, std::uint64_t seed,
                            double radius_factor) {
  NodePolynomial np = node_polynomial(tri, k);
  PolyRoots base_roots = all_roots(np.poly);
  if (base_roots.roots.size() < 2) throw std::runtime_error("empty discriminant");

  // Vary the last parameter. The node polynomial is affine in it:
  // P(t) = A(t) + a_m B(t), so Newton runs on (P, dP/dt) in (t, a_m).
  std::size_t m = tri.a.size() - 1;
  auto eval_P = [&](cplx t, cplx am) {
    std::vector<cplx> params = tri.a;
    params[m] = am;
    TriangleParam t2(tri.ell, tri.p, tri.q, params);
    NodePolynomial q = node_polynomial(t2, k);
    return q;
  };

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::uniform_real_distribution<double> mag(0.4, 1.8);

  double scale = 0;
  for (cplx r : base_roots.roots) scale = std::max(scale, std::abs(r));
  scale = std::max(scale, 1.0);

  for (int restart = 0; restart < 60; ++restart) {
    cplx t = scale * mag(rng) * std::polar(1.0, angle(rng));
    cplx am = tri.a[m] * mag(rng) * std::polar(1.0, angle(rng));
    bool ok = false;
    for (int it = 0; it < 80; ++it) {
      NodePolynomial q = eval_P(t, am);
      Poly P = q.poly;
      Poly dP = P.derivative();
      Poly d2P = dP.derivative();
      cplx f1 = P.eval(t), f2 = dP.eval(t);
      double psc = P.max_abs_coeff();
      if (std::abs(f1) < 1e-12 * psc && std::abs(f2) < 1e-12 * psc) {
        ok = true;
        break;
      }
      // P is affine in a_m; recover its linear coefficient through a second
      // admissible value of a_m.
      std::vector<cplx> p0 = tri.a;
      cplx shift = (std::abs(am + 1.0) > 1e-9) ? am + 1.0 : am + 2.0;
      p0[m] = shift;
      TriangleParam tp0(tri.ell, tri.p, tri.q, p0);
      Poly B = node_polynomial(tp0, k).poly - P;  // linear coefficient of a_m
      B *= cplx(1.0) / (shift - am);
      Poly dB = B.derivative();
      cplx j11 = dP.eval(t), j12 = B.eval(t);
      cplx j21 = d2P.eval(t), j22 = dB.eval(t);
      cplx det = j11 * j22 - j12 * j21;
      if (std::abs(det) < 1e-280) break;
      cplx dt = (f1 * j22 - f2 * j12) / det;
      cplx da = (j11 * f2 - j21 * f1) / det;
      t -= dt;
      am -= da;
      if (!(std::isfinite(t.real()) && std::isfinite(am.real()))) break;
    }
    if (!ok) continue;
    if (std::abs(am) < 1e-8 || std::abs(t) < 1e-8) continue;
    double radius = radius_factor * std::max(1.0, std::abs(am));
    if (std::abs(am - tri.a[m]) < radius) continue;  // base point inside the loop circle
    ParamLoop l = lasso_loop(tri.a, m, am, radius);
    l.description = "discriminant lasso (k=" + std::to_string(k) + ")";
    return l;
  }
  throw std::runtime_error("Newton failure: no double-root parameter located");
}

TrackedPermutation track_curve_nodes(const CurveParam& curve, const ParamLoop& loop,
                                     const SelfIntersections& base_nodes, double tol,
                                     TrackSettings settings) {
  TrackedPermutation out;
  int n = static_cast<int>(base_nodes.pairs.size());
  if (n == 0) {
    out.perm = Permutation::identity(0);
    return out;
  }

  std::vector<std::pair<cplx, cplx>> cur(n);
  for (int i = 0; i < n; ++i) cur[i] = {base_nodes.pairs[i].t1, base_nodes.pairs[i].t2};

  auto polish = [&](const std::vector<cplx>& params, cplx& t, cplx& s) {
    CurveParam c = curve.with_parameters(params);
    return refine_node_pair(c, t, s, 1e-10);
  };

  double theta = 0.0;
  double h = 1.0 / settings.steps;
  double h0 = h;
  int accepted = 0;
  while (theta < 1.0) {
    double next = std::min(1.0, theta + h);
    std::vector<cplx> params = loop.at(next);
    std::vector<std::pair<cplx, cplx>> trial = cur;
    bool ok = true;
    double step_move = 0;
    for (auto& [t, s] : trial) {
      cplx t0 = t, s0 = s;
      if (!polish(params, t, s) || std::abs(t - s) < 1e-9) {
        ok = false;
        break;
      }
      step_move = std::max(step_move, std::max(std::abs(t - t0), std::abs(s - s0)));
    }
    if (ok) {
      // Collision guard: pairs must stay distinct.
      for (int i = 0; ok && i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
          double direct = std::max(std::abs(trial[i].first - trial[j].first),
                                   std::abs(trial[i].second - trial[j].second));
          double swapped = std::max(std::abs(trial[i].first - trial[j].second),
                                    std::abs(trial[i].second - trial[j].first));
          if (std::min(direct, swapped) < 1e-8) {
            ok = false;
            break;
          }
        }
      }
    }
    if (!ok) {
      h /= 2;
      if (h < settings.min_step_fraction) {
        throw std::runtime_error("tracking failure at theta=" + std::to_string(theta));
      }
      continue;
    }
    cur = std::move(trial);
    theta = next;
    out.max_step_match = std::max(out.max_step_match, step_move);
    ++out.steps_used;
    if (++accepted >= 4 && h < h0) {
      h = std::min(h0, 2 * h);
      accepted = 0;
    }
  }

  // Match final pairs (unordered) to the base pairs.
  std::vector<int> images(n, -1);
  double resid = 0;
  for (int i = 0; i < n; ++i) {
    int best = -1;
    double bestd = std::numeric_limits<double>::infinity();
    for (int j = 0; j < n; ++j) {
      double direct = std::max(std::abs(cur[i].first - base_nodes.pairs[j].t1),
                               std::abs(cur[i].second - base_nodes.pairs[j].t2));
      double swapped = std::max(std::abs(cur[i].first - base_nodes.pairs[j].t2),
                                std::abs(cur[i].second - base_nodes.pairs[j].t1));
      double d = std::min(direct, swapped);
      if (d < bestd) {
        bestd = d;
        best = j;
      }
    }
    images[i] = best;
    resid = std::max(resid, bestd);
  }
  std::vector<char> hit(n, 0);
  for (int v : images) {
    if (v < 0 || hit[v]) throw std::runtime_error("tracking failure: node matching is not a bijection");
    hit[v] = 1;
  }
  out.match_residual = resid;
  if (resid > settings.match_tol) {
    throw std::runtime_error("tracking failure: loop endpoints do not match the base nodes");
  }
  out.perm = Permutation(images);
  (void)tol;
  return out;
}

KiteDecoration kite_decoration(const CurveParam& curve, const KiteNormalization& kite,
                               const SelfIntersections& nodes, double tol) {
  // Monomial change of coordinates induced by the kite normalization
  // x -> U x + c on the lattice: the new torus coordinates pull back along
  // the columns of U^{-1}.
  IntMat2 inv = kite.map.m.inverse();
  auto cpow = [](cplx z, long long e) {
    if (e == 0) return cplx(1.0);
    bool neg = e < 0;
    unsigned long long n = neg ? static_cast<unsigned long long>(-e) : e;
    cplx r(1.0), b = z;
    while (n) {
      if (n & 1ULL) r *= b;
      b *= b;
      n >>= 1;
    }
    return neg ? cplx(1.0) / r : r;
  };
  auto to_kite_coords = [&](EvalPoint p) {
    cplx z = cpow(p.x, inv.a) * cpow(p.y, inv.c);
    cplx w = cpow(p.x, inv.b) * cpow(p.y, inv.d);
    return std::make_pair(z, w);
  };

  // Defining polynomial alpha/z + p(w) + beta z recovered from samples.
  long long wlo = kite.axis_min, whi = kite.axis_max;
  int unknowns = static_cast<int>(whi - wlo + 1) + 2;
  int rows = 3 * unknowns;
  Eigen::MatrixXcd M(rows, unknowns);
  std::mt19937_64 rng(99991);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::uniform_real_distribution<double> radius(0.35, 2.6);
  int r = 0;
  int guard = 0;
  while (r < rows && guard++ < 40 * rows) {
    cplx t = radius(rng) * std::polar(1.0, angle(rng));
    EvalPoint p = curve.eval(t);
    if (!p.finite || p.x == cplx(0.0) || p.y == cplx(0.0)) continue;
    auto [z, w] = to_kite_coords(p);
    if (!std::isfinite(z.real()) || !std::isfinite(w.real())) continue;
    double rowscale = std::max({std::abs(1.0 / z), std::abs(z), std::pow(std::abs(w), (double)whi)});
    if (rowscale > 1e8 || rowscale < 1e-8) continue;
    M(r, 0) = 1.0 / z;
    M(r, 1) = z;
    for (long long mexp = wlo; mexp <= whi; ++mexp) {
      M(r, static_cast<int>(2 + mexp - wlo)) = cpow(w, mexp);
    }
    M.row(r) /= M.row(r).norm();
    ++r;
  }
  if (r < rows) throw std::runtime_error("not a kite curve (sampling failed)");

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M, Eigen::ComputeThinV);
  Eigen::VectorXcd coeff = svd.matrixV().col(unknowns - 1);
  cplx alpha = coeff(0), beta = coeff(1);
  if (std::abs(beta) < 1e-12 * coeff.norm()) throw std::runtime_error("not a kite curve (beta = 0)");

  KiteDecoration out;
  out.alpha_over_beta = alpha / beta;
  out.principal_sqrt = std::sqrt(out.alpha_over_beta);
  out.sign.resize(nodes.pairs.size());
  out.blocks.assign(2, {});
  for (std::size_t i = 0; i < nodes.pairs.size(); ++i) {
    auto [z, w] = to_kite_coords(nodes.pairs[i].point);
    double resid = std::abs(z * z - out.alpha_over_beta);
    out.max_residual = std::max(out.max_residual, resid);
    if (resid > tol * std::max(1.0, std::abs(out.alpha_over_beta))) {
      throw std::runtime_error("not a kite curve (node off the z^2 = alpha/beta locus)");
    }
    int s = (std::abs(z - out.principal_sqrt) <= std::abs(z + out.principal_sqrt)) ? 0 : 1;
    out.sign[i] = s == 0 ? 1 : -1;
    out.blocks[s].push_back(static_cast<int>(i));
  }
  out.blocks.erase(std::remove_if(out.blocks.begin(), out.blocks.end(),
                                  [](const std::vector<int>& b) { return b.empty(); }),
                   out.blocks.end());
  return out;
}

}  // namespace toricmono
