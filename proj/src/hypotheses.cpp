#include "toricmono/hypotheses.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

namespace toricmono {

std::vector<LatticePoint> Wedge::point_set() const {
  std::vector<LatticePoint> pts = edge_points;
  pts.push_back(apex);
  return pts;
}

LatticePolygon Wedge::triangle() const {
  return LatticePolygon::from_vertices({edge_points.front(), edge_points.back(), apex});
}

Wedge full_edge_wedge(const LatticePolygon& poly, int j, LatticePoint apex) {
  auto es = poly.edges();
  const EdgeData& e = es.at(j);
  Wedge w;
  w.edge_index = j;
  for (long long k = 0; k <= e.length; ++k) w.edge_points.push_back(e.start + k * e.primitive);
  w.apex = apex;
  for (auto& b : w.edge_points) {
    if (b == apex) throw std::invalid_argument("wedge apex lies on its edge");
  }
  if (!poly.on_boundary(apex)) throw std::invalid_argument("wedge apex must be a boundary point");
  return w;
}

Wedge partial_wedge(const LatticePolygon& poly, int j, long long start, long long ell,
                    LatticePoint apex) {
  auto es = poly.edges();
  const EdgeData& e = es.at(j);
  if (ell < 1 || start < 0 || start + ell > e.length) {
    throw std::invalid_argument("wedge run out of range");
  }
  Wedge w;
  w.edge_index = j;
  for (long long k = start; k <= start + ell; ++k) w.edge_points.push_back(e.start + k * e.primitive);
  w.apex = apex;
  for (auto& b : w.edge_points) {
    if (b == apex) throw std::invalid_argument("wedge apex lies on its edge");
  }
  if (!poly.on_boundary(apex)) throw std::invalid_argument("wedge apex must be a boundary point");
  return w;
}

Wedge distinguished_wedge(const LatticePolygon& poly, int j) {
  int n = poly.edge_count();
  // Vertex shared by edges j-2 and j-1 is the start of edge j-1.
  LatticePoint apex = poly.vertices()[((j - 1) % n + n) % n];
  return full_edge_wedge(poly, j, apex);
}

std::vector<Wedge> enumerate_wedges(const LatticePolygon& poly) {
  std::vector<Wedge> out;
  auto es = poly.edges();
  for (const auto& e : es) {
    std::set<LatticePoint> on_edge;
    for (long long k = 0; k <= e.length; ++k) on_edge.insert(e.start + k * e.primitive);
    for (auto& v : poly.boundary_points()) {
      if (on_edge.count(v)) continue;
      out.push_back(full_edge_wedge(poly, e.index, v));
    }
  }
  return out;
}

std::vector<LatticePoint> common_interior_points(const LatticePolygon& a, const LatticePolygon& b) {
  std::vector<LatticePoint> out;
  LatticePoint shift = b.original_offset() - a.original_offset();
  for (auto& p : a.interior_points()) {
    // Compare in the shared source coordinates.
    if (b.strictly_inside(p - shift)) out.push_back(p);
  }
  return out;
}

namespace {

// Obstruction data of one wedge over the polygon's interior points.
struct WedgeClasses {
  QuotientStructure target;
  std::set<LatticePoint> triangle_classes;          // classes realized on itr(T)
  std::map<LatticePoint, int> triangle_class_count; // multiplicity on itr(T)
  std::vector<LatticePoint> triangle_interior;      // in polygon coordinates
};

WedgeClasses wedge_classes(const LatticePolygon& poly, const Wedge& w) {
  WedgeClasses wc{obstruction_target(w.point_set()), {}, {}, {}};
  LatticePolygon tri = w.triangle();
  LatticePoint shift = tri.original_offset();
  for (auto& p : tri.interior_points()) {
    LatticePoint q = p + shift;  // back to polygon coordinates
    wc.triangle_interior.push_back(q);
    LatticePoint rep = wc.target.reduce(q);
    wc.triangle_classes.insert(rep);
    wc.triangle_class_count[rep] += 1;
  }
  return wc;
}

}  // namespace

bool check_A(const LatticePolygon& poly, HypothesisReport& report) {
  report.a_failures.clear();
  int n = poly.edge_count();
  std::vector<LatticePoint> interior = poly.interior_points();
  for (int j = 0; j < n; ++j) {
    Wedge w = distinguished_wedge(poly, j);
    WedgeClasses wc = wedge_classes(poly, w);
    std::set<LatticePoint> polygon_classes;
    for (auto& p : interior) polygon_classes.insert(wc.target.reduce(p));
    for (auto& rep : polygon_classes) {
      auto it = wc.triangle_class_count.find(rep);
      if (it == wc.triangle_class_count.end()) {
        report.a_failures.push_back({j, rep, "class missing on the wedge triangle"});
      } else if (it->second < 2) {
        report.a_failures.push_back({j, rep, "class hit only once on the wedge triangle"});
      }
    }
  }
  report.A = report.a_failures.empty();
  return report.A;
}

bool check_B(const LatticePolygon& poly, HypothesisReport& report) {
  auto es = poly.edges();
  int n = poly.edge_count();
  report.q_list.clear();
  long long q = 0;
  for (int j = 0; j < n; ++j) {
    long long qj = std::llabs(cross(es[j].primitive, es[(j + 1) % n].primitive));
    report.q_list.push_back(qj);
    q = (j == 0) ? qj : std::min(q, qj);
  }
  report.q = q;
  long long min_len = es[0].length;
  for (auto& e : es) min_len = std::min(min_len, e.length);
  report.min_edge_length = min_len;
  report.required_length = (q == 1) ? 4 : 3 * q - 2;
  report.B = min_len >= report.required_length;
  return report.B;
}

bool check_C(const LatticePolygon& poly, HypothesisReport& report) {
  report.c_failures.clear();
  auto es = poly.edges();
  std::vector<LatticePoint> boundary = poly.boundary_points();
  std::size_t bn = boundary.size();

  for (const auto& e : es) {
    std::set<LatticePoint> on_edge;
    for (long long k = 0; k <= e.length; ++k) on_edge.insert(e.start + k * e.primitive);
    // Admissible apexes form a contiguous boundary arc starting right after
    // the edge's far endpoint; walk it in boundary order.
    std::size_t end_pos = 0;
    for (std::size_t i = 0; i < bn; ++i) {
      if (boundary[i] == e.end) end_pos = i;
    }
    std::vector<LatticePoint> apexes;
    for (std::size_t step = 1; step < bn; ++step) {
      LatticePoint p = boundary[(end_pos + step) % bn];
      if (on_edge.count(p)) break;
      apexes.push_back(p);
    }
    for (std::size_t i = 0; i + 1 < apexes.size(); ++i) {
      Wedge wa = full_edge_wedge(poly, e.index, apexes[i]);
      Wedge wb = full_edge_wedge(poly, e.index, apexes[i + 1]);
      WedgeClasses ca = wedge_classes(poly, wa);
      WedgeClasses cb = wedge_classes(poly, wb);
      if (ca.triangle_interior.empty() || cb.triangle_interior.empty()) continue;
      std::vector<LatticePoint> overlap = common_interior_points(wa.triangle(), wb.triangle());
      LatticePoint shift_a = wa.triangle().original_offset();
      std::set<LatticePoint> overlap_classes_a, overlap_classes_b;
      for (auto& p : overlap) {
        LatticePoint q = p + shift_a;  // overlap reported in a's coordinates
        overlap_classes_a.insert(ca.target.reduce(q));
        overlap_classes_b.insert(cb.target.reduce(q));
      }
      for (auto& rep : ca.triangle_classes) {
        if (!overlap_classes_a.count(rep)) {
          report.c_failures.push_back({e.index, wa.apex, wb.apex, rep});
        }
      }
      for (auto& rep : cb.triangle_classes) {
        if (!overlap_classes_b.count(rep)) {
          report.c_failures.push_back({e.index, wa.apex, wb.apex, rep});
        }
      }
    }
  }
  report.C = report.c_failures.empty();
  return report.C;
}

HypothesisReport check_hypotheses(const LatticePolygon& poly) {
  HypothesisReport r;
  check_A(poly, r);
  check_B(poly, r);
  check_C(poly, r);
  return r;
}

long long ell_constant(const LatticePolygon& poly) {
  long long m = 0;
  for (const auto& e : poly.edges()) m = std::max(m, dot(e.primitive, e.primitive));
  return 5 * m;
}

long long ell_min(const LatticePolygon& poly, long long box) {
  auto es = poly.edges();
  std::vector<LatticePoint> prims;
  for (const auto& e : es) prims.push_back(e.primitive);
  long long best = ell_constant(poly);
  for (long long a = -box; a <= box; ++a) {
    for (long long b = -box; b <= box; ++b) {
      for (long long c = -box; c <= box; ++c) {
        for (long long d = -box; d <= box; ++d) {
          long long det = a * d - b * c;
          if (det != 1 && det != -1) continue;
          long long m = 0;
          for (auto v : prims) {
            LatticePoint u{a * v.x + b * v.y, c * v.x + d * v.y};
            m = std::max(m, dot(u, u));
          }
          best = std::min(best, 5 * m);
        }
      }
    }
  }
  return best;
}

namespace {

double norm2(Vec2 v) { return std::sqrt(v.x * v.x + v.y * v.y); }
Vec2 sub(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
double crossd(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
double dotd(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
double angle_between(Vec2 u, Vec2 v) { return std::atan2(std::abs(crossd(u, v)), dotd(u, v)); }

void require_convex(Vec2 A, Vec2 B, Vec2 C, Vec2 D) {
  Vec2 pts[4] = {A, B, C, D};
  double first = 0;
  for (int i = 0; i < 4; ++i) {
    Vec2 u = sub(pts[(i + 1) % 4], pts[i]);
    Vec2 v = sub(pts[(i + 2) % 4], pts[(i + 1) % 4]);
    double cr = crossd(u, v);
    if (i == 0) {
      first = cr;
    } else if (cr * first <= 0) {
      throw std::invalid_argument("quadrilateral is not strictly convex");
    }
  }
}

}  // namespace

double quadri_ratio_direct(Vec2 A, Vec2 B, Vec2 C, Vec2 D) {
  require_convex(A, B, C, D);
  // O = AC cap BD: A + t (C - A) with t from the 2x2 system.
  Vec2 ac = sub(C, A), bd = sub(D, B), ab = sub(B, A);
  double den = crossd(ac, bd);
  if (den == 0) throw std::invalid_argument("degenerate diagonals");
  return crossd(ab, bd) / den;
}

double quadri_ratio_general(Vec2 A, Vec2 B, Vec2 C, Vec2 D) {
  require_convex(A, B, C, D);
  double AB = norm2(sub(B, A)), AD = norm2(sub(D, A)), BC = norm2(sub(C, B));
  double thA = angle_between(sub(B, A), sub(D, A));
  double thB = angle_between(sub(A, B), sub(C, B));
  double num = AB * AD * std::sin(thA);
  double den = num + AB * BC * std::sin(thB) - AD * BC * std::sin(thA + thB);
  return num / den;
}

double quadri_ratio_trapezoid(Vec2 A, Vec2 B, Vec2 C, Vec2 D) {
  require_convex(A, B, C, D);
  double AB = norm2(sub(B, A)), AD = norm2(sub(D, A)), CD = norm2(sub(D, C));
  double thA = angle_between(sub(B, A), sub(D, A));
  Vec2 u = sub(B, A), v = sub(D, C);
  double theta;
  double denom = crossd(u, v);
  if (std::abs(denom) < 1e-14 * norm2(u) * norm2(v)) {
    theta = 0.0;  // parallel sides
  } else {
    // P = (AB) cap (CD); the formula needs A strictly between P and B.
    double t = crossd(sub(C, A), v) / denom;  // P = A + t u
    if (t >= 0) throw std::invalid_argument("side condition fails: A not between P and B");
    Vec2 P{A.x + t * u.x, A.y + t * u.y};
    theta = angle_between(sub(B, P), sub(D, P));
  }
  double num = AB * AD * std::sin(thA);
  double den = num + CD * (AD * std::sin(thA - theta) + AB * std::sin(theta));
  return num / den;
}

std::vector<Permutation> wedge_group_generators(const LatticePolygon& poly, const Wedge& w,
                                                const std::vector<LatticePoint>& domain) {
  int n = static_cast<int>(domain.size());
  auto index_of = [&](LatticePoint p) {
    auto it = std::lower_bound(domain.begin(), domain.end(), p);
    if (it == domain.end() || !(*it == p)) return -1;
    return static_cast<int>(it - domain.begin());
  };

  QuotientStructure target = obstruction_target(w.point_set());
  LatticePolygon tri = w.triangle();
  LatticePoint shift = tri.original_offset();
  std::map<LatticePoint, std::vector<int>> fibers;
  for (auto& p : tri.interior_points()) {
    LatticePoint q = p + shift;
    int idx = index_of(q);
    if (idx < 0) continue;  // triangle interior point outside the polygon interior
    fibers[target.reduce(q)].push_back(idx);
  }
  std::vector<Permutation> gens;
  for (auto& [rep, pts] : fibers) {
    for (std::size_t i = 0; i < pts.size(); ++i) {
      for (std::size_t j = i + 1; j < pts.size(); ++j) {
        gens.push_back(Permutation::transposition(n, pts[i], pts[j]));
      }
    }
  }
  return gens;
}

TheoremCheck verify_theorem_combinatorics(const LatticePolygon& poly, std::size_t max_domain) {
  TheoremCheck out;
  out.report = check_hypotheses(poly);
  out.hypotheses_met = out.report.A && out.report.B && out.report.C;
  if (!out.hypotheses_met) return out;

  std::vector<LatticePoint> domain = poly.interior_points();
  if (domain.size() > max_domain) {
    throw std::length_error("interior domain exceeds the group-engine guard");
  }
  out.deck_order = aut_order(psi_boundary(poly));
  if (domain.empty()) {
    out.generated_order = 1;
    out.verified = (out.deck_order == 1);
    return out;
  }

  std::vector<Permutation> gens;
  for (const auto& w : enumerate_wedges(poly)) {
    auto g = wedge_group_generators(poly, w, domain);
    gens.insert(gens.end(), g.begin(), g.end());
  }
  std::sort(gens.begin(), gens.end(),
            [](const Permutation& a, const Permutation& b) { return a.images() < b.images(); });
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());

  PermGroup g = PermGroup::from_generators(static_cast<int>(domain.size()), std::move(gens));
  out.generated_order = g.order();
  out.verified = (out.generated_order == out.deck_order);
  return out;
}

}  // namespace toricmono
