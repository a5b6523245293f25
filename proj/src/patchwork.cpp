#include "toricmono/patchwork.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace toricmono {

namespace {

long long egcd_ll(long long a, long long b, long long& s, long long& t) {
  if (b == 0) {
    s = (a >= 0) ? 1 : -1;
    t = 0;
    return std::llabs(a);
  }
  long long s1, t1;
  long long g = egcd_ll(b, a % b, s1, t1);
  s = t1;
  t = s1 - (a / b) * t1;
  return g;
}

// Adapted coordinates of a point, polygon-internal helpers.
LatticePoint to_ad(const LatticePolygon& pg, LatticePoint internal) {
  return internal + pg.original_offset();
}

bool inside_ad(const LatticePolygon& pg, LatticePoint p_ad) {
  return pg.strictly_inside(p_ad - pg.original_offset());
}

std::vector<LatticePoint> interior_ad(const LatticePolygon& pg) {
  std::vector<LatticePoint> out;
  for (auto& p : pg.interior_points()) out.push_back(to_ad(pg, p));
  return out;
}

cplx cpow(cplx z, long long e) {
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
}

}  // namespace

long long WedgeSubdivision::height(LatticePoint a) const {
  long long left = p * a.y - q * a.x;
  long long right = q * (a.x - ell) + (ell - p) * a.y;
  return std::max({0LL, left, right});
}

int WedgeSubdivision::piece(LatticePoint a) const {
  long long left = p * a.y - q * a.x;
  long long right = q * (a.x - ell) + (ell - p) * a.y;
  long long h = std::max({0LL, left, right});
  if (h == 0) return 0;
  return (h == left) ? 1 : 2;
}

WedgeSubdivision subdivide(const LatticePolygon& poly, const Wedge& w) {
  WedgeSubdivision sub;
  sub.wedge = w;
  sub.ell = w.ell();

  LatticePoint b0 = w.edge_points.front();
  LatticePoint bl = w.edge_points.back();
  LatticePoint dir = bl - b0;
  long long len = lattice_length(dir);
  dir = {dir.x / len, dir.y / len};

  long long s, t;
  egcd_ll(dir.x, dir.y, s, t);  // s*dx + t*dy == 1
  IntMat2 u{s, t, -dir.y, dir.x};
  AffineMap base{u, -u.apply(b0)};
  LatticePoint apex0 = base.apply(w.apex);
  if (apex0.y <= 0) throw std::invalid_argument("wedge apex on the wrong side of its edge");
  sub.q = apex0.y;
  // Shear so the apex lands at (p, q) with 1 <= p <= q.
  long long k = 0;
  while (apex0.x + k * sub.q < 1) ++k;
  while (apex0.x + (k - 1) * sub.q >= 1) --k;
  sub.p = apex0.x + k * sub.q;
  AffineMap shear{{1, k, 0, 1}, {0, 0}};
  sub.to_adapted = shear * base;

  std::vector<LatticePoint> verts_ad;
  for (auto& v : poly.vertices()) verts_ad.push_back(sub.to_adapted.apply(v));
  sub.polygon_ad = LatticePolygon::from_vertices(verts_ad);
  sub.triangle_ad = LatticePolygon::from_vertices({{0, 0}, {sub.ell, 0}, {sub.p, sub.q}});

  auto part = [&](bool left) -> std::optional<LatticePolygon> {
    std::vector<LatticePoint> pts;
    for (auto& v : verts_ad) {
      long long val = left ? (sub.p * v.y - sub.q * v.x)
                           : (sub.q * (v.x - sub.ell) + (sub.ell - sub.p) * v.y);
      if (val > 0) pts.push_back(v);
    }
    if (pts.empty()) return std::nullopt;
    if (left) {
      pts.push_back({0, 0});
      pts.push_back({sub.p, sub.q});
    } else {
      pts.push_back({sub.ell, 0});
      pts.push_back({sub.p, sub.q});
    }
    auto hull = convex_hull_vertices(pts);
    if (hull.size() < 3) return std::nullopt;
    return LatticePolygon::from_vertices(hull);
  };
  sub.left_ad = part(true);
  sub.right_ad = part(false);

  auto glue_points = [&](LatticePoint a, LatticePoint b) {
    std::vector<LatticePoint> pts;
    LatticePoint d = b - a;
    long long g = lattice_length(d);
    LatticePoint step{d.x / g, d.y / g};
    for (long long i = 1; i < g; ++i) {
      LatticePoint pt = a + i * step;
      if (inside_ad(sub.polygon_ad, pt)) pts.push_back(pt);
    }
    return pts;
  };
  sub.glue_left_pts = glue_points({0, 0}, {sub.p, sub.q});
  sub.glue_right_pts = glue_points({sub.ell, 0}, {sub.p, sub.q});

  long long hmax = 0;
  for (auto& pt : interior_ad(sub.polygon_ad)) hmax = std::max(hmax, sub.height(pt));
  for (auto& p : sub.polygon_ad.boundary_points()) {
    hmax = std::max(hmax, sub.height(to_ad(sub.polygon_ad, p)));
  }
  sub.height_bound = 1 + hmax;
  return sub;
}

DegenerationFamily::DegenerationFamily(WedgeSubdivision sub, std::vector<cplx> params)
    : sub_(std::move(sub)) {
  bool left_empty = !sub_.left_ad.has_value();
  bool right_empty = !sub_.right_ad.has_value();
  whole_triangle_ = left_empty && right_empty;
  if (!whole_triangle_ && (left_empty || right_empty)) {
    throw std::invalid_argument(
        "degeneration family requires the wedge triangle to meet the boundary in exactly one "
        "edge (or to be the whole polygon)");
  }

  if (whole_triangle_) {
    if (static_cast<long long>(params.size()) != sub_.ell) {
      throw std::invalid_argument("expected one parameter per wedge edge slot");
    }
    for (cplx a : params) slots_.push_back({a, 0, 1, 1});
    return;
  }

  // Boundary slots in CCW order starting at the apex (p, q).
  struct RawSlot {
    LatticePoint start;
    int alpha, beta;
  };
  std::vector<RawSlot> raw;
  std::size_t apex_pos = 0;
  {
    auto edges = sub_.polygon_ad.edges();
    for (const auto& e : edges) {
      int alpha = static_cast<int>(-e.primitive.y);
      int beta = static_cast<int>(e.primitive.x);
      for (long long i = 0; i < e.length; ++i) {
        LatticePoint a = to_ad(sub_.polygon_ad, e.start + i * e.primitive);
        if (a == LatticePoint{sub_.p, sub_.q}) apex_pos = raw.size();
        raw.push_back({a, alpha, beta});
      }
    }
  }
  std::rotate(raw.begin(), raw.begin() + apex_pos, raw.end());

  if (params.size() != raw.size()) {
    throw std::invalid_argument("expected one parameter per boundary slot");
  }
  for (std::size_t i = 0; i < raw.size(); ++i) {
    LatticePoint a = raw[i].start;
    LatticePoint prim{raw[i].beta, -raw[i].alpha};  // edge primitive
    LatticePoint b = a + prim;
    int group;
    auto on_eps = [&](LatticePoint pt) {
      return pt.y == 0 && pt.x >= 0 && pt.x <= sub_.ell;
    };
    auto on_left_side = [&](LatticePoint pt) { return sub_.p * pt.y - sub_.q * pt.x >= 0; };
    if (on_eps(a) && on_eps(b)) {
      group = 1;
    } else if (on_left_side(a) && on_left_side(b)) {
      group = 0;
    } else {
      group = 2;
    }
    slots_.push_back({params[i], raw[i].alpha, raw[i].beta, group});
  }
}

DegenerationFamily DegenerationFamily::harnack(WedgeSubdivision sub, double spacing) {
  std::size_t n;
  if (!sub.left_ad.has_value() && !sub.right_ad.has_value()) {
    n = static_cast<std::size_t>(sub.ell);
  } else {
    n = 0;
    for (const auto& e : sub.polygon_ad.edges()) n += static_cast<std::size_t>(e.length);
  }
  std::vector<cplx> params;
  for (std::size_t i = 0; i < n; ++i) params.push_back(cplx(1.0 + spacing * i));
  return DegenerationFamily(std::move(sub), std::move(params));
}

std::vector<cplx> DegenerationFamily::parameters() const {
  std::vector<cplx> out;
  for (auto& s : slots_) out.push_back(s.a);
  return out;
}

std::vector<std::size_t> DegenerationFamily::triangle_slot_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < slots_.size(); ++i) {
    if (slots_[i].group == 1) out.push_back(i);
  }
  return out;
}

DegenerationFamily DegenerationFamily::with_parameters(const std::vector<cplx>& params) const {
  DegenerationFamily f = *this;
  if (params.size() != slots_.size()) throw std::invalid_argument("parameter count mismatch");
  for (std::size_t i = 0; i < params.size(); ++i) f.slots_[i].a = params[i];
  return f;
}

CurveParam DegenerationFamily::plane_curve(cplx z) const {
  CurveParam c;
  c.polygon = sub_.polygon_ad;
  if (whole_triangle_) {
    c.polygon = sub_.triangle_ad;
    c.x_tpow = static_cast<int>(sub_.q);
    c.y_tpow = static_cast<int>(-sub_.p);
    for (auto& s : slots_) c.slots.push_back({s.a, false, 0, 1, -1});
    return c;
  }
  for (auto& s : slots_) {
    if (s.group == 1) {
      c.slots.push_back({s.a, false, 0, 1, -1});
    } else if (s.group == 0) {
      c.slots.push_back({z * s.a, false, s.alpha, s.beta, -1});
    } else {
      c.slots.push_back({s.a / z, false, s.alpha, s.beta, -1});
      cplx unit = -z / s.a;
      c.x_scale *= cpow(unit, s.alpha);
      c.y_scale *= cpow(unit, s.beta);
    }
  }
  return c;
}

std::array<cplx, 3> DegenerationFamily::eval(cplx z, cplx t) const {
  if (z == cplx(0.0)) throw std::invalid_argument("the family is evaluated away from z = 0");
  EvalPoint p = plane_curve(z).eval(t);
  return {p.x, p.y, z};
}

CurveParam DegenerationFamily::limit_left() const {
  if (!sub_.left_ad.has_value()) throw std::logic_error("no left component");
  CurveParam c;
  c.polygon = *sub_.left_ad;
  for (auto& s : slots_) {
    if (s.group == 0) c.slots.push_back({s.a, false, s.alpha, s.beta, -1});
    if (s.group == 1) c.y_scale *= -s.a;
  }
  return c;
}

TriangleParam DegenerationFamily::limit_triangle() const {
  std::vector<cplx> a;
  for (auto& s : slots_) {
    if (s.group == 1) a.push_back(s.a);
  }
  return TriangleParam(sub_.ell, sub_.p, sub_.q, std::move(a));
}

CurveParam DegenerationFamily::limit_right() const {
  if (!sub_.right_ad.has_value()) throw std::logic_error("no right component");
  CurveParam c;
  c.polygon = *sub_.right_ad;
  c.x_tpow = static_cast<int>(sub_.q);
  c.y_tpow = static_cast<int>(sub_.ell - sub_.p);
  for (auto& s : slots_) {
    if (s.group != 2) continue;
    c.slots.push_back({s.a, false, s.alpha, s.beta, -1});
    cplx unit = -1.0 / s.a;
    c.x_scale *= cpow(unit, s.alpha);
    c.y_scale *= cpow(unit, s.beta);
  }
  return c;
}

std::pair<cplx, cplx> DegenerationFamily::project_left(cplx x, cplx y, cplx z) const {
  return {x * cpow(z, -sub_.q), y * cpow(z, sub_.p)};
}

std::pair<cplx, cplx> DegenerationFamily::project_right(cplx x, cplx y, cplx z) const {
  return {x * cpow(z, sub_.q), y * cpow(z, sub_.ell - sub_.p)};
}

namespace {

// Adaptive continuation of node pairs along theta -> curve(theta).
void continue_pairs(const std::function<CurveParam(double)>& curve_at,
                    std::vector<std::pair<cplx, cplx>>& pairs, double min_step) {
  double theta = 0.0;
  double h = 1.0 / 32;
  int accepted = 0;
  while (theta < 1.0) {
    double next = std::min(1.0, theta + h);
    CurveParam c = curve_at(next);
    auto trial = pairs;
    bool ok = true;
    for (auto& [t, s] : trial) {
      if (!refine_node_pair(c, t, s, 1e-10) || std::abs(t - s) < 1e-9) {
        ok = false;
        break;
      }
    }
    if (ok) {
      for (std::size_t i = 0; ok && i < trial.size(); ++i) {
        for (std::size_t j = i + 1; j < trial.size(); ++j) {
          double direct = std::max(std::abs(trial[i].first - trial[j].first),
                                   std::abs(trial[i].second - trial[j].second));
          double swapped = std::max(std::abs(trial[i].first - trial[j].second),
                                    std::abs(trial[i].second - trial[j].first));
          if (std::min(direct, swapped) < 1e-9) {
            ok = false;
            break;
          }
        }
      }
    }
    if (!ok) {
      h /= 2;
      if (h < min_step) throw std::runtime_error("degeneration tracking failed: step underflow");
      continue;
    }
    pairs = std::move(trial);
    theta = next;
    if (++accepted >= 4) {
      h = std::min(1.0 / 32, 2 * h);
      accepted = 0;
    }
  }
}

double rel_point_distance(cplx ax, cplx ay, cplx bx, cplx by) {
  return std::max(std::abs(ax - bx) / (1.0 + std::abs(bx)),
                  std::abs(ay - by) / (1.0 + std::abs(by)));
}

struct LimitData {
  std::vector<std::pair<cplx, cplx>> t_nodes;  // triangle limit nodes
  std::vector<std::pair<int, int>> t_labels;   // (k, index within class)
  std::vector<std::pair<cplx, cplx>> left_nodes, right_nodes;
};

LimitData limit_data(const DegenerationFamily& fam, double tol) {
  LimitData out;
  TriangleNodes tn = triangle_nodes(fam.limit_triangle(), tol);
  for (const auto& cls : tn.classes) {
    for (std::size_t i = 0; i < cls.nodes.size(); ++i) {
      out.t_nodes.push_back({cls.nodes[i].x, cls.nodes[i].y});
      out.t_labels.push_back({cls.k, static_cast<int>(i)});
    }
  }
  if (fam.subdivision().left_ad.has_value()) {
    for (const auto& np : self_intersections(fam.limit_left(), tol).pairs) {
      out.left_nodes.push_back({np.point.x, np.point.y});
    }
  }
  if (fam.subdivision().right_ad.has_value()) {
    for (const auto& np : self_intersections(fam.limit_right(), tol).pairs) {
      out.right_nodes.push_back({np.point.x, np.point.y});
    }
  }
  return out;
}

struct Classified {
  NodeClass cls = NodeClass::unresolved;
  double dist = 0.0;
  int index = -1;
};

Classified classify_one(const DegenerationFamily& fam, const LimitData& lim, cplx x, cplx y,
                        double z) {
  const double match_thresh = 0.05;
  Classified best;
  auto try_match = [&](const std::vector<std::pair<cplx, cplx>>& nodes, NodeClass cls, cplx px,
                       cplx py) {
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      double d = rel_point_distance(px, py, nodes[i].first, nodes[i].second);
      if (d < match_thresh && (best.cls == NodeClass::unresolved || d < best.dist)) {
        best = {cls, d, static_cast<int>(i)};
      }
    }
  };
  try_match(lim.t_nodes, NodeClass::triangle, x, y);
  auto [lx, ly] = fam.project_left(x, y, z);
  try_match(lim.left_nodes, NodeClass::left, lx, ly);
  auto [rx, ry] = fam.project_right(x, y, z);
  try_match(lim.right_nodes, NodeClass::right, rx, ry);
  if (best.cls != NodeClass::unresolved) return best;

  const auto& sub = fam.subdivision();
  double m_left = std::pow(std::abs(x), static_cast<double>(sub.q)) *
                  std::pow(std::abs(y), -static_cast<double>(sub.p));
  double m_right = std::pow(std::abs(x), -static_cast<double>(sub.q)) *
                   std::pow(std::abs(y), static_cast<double>(sub.p - sub.ell));
  // Distance surrogate to the gluing orbits: the transverse monomial times z
  // must drop below 10 z.
  if (std::min(m_left, m_right) < 10.0) {
    best.cls = (m_left < m_right) ? NodeClass::glue_left : NodeClass::glue_right;
    best.dist = std::min(m_left, m_right) * z;
  }
  return best;
}

}  // namespace

DegenerationTrack track_degeneration_nodes(const DegenerationFamily& fam,
                                           std::span<const double> z_schedule, double tol) {
  if (z_schedule.size() < 2 || z_schedule.front() <= 0 || z_schedule.back() <= 0) {
    throw std::invalid_argument("z schedule must contain positive values");
  }
  for (std::size_t i = 1; i < z_schedule.size(); ++i) {
    if (z_schedule[i] >= z_schedule[i - 1]) {
      throw std::invalid_argument("z schedule must decrease");
    }
  }

  DegenerationTrack out;
  out.z_min = z_schedule.back();
  CurveParam start_curve = fam.plane_curve(z_schedule.front());
  SelfIntersections base = self_intersections(start_curve, tol);
  if (base.degenerate) throw std::runtime_error("degenerate parameters at the start of the schedule");

  std::vector<std::pair<cplx, cplx>> pairs;
  for (auto& np : base.pairs) pairs.push_back({np.t1, np.t2});

  for (std::size_t i = 1; i < z_schedule.size(); ++i) {
    double za = z_schedule[i - 1], zb = z_schedule[i];
    continue_pairs(
        [&](double th) { return fam.plane_curve(std::pow(za, 1.0 - th) * std::pow(zb, th)); },
        pairs, 1e-7);
  }

  LimitData lim = limit_data(fam, tol);
  CurveParam end_curve = fam.plane_curve(out.z_min);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    NodeTrajectory traj;
    traj.start = base.pairs[i];
    EvalPoint pe = end_curve.eval(pairs[i].first);
    traj.end = {pairs[i].first, pairs[i].second, pe, 0.0};
    Classified c = classify_one(fam, lim, pe.x, pe.y, out.z_min);
    traj.cls = c.cls;
    traj.limit_distance = c.dist;
    traj.limit_index = c.index;
    switch (c.cls) {
      case NodeClass::triangle: ++out.count_triangle; break;
      case NodeClass::left: ++out.count_left; break;
      case NodeClass::right: ++out.count_right; break;
      case NodeClass::glue_left: ++out.count_glue_left; break;
      case NodeClass::glue_right: ++out.count_glue_right; break;
      default: out.all_resolved = false; break;
    }
    out.nodes.push_back(traj);
  }
  return out;
}

PatchLoopResult patch_loop(const DegenerationFamily& fam, const ParamLoop& inner_loop,
                           double z_min, double tol) {
  PatchLoopResult out;
  std::vector<double> schedule;
  int steps = 10;
  for (int i = 0; i <= steps; ++i) schedule.push_back(std::pow(z_min, i / double(steps)));
  out.classification = track_degeneration_nodes(fam, schedule, tol);

  std::vector<std::pair<cplx, cplx>> pairs;
  for (auto& traj : out.classification.nodes) pairs.push_back({traj.end.t1, traj.end.t2});

  // Inner loop on the triangle parameters at fixed z = z_min.
  auto tri_idx = fam.triangle_slot_indices();
  if (inner_loop.base.size() != tri_idx.size()) {
    throw std::invalid_argument("inner loop must drive the triangle parameters");
  }
  auto family_at = [&](double th) {
    std::vector<cplx> params = fam.parameters();
    std::vector<cplx> tri = inner_loop.at(th);
    for (std::size_t i = 0; i < tri_idx.size(); ++i) params[tri_idx[i]] = tri[i];
    return fam.with_parameters(params).plane_curve(z_min);
  };
  continue_pairs(family_at, pairs, 1e-7);

  // Ascent back to z = 1.
  continue_pairs(
      [&](double th) { return fam.plane_curve(std::pow(z_min, 1.0 - th)); }, pairs, 1e-7);

  // Close up against the starting pairs.
  std::size_t n = pairs.size();
  std::vector<int> images(n, -1);
  std::vector<char> used(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    double bestd = std::numeric_limits<double>::infinity();
    int best = -1;
    for (std::size_t j = 0; j < n; ++j) {
      const auto& bp = out.classification.nodes[j].start;
      double direct = std::max(std::abs(pairs[i].first - bp.t1), std::abs(pairs[i].second - bp.t2));
      double swapped = std::max(std::abs(pairs[i].first - bp.t2), std::abs(pairs[i].second - bp.t1));
      double d = std::min(direct, swapped);
      if (d < bestd) {
        bestd = d;
        best = static_cast<int>(j);
      }
    }
    if (best < 0 || bestd > 1e-5 || used[best]) {
      throw std::runtime_error("patch loop closing match failed");
    }
    used[best] = 1;
    images[i] = best;
  }
  out.perm = Permutation(images);

  for (std::size_t i = 0; i < n; ++i) {
    if (out.classification.nodes[i].cls != NodeClass::triangle && images[i] != static_cast<int>(i)) {
      out.fixes_nodes_off_triangle = false;
    }
  }

  // The action on triangle-classified nodes must be the monodromy of the
  // inner loop on the limit triangle.
  TriangleParam tri = fam.limit_triangle();
  LimitData lim = limit_data(fam, tol);
  std::map<std::pair<int, int>, int> label_to_flat;
  for (std::size_t i = 0; i < lim.t_labels.size(); ++i) {
    label_to_flat[lim.t_labels[i]] = static_cast<int>(i);
  }
  std::map<int, Permutation> tri_perm;
  for (int k = 1; 2 * k <= tri.q; ++k) {
    NodePolynomial np = node_polynomial(tri, k);
    if (all_roots(np.poly).roots.empty()) continue;
    tri_perm.emplace(k, track_roots(tri, inner_loop, k, tol).perm);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (out.classification.nodes[i].cls != NodeClass::triangle) continue;
    auto [k, idx] = lim.t_labels[out.classification.nodes[i].limit_index];
    int image_root = tri_perm.at(k)(idx);
    int predicted_flat = label_to_flat.at({k, image_root});
    int actual = out.classification.nodes[images[i]].limit_index;
    if (actual != predicted_flat) out.triangle_action_matches = false;
  }
  return out;
}

}  // namespace toricmono
