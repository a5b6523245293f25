#include "toricmono/geometry.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <stdexcept>

namespace toricmono {

long long gcd_ll(long long a, long long b) {
  a = std::llabs(a);
  b = std::llabs(b);
  while (b) {
    long long t = a % b;
    a = b;
    b = t;
  }
  return a;
}

long long lattice_length(LatticePoint v) { return gcd_ll(v.x, v.y); }

namespace {

// Extended gcd: returns g = gcd(a,b) >= 0 with s*a + t*b == g.
long long egcd(long long a, long long b, long long& s, long long& t) {
  if (b == 0) {
    s = (a >= 0) ? 1 : -1;
    t = 0;
    return std::llabs(a);
  }
  long long s1, t1;
  long long g = egcd(b, a % b, s1, t1);
  s = t1;
  t = s1 - (a / b) * t1;
  return g;
}

long long floordiv(long long a, long long b) {
  long long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

IntMat2 IntMat2::inverse() const {
  long long dt = det();
  if (dt != 1 && dt != -1) throw std::invalid_argument("IntMat2::inverse: matrix not unimodular");
  return {dt * d, -dt * b, -dt * c, dt * a};
}

IntMat2 operator*(const IntMat2& m, const IntMat2& n) {
  return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d,
          m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
}

AffineMap AffineMap::inverse() const {
  IntMat2 mi = m.inverse();
  return {mi, -mi.apply(t)};
}

AffineMap operator*(const AffineMap& f, const AffineMap& g) {
  return {f.m * g.m, f.m.apply(g.t) + f.t};
}

LatticePolygon LatticePolygon::from_vertices(std::vector<LatticePoint> vs) {
  LatticePolygon poly;
  if (vs.size() < 3) throw std::invalid_argument("polygon needs at least 3 vertices");

  // Drop exact duplicates of the preceding vertex.
  std::vector<LatticePoint> cleaned;
  for (auto& p : vs) {
    if (cleaned.empty() || !(cleaned.back() == p)) cleaned.push_back(p);
  }
  while (cleaned.size() > 1 && cleaned.front() == cleaned.back()) cleaned.pop_back();
  if (cleaned.size() < vs.size()) poly.notes_.push_back("duplicate vertices merged");
  if (cleaned.size() < 3) throw std::invalid_argument("polygon degenerate after removing duplicates");

  long long area2 = 0;
  for (std::size_t i = 0; i < cleaned.size(); ++i) {
    area2 += cross(cleaned[i], cleaned[(i + 1) % cleaned.size()]);
  }
  if (area2 == 0) throw std::invalid_argument("polygon has zero area");
  if (area2 < 0) {
    std::reverse(cleaned.begin(), cleaned.end());
    poly.notes_.push_back("input was clockwise; reversed");
  }

  // Merge collinear runs; reject reflex corners (self-intersecting input).
  std::vector<LatticePoint> verts;
  std::size_t n = cleaned.size();
  bool merged_collinear = false;
  for (std::size_t i = 0; i < n; ++i) {
    LatticePoint prev = cleaned[(i + n - 1) % n];
    LatticePoint cur = cleaned[i];
    LatticePoint next = cleaned[(i + 1) % n];
    long long turn = cross(cur - prev, next - cur);
    if (turn < 0) throw std::invalid_argument("polygon is not convex (self-intersecting input)");
    if (turn == 0) {
      merged_collinear = true;
      continue;
    }
    verts.push_back(cur);
  }
  if (merged_collinear) poly.notes_.push_back("collinear vertices merged");
  if (verts.size() < 3) throw std::invalid_argument("polygon degenerate after merging collinear vertices");

  auto lo = std::min_element(verts.begin(), verts.end());
  std::rotate(verts.begin(), lo, verts.end());
  poly.offset_ = verts[0];
  for (auto& v : verts) v = v - poly.offset_;
  poly.verts_ = std::move(verts);
  return poly;
}

std::vector<EdgeData> LatticePolygon::edges() const {
  std::vector<EdgeData> out;
  int n = edge_count();
  out.reserve(n);
  for (int j = 0; j < n; ++j) {
    LatticePoint s = verts_[j];
    LatticePoint e = verts_[(j + 1) % n];
    LatticePoint d = e - s;
    long long len = lattice_length(d);
    out.push_back({j, s, e, {d.x / len, d.y / len}, len});
  }
  return out;
}

long long LatticePolygon::twice_area() const {
  long long a2 = 0;
  int n = edge_count();
  for (int i = 0; i < n; ++i) a2 += cross(verts_[i], verts_[(i + 1) % n]);
  return a2;
}

bool LatticePolygon::strictly_inside(LatticePoint p) const {
  int n = edge_count();
  for (int j = 0; j < n; ++j) {
    LatticePoint s = verts_[j];
    LatticePoint e = verts_[(j + 1) % n];
    if (cross(e - s, p - s) <= 0) return false;
  }
  return true;
}

bool LatticePolygon::on_boundary(LatticePoint p) const {
  int n = edge_count();
  for (int j = 0; j < n; ++j) {
    LatticePoint s = verts_[j];
    LatticePoint e = verts_[(j + 1) % n];
    if (cross(e - s, p - s) != 0) continue;
    if (dot(p - s, e - s) >= 0 && dot(p - e, s - e) >= 0) return true;
  }
  return false;
}

std::vector<LatticePoint> LatticePolygon::interior_points() const {
  if (verts_.empty()) return {};
  long long xmin = verts_[0].x, xmax = verts_[0].x, ymin = verts_[0].y, ymax = verts_[0].y;
  for (auto& v : verts_) {
    xmin = std::min(xmin, v.x);
    xmax = std::max(xmax, v.x);
    ymin = std::min(ymin, v.y);
    ymax = std::max(ymax, v.y);
  }
  std::vector<LatticePoint> out;
  for (long long x = xmin + 1; x < xmax; ++x) {
    for (long long y = ymin + 1; y < ymax; ++y) {
      if (strictly_inside({x, y})) out.push_back({x, y});
    }
  }
  return out;  // scan order is already lexicographic
}

std::vector<LatticePoint> LatticePolygon::boundary_points() const {
  std::vector<LatticePoint> out;
  for (const auto& e : edges()) {
    for (long long k = 0; k < e.length; ++k) out.push_back(e.start + k * e.primitive);
  }
  return out;
}

LatticePolygon LatticePolygon::transformed(const AffineMap& f) const {
  std::vector<LatticePoint> vs;
  vs.reserve(verts_.size());
  for (auto& v : verts_) vs.push_back(f.apply(v + offset_));
  return from_vertices(std::move(vs));
}

void Lattice2::insert(LatticePoint v) {
  if (v.x == 0 && v.y == 0) return;
  if (v.x != 0) {
    if (v.x < 0) v = -v;
    if (a == 0) {
      a = v.x;
      b = v.y;
    } else {
      long long s, t;
      long long g = egcd(a, v.x, s, t);
      long long nb = s * b + t * v.y;
      long long rest = (a / g) * v.y - (v.x / g) * b;
      c = gcd_ll(c, rest);
      a = g;
      b = nb;
    }
  } else {
    c = gcd_ll(c, v.y);
  }
  if (a > 0 && c > 0) b = ((b % c) + c) % c;
}

LatticePoint Lattice2::reduce(LatticePoint p) const {
  if (!full_rank()) throw std::logic_error("Lattice2::reduce requires full rank");
  long long q = floordiv(p.x, a);
  long long rx = p.x - q * a;
  long long yy = p.y - q * b;
  long long r = floordiv(yy, c);
  return {rx, yy - r * c};
}

bool Lattice2::contains(LatticePoint p) const {
  if (full_rank()) {
    LatticePoint r = reduce(p);
    return r.x == 0 && r.y == 0;
  }
  if (a > 0) {
    // rank one: multiples of (a, b)
    if (p.x % a != 0) return false;
    return p.y == (p.x / a) * b;
  }
  if (c > 0) return p.x == 0 && p.y % c == 0;
  return p.x == 0 && p.y == 0;
}

Lattice2 difference_lattice(std::span<const LatticePoint> pts) {
  Lattice2 lat;
  if (pts.empty()) return lat;
  LatticePoint base = pts[0];
  for (std::size_t i = 1; i < pts.size(); ++i) lat.insert(pts[i] - base);
  return lat;
}

std::optional<long long> affine_sublattice_index(std::span<const LatticePoint> pts) {
  Lattice2 lat = difference_lattice(pts);
  if (!lat.full_rank()) return std::nullopt;
  return lat.index();
}

namespace {

// Unimodular matrix sending the primitive vector d to (0,1).
IntMat2 direction_to_vertical(LatticePoint d) {
  long long s, t;
  long long g = egcd(d.x, d.y, s, t);
  (void)g;  // d primitive, g == 1
  // (ex, ey) = (-t, s) satisfies d.x*ey - d.y*ex == 1.
  return {d.y, -d.x, s, t};
}

}  // namespace

std::vector<LatticePoint> convex_hull_vertices(std::vector<LatticePoint> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() <= 2) return pts;
  auto build = [&](bool upper) {
    std::vector<LatticePoint> chain;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      LatticePoint p = pts[upper ? pts.size() - 1 - i : i];
      while (chain.size() >= 2) {
        long long turn = cross(chain.back() - chain[chain.size() - 2], p - chain.back());
        if (turn > 0) break;
        chain.pop_back();
      }
      chain.push_back(p);
    }
    return chain;
  };
  std::vector<LatticePoint> lower = build(false), upper = build(true);
  lower.pop_back();
  upper.pop_back();
  lower.insert(lower.end(), upper.begin(), upper.end());
  return lower;
}

LatticePolygon convex_hull(std::vector<LatticePoint> pts) {
  return LatticePolygon::from_vertices(convex_hull_vertices(std::move(pts)));
}

std::optional<KiteNormalization> detect_kite(const LatticePolygon& poly) {
  std::vector<LatticePoint> pts = poly.interior_points();
  for (auto& p : poly.boundary_points()) pts.push_back(p);
  std::sort(pts.begin(), pts.end());
  std::size_t n = pts.size();
  if (n < 4) return std::nullopt;

  // The carrier line passes through two of any five points, so trying the
  // pairs of a small prefix finds it when it exists.
  std::size_t probe = std::min<std::size_t>(n, 5);
  for (std::size_t i = 0; i < probe; ++i) {
    for (std::size_t j = i + 1; j < probe; ++j) {
      LatticePoint p0 = pts[i];
      LatticePoint dir = pts[j] - pts[i];
      long long len = lattice_length(dir);
      dir = {dir.x / len, dir.y / len};
      std::vector<LatticePoint> off;
      for (auto& p : pts) {
        if (cross(dir, p - p0) != 0) off.push_back(p);
        if (off.size() > 2) break;
      }
      if (off.size() != 2) continue;
      long long sa = cross(dir, off[0] - p0);
      long long sb = cross(dir, off[1] - p0);
      if ((sa > 0) == (sb > 0)) continue;     // same side of the line
      if (sa < 0) std::swap(off[0], off[1]);  // the mapped x-coordinate is -cross

      // Map the line to the second coordinate axis.
      IntMat2 rot = direction_to_vertical(dir);
      AffineMap to_axis{rot, -rot.apply(p0)};
      LatticePoint qa = to_axis.apply(off[0]);
      LatticePoint qb = to_axis.apply(off[1]);
      if (qa.x != -1 || qb.x != 1) continue;  // off-line points not at lattice distance one
      if ((qa.y + qb.y) % 2 != 0) continue;   // segment misses the lattice points of the line

      // Shear+translate so the off-line points land on (-1,0) and (1,0).
      long long t = -(qa.y + qb.y) / 2;
      long long s = qa.y + t;
      AffineMap shear{{1, 0, s, 1}, {0, t}};
      AffineMap full = shear * to_axis;

      KiteNormalization kn;
      kn.map = full * AffineMap::translation(-poly.original_offset());
      kn.off_line_a = off[0] + poly.original_offset();
      kn.off_line_b = off[1] + poly.original_offset();
      long long lo = 0, hi = 0;
      for (auto& p : pts) {
        LatticePoint q = full.apply(p);
        if (q.x == 0) {
          lo = std::min(lo, q.y);
          hi = std::max(hi, q.y);
        }
      }
      kn.axis_min = lo;
      kn.axis_max = hi;
      kn.interior_count = static_cast<int>(poly.node_count());
      return kn;
    }
  }
  return std::nullopt;
}

}  // namespace toricmono
