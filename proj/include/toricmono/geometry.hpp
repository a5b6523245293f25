#ifndef TORICMONO_GEOMETRY_HPP
#define TORICMONO_GEOMETRY_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace toricmono {

/// A point of the character lattice Z^2. All polygon combinatorics run on
/// exact 64-bit integers; nothing in this header touches floating point.
struct LatticePoint {
  long long x = 0;
  long long y = 0;

  friend LatticePoint operator+(LatticePoint a, LatticePoint b) { return {a.x + b.x, a.y + b.y}; }
  friend LatticePoint operator-(LatticePoint a, LatticePoint b) { return {a.x - b.x, a.y - b.y}; }
  LatticePoint operator-() const { return {-x, -y}; }
  friend LatticePoint operator*(long long k, LatticePoint p) { return {k * p.x, k * p.y}; }
  friend bool operator==(LatticePoint a, LatticePoint b) { return a.x == b.x && a.y == b.y; }
  friend bool operator<(LatticePoint a, LatticePoint b) {
    return a.x != b.x ? a.x < b.x : a.y < b.y;
  }
};

inline long long cross(LatticePoint a, LatticePoint b) { return a.x * b.y - a.y * b.x; }
inline long long dot(LatticePoint a, LatticePoint b) { return a.x * b.x + a.y * b.y; }
long long gcd_ll(long long a, long long b);

/// Lattice length of a vector: gcd of the absolute coordinates.
long long lattice_length(LatticePoint v);

/// 2x2 integer matrix acting on lattice points from the left.
struct IntMat2 {
  long long a = 1, b = 0, c = 0, d = 1;  // [[a, b], [c, d]]

  LatticePoint apply(LatticePoint p) const { return {a * p.x + b * p.y, c * p.x + d * p.y}; }
  long long det() const { return a * d - b * c; }
  IntMat2 inverse() const;  // requires det == +-1
  friend IntMat2 operator*(const IntMat2& m, const IntMat2& n);
  static IntMat2 identity() { return {}; }
  static IntMat2 rotation90() { return {0, -1, 1, 0}; }  // (a,b) -> (-b,a)
};

/// Affine unimodular map p -> m*p + t.
struct AffineMap {
  IntMat2 m;
  LatticePoint t;

  LatticePoint apply(LatticePoint p) const { return m.apply(p) + t; }
  AffineMap inverse() const;
  friend AffineMap operator*(const AffineMap& f, const AffineMap& g);  // f after g
  static AffineMap identity() { return {IntMat2::identity(), {0, 0}}; }
  static AffineMap translation(LatticePoint t) { return {IntMat2::identity(), t}; }
};

/// Edge of a polygon: the segment from `start` to `end` equals
/// lattice_length * primitive, with primitive a primitive vector.
struct EdgeData {
  int index = 0;
  LatticePoint start;      // vertex shared with the previous edge
  LatticePoint end;        // vertex shared with the next edge
  LatticePoint primitive;  // v_j, agreeing with the CCW orientation
  long long length = 0;    // integer length l_j
};

/// Convex lattice polygon with counter-clockwise vertices.
///
/// On construction the polygon is translated so that its lexicographically
/// smallest vertex sits at the origin and becomes vertex 0; the applied
/// offset is kept so callers can report in the source coordinates.
/// Collinear input vertices are merged (with a note), clockwise input is
/// reversed, non-convex input is rejected.
class LatticePolygon {
 public:
  /// Empty placeholder; every meaningful polygon comes from from_vertices.
  LatticePolygon() = default;
  static LatticePolygon from_vertices(std::vector<LatticePoint> vertices);
  bool empty() const { return verts_.empty(); }

  const std::vector<LatticePoint>& vertices() const { return verts_; }
  int edge_count() const { return static_cast<int>(verts_.size()); }
  /// Translation from normalized coordinates back to the input coordinates.
  LatticePoint original_offset() const { return offset_; }
  const std::vector<std::string>& notes() const { return notes_; }

  std::vector<EdgeData> edges() const;
  /// Lattice points strictly inside, sorted lexicographically.
  std::vector<LatticePoint> interior_points() const;
  /// Lattice points on the boundary, CCW starting at vertex 0.
  std::vector<LatticePoint> boundary_points() const;
  std::size_t node_count() const { return interior_points().size(); }

  long long twice_area() const;
  bool strictly_inside(LatticePoint p) const;
  bool on_boundary(LatticePoint p) const;
  bool contains(LatticePoint p) const { return strictly_inside(p) || on_boundary(p); }

  /// Image polygon under a unimodular affine map (re-normalized).
  LatticePolygon transformed(const AffineMap& f) const;

 private:
  std::vector<LatticePoint> verts_;
  LatticePoint offset_;
  std::vector<std::string> notes_;
};

/// Sublattice of Z^2 held in Hermite form with rows (a,b) and (0,c).
/// a == 0 or c == 0 flags rank below two.
struct Lattice2 {
  long long a = 0, b = 0, c = 0;

  void insert(LatticePoint v);
  bool full_rank() const { return a > 0 && c > 0; }
  long long index() const { return full_rank() ? a * c : 0; }
  /// Canonical representative of p modulo the lattice, in [0,a) x [0,c).
  LatticePoint reduce(LatticePoint p) const;
  bool contains(LatticePoint p) const;
};

/// Lattice spanned by the differences of the listed points.
Lattice2 difference_lattice(std::span<const LatticePoint> pts);

/// Index in Z^2 of the affine lattice generated by S (translated by one of
/// its elements). nullopt when the rank is below two.
std::optional<long long> affine_sublattice_index(std::span<const LatticePoint> pts);

/// Normalizing data for a kite: all lattice points of the polygon lie on a
/// line except two, one on each side, whose connecting segment meets a
/// lattice point of the line. `map` sends the polygon's input coordinates to
/// the normal form where the line is the second coordinate axis and the two
/// off-line points are (-1,0) and (1,0).
struct KiteNormalization {
  AffineMap map;
  LatticePoint off_line_a, off_line_b;  // input coordinates, mapped to (-1,0), (1,0)
  long long axis_min = 0, axis_max = 0; // y-range of the on-line points after mapping
  int interior_count = 0;
};

std::optional<KiteNormalization> detect_kite(const LatticePolygon& poly);

/// Convex hull as a polygon; throws when the hull is degenerate.
LatticePolygon convex_hull(std::vector<LatticePoint> pts);
/// Vertices of the convex hull in CCW order (possibly 0, 1 or 2 points).
std::vector<LatticePoint> convex_hull_vertices(std::vector<LatticePoint> pts);

}  // namespace toricmono

#endif
