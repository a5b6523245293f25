#ifndef TORICMONO_PATCHWORK_HPP
#define TORICMONO_PATCHWORK_HPP

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "toricmono/curves.hpp"
#include "toricmono/hypotheses.hpp"
#include "toricmono/monodromy.hpp"

namespace toricmono {

/// Subdivision of the polygon induced by a wedge: the wedge triangle T plus
/// the (possibly empty) parts on the two sides, together with the piecewise
/// linear convex height function and the adapted coordinates in which the
/// wedge edge is [(0,0), (ell,0)] and the apex is (p, q).
struct WedgeSubdivision {
  Wedge wedge;
  AffineMap to_adapted;  // polygon (normalized) coordinates -> adapted
  long long ell = 0, p = 0, q = 0;
  LatticePolygon polygon_ad;                 // whole polygon, adapted
  LatticePolygon triangle_ad;                // T = conv(w), adapted
  std::optional<LatticePolygon> left_ad;     // part meeting T in [apex, b_0]
  std::optional<LatticePolygon> right_ad;    // part meeting T in [b_ell, apex]
  std::vector<LatticePoint> glue_left_pts;   // interior lattice points on the left cut
  std::vector<LatticePoint> glue_right_pts;  // interior lattice points on the right cut
  long long height_bound = 0;                // 1 + max height over the polygon

  /// Exact value of the height function at an adapted lattice point.
  long long height(LatticePoint adapted) const;
  /// Which linear piece owns the point: 0 = T, 1 = left, 2 = right.
  int piece(LatticePoint adapted) const;
};

WedgeSubdivision subdivide(const LatticePolygon& poly, const Wedge& w);

/// One-parameter family of rational curves degenerating onto the wedge
/// subdivision. Slot groups: 0 = left part, 1 = triangle, 2 = right part.
/// Requires the wedge triangle to meet the boundary either in the single
/// edge [b_0, b_ell] or in all three edges (the whole-triangle case, where
/// the family is constant in z).
class DegenerationFamily {
 public:
  DegenerationFamily(WedgeSubdivision sub, std::vector<cplx> params_in_slot_order);
  /// Slots in counter-clockwise order starting at the apex, so increasing
  /// real parameters make every member a simple Harnack curve.
  static DegenerationFamily harnack(WedgeSubdivision sub, double spacing = 1.0);

  const WedgeSubdivision& subdivision() const { return sub_; }
  struct Slot {
    cplx a{};
    int alpha = 0, beta = 0;
    int group = 1;  // 0: left, 1: triangle, 2: right
  };
  const std::vector<Slot>& slots() const { return slots_; }
  std::vector<cplx> parameters() const;
  std::vector<std::size_t> triangle_slot_indices() const;
  DegenerationFamily with_parameters(const std::vector<cplx>& params) const;

  /// The space-curve point (x, y, z) of the family member at height z.
  std::array<cplx, 3> eval(cplx z, cplx t) const;
  /// The member curve at height z, as a plane curve in the polygon's torus.
  CurveParam plane_curve(cplx z) const;

  /// Limits of the three projections as z -> 0.
  CurveParam limit_left() const;            // requires a nonempty left part
  TriangleParam limit_triangle() const;
  CurveParam limit_right() const;           // requires a nonempty right part

  /// pi'(x, y, z) = (x z^-q, y z^p): chart of the left component.
  std::pair<cplx, cplx> project_left(cplx x, cplx y, cplx z) const;
  /// pi''(x, y, z) = (x z^q, y z^(ell-p)): chart of the right component.
  std::pair<cplx, cplx> project_right(cplx x, cplx y, cplx z) const;

 private:
  WedgeSubdivision sub_;
  std::vector<Slot> slots_;
  bool whole_triangle_ = false;
};

enum class NodeClass { triangle, left, right, glue_left, glue_right, unresolved };

struct NodeTrajectory {
  NodePair start;                 // pair on the z = 1 curve
  NodePair end;                   // pair at z = z_min
  NodeClass cls = NodeClass::unresolved;
  double limit_distance = 0.0;    // distance to the matched limit node
  int limit_index = -1;           // index into the matched limit node list
};

struct DegenerationTrack {
  std::vector<NodeTrajectory> nodes;
  std::size_t count_triangle = 0, count_left = 0, count_right = 0;
  std::size_t count_glue_left = 0, count_glue_right = 0;
  bool all_resolved = true;
  double z_min = 0.0;
};

/// Tracks every node of the z = 1 member down the schedule and classifies
/// the trajectories against the limit components and the gluing orbits.
/// The schedule must decrease from 1 to a positive z_min.
DegenerationTrack track_degeneration_nodes(const DegenerationFamily& fam,
                                           std::span<const double> z_schedule, double tol);

struct PatchLoopResult {
  Permutation perm;                     // on the z = 1 node list
  DegenerationTrack classification;     // from the descent phase
  bool fixes_nodes_off_triangle = true;
  bool triangle_action_matches = true;  // against root tracking on the limit triangle
};

/// Composite loop: z descends to z_min, the triangle parameters run the
/// inner loop (the other parameters stay put), z returns to 1.
PatchLoopResult patch_loop(const DegenerationFamily& fam, const ParamLoop& inner_loop,
                           double z_min, double tol);

}  // namespace toricmono

#endif
