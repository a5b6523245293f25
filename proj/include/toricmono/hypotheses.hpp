#ifndef TORICMONO_HYPOTHESES_HPP
#define TORICMONO_HYPOTHESES_HPP

#include <optional>
#include <string>
#include <vector>

#include "toricmono/bigint.hpp"
#include "toricmono/geometry.hpp"
#include "toricmono/obstruction.hpp"
#include "toricmono/permgroup.hpp"

namespace toricmono {

/// Wedge: consecutive lattice points b_0..b_ell on one edge plus a boundary
/// apex off that edge. Its convex hull is a triangle supporting localized
/// monodromy.
struct Wedge {
  int edge_index = -1;
  std::vector<LatticePoint> edge_points;  // consecutive along the edge, CCW
  LatticePoint apex;

  long long ell() const { return static_cast<long long>(edge_points.size()) - 1; }
  std::vector<LatticePoint> point_set() const;
  LatticePolygon triangle() const;
};

/// Full-edge wedge on edge j with the given apex (must lie on the boundary
/// and off edge j).
Wedge full_edge_wedge(const LatticePolygon& poly, int j, LatticePoint apex);
/// Run of points edge_start_index .. edge_start_index+ell along edge j.
Wedge partial_wedge(const LatticePolygon& poly, int j, long long start, long long ell,
                    LatticePoint apex);
/// w_j: the full edge j with the vertex shared by edges j-2 and j-1 as apex.
Wedge distinguished_wedge(const LatticePolygon& poly, int j);
/// All full-edge wedges (every edge, every admissible apex).
std::vector<Wedge> enumerate_wedges(const LatticePolygon& poly);

/// Interior lattice points common to two polygons.
std::vector<LatticePoint> common_interior_points(const LatticePolygon& a, const LatticePolygon& b);

struct HypothesisReport {
  bool A = false, B = false, C = false;

  struct AFailure {
    int j;
    LatticePoint class_rep;  // offending class (canonical representative)
    std::string reason;
  };
  std::vector<AFailure> a_failures;

  std::vector<long long> q_list;  // q_j per vertex pair (j, j+1)
  long long q = 0;                // min over j
  long long min_edge_length = 0;
  long long required_length = 0;  // 4 when q == 1, 3q-2 otherwise

  struct CFailure {
    int j;
    LatticePoint apex_a, apex_b;
    LatticePoint class_rep;
  };
  std::vector<CFailure> c_failures;
};

/// (A): for every edge j, each obstruction class realized on the interior of
/// the distinguished triangle T_j has at least two representatives there,
/// and those classes cover everything the map realizes on the polygon's
/// interior.
bool check_A(const LatticePolygon& poly, HypothesisReport& report);
/// (B): the minimal edge length meets the q-dependent threshold.
bool check_B(const LatticePolygon& poly, HypothesisReport& report);
/// (C): for consecutive apex pairs on the same edge (both triangles with
/// interior points), every class realized on either triangle interior is
/// realized on the interior of their intersection.
bool check_C(const LatticePolygon& poly, HypothesisReport& report);
HypothesisReport check_hypotheses(const LatticePolygon& poly);

/// 5 * max_j |v_j|^2 in the given coordinates.
long long ell_constant(const LatticePolygon& poly);
/// Minimum of ell_constant over unimodular coordinate changes with matrix
/// entries bounded by `box`; a lower bound on the intrinsic constant only.
long long ell_min(const LatticePolygon& poly, long long box = 10);

/// Planar point for the quadrilateral ratio formulas.
struct Vec2 {
  double x = 0, y = 0;
};

/// Closed-form AO/AC for a convex quadrilateral ABCD with O = AC cap BD,
/// in terms of side lengths and the angles at A and B.
double quadri_ratio_general(Vec2 A, Vec2 B, Vec2 C, Vec2 D);
/// The trapezoid variant: requires AB parallel to CD, or the lines (AB) and
/// (CD) meeting at P with A between P and B. Throws std::invalid_argument
/// when the side condition fails.
double quadri_ratio_trapezoid(Vec2 A, Vec2 B, Vec2 C, Vec2 D);
/// Direct diagonal-intersection computation of AO/AC (the oracle).
double quadri_ratio_direct(Vec2 A, Vec2 B, Vec2 C, Vec2 D);

/// Transpositions of interior points of conv(w) lying in a common fiber of
/// the wedge obstruction map, as permutations of `domain` (the polygon's
/// interior points), identity elsewhere.
std::vector<Permutation> wedge_group_generators(const LatticePolygon& poly, const Wedge& w,
                                                const std::vector<LatticePoint>& domain);

struct TheoremCheck {
  bool hypotheses_met = false;
  bool verified = false;
  BigInt generated_order = 0;
  BigInt deck_order = 0;
  HypothesisReport report;
};

/// Compares the group generated by all full-edge wedge groups with the deck
/// group of the boundary obstruction map, by exact order. Refuses domains
/// larger than max_domain (std::length_error).
TheoremCheck verify_theorem_combinatorics(const LatticePolygon& poly,
                                          std::size_t max_domain = 1000);

}  // namespace toricmono

#endif
