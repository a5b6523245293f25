#ifndef TORICMONO_MONODROMY_HPP
#define TORICMONO_MONODROMY_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "toricmono/curves.hpp"
#include "toricmono/permgroup.hpp"

namespace toricmono {

/// Closed path in parameter space: theta in [0,1] -> parameter vector, with
/// path(1) equal to path(0) as a multiset. The entries follow the finite
/// parameters of the curve in slot order.
struct ParamLoop {
  std::vector<cplx> base;
  std::function<std::vector<cplx>(double)> path;
  std::string description;

  std::vector<cplx> at(double theta) const { return path(theta); }
};

ParamLoop constant_loop(std::vector<cplx> base);
/// Multiplies every parameter by e^(2 pi i theta).
ParamLoop phase_loop(std::vector<cplx> base);
/// Sends parameter `index` out to the circle of the given radius around
/// `center`, once around, and back; all other parameters stay put.
ParamLoop lasso_loop(std::vector<cplx> base, std::size_t index, cplx center, double radius);
/// Lasso whose approach detours through imaginary part `lift`, clearing any
/// degenerate walls on the real axis between the base point and the circle.
ParamLoop detour_lasso(std::vector<cplx> base, std::size_t index, cplx center, double radius,
                       double lift);
/// Rotates parameter `index` once around the origin through its base value.
ParamLoop rotation_loop(std::vector<cplx> base, std::size_t index);
/// Runs `first`, then `second`.
ParamLoop concatenate(const ParamLoop& first, const ParamLoop& second);

struct TrackSettings {
  int steps = 256;                      // initial loop discretization
  double min_step_fraction = 9.5367431640625e-07;  // 2^-20 of the loop
  double match_tol = 1e-6;              // bound on the closing match distance
};

struct TrackedPermutation {
  Permutation perm;
  double match_residual = 0.0;  // distance of the closing match
  double max_step_match = 0.0;  // largest per-step matching distance accepted
  int steps_used = 0;
};

/// Tracks the roots of the class-k node polynomial along the loop and
/// returns the end-to-start permutation. Steps are halved whenever the
/// matching distance exceeds a third of the smallest root separation;
/// throws std::runtime_error("tracking failure ...") on step underflow.
TrackedPermutation track_roots(const TriangleParam& tri, const ParamLoop& loop, int k, double tol,
                               TrackSettings settings = {});

/// Locates a parameter multiset where the class-k node polynomial acquires
/// a double root, by a Newton search in (t, a_last) from seeded random
/// starts, and returns the lasso around it. Throws std::runtime_error when
/// the fiber has fewer than two elements ("empty discriminant") or when
/// Newton fails after the restart budget.
ParamLoop discriminant_loop(const TriangleParam& tri, int k, std::uint64_t seed = 20160,
                            double radius_factor = 1e-2);

/// Tracks the self-intersection pairs of a parametrized curve along a loop
/// of its finite parameters; returns the induced permutation of base_nodes.
TrackedPermutation track_curve_nodes(const CurveParam& curve, const ParamLoop& loop,
                                     const SelfIntersections& base_nodes, double tol,
                                     TrackSettings settings = {});

/// Node decoration of a kite curve: the first coordinate z of every node
/// satisfies z^2 = alpha/beta for the coefficients alpha, beta of 1/z and z
/// in the defining polynomial (recovered numerically from samples of the
/// parametrization). Throws std::runtime_error("not a kite curve") when a
/// node violates the identity beyond tol.
struct KiteDecoration {
  cplx alpha_over_beta{};
  cplx principal_sqrt{};
  std::vector<int> sign;                 // per node, selecting +-sqrt
  std::vector<std::vector<int>> blocks;  // node indices by sign
  double max_residual = 0.0;             // max |z^2 - alpha/beta|
};

KiteDecoration kite_decoration(const CurveParam& curve, const KiteNormalization& kite,
                               const SelfIntersections& nodes, double tol);

/// Globally optimal assignment between two point sets of equal size
/// (Hungarian method); returns per-source target indices.
std::vector<int> optimal_assignment(const std::vector<cplx>& from, const std::vector<cplx>& to);

}  // namespace toricmono

#endif
