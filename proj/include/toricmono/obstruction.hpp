#ifndef TORICMONO_OBSTRUCTION_HPP
#define TORICMONO_OBSTRUCTION_HPP

#include <optional>
#include <span>
#include <vector>

#include "toricmono/bigint.hpp"
#include "toricmono/geometry.hpp"

namespace toricmono {

/// Target of an obstruction map: the quotient (Z^2 / <S>) / +-id where <S>
/// is the affine lattice generated by a point set S. Classes carry the group
/// structure with the coset of the base point as neutral element, so the
/// class of x is determined by x - base modulo the difference lattice, up to
/// sign. Representatives are canonical (lexicographically smallest of the
/// pair of reduced vectors), which keeps labels stable across runs.
class QuotientStructure {
 public:
  /// Throws std::invalid_argument when <S> has rank below two.
  static QuotientStructure from_generators(std::vector<LatticePoint> gens);

  long long index() const { return lattice_.index(); }
  std::size_t class_count() const { return reps_.size(); }
  LatticePoint base_point() const { return base_; }
  const Lattice2& lattice() const { return lattice_; }
  const std::vector<LatticePoint>& generators() const { return gens_; }
  /// All canonical class representatives, sorted.
  const std::vector<LatticePoint>& class_representatives() const { return reps_; }

  /// Canonical representative of the class of x.
  LatticePoint reduce(LatticePoint x) const;
  /// Position of reduce(x) in class_representatives().
  int class_id(LatticePoint x) const;

 private:
  std::vector<LatticePoint> gens_;
  LatticePoint base_;
  Lattice2 lattice_;
  std::vector<LatticePoint> reps_;
};

/// Partition of a point list by the classes of a quotient structure.
/// Fibers are indexed by the sorted canonical representatives that actually
/// occur; equality of partitions is label-independent.
struct FiberPartition {
  std::vector<LatticePoint> domain;        // sorted lexicographically
  std::vector<int> labels;                 // labels[i]: fiber of domain[i]
  std::vector<LatticePoint> fiber_reps;    // canonical representative per fiber
  std::vector<std::vector<int>> fibers;    // domain indices per fiber

  std::vector<std::size_t> fiber_sizes() const;
};

bool same_partition(const FiberPartition& a, const FiberPartition& b);

/// Total map between finite sets, domain and codomain as index ranges.
struct FinMap {
  std::size_t domain_size = 0;
  int codomain_size = 0;
  std::vector<int> to;

  bool surjective() const;
  std::vector<std::vector<int>> fibers() const;  // by codomain element
  static FinMap from_partition(const FiberPartition& p);
};

/// Obstruction map of the set S on the interior points of the polygon.
QuotientStructure obstruction_target(std::vector<LatticePoint> S);
FiberPartition psi(std::span<const LatticePoint> S, const LatticePolygon& poly);
FiberPartition psi(const QuotientStructure& target, const LatticePolygon& poly);

/// Order of the deck transformation group of a partition: the product of
/// the factorials of the fiber sizes.
BigInt aut_order(const FiberPartition& part);
BigInt aut_order(std::span<const std::size_t> fiber_sizes);

/// Pushout f * g of two maps with a common domain: quotient of the disjoint
/// union of the codomains by the relation identifying f(x) with g(x).
/// Throws std::invalid_argument on mismatched domains.
FinMap pushout(const FinMap& f, const FinMap& g);

/// Boundary obstruction map Psi_{boundary} of the polygon.
FiberPartition psi_boundary(const LatticePolygon& poly);

/// Witness that the monodromy cannot be the full symmetric group: either the
/// boundary-lattice index is at least 4, or it is 2 or 3 and an interior
/// point lies in the boundary lattice (the witness point, reported in input
/// coordinates of the normalized polygon).
struct NonsurjectivityCertificate {
  long long index = 0;
  std::optional<LatticePoint> witness;
};

std::optional<NonsurjectivityCertificate> nonsurjectivity_certificate(const LatticePolygon& poly);

/// Exception type distinguishing a violated hypothesis from a negative
/// verification result.
struct HypothesisViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Checks the pushout identity Psi_S * Psi_S' = Psi_{S u S'} on the interior
/// points. Requires S and S' to share a point and both restrictions to be
/// surjective onto their targets; throws HypothesisViolation otherwise.
bool verify_push_lemma(const LatticePolygon& poly, std::vector<LatticePoint> S,
                       std::vector<LatticePoint> Sprime);

/// The same quotient seen through the homology identification, built from
/// the 90-degree rotation of the boundary generators. Class count and the
/// induced partition of interior points agree with psi_boundary.
QuotientStructure psi_X_view(const LatticePolygon& poly);

/// gcd over vertices of |det(v_j, v_{j+1})|; equals the boundary index.
long long vertex_determinant_gcd(const LatticePolygon& poly);

}  // namespace toricmono

#endif
