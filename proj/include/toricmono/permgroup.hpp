#ifndef TORICMONO_PERMGROUP_HPP
#define TORICMONO_PERMGROUP_HPP

#include <utility>
#include <vector>

#include "toricmono/bigint.hpp"
#include "toricmono/obstruction.hpp"

namespace toricmono {

/// Permutation of {0, ..., n-1} stored as its image array.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<int> images);
  static Permutation identity(int n);
  static Permutation transposition(int n, int i, int j);

  int degree() const { return static_cast<int>(img_.size()); }
  int operator()(int i) const { return img_[i]; }
  const std::vector<int>& images() const { return img_; }

  bool is_identity() const;
  Permutation inverse() const;
  /// (a * b)(i) == a(b(i)): b acts first.
  friend Permutation operator*(const Permutation& a, const Permutation& b);
  friend bool operator==(const Permutation& a, const Permutation& b) { return a.img_ == b.img_; }

  std::vector<int> support() const;

 private:
  std::vector<int> img_;
};

/// Permutation group held as a stabilizer chain (deterministic base order:
/// increasing point labels), giving exact orders as big integers and
/// membership tests by sifting.
class PermGroup {
 public:
  static PermGroup from_generators(int degree, std::vector<Permutation> gens);
  static PermGroup trivial(int degree);

  int degree() const { return degree_; }
  const std::vector<Permutation>& generators() const { return gens_; }
  BigInt order() const;
  bool contains(const Permutation& g) const;
  bool transitive() const;
  /// Orbit of a point under the group, sorted.
  std::vector<int> orbit(int point) const;

 private:
  struct Level {
    int beta = 0;
    std::vector<Permutation> gens;           // stabilizer generators at this level
    std::vector<int> orbit;                  // points in BFS order
    std::vector<Permutation> transversal;    // by point; degree 0 marks absence
    void rebuild(int degree);
  };

  void schreier_sims();
  /// Strips g through the chain starting at `from`; returns the residue and
  /// the level at which stripping stopped.
  std::pair<Permutation, std::size_t> strip(Permutation g, std::size_t from) const;

  int degree_ = 0;
  std::vector<Permutation> gens_;
  std::vector<Level> chain_;
};

/// Deck transformation group of a finite map: all permutations of the
/// domain preserving every fiber. Generated by within-fiber transpositions;
/// the order is the product of fiber-size factorials.
PermGroup deck_group(const FinMap& f);
std::vector<Permutation> deck_group_generators(const FinMap& f);
BigInt deck_group_order(const FinMap& f);

/// Checks <Aut(f), Aut(g)> == Aut(f * g) by exact order comparison.
/// Requires f and g surjective with a shared domain.
bool verify_deckpushout(const FinMap& f, const FinMap& g);

/// Minimal block system of a transitive group containing the seed pair,
/// via union-find refinement. Throws std::invalid_argument when the group
/// is not transitive. Blocks are sorted, each block sorted.
std::vector<std::vector<int>> block_system(const PermGroup& g, std::pair<int, int> seed);

}  // namespace toricmono

#endif
