#include "toricmono/obstruction.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace toricmono {

QuotientStructure QuotientStructure::from_generators(std::vector<LatticePoint> gens) {
  if (gens.empty()) throw std::invalid_argument("empty generator set");
  QuotientStructure q;
  q.gens_ = std::move(gens);
  q.base_ = *std::min_element(q.gens_.begin(), q.gens_.end());
  q.lattice_ = difference_lattice(q.gens_);
  if (!q.lattice_.full_rank()) throw std::invalid_argument("degenerate generator set");

  std::set<LatticePoint> reps;
  for (long long i = 0; i < q.lattice_.a; ++i) {
    for (long long j = 0; j < q.lattice_.c; ++j) {
      LatticePoint r1 = q.lattice_.reduce({i, j});
      LatticePoint r2 = q.lattice_.reduce({-i, -j});
      reps.insert(std::min(r1, r2));
    }
  }
  q.reps_.assign(reps.begin(), reps.end());
  return q;
}

LatticePoint QuotientStructure::reduce(LatticePoint x) const {
  LatticePoint d = x - base_;
  return std::min(lattice_.reduce(d), lattice_.reduce(-d));
}

int QuotientStructure::class_id(LatticePoint x) const {
  LatticePoint r = reduce(x);
  auto it = std::lower_bound(reps_.begin(), reps_.end(), r);
  return static_cast<int>(it - reps_.begin());
}

std::vector<std::size_t> FiberPartition::fiber_sizes() const {
  std::vector<std::size_t> s;
  s.reserve(fibers.size());
  for (auto& f : fibers) s.push_back(f.size());
  return s;
}

bool same_partition(const FiberPartition& a, const FiberPartition& b) {
  if (a.domain != b.domain) return false;
  auto blocks = [](const FiberPartition& p) {
    std::set<std::vector<int>> bs;
    for (auto& f : p.fibers) bs.insert(f);
    return bs;
  };
  return blocks(a) == blocks(b);
}

bool FinMap::surjective() const {
  std::vector<char> hit(codomain_size, 0);
  for (int v : to) hit[v] = 1;
  return std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
}

std::vector<std::vector<int>> FinMap::fibers() const {
  std::vector<std::vector<int>> f(codomain_size);
  for (std::size_t i = 0; i < to.size(); ++i) f[to[i]].push_back(static_cast<int>(i));
  return f;
}

FinMap FinMap::from_partition(const FiberPartition& p) {
  FinMap f;
  f.domain_size = p.domain.size();
  f.codomain_size = static_cast<int>(p.fibers.size());
  f.to = p.labels;
  return f;
}

QuotientStructure obstruction_target(std::vector<LatticePoint> S) {
  return QuotientStructure::from_generators(std::move(S));
}

FiberPartition psi(const QuotientStructure& target, const LatticePolygon& poly) {
  FiberPartition part;
  part.domain = poly.interior_points();
  std::map<LatticePoint, std::vector<int>> by_rep;
  part.labels.resize(part.domain.size());
  for (std::size_t i = 0; i < part.domain.size(); ++i) {
    by_rep[target.reduce(part.domain[i])].push_back(static_cast<int>(i));
  }
  for (auto& [rep, idx] : by_rep) {
    for (int i : idx) part.labels[i] = static_cast<int>(part.fiber_reps.size());
    part.fiber_reps.push_back(rep);
    part.fibers.push_back(idx);
  }
  return part;
}

FiberPartition psi(std::span<const LatticePoint> S, const LatticePolygon& poly) {
  return psi(obstruction_target({S.begin(), S.end()}), poly);
}

BigInt aut_order(std::span<const std::size_t> fiber_sizes) {
  BigInt r = 1;
  for (auto s : fiber_sizes) r *= factorial(s);
  return r;
}

BigInt aut_order(const FiberPartition& part) {
  auto s = part.fiber_sizes();
  return aut_order(std::span<const std::size_t>(s));
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (a > b) std::swap(a, b);
    parent[b] = a;
    return true;
  }
};

}  // namespace

FinMap pushout(const FinMap& f, const FinMap& g) {
  if (f.domain_size != g.domain_size) throw std::invalid_argument("pushout: mismatched domains");
  UnionFind uf(static_cast<std::size_t>(f.codomain_size) + g.codomain_size);
  for (std::size_t x = 0; x < f.domain_size; ++x) {
    uf.unite(f.to[x], f.codomain_size + g.to[x]);
  }
  std::map<int, int> relabel;
  for (int v = 0; v < f.codomain_size + g.codomain_size; ++v) {
    int r = uf.find(v);
    if (!relabel.count(r)) relabel[r] = static_cast<int>(relabel.size());
  }
  FinMap out;
  out.domain_size = f.domain_size;
  out.codomain_size = static_cast<int>(relabel.size());
  out.to.resize(f.domain_size);
  for (std::size_t x = 0; x < f.domain_size; ++x) out.to[x] = relabel[uf.find(f.to[x])];
  return out;
}

FiberPartition psi_boundary(const LatticePolygon& poly) {
  return psi(std::span<const LatticePoint>(poly.boundary_points()), poly);
}

std::optional<NonsurjectivityCertificate> nonsurjectivity_certificate(const LatticePolygon& poly) {
  auto target = obstruction_target(poly.boundary_points());
  long long m = target.index();
  if (m >= 4) return NonsurjectivityCertificate{m, std::nullopt};
  if (m >= 2) {
    LatticePoint zero = target.reduce(target.base_point());
    for (auto& p : poly.interior_points()) {
      if (target.reduce(p) == zero) return NonsurjectivityCertificate{m, p};
    }
  }
  return std::nullopt;
}

bool verify_push_lemma(const LatticePolygon& poly, std::vector<LatticePoint> S,
                       std::vector<LatticePoint> Sprime) {
  std::vector<LatticePoint> a = S, b = Sprime;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::vector<LatticePoint> shared;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(shared));
  if (shared.empty()) throw HypothesisViolation("push lemma: generator sets share no point");

  auto qs = obstruction_target(S);
  auto qsp = obstruction_target(Sprime);
  FiberPartition ps = psi(qs, poly);
  FiberPartition psp = psi(qsp, poly);
  // Surjectivity onto the target, up to the zero class (the class of the
  // generator set itself, which obstruction maps of boundary sets miss).
  auto surjective_enough = [](const QuotientStructure& q, const FiberPartition& part) {
    std::set<LatticePoint> hit(part.fiber_reps.begin(), part.fiber_reps.end());
    for (auto& rep : q.class_representatives()) {
      if (rep == LatticePoint{0, 0}) continue;
      if (!hit.count(rep)) return false;
    }
    return true;
  };
  if (!surjective_enough(qs, ps) || !surjective_enough(qsp, psp)) {
    throw HypothesisViolation("push lemma: restricted map not surjective onto its target");
  }

  FinMap push = pushout(FinMap::from_partition(ps), FinMap::from_partition(psp));

  std::vector<LatticePoint> uni = a;
  uni.insert(uni.end(), b.begin(), b.end());
  FiberPartition punion = psi(std::span<const LatticePoint>(uni), poly);

  FiberPartition pushed;
  pushed.domain = ps.domain;
  pushed.labels = push.to;
  pushed.fibers = push.fibers();
  pushed.fibers.erase(std::remove_if(pushed.fibers.begin(), pushed.fibers.end(),
                                     [](const std::vector<int>& f) { return f.empty(); }),
                      pushed.fibers.end());
  auto blocks = [](const std::vector<std::vector<int>>& fs) {
    std::set<std::vector<int>> b2;
    for (auto& f : fs) b2.insert(f);
    return b2;
  };
  return blocks(pushed.fibers) == blocks(punion.fibers);
}

QuotientStructure psi_X_view(const LatticePolygon& poly) {
  std::vector<LatticePoint> rotated;
  for (auto& p : poly.boundary_points()) rotated.push_back(IntMat2::rotation90().apply(p));
  return obstruction_target(std::move(rotated));
}

long long vertex_determinant_gcd(const LatticePolygon& poly) {
  auto es = poly.edges();
  long long g = 0;
  for (std::size_t j = 0; j < es.size(); ++j) {
    long long d = cross(es[j].primitive, es[(j + 1) % es.size()].primitive);
    g = gcd_ll(g, d);
  }
  return g;
}

}  // namespace toricmono
