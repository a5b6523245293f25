#include "toricmono/permgroup.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <stdexcept>

namespace toricmono {

Permutation::Permutation(std::vector<int> images) : img_(std::move(images)) {
  std::vector<char> seen(img_.size(), 0);
  for (int v : img_) {
    if (v < 0 || v >= static_cast<int>(img_.size()) || seen[v]) {
      throw std::invalid_argument("not a permutation");
    }
    seen[v] = 1;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> img(n);
  std::iota(img.begin(), img.end(), 0);
  Permutation p;
  p.img_ = std::move(img);
  return p;
}

Permutation Permutation::transposition(int n, int i, int j) {
  Permutation p = identity(n);
  std::swap(p.img_[i], p.img_[j]);
  return p;
}

bool Permutation::is_identity() const {
  for (int i = 0; i < degree(); ++i) {
    if (img_[i] != i) return false;
  }
  return true;
}

Permutation Permutation::inverse() const {
  Permutation p;
  p.img_.resize(img_.size());
  for (int i = 0; i < degree(); ++i) p.img_[img_[i]] = i;
  return p;
}

Permutation operator*(const Permutation& a, const Permutation& b) {
  if (a.degree() != b.degree()) throw std::invalid_argument("degree mismatch");
  Permutation p;
  p.img_.resize(a.img_.size());
  for (int i = 0; i < a.degree(); ++i) p.img_[i] = a.img_[b.img_[i]];
  return p;
}

std::vector<int> Permutation::support() const {
  std::vector<int> s;
  for (int i = 0; i < degree(); ++i) {
    if (img_[i] != i) s.push_back(i);
  }
  return s;
}

void PermGroup::Level::rebuild(int degree) {
  orbit.clear();
  transversal.assign(degree, Permutation());
  orbit.push_back(beta);
  transversal[beta] = Permutation::identity(degree);
  std::deque<int> queue{beta};
  while (!queue.empty()) {
    int p = queue.front();
    queue.pop_front();
    for (const auto& g : gens) {
      int q = g(p);
      if (transversal[q].degree() == 0) {
        transversal[q] = g * transversal[p];
        orbit.push_back(q);
        queue.push_back(q);
      }
    }
  }
}

PermGroup PermGroup::trivial(int degree) {
  PermGroup g;
  g.degree_ = degree;
  return g;
}

PermGroup PermGroup::from_generators(int degree, std::vector<Permutation> gens) {
  PermGroup g;
  g.degree_ = degree;
  for (auto& p : gens) {
    if (p.degree() != degree) throw std::invalid_argument("generator degree mismatch");
    if (!p.is_identity()) g.gens_.push_back(p);
  }
  g.schreier_sims();
  return g;
}

std::pair<Permutation, std::size_t> PermGroup::strip(Permutation g, std::size_t from) const {
  for (std::size_t l = from; l < chain_.size(); ++l) {
    int image = g(chain_[l].beta);
    const Permutation& u = chain_[l].transversal[image];
    if (u.degree() == 0) return {std::move(g), l};
    g = u.inverse() * g;
  }
  return {std::move(g), chain_.size()};
}

void PermGroup::schreier_sims() {
  chain_.clear();
  auto extend_base = [&](const Permutation& g) {
    for (int i = 0; i < degree_; ++i) {
      if (g(i) != i) {
        chain_.push_back(Level{i, {}, {}, {}});
        return;
      }
    }
  };

  // Insert the given generators at level 0.
  std::deque<std::pair<std::size_t, Permutation>> pending;
  for (const auto& g : gens_) pending.emplace_back(0, g);

  while (!pending.empty()) {
    auto [level, g] = pending.front();
    pending.pop_front();
    auto [residue, at] = strip(std::move(g), level);
    if (residue.is_identity()) continue;
    if (at == chain_.size()) extend_base(residue);
    // Add the residue as a stabilizer generator at every level it fixes
    // the base prefix of, then rebuild and re-close from `level`.
    for (std::size_t l = level; l <= at && l < chain_.size(); ++l) {
      chain_[l].gens.push_back(residue);
    }
    for (std::size_t l = level; l <= at && l < chain_.size(); ++l) {
      chain_[l].rebuild(degree_);
      // Schreier generators of this level sift through the deeper chain.
      for (int p : chain_[l].orbit) {
        const Permutation& up = chain_[l].transversal[p];
        for (const auto& s : chain_[l].gens) {
          Permutation schreier = chain_[l].transversal[s(p)].inverse() * (s * up);
          if (!schreier.is_identity()) pending.emplace_back(l + 1, std::move(schreier));
        }
      }
    }
  }
}

BigInt PermGroup::order() const {
  BigInt o = 1;
  for (const auto& lvl : chain_) o *= static_cast<unsigned long long>(lvl.orbit.size());
  return o;
}

bool PermGroup::contains(const Permutation& g) const {
  if (g.degree() != degree_) return false;
  auto [residue, at] = strip(g, 0);
  return residue.is_identity();
}

std::vector<int> PermGroup::orbit(int point) const {
  std::vector<char> seen(degree_, 0);
  std::deque<int> queue{point};
  seen[point] = 1;
  std::vector<int> orb{point};
  while (!queue.empty()) {
    int p = queue.front();
    queue.pop_front();
    for (const auto& g : gens_) {
      int q = g(p);
      if (!seen[q]) {
        seen[q] = 1;
        orb.push_back(q);
        queue.push_back(q);
      }
    }
  }
  std::sort(orb.begin(), orb.end());
  return orb;
}

bool PermGroup::transitive() const {
  if (degree_ == 0) return true;
  return static_cast<int>(orbit(0).size()) == degree_;
}

std::vector<Permutation> deck_group_generators(const FinMap& f) {
  std::vector<Permutation> gens;
  int n = static_cast<int>(f.domain_size);
  for (const auto& fiber : f.fibers()) {
    for (std::size_t i = 0; i + 1 < fiber.size(); ++i) {
      gens.push_back(Permutation::transposition(n, fiber[i], fiber[i + 1]));
    }
  }
  return gens;
}

PermGroup deck_group(const FinMap& f) {
  return PermGroup::from_generators(static_cast<int>(f.domain_size), deck_group_generators(f));
}

BigInt deck_group_order(const FinMap& f) {
  BigInt o = 1;
  for (const auto& fiber : f.fibers()) o *= factorial(fiber.size());
  return o;
}

bool verify_deckpushout(const FinMap& f, const FinMap& g) {
  if (f.domain_size != g.domain_size) throw std::invalid_argument("mismatched domains");
  if (!f.surjective() || !g.surjective()) throw std::invalid_argument("maps must be surjective");
  std::vector<Permutation> gens = deck_group_generators(f);
  auto gg = deck_group_generators(g);
  gens.insert(gens.end(), gg.begin(), gg.end());
  PermGroup joint = PermGroup::from_generators(static_cast<int>(f.domain_size), std::move(gens));
  return joint.order() == deck_group_order(pushout(f, g));
}

std::vector<std::vector<int>> block_system(const PermGroup& g, std::pair<int, int> seed) {
  if (!g.transitive()) throw std::invalid_argument("block_system: group is not transitive");
  int n = g.degree();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };

  std::deque<std::pair<int, int>> queue;
  auto unite = [&](int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    parent[b] = a;
    queue.emplace_back(a, b);
  };

  unite(seed.first, seed.second);
  while (!queue.empty()) {
    auto [a, b] = queue.front();
    queue.pop_front();
    for (const auto& gen : g.generators()) {
      unite(gen(a), gen(b));
    }
  }

  std::map<int, std::vector<int>> blocks;
  for (int i = 0; i < n; ++i) blocks[find(i)].push_back(i);
  std::vector<std::vector<int>> out;
  for (auto& [r, blk] : blocks) out.push_back(std::move(blk));
  return out;
}

}  // namespace toricmono
