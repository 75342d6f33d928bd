#include "permsym/group.hpp"

#include <algorithm>
#include <numeric>

#include "permsym/error.hpp"
#include "permsym/search.hpp"

namespace permsym {

namespace {

bool fixes_all(const Permutation& g, std::span<const Point> points) {
  return std::all_of(points.begin(), points.end(), [&](Point b) { return g[b] == b; });
}

void check_degree(const Permutation& p, std::size_t degree) {
  if (p.degree() != degree)
    throw Error(Errc::degree_mismatch, "permutation of degree " + std::to_string(p.degree()) +
                                           " in a group of degree " + std::to_string(degree));
}

}  // namespace

// ---------------------------------------------------------------------------
// StabilizerChain

void StabilizerChain::rebuild_orbit(std::size_t level) {
  ChainLevel& lv = levels_[level];
  lv.orbit.assign(1, lv.base_point);
  lv.rep_index.assign(degree_, -1);
  lv.reps.assign(1, Permutation(degree_));
  lv.inverse_reps.assign(1, Permutation(degree_));
  lv.rep_index[lv.base_point] = 0;
  for (std::size_t k = 0; k < lv.orbit.size(); ++k) {
    Point x = lv.orbit[k];
    for (const auto& s : lv.generators) {
      Point y = s[x];
      if (lv.rep_index[y] >= 0) continue;
      lv.rep_index[y] = static_cast<int>(lv.reps.size());
      lv.reps.push_back(lv.reps[k] * s);
      lv.inverse_reps.push_back(lv.reps.back().inverse());
      lv.orbit.push_back(y);
    }
  }
}

StabilizerChain::SiftResult StabilizerChain::sift(Permutation g, std::size_t from_level) const {
  for (std::size_t l = from_level; l < levels_.size(); ++l) {
    const ChainLevel& lv = levels_[l];
    Point beta = g[lv.base_point];
    if (!lv.in_orbit(beta)) return {std::move(g), l};
    if (beta != lv.base_point) g = g * lv.inverse_rep(beta);
  }
  return {std::move(g), levels_.size()};
}

StabilizerChain StabilizerChain::build(std::size_t degree, std::span<const Permutation> generators,
                                       std::span<const Point> preferred_base) {
  StabilizerChain chain;
  chain.degree_ = degree;

  std::vector<Permutation> strong;
  for (const auto& g : generators) {
    check_degree(g, degree);
    if (!g.is_identity()) strong.push_back(g);
  }
  if (strong.empty()) return chain;

  std::vector<Point> base;
  std::vector<bool> in_base(degree, false);
  for (Point b : preferred_base) {
    if (b >= degree) throw Error(Errc::invalid_argument, "base point out of range");
    if (in_base[b]) continue;
    bool moved = std::any_of(strong.begin(), strong.end(), [&](const auto& g) { return g[b] != b; });
    if (!moved) continue;
    base.push_back(b);
    in_base[b] = true;
  }
  for (const auto& g : strong) {
    if (fixes_all(g, base)) {
      Point b = g.first_moved();
      base.push_back(b);
      in_base[b] = true;
    }
  }

  chain.levels_.resize(base.size());
  for (std::size_t l = 0; l < base.size(); ++l) {
    chain.levels_[l].base_point = base[l];
    std::span<const Point> prefix(base.data(), l);
    for (const auto& g : strong)
      if (fixes_all(g, prefix)) chain.levels_[l].generators.push_back(g);
    chain.rebuild_orbit(l);
  }

  std::ptrdiff_t i = static_cast<std::ptrdiff_t>(chain.levels_.size()) - 1;
  while (i >= 0) {
    auto level = static_cast<std::size_t>(i);
    bool extended = false;
    // Schreier generators of level i must sift through levels i+1...
    for (std::size_t k = 0; k < chain.levels_[level].orbit.size() && !extended; ++k) {
      Point beta = chain.levels_[level].orbit[k];
      for (std::size_t si = 0; si < chain.levels_[level].generators.size(); ++si) {
        const ChainLevel& lv = chain.levels_[level];
        const Permutation& s = lv.generators[si];
        Permutation h = lv.reps[k] * s * lv.inverse_rep(s[beta]);
        if (h.is_identity()) continue;
        auto [residue, j] = chain.sift(std::move(h), level + 1);
        if (j == chain.levels_.size() && residue.is_identity()) continue;
        if (j == chain.levels_.size()) {
          ChainLevel fresh;
          fresh.base_point = residue.first_moved();
          chain.levels_.push_back(std::move(fresh));
        }
        for (std::size_t l = level + 1; l <= j; ++l) {
          chain.levels_[l].generators.push_back(residue);
          chain.rebuild_orbit(l);
        }
        i = static_cast<std::ptrdiff_t>(j);
        extended = true;
        break;
      }
    }
    if (!extended) --i;
  }
  return chain;
}

std::vector<Point> StabilizerChain::base() const {
  std::vector<Point> out;
  for (const auto& lv : levels_) out.push_back(lv.base_point);
  return out;
}

Natural StabilizerChain::order() const {
  Natural n = 1;
  for (const auto& lv : levels_) n *= lv.orbit.size();
  return n;
}

bool StabilizerChain::contains(const Permutation& p) const {
  check_degree(p, degree_);
  auto [residue, level] = sift(p, 0);
  return level == levels_.size() && residue.is_identity();
}

StabilizerChain StabilizerChain::suffix(std::size_t depth) const {
  StabilizerChain out;
  out.degree_ = degree_;
  if (depth < levels_.size())
    out.levels_.assign(levels_.begin() + static_cast<std::ptrdiff_t>(depth), levels_.end());
  return out;
}

// ---------------------------------------------------------------------------
// PermGroup

PermGroup::PermGroup(std::size_t degree, std::vector<Permutation> generators)
    : state_(std::make_shared<State>()) {
  for (const auto& g : generators) check_degree(g, degree);
  state_->degree = degree;
  state_->generators = std::move(generators);
}

PermGroup::PermGroup(std::size_t degree, std::vector<Permutation> generators,
                     StabilizerChain chain)
    : PermGroup(degree, std::move(generators)) {
  std::call_once(state_->once, [&] { state_->chain = std::move(chain); });
}

const StabilizerChain& PermGroup::chain() const {
  std::call_once(state_->once, [this] {
    state_->chain = StabilizerChain::build(state_->degree, state_->generators);
  });
  return state_->chain;
}

bool PermGroup::contains(const Permutation& p) const { return chain().contains(p); }

bool PermGroup::is_trivial() const {
  return std::all_of(generators().begin(), generators().end(),
                     [](const auto& g) { return g.is_identity(); });
}

StabilizerChain build_chain(const PermGroup& g, std::span<const Point> preferred_base) {
  if (preferred_base.empty()) return g.chain();
  return StabilizerChain::build(g.degree(), g.generators(), preferred_base);
}

Natural order(const PermGroup& g) { return g.order(); }
bool contains(const PermGroup& g, const Permutation& p) { return g.contains(p); }

// ---------------------------------------------------------------------------
// Orbits and stabilizers

PointSet orbit(const PermGroup& g, Point x) {
  std::vector<bool> seen(g.degree(), false);
  PointSet out{x};
  seen[x] = true;
  for (std::size_t k = 0; k < out.size(); ++k)
    for (const auto& s : g.generators()) {
      Point y = s[out[k]];
      if (!seen[y]) {
        seen[y] = true;
        out.push_back(y);
      }
    }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<PointSet> orbits(const PermGroup& g) {
  std::vector<bool> done(g.degree(), false);
  std::vector<PointSet> out;
  for (Point x = 0; x < g.degree(); ++x) {
    if (done[x]) continue;
    out.push_back(orbit(g, x));
    for (Point y : out.back()) done[y] = true;
  }
  return out;
}

PointSet fixed_points(const PermGroup& g) {
  PointSet out;
  for (Point x = 0; x < g.degree(); ++x)
    if (std::all_of(g.generators().begin(), g.generators().end(),
                    [&](const auto& s) { return s[x] == x; }))
      out.push_back(x);
  return out;
}

PointSet complement(const PointSet& s, std::size_t degree) {
  std::vector<bool> in(degree, false);
  for (Point x : s) in[x] = true;
  PointSet out;
  for (Point x = 0; x < degree; ++x)
    if (!in[x]) out.push_back(x);
  return out;
}

namespace {

std::vector<bool> membership(const PointSet& s, std::size_t degree) {
  std::vector<bool> in(degree, false);
  for (Point x : s) {
    if (x >= degree) throw Error(Errc::invalid_argument, "point out of range");
    in[x] = true;
  }
  return in;
}

}  // namespace

PermGroup pointwise_stabilizer(const PermGroup& g, const PointSet& s) {
  auto in = membership(s, g.degree());
  StabilizerChain chain = build_chain(g, s);
  std::size_t depth = 0;
  while (depth < chain.levels().size() && in[chain.levels()[depth].base_point]) ++depth;
  StabilizerChain tail = chain.suffix(depth);
  std::vector<Permutation> gens =
      tail.levels().empty() ? std::vector<Permutation>{} : tail.levels().front().generators;
  return PermGroup(g.degree(), std::move(gens), std::move(tail));
}

PermGroup setwise_stabilizer(const PermGroup& g, const PointSet& s) {
  auto in = membership(s, g.degree());
  PointSet other = complement(s, g.degree());
  // the smaller side leads the base; its images are the most constrained
  const PointSet& lead = s.size() <= other.size() ? s : other;
  StabilizerChain chain = build_chain(g, lead);
  SearchProperty prop;
  prop.point_ok = [&in](Point x, Point y) { return in[x] == in[y]; };
  return subgroup_search(chain, prop);
}

// ---------------------------------------------------------------------------
// Enumeration

void for_each_element(const PermGroup& g, std::uint64_t budget,
                      const std::function<void(const Permutation&)>& visit) {
  const StabilizerChain& chain = g.chain();
  if (chain.order() > budget)
    throw Error(Errc::budget_exceeded, "group order " + chain.order().str() +
                                           " exceeds the enumeration budget " +
                                           std::to_string(budget));
  const auto& levels = chain.levels();
  // elements are products v_{k-1} ... v_0 with v_l a coset representative of level l
  std::function<void(std::size_t, const Permutation&)> rec = [&](std::size_t l,
                                                                 const Permutation& prefix) {
    if (l == 0) {
      visit(prefix);
      return;
    }
    for (const auto& rep : levels[l - 1].reps) rec(l - 1, prefix * rep);
  };
  if (levels.empty()) {
    visit(Permutation(g.degree()));
    return;
  }
  for (const auto& rep : levels.back().reps) rec(levels.size() - 1, rep);
}

std::vector<Permutation> enumerate_elements(const PermGroup& g, std::uint64_t budget) {
  std::vector<Permutation> out;
  for_each_element(g, budget, [&](const Permutation& p) { out.push_back(p); });
  return out;
}

// ---------------------------------------------------------------------------
// Transitivity and primitivity

bool is_transitive(const PermGroup& g) {
  if (g.degree() == 0) return true;
  return orbit(g, 0).size() == g.degree();
}

PointSet minimal_block(const PermGroup& g, Point first, Point second) {
  std::vector<Point> parent(g.degree());
  std::iota(parent.begin(), parent.end(), Point{0});
  std::function<Point(Point)> find = [&](Point x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<std::pair<Point, Point>> queue{{first, second}};
  parent[find(second)] = find(first);
  for (std::size_t k = 0; k < queue.size(); ++k) {
    auto [x, y] = queue[k];
    for (const auto& s : g.generators()) {
      Point a = find(s[x]), b = find(s[y]);
      if (a == b) continue;
      parent[b] = a;
      queue.emplace_back(s[x], s[y]);
    }
  }
  PointSet block;
  Point root = find(first);
  for (Point x = 0; x < g.degree(); ++x)
    if (find(x) == root) block.push_back(x);
  return block;
}

bool is_primitive(const PermGroup& g) {
  if (!is_transitive(g))
    throw Error(Errc::precondition, "primitivity is only defined for transitive groups");
  for (Point y = 1; y < g.degree(); ++y)
    if (minimal_block(g, 0, y).size() < g.degree()) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Subgroups

bool is_subgroup(const PermGroup& sub, const PermGroup& g) {
  return std::all_of(sub.generators().begin(), sub.generators().end(),
                     [&](const auto& s) { return g.contains(s); });
}

bool same_group(const PermGroup& a, const PermGroup& b) {
  if (a.degree() != b.degree()) return false;
  return a.order() == b.order() && is_subgroup(a, b) && is_subgroup(b, a);
}

Permutation restrict_perm(const Permutation& p, const PointSet& points) {
  std::vector<int> index(p.degree(), -1);
  for (std::size_t k = 0; k < points.size(); ++k) index[points[k]] = static_cast<int>(k);
  std::vector<Point> images(points.size());
  for (std::size_t k = 0; k < points.size(); ++k) {
    int j = index[p[points[k]]];
    if (j < 0) throw Error(Errc::precondition, "point set is not invariant");
    images[k] = static_cast<Point>(j);
  }
  return Permutation::from_images(std::move(images));
}

PermGroup restrict_to(const PermGroup& g, const PointSet& points) {
  std::vector<Permutation> gens;
  for (const auto& s : g.generators()) gens.push_back(restrict_perm(s, points));
  return PermGroup(points.size(), std::move(gens));
}

PermGroup derived_subgroup(const PermGroup& g) {
  const auto& gens = g.generators();
  std::vector<Permutation> sub;
  StabilizerChain chain = StabilizerChain::build(g.degree(), sub);
  auto add = [&](const Permutation& p) {
    if (p.is_identity() || chain.contains(p)) return false;
    sub.push_back(p);
    chain = StabilizerChain::build(g.degree(), sub);
    return true;
  };
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      add(gens[i].inverse() * gens[j].inverse() * gens[i] * gens[j]);
  // normal closure under conjugation by the generators
  for (std::size_t k = 0; k < sub.size(); ++k)
    for (const auto& s : gens) add(s.inverse() * sub[k] * s);
  return PermGroup(g.degree(), std::move(sub), std::move(chain));
}

}  // namespace permsym
