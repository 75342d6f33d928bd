#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <vector>

#include "permsym/natural.hpp"
#include "permsym/perm.hpp"

namespace permsym {

/// Sorted, duplicate-free list of points.
using PointSet = std::vector<Point>;

/// One level of a base and strong generating set.
struct ChainLevel {
  Point base_point = 0;
  /// Strong generators fixing every earlier base point.
  std::vector<Permutation> generators;
  /// Orbit of base_point under `generators`, in discovery order.
  std::vector<Point> orbit;
  /// rep_index[x] indexes `reps` for orbit points, -1 elsewhere.
  std::vector<int> rep_index;
  /// reps[k] maps base_point to orbit[k]; inverse_reps[k] is its inverse.
  std::vector<Permutation> reps;
  std::vector<Permutation> inverse_reps;

  bool in_orbit(Point x) const { return rep_index[x] >= 0; }
  const Permutation& rep(Point x) const { return reps[static_cast<std::size_t>(rep_index[x])]; }
  const Permutation& inverse_rep(Point x) const {
    return inverse_reps[static_cast<std::size_t>(rep_index[x])];
  }
};

/// Deterministic Schreier-Sims stabilizer chain.
class StabilizerChain {
 public:
  StabilizerChain() = default;

  /// The base starts with the points of `preferred_base` (in order) that the group moves;
  /// the remaining base points are the least moved points of the sifting residues.
  static StabilizerChain build(std::size_t degree, std::span<const Permutation> generators,
                               std::span<const Point> preferred_base = {});

  std::size_t degree() const noexcept { return degree_; }
  const std::vector<ChainLevel>& levels() const noexcept { return levels_; }
  std::vector<Point> base() const;
  Natural order() const;

  bool contains(const Permutation& p) const;

  /// Chain of the stabilizer of the first `depth` base points.
  StabilizerChain suffix(std::size_t depth) const;

 private:
  struct SiftResult {
    Permutation residue;
    std::size_t level;
  };

  SiftResult sift(Permutation g, std::size_t from_level) const;
  void rebuild_orbit(std::size_t level);

  std::size_t degree_ = 0;
  std::vector<ChainLevel> levels_;
};

/// A permutation group given by generators; the stabilizer chain is built once, on demand.
/// Copies share state, and concurrent readers may trigger the build safely.
class PermGroup {
 public:
  PermGroup() : PermGroup(0, {}) {}
  PermGroup(std::size_t degree, std::vector<Permutation> generators);
  PermGroup(std::size_t degree, std::vector<Permutation> generators, StabilizerChain chain);

  static PermGroup trivial(std::size_t degree) { return PermGroup(degree, {}); }

  std::size_t degree() const noexcept { return state_->degree; }
  const std::vector<Permutation>& generators() const noexcept { return state_->generators; }
  const StabilizerChain& chain() const;

  Natural order() const { return chain().order(); }
  bool contains(const Permutation& p) const;
  bool is_trivial() const;

 private:
  struct State {
    std::size_t degree = 0;
    std::vector<Permutation> generators;
    std::once_flag once;
    StabilizerChain chain;
  };

  std::shared_ptr<State> state_;
};

StabilizerChain build_chain(const PermGroup& g, std::span<const Point> preferred_base = {});
Natural order(const PermGroup& g);
bool contains(const PermGroup& g, const Permutation& p);

/// Orbit partition, blocks sorted, ordered by least point.
std::vector<PointSet> orbits(const PermGroup& g);
PointSet orbit(const PermGroup& g, Point x);
PointSet fixed_points(const PermGroup& g);

PermGroup pointwise_stabilizer(const PermGroup& g, const PointSet& s);
PermGroup setwise_stabilizer(const PermGroup& g, const PointSet& s);

inline constexpr std::uint64_t default_enumeration_budget = 10'000'000;

/// Visits every element exactly once. Throws Errc::budget_exceeded if the order exceeds budget.
void for_each_element(const PermGroup& g, std::uint64_t budget,
                      const std::function<void(const Permutation&)>& visit);
std::vector<Permutation> enumerate_elements(const PermGroup& g,
                                            std::uint64_t budget = default_enumeration_budget);

bool is_transitive(const PermGroup& g);
/// Throws Errc::precondition for intransitive groups.
bool is_primitive(const PermGroup& g);
/// Minimal block containing {first, second}, or the whole domain.
PointSet minimal_block(const PermGroup& g, Point first, Point second);

/// Equal orders and mutual generator containment.
bool same_group(const PermGroup& a, const PermGroup& b);
bool is_subgroup(const PermGroup& sub, const PermGroup& g);

/// Restriction to a union of orbits, relabelled to 0..points.size()-1 in increasing order.
PermGroup restrict_to(const PermGroup& g, const PointSet& points);
Permutation restrict_perm(const Permutation& p, const PointSet& points);

/// Group generated by the commutators of the generators and their conjugates.
PermGroup derived_subgroup(const PermGroup& g);

PointSet complement(const PointSet& s, std::size_t degree);

}  // namespace permsym
