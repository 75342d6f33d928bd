#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "permsym/group.hpp"

namespace permsym {

/// A subgroup described by a pointwise condition. `point_ok(x, y)` must hold for x -> y under
/// every member of the subgroup and for every point of the identity. It is checked as soon as
/// the image of x is determined; `accept`, when set, is a final exact test on complete elements.
struct SearchProperty {
  std::function<bool(Point, Point)> point_ok;
  std::function<bool(const Permutation&)> accept;
};

struct SearchStats {
  std::uint64_t nodes = 0;
};

/// Reusable backtrack over one chain; precomputes which points each level determines.
class ChainSearcher {
 public:
  explicit ChainSearcher(const StabilizerChain& chain);

  PermGroup subgroup(const SearchProperty& property, SearchStats* stats = nullptr) const;
  std::optional<Permutation> find_nontrivial(const SearchProperty& property,
                                             SearchStats* stats = nullptr) const;

  const StabilizerChain& chain() const noexcept { return chain_; }

 private:
  const StabilizerChain& chain_;
  /// determined_[j]: points fixed by G^(j+1) but moved by G^(j).
  std::vector<std::vector<Point>> determined_;
};

/// Backtrack over the chain's base images, collecting generators of the subgroup bottom-up.
PermGroup subgroup_search(const StabilizerChain& chain, const SearchProperty& property,
                          SearchStats* stats = nullptr);

/// Some non-identity element with the property, or nothing if the subgroup is trivial.
std::optional<Permutation> find_nontrivial(const StabilizerChain& chain,
                                           const SearchProperty& property,
                                           SearchStats* stats = nullptr);

}  // namespace permsym
