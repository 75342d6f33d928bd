#include "permsym/search.hpp"

#include <algorithm>

namespace permsym {

namespace {

std::vector<bool> moved_by(const std::vector<Permutation>& gens, std::size_t n) {
  std::vector<bool> moved(n, false);
  for (const auto& s : gens)
    for (Point x = 0; x < n; ++x)
      if (s[x] != x) moved[x] = true;
  return moved;
}

/// One search run: buffers for the partial products v_{j-1} ... v_i, applied right to left.
class Run {
 public:
  Run(const StabilizerChain& chain, const std::vector<std::vector<Point>>& determined,
      const SearchProperty& property, SearchStats* stats)
      : chain_(chain),
        determined_(determined),
        property_(property),
        stats_(stats),
        n_(chain.degree()),
        buffers_(chain.levels().size() + 1, std::vector<Point>(chain.degree())) {}

  /// Element of G^(level) mapping the level's base point to gamma, with the property.
  std::optional<Permutation> find_mapping(std::size_t level, Point gamma) {
    const auto& rep = chain_.levels()[level].rep(gamma);
    auto& r = buffers_[level + 1];
    for (Point x = 0; x < n_; ++x) r[x] = rep[x];
    if (stats_) ++stats_->nodes;
    for (Point x : determined_[level])
      if (!property_.point_ok(x, r[x])) return std::nullopt;
    if (descend(level + 1)) return std::move(found_);
    return std::nullopt;
  }

 private:
  bool descend(std::size_t level) {
    const auto& levels = chain_.levels();
    const auto& right = buffers_[level];
    if (level == levels.size()) {
      Permutation g = Permutation::from_images(right);
      if (property_.accept && !property_.accept(g)) return false;
      found_ = std::move(g);
      return true;
    }
    const ChainLevel& lv = levels[level];
    auto& next = buffers_[level + 1];
    for (const auto& v : lv.reps) {
      if (stats_) ++stats_->nodes;
      bool ok = true;
      for (Point x : determined_[level])
        if (!property_.point_ok(x, right[v[x]])) {
          ok = false;
          break;
        }
      if (!ok) continue;
      for (Point x = 0; x < n_; ++x) next[x] = right[v[x]];
      if (descend(level + 1)) return true;
    }
    return false;
  }

  const StabilizerChain& chain_;
  const std::vector<std::vector<Point>>& determined_;
  const SearchProperty& property_;
  SearchStats* stats_;
  std::size_t n_;
  std::vector<std::vector<Point>> buffers_;
  Permutation found_;
};

PointSet orbit_under(const std::vector<Permutation>& gens, Point x, std::size_t n) {
  std::vector<bool> seen(n, false);
  PointSet out{x};
  seen[x] = true;
  for (std::size_t k = 0; k < out.size(); ++k)
    for (const auto& s : gens) {
      Point y = s[out[k]];
      if (!seen[y]) {
        seen[y] = true;
        out.push_back(y);
      }
    }
  return out;
}

}  // namespace

ChainSearcher::ChainSearcher(const StabilizerChain& chain) : chain_(chain) {
  const auto& levels = chain.levels();
  const std::size_t n = chain.degree(), k = levels.size();
  determined_.resize(k);
  std::vector<bool> moved_below(n, false);  // moved by G^(j+1); G^(k) is trivial
  for (std::size_t j = k; j-- > 0;) {
    std::vector<bool> moved_here = moved_by(levels[j].generators, n);
    for (Point x = 0; x < n; ++x)
      if (!moved_below[x] && moved_here[x]) determined_[j].push_back(x);
    moved_below = std::move(moved_here);
  }
}

PermGroup ChainSearcher::subgroup(const SearchProperty& property, SearchStats* stats) const {
  Run run(chain_, determined_, property, stats);
  std::vector<Permutation> found;
  const auto& levels = chain_.levels();
  // Deepest level first: everything found so far fixes the earlier base points, so the orbit
  // of the current base point under it is already covered.
  for (std::size_t i = levels.size(); i-- > 0;) {
    const ChainLevel& lv = levels[i];
    std::vector<bool> covered(chain_.degree(), false);
    for (Point y : orbit_under(found, lv.base_point, chain_.degree())) covered[y] = true;
    for (Point gamma : lv.orbit) {
      if (covered[gamma] || !property.point_ok(lv.base_point, gamma)) continue;
      if (auto g = run.find_mapping(i, gamma)) {
        found.push_back(std::move(*g));
        for (Point y : orbit_under(found, lv.base_point, chain_.degree())) covered[y] = true;
      }
    }
  }
  return PermGroup(chain_.degree(), std::move(found));
}

std::optional<Permutation> ChainSearcher::find_nontrivial(const SearchProperty& property,
                                                          SearchStats* stats) const {
  Run run(chain_, determined_, property, stats);
  const auto& levels = chain_.levels();
  for (std::size_t i = levels.size(); i-- > 0;) {
    const ChainLevel& lv = levels[i];
    for (Point gamma : lv.orbit) {
      if (gamma == lv.base_point || !property.point_ok(lv.base_point, gamma)) continue;
      if (auto g = run.find_mapping(i, gamma)) return g;
    }
  }
  return std::nullopt;
}

PermGroup subgroup_search(const StabilizerChain& chain, const SearchProperty& property,
                          SearchStats* stats) {
  return ChainSearcher(chain).subgroup(property, stats);
}

std::optional<Permutation> find_nontrivial(const StabilizerChain& chain,
                                           const SearchProperty& property, SearchStats* stats) {
  return ChainSearcher(chain).find_nontrivial(property, stats);
}

}  // namespace permsym
