#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "permsym/group.hpp"

namespace permsym {

/// labels[x] in 1..k for every point x.
struct Labeling {
  std::vector<std::uint32_t> labels;
  std::uint32_t k = 1;

  std::size_t degree() const noexcept { return labels.size(); }
  /// Throws Errc::invalid_argument on labels outside 1..k.
  void validate() const;
  std::vector<PointSet> classes() const;

  friend bool operator==(const Labeling&, const Labeling&) = default;
};

/// Labels points of `s` with 2 and the rest with 1.
Labeling labeling_from_set(const PointSet& s, std::size_t degree);

struct RegularSetReport {
  PointSet set;
  Natural stabilizer_order;
  std::optional<Permutation> witness;

  bool regular() const { return stabilizer_order == 1; }
};

RegularSetReport regular_set_report(const PermGroup& g, const PointSet& s);

enum class SearchMode { exhaustive, randomized };

/// `none` is a proof of absence (exhaustive only); `inconclusive` means the budget ran out.
enum class SearchOutcome { found, none, inconclusive };

inline constexpr std::uint64_t default_search_budget = 50'000'000;
inline constexpr std::uint64_t default_seed = 20190504;

struct RegularSetQuery {
  std::size_t min_size = 0;
  std::size_t max_size = static_cast<std::size_t>(-1);
  SearchMode mode = SearchMode::exhaustive;
  /// Candidate sets examined.
  std::uint64_t budget = default_search_budget;
  std::uint64_t seed = default_seed;
  /// Wall-clock limit in seconds; 0 means none. Running out is reported as inconclusive.
  double time_limit = 0;
};

struct RegularSetResult {
  SearchOutcome outcome = SearchOutcome::none;
  std::optional<RegularSetReport> report;
  std::uint64_t candidates = 0;
  std::uint64_t budget = 0;
  std::uint64_t seed = 0;
  SearchMode mode = SearchMode::exhaustive;
};

/// Exhaustive mode visits sizes ascending and subsets lexicographically; it skips size s when
/// n - s was already refuted, since a set and its complement share their stabilizer.
RegularSetResult find_regular_set(const PermGroup& g, const RegularSetQuery& query = {});

/// Iterated setwise stabilizers over the colour classes, largest class last.
PermGroup partition_stabilizer(const PermGroup& g, const Labeling& labeling);
bool is_distinguishing(const PermGroup& g, const Labeling& labeling);

struct LabelingQuery {
  std::uint32_t k = 3;
  /// Only labelings using all k labels (those with fewer were covered by smaller k).
  bool exactly_k = false;
  SearchMode mode = SearchMode::exhaustive;
  std::uint64_t budget = default_search_budget;
  std::uint64_t seed = default_seed;
  double time_limit = 0;
};

struct LabelingResult {
  SearchOutcome outcome = SearchOutcome::none;
  std::optional<Labeling> labeling;
  std::uint64_t candidates = 0;
  std::uint64_t budget = 0;
  std::uint64_t seed = 0;
  SearchMode mode = SearchMode::exhaustive;
};

/// Exhaustive mode enumerates labelings of the moved points in which labels first appear in
/// increasing order (so the least moved point has label 1); fixed points get label 1.
LabelingResult find_distinguishing_labeling(const PermGroup& g, const LabelingQuery& query);

enum class DOutcome { exact, exceeds, inconclusive };

struct DistinguishingResult {
  DOutcome outcome = DOutcome::exact;
  /// D when exact; k_max when D > k_max; the smallest undecided k when inconclusive.
  std::uint32_t value = 0;
  std::optional<Labeling> witness;
  std::uint64_t candidates = 0;
  std::uint64_t budget = 0;
};

DistinguishingResult distinguishing_number(const PermGroup& g, std::uint32_t k_max,
                                           std::uint64_t budget = default_search_budget);

/// Least d with d^k >= n - 1.
std::uint64_t an_parallel_formula(std::uint64_t n, std::uint64_t k);

using PointPair = std::pair<Point, Point>;

/// Orbits on pairs of distinct points; unordered pairs are stored with first < second.
std::vector<std::vector<PointPair>> orbitals(const PermGroup& g, bool ordered);

}  // namespace permsym
