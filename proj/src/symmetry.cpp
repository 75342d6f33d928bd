#include "permsym/symmetry.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <numeric>
#include <random>

#include "permsym/error.hpp"
#include "permsym/search.hpp"
#include "permsym/sums.hpp"

namespace permsym {

void Labeling::validate() const {
  if (k == 0) throw Error(Errc::invalid_argument, "a labeling needs at least one label");
  for (auto l : labels)
    if (l < 1 || l > k)
      throw Error(Errc::invalid_argument,
                  "label " + std::to_string(l) + " outside 1.." + std::to_string(k));
}

std::vector<PointSet> Labeling::classes() const {
  std::map<std::uint32_t, PointSet> by_label;
  for (Point x = 0; x < labels.size(); ++x) by_label[labels[x]].push_back(x);
  std::vector<PointSet> out;
  for (auto& [label, pts] : by_label) out.push_back(std::move(pts));
  return out;
}

Labeling labeling_from_set(const PointSet& s, std::size_t degree) {
  Labeling l{std::vector<std::uint32_t>(degree, 1), 2};
  for (Point x : s) l.labels.at(x) = 2;
  return l;
}

RegularSetReport regular_set_report(const PermGroup& g, const PointSet& s) {
  PermGroup stab = setwise_stabilizer(g, s);
  RegularSetReport report{s, stab.order(), std::nullopt};
  for (const auto& h : stab.generators())
    if (!h.is_identity()) {
      report.witness = h;
      break;
    }
  return report;
}

namespace {

SearchProperty same_colour(const std::vector<std::uint32_t>& colour) {
  SearchProperty p;
  p.point_ok = [&colour](Point x, Point y) { return colour[x] == colour[y]; };
  return p;
}

class Deadline {
 public:
  explicit Deadline(double seconds)
      : active_(seconds > 0),
        end_(std::chrono::steady_clock::now() +
             std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                 std::chrono::duration<double>(seconds))) {}

  bool passed() const { return active_ && std::chrono::steady_clock::now() >= end_; }

 private:
  bool active_;
  std::chrono::steady_clock::time_point end_;
};

/// Calls visit(indices) for every s-subset of 0..n-1 in lexicographic order until it returns true.
template <typename Visit>
bool for_each_subset(std::size_t n, std::size_t s, Visit&& visit) {
  if (s > n) return false;
  std::vector<std::size_t> c(s);
  std::iota(c.begin(), c.end(), std::size_t{0});
  while (true) {
    if (visit(c)) return true;
    std::size_t i = s;
    while (i > 0 && c[i - 1] == n - s + (i - 1)) --i;
    if (i == 0) return false;
    ++c[i - 1];
    for (std::size_t j = i; j < s; ++j) c[j] = c[j - 1] + 1;
  }
}

}  // namespace

RegularSetResult find_regular_set(const PermGroup& g, const RegularSetQuery& query) {
  const std::size_t n = g.degree();
  RegularSetResult result;
  result.budget = query.budget;
  result.seed = query.seed;
  result.mode = query.mode;
  const std::size_t lo = query.min_size, hi = std::min(query.max_size, n);
  if (lo > hi) return result;

  ChainSearcher searcher(g.chain());
  std::vector<std::uint32_t> colour(n, 0);
  SearchProperty property = same_colour(colour);
  Deadline deadline(query.time_limit);
  auto out_of_budget = [&] { return result.candidates >= query.budget || deadline.passed(); };

  auto test = [&](const PointSet& s) {
    std::fill(colour.begin(), colour.end(), 0);
    for (Point x : s) colour[x] = 1;
    ++result.candidates;
    if (searcher.find_nontrivial(property)) return false;
    result.outcome = SearchOutcome::found;
    result.report = RegularSetReport{s, 1, std::nullopt};
    return true;
  };

  if (query.mode == SearchMode::randomized) {
    std::mt19937_64 rng(query.seed);
    std::vector<Point> pts(n);
    std::iota(pts.begin(), pts.end(), Point{0});
    std::uniform_int_distribution<std::size_t> size_dist(lo, hi);
    while (!out_of_budget()) {
      std::size_t s = size_dist(rng);
      std::shuffle(pts.begin(), pts.end(), rng);
      PointSet set(pts.begin(), pts.begin() + static_cast<std::ptrdiff_t>(s));
      std::sort(set.begin(), set.end());
      if (test(set)) return result;
    }
    result.outcome = SearchOutcome::inconclusive;
    return result;
  }

  for (std::size_t s = lo; s <= hi; ++s) {
    if (n - s >= lo && n - s < s) continue;  // complement size already refuted
    bool exhausted = false;
    bool hit = for_each_subset(n, s, [&](const std::vector<std::size_t>& idx) {
      if (out_of_budget()) {
        exhausted = true;
        return true;
      }
      PointSet set(idx.begin(), idx.end());
      return test(set);
    });
    if (exhausted) {
      result.outcome = SearchOutcome::inconclusive;
      return result;
    }
    if (hit) return result;
  }
  result.outcome = SearchOutcome::none;
  return result;
}

PermGroup partition_stabilizer(const PermGroup& g, const Labeling& labeling) {
  if (labeling.degree() != g.degree())
    throw Error(Errc::degree_mismatch, "labeling degree differs from the group degree");
  labeling.validate();
  auto classes = labeling.classes();
  std::stable_sort(classes.begin(), classes.end(),
                   [](const PointSet& a, const PointSet& b) { return a.size() < b.size(); });
  PermGroup current = g;
  // the largest class is preserved once all the others are
  for (std::size_t i = 0; i + 1 < classes.size(); ++i) {
    if (current.is_trivial()) break;
    current = setwise_stabilizer(current, classes[i]);
  }
  return current;
}

bool is_distinguishing(const PermGroup& g, const Labeling& labeling) {
  if (labeling.degree() != g.degree())
    throw Error(Errc::degree_mismatch, "labeling degree differs from the group degree");
  labeling.validate();
  SearchProperty property = same_colour(labeling.labels);
  return !find_nontrivial(g.chain(), property).has_value();
}

LabelingResult find_distinguishing_labeling(const PermGroup& g, const LabelingQuery& query) {
  if (query.k == 0) throw Error(Errc::invalid_argument, "k must be positive");
  const std::size_t n = g.degree();
  LabelingResult result;
  result.budget = query.budget;
  result.seed = query.seed;
  result.mode = query.mode;

  PointSet moved = complement(fixed_points(g), n);
  const std::size_t m = moved.size();
  ChainSearcher searcher(g.chain());
  std::vector<std::uint32_t> colour(n, 0);
  SearchProperty property = same_colour(colour);
  Deadline deadline(query.time_limit);
  auto out_of_budget = [&] { return result.candidates >= query.budget || deadline.passed(); };

  auto finish = [&] {
    Labeling l{std::vector<std::uint32_t>(n), query.k};
    for (Point x = 0; x < n; ++x) l.labels[x] = colour[x] + 1;
    result.outcome = SearchOutcome::found;
    result.labeling = std::move(l);
  };
  auto test = [&] {
    ++result.candidates;
    return !searcher.find_nontrivial(property).has_value();
  };

  if (query.mode == SearchMode::randomized) {
    std::mt19937_64 rng(query.seed);
    std::uniform_int_distribution<std::uint32_t> label(0, query.k - 1);
    while (!out_of_budget()) {
      std::fill(colour.begin(), colour.end(), 0);
      for (Point x : moved) colour[x] = label(rng);
      if (test()) {
        finish();
        return result;
      }
    }
    result.outcome = SearchOutcome::inconclusive;
    return result;
  }

  // restricted growth strings over the moved points
  bool exhausted = false;
  std::function<bool(std::size_t, std::uint32_t)> rec = [&](std::size_t pos,
                                                            std::uint32_t used) -> bool {
    if (query.exactly_k && used + (m - pos) < query.k) return false;
    if (pos == m) {
      if (out_of_budget()) {
        exhausted = true;
        return true;
      }
      return test();
    }
    std::uint32_t top = std::min<std::uint32_t>(used + 1, query.k);
    for (std::uint32_t c = 0; c < top; ++c) {
      colour[moved[pos]] = c;
      if (rec(pos + 1, std::max(used, c + 1))) return true;
    }
    return false;
  };
  bool hit = rec(0, 0);
  if (exhausted) {
    result.outcome = SearchOutcome::inconclusive;
  } else if (hit) {
    finish();
  } else {
    result.outcome = SearchOutcome::none;
  }
  return result;
}

DistinguishingResult distinguishing_number(const PermGroup& g, std::uint32_t k_max,
                                           std::uint64_t budget) {
  if (k_max == 0) throw Error(Errc::invalid_argument, "k_max must be positive");
  DistinguishingResult result;
  result.budget = budget;
  const std::size_t n = g.degree();

  StrippedGroup stripped = strip_fixed_points(g);
  const PermGroup& h = stripped.group;
  auto lift = [&](const Labeling& inner) {
    Labeling l{std::vector<std::uint32_t>(n, 1), inner.k};
    for (Point i = 0; i < stripped.kept.size(); ++i) l.labels[stripped.kept[i]] = inner.labels[i];
    return l;
  };

  if (h.is_trivial()) {
    result.value = 1;
    result.witness = Labeling{std::vector<std::uint32_t>(n, 1), 1};
    return result;
  }
  auto give_up = [&](DOutcome outcome, std::uint32_t value) {
    result.outcome = outcome;
    result.value = value;
    return result;
  };
  if (k_max < 2) return give_up(DOutcome::exceeds, k_max);

  RegularSetQuery rq;
  rq.budget = budget;
  RegularSetResult rs = find_regular_set(h, rq);
  result.candidates += rs.candidates;
  if (rs.outcome == SearchOutcome::inconclusive) return give_up(DOutcome::inconclusive, 2);
  if (rs.outcome == SearchOutcome::found) {
    result.value = 2;
    result.witness = lift(labeling_from_set(rs.report->set, h.degree()));
    return result;
  }

  for (std::uint32_t k = 3; k <= k_max; ++k) {
    LabelingQuery lq;
    lq.k = k;
    lq.exactly_k = true;
    lq.budget = budget > result.candidates ? budget - result.candidates : 0;
    LabelingResult lr = find_distinguishing_labeling(h, lq);
    result.candidates += lr.candidates;
    if (lr.outcome == SearchOutcome::inconclusive) return give_up(DOutcome::inconclusive, k);
    if (lr.outcome == SearchOutcome::found) {
      result.value = k;
      result.witness = lift(*lr.labeling);
      return result;
    }
  }
  return give_up(DOutcome::exceeds, k_max);
}

std::uint64_t an_parallel_formula(std::uint64_t n, std::uint64_t k) {
  if (n < 3 || k < 1) throw Error(Errc::invalid_argument, "formula needs n >= 3 and k >= 1");
  auto reaches = [&](std::uint64_t d) {
    std::uint64_t p = 1;
    for (std::uint64_t i = 0; i < k; ++i) {
      p *= d;
      if (p >= n - 1) return true;
    }
    return p >= n - 1;
  };
  std::uint64_t d = 1;
  while (!reaches(d)) ++d;
  return d;
}

std::vector<std::vector<PointPair>> orbitals(const PermGroup& g, bool ordered) {
  const std::size_t n = g.degree();
  if (n < 2) throw Error(Errc::precondition, "orbitals need at least two points");
  std::vector<std::size_t> parent(n * n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto key = [&](Point x, Point y) {
    if (!ordered && x > y) std::swap(x, y);
    return static_cast<std::size_t>(x) * n + y;
  };
  for (Point x = 0; x < n; ++x)
    for (Point y = 0; y < n; ++y) {
      if (x == y || (!ordered && x > y)) continue;
      for (const auto& s : g.generators()) {
        std::size_t a = find(key(x, y)), b = find(key(s[x], s[y]));
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
  std::map<std::size_t, std::vector<PointPair>> classes;
  for (Point x = 0; x < n; ++x)
    for (Point y = 0; y < n; ++y) {
      if (x == y || (!ordered && x > y)) continue;
      classes[find(key(x, y))].emplace_back(x, y);
    }
  std::vector<std::vector<PointPair>> out;
  for (auto& [root, pairs] : classes) out.push_back(std::move(pairs));
  return out;
}

}  // namespace permsym
