#include <map>
#include <set>

#include "doctest.h"
#include "permsym/error.hpp"
#include "permsym/symmetry.hpp"
#include "support.hpp"

using namespace permsym;
using testsupport::group;
using testsupport::perm;

namespace {

Labeling labels(std::initializer_list<std::uint32_t> values, std::uint32_t k) {
  return Labeling{std::vector<std::uint32_t>(values), k};
}

PermGroup filter_partition(const PermGroup& g, const Labeling& l) {
  std::vector<Permutation> kept;
  for_each_element(g, default_enumeration_budget, [&](const Permutation& p) {
    for (Point x = 0; x < g.degree(); ++x)
      if (l.labels[p[x]] != l.labels[x]) return;
    kept.push_back(p);
  });
  return PermGroup(g.degree(), kept);
}

std::uint32_t exact_d(const PermGroup& g, std::uint32_t k_max = 8) {
  DistinguishingResult r = distinguishing_number(g, k_max);
  REQUIRE(r.outcome == DOutcome::exact);
  return r.value;
}

}  // namespace

TEST_CASE("Labeling validation") {
  CHECK_NOTHROW(labels({1, 2, 2}, 2).validate());
  CHECK_THROWS_AS(labels({1, 3}, 2).validate(), Error);
  CHECK_THROWS_AS(labels({0, 1}, 2).validate(), Error);
  CHECK(labels({1, 2, 1}, 2).classes() == std::vector<PointSet>{{0, 2}, {1}});
}

TEST_CASE("partition_stabilizer") {
  PermGroup a5 = build_named("A5");
  CHECK(same_group(partition_stabilizer(a5, labels({1, 1, 1, 1, 1}, 1)), a5));
  CHECK(partition_stabilizer(a5, labels({1, 2, 3, 4, 5}, 5)).is_trivial());
  const CatalogEntry& m11 = catalog_entry("M11");
  PermGroup doubled = parallel_multiple(m11.group, 2);
  Labeling split = labeling_from_set(*m11.claimed_regular_set, doubled.degree());
  CHECK(partition_stabilizer(doubled, split).is_trivial());
  CHECK_THROWS_AS(partition_stabilizer(a5, labels({1, 2}, 2)), Error);
}

TEST_CASE("is_distinguishing") {
  CHECK(is_distinguishing(PermGroup::trivial(3), labels({1, 1, 1}, 1)));
  CHECK_FALSE(is_distinguishing(group(2, {"(1,2)"}), labels({1, 1}, 1)));
  CHECK(is_distinguishing(build_named("A5"), labels({1, 2, 3, 4, 4}, 4)));
  CHECK_FALSE(is_distinguishing(build_named("S5"), labels({1, 2, 3, 4, 4}, 4)));
}

TEST_CASE("find_regular_set") {
  PermGroup l25 = build_named("L2(5)^(2)");
  RegularSetResult r = find_regular_set(l25, {.min_size = 6, .max_size = 6});
  REQUIRE(r.outcome == SearchOutcome::found);
  CHECK(r.report->set.size() == 6);
  CHECK(r.report->regular());
  CHECK(regular_set_report(l25, {0, 1, 2, 7, 9, 11}).regular());

  RegularSetResult none = find_regular_set(build_named("A5"));
  CHECK(none.outcome == SearchOutcome::none);
  CHECK_FALSE(none.report.has_value());

  RegularSetResult empty = find_regular_set(PermGroup::trivial(3), {.min_size = 0, .max_size = 0});
  REQUIRE(empty.outcome == SearchOutcome::found);
  CHECK(empty.report->set.empty());

  RegularSetResult capped = find_regular_set(build_named("A6||psi"), {.budget = 10});
  CHECK(capped.outcome == SearchOutcome::inconclusive);
  CHECK(capped.candidates <= 10);

  RegularSetResult randomized =
      find_regular_set(build_named("L2(7)^(2)"), {.mode = SearchMode::randomized, .seed = 5});
  REQUIRE(randomized.outcome == SearchOutcome::found);
  CHECK(randomized.seed == 5);
  CHECK(regular_set_report(build_named("L2(7)^(2)"), randomized.report->set).regular());
}

TEST_CASE("regular_set_report witness") {
  RegularSetReport r = regular_set_report(build_named("S3"), {0, 1});
  CHECK(r.stabilizer_order == 2);
  REQUIRE(r.witness.has_value());
  CHECK(*r.witness == perm("(1,2)", 3));
  CHECK_FALSE(regular_set_report(group(3, {"(1,2,3)"}), {0}).witness.has_value());
}

TEST_CASE("distinguishing_number") {
  CHECK(exact_d(build_named("A5")) == 4);
  CHECK(exact_d(PermGroup::trivial(4)) == 1);
  CHECK(exact_d(group(3, {"(1,2,3)"})) == 2);
  CHECK(exact_d(build_named("A6||psi")) == 3);
  CHECK(exact_d(build_named("S5")) == 5);

  DistinguishingResult capped = distinguishing_number(build_named("S6"), 3);
  CHECK(capped.outcome == DOutcome::exceeds);
  CHECK(capped.value == 3);
  DistinguishingResult r = distinguishing_number(build_named("L3(2)"), 5);
  REQUIRE(r.witness.has_value());
  CHECK(is_distinguishing(build_named("L3(2)"), *r.witness));
}

TEST_CASE("an_parallel_formula") {
  CHECK(an_parallel_formula(5, 1) == 4);
  CHECK(an_parallel_formula(6, 2) == 3);
  CHECK(an_parallel_formula(9, 3) == 2);
  CHECK(an_parallel_formula(3, 1) == 2);
  CHECK(an_parallel_formula(1'000'000, 2) == 1000);
}

TEST_CASE("orbitals") {
  CHECK(orbitals(build_named("A6||psi"), false).size() == 3);
  CHECK(orbitals(build_named("A6^(2)"), false).size() == 4);
  for (const char* name : {"A5", "S6", "M11", "L2(8)"})
    CHECK(orbitals(build_named(name), true).size() == 1);
}

TEST_CASE("property: D<=2 iff a regular set exists") {
  for (const auto& [name, g] : testsupport::suite_groups()) {
    if (g.is_trivial() || g.degree() > 13 || g.order() > 10'000'000) continue;
    CAPTURE(name);
    RegularSetResult r = find_regular_set(g);
    REQUIRE(r.outcome != SearchOutcome::inconclusive);
    DistinguishingResult d = distinguishing_number(g, 2);
    REQUIRE(d.outcome != DOutcome::inconclusive);
    CHECK((d.outcome == DOutcome::exact && d.value == 2) == (r.outcome == SearchOutcome::found));
  }
}

TEST_CASE("property: a parallel sum is no harder to distinguish than its parts") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 30; ++i) {
    IsoSpec iso = testsupport::random_parallel_pair(rng);
    std::uint32_t dh = exact_d(iso.source, 9);
    std::uint32_t dk = exact_d(iso.target, 9);
    std::uint32_t dsum = exact_d(parallel_sum(iso), 9);
    CAPTURE(render_cycles(iso.source.generators()[0]));
    REQUIRE(dsum <= std::min(dh, dk));
  }
}

TEST_CASE("property: A_n^(k) distinguishing numbers match the formula") {
  for (std::uint64_t n = 3; n <= 7; ++n)
    for (std::uint64_t k = 1; k <= 3; ++k) {
      CAPTURE(n);
      CAPTURE(k);
      PermGroup g = parallel_multiple(build_named("A" + std::to_string(n)), k);
      CHECK(exact_d(g) == an_parallel_formula(n, k));
    }
}

TEST_CASE("property: distinguishing labelings pad to larger k") {
  for (const char* name : {"A5", "L3(2)", "A6||psi", "S4", "L2(5)||A5"}) {
    CAPTURE(name);
    PermGroup g = build_named(name);
    DistinguishingResult d = distinguishing_number(g, 8);
    REQUIRE(d.witness.has_value());
    for (std::uint32_t k = d.value + 1; k <= d.value + 3; ++k) {
      Labeling padded = *d.witness;
      padded.k = k;
      std::uint32_t next = d.value + 1;
      for (Point x = 0; x < g.degree() && next <= k; ++x) {
        std::size_t same = std::count(padded.labels.begin(), padded.labels.end(), padded.labels[x]);
        if (same > 1) padded.labels[x] = next++;
      }
      REQUIRE(is_distinguishing(g, padded));
      LabelingResult found = find_distinguishing_labeling(g, {.k = k});
      REQUIRE(found.outcome == SearchOutcome::found);
    }
  }
}

TEST_CASE("property: orbital sanity") {
  for (const auto& [name, g] : testsupport::suite_groups()) {
    if (g.degree() > 24) continue;
    CAPTURE(name);
    std::size_t n = g.degree();
    for (bool ordered : {true, false}) {
      auto classes = orbitals(g, ordered);
      std::set<PointPair> seen;
      std::map<PointPair, std::size_t> owner;
      for (std::size_t c = 0; c < classes.size(); ++c)
        for (const auto& pr : classes[c]) {
          REQUIRE(seen.insert(pr).second);
          owner[pr] = c;
        }
      REQUIRE(seen.size() == (ordered ? n * (n - 1) : n * (n - 1) / 2));
      for (const auto& gen : g.generators())
        for (const auto& [pr, c] : owner) {
          PointPair image{gen[pr.first], gen[pr.second]};
          if (!ordered && image.first > image.second) std::swap(image.first, image.second);
          REQUIRE(owner.at(image) == c);
        }
    }
    CHECK(orbitals(g, false).size() <= orbitals(g, true).size());
  }
}

TEST_CASE("property: partition stabilizer matches the enumeration oracle") {
  std::mt19937_64 rng(32);
  for (const auto& [name, g] : testsupport::suite_groups()) {
    if (g.order() > 100'000) continue;
    CAPTURE(name);
    for (int i = 0; i < 30; ++i) {
      std::uint32_t k = 2 + rng() % 3;
      Labeling l{std::vector<std::uint32_t>(g.degree()), k};
      for (auto& v : l.labels) v = 1 + rng() % k;
      REQUIRE(same_group(partition_stabilizer(g, l), filter_partition(g, l)));
    }
  }
}

TEST_CASE("labeling search honours exactly_k and budgets") {
  PermGroup l32 = build_named("L3(2)");
  LabelingResult none = find_distinguishing_labeling(l32, {.k = 3, .exactly_k = true});
  CHECK(none.outcome == SearchOutcome::none);
  LabelingResult four = find_distinguishing_labeling(l32, {.k = 4, .exactly_k = true});
  REQUIRE(four.outcome == SearchOutcome::found);
  std::set<std::uint32_t> used(four.labeling->labels.begin(), four.labeling->labels.end());
  CHECK(used.size() == 4);
  LabelingResult capped = find_distinguishing_labeling(build_named("M12"), {.k = 3, .budget = 5});
  CHECK(capped.outcome == SearchOutcome::inconclusive);
  LabelingResult timed =
      find_distinguishing_labeling(build_named("M12"), {.k = 3, .exactly_k = true, .time_limit = 0.05});
  CHECK(timed.outcome == SearchOutcome::inconclusive);
}
