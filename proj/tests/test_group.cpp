#include <set>
#include <thread>

#include "doctest.h"
#include "permsym/error.hpp"
#include "support.hpp"

using namespace permsym;
using testsupport::group;
using testsupport::perm;

namespace {

PointSet pts(std::initializer_list<Point> one_based) {
  PointSet s;
  for (Point x : one_based) s.push_back(x - 1);
  return s;
}

PermGroup filter_setwise(const PermGroup& g, const PointSet& s) {
  std::vector<bool> in(g.degree(), false);
  for (Point x : s) in[x] = true;
  std::vector<Permutation> kept;
  for_each_element(g, default_enumeration_budget, [&](const Permutation& p) {
    for (Point x : s)
      if (!in[p[x]]) return;
    kept.push_back(p);
  });
  return PermGroup(g.degree(), kept);
}

}  // namespace

TEST_CASE("build_chain") {
  PermGroup a5 = group(5, {"(1,2,3,4,5)", "(1,2,3)"});
  CHECK(a5.order() == 60);
  CHECK(enumerate_elements(a5).size() == 60);

  PermGroup trivial = PermGroup::trivial(4);
  CHECK(trivial.chain().base().empty());
  CHECK(trivial.order() == 1);

  PermGroup c2 = group(3, {"(1,2)"});
  CHECK(c2.chain().base() == std::vector<Point>{0});
  CHECK(c2.order() == 2);

  std::vector<Point> preferred = {4, 2};
  StabilizerChain chain = build_chain(a5, preferred);
  REQUIRE(chain.base().size() >= 2);
  CHECK(chain.base()[0] == 4);
  CHECK(chain.base()[1] == 2);
  CHECK(chain.order() == 60);
}

TEST_CASE("order of printed generators") {
  CHECK(group(6, {"(1,2,5)(3,4,6)", "(1,6)(2,5)"}).order() == 60);
  CHECK(build_named("M11").order() == 7920);
  CHECK(PermGroup::trivial(7).order() == 1);
  CHECK(build_named("S48").order() > Natural(1) << 200);
}

TEST_CASE("contains") {
  PermGroup a4 = build_named("A4");
  CHECK(a4.contains(perm("(1,2)(3,4)", 4)));
  CHECK_FALSE(a4.contains(perm("(1,2)", 4)));
  CHECK(a4.contains(Permutation(4)));
  CHECK_THROWS_AS(a4.contains(Permutation(5)), Error);
}

TEST_CASE("orbits and fixed points") {
  auto l25_2 = orbits(build_named("L2(5)^(2)"));
  CHECK(l25_2 == std::vector<PointSet>{pts({1, 2, 3, 4, 5, 6}), pts({7, 8, 9, 10, 11, 12})});
  CHECK(orbits(PermGroup::trivial(3)) == std::vector<PointSet>{{0}, {1}, {2}});
  auto psi = orbits(build_named("A6||psi"));
  REQUIRE(psi.size() == 2);
  CHECK(psi[0].size() == 6);
  CHECK(psi[1].size() == 6);

  CHECK(fixed_points(group(4, {"(1,2)"})) == pts({3, 4}));
  CHECK(fixed_points(build_named("A5")).empty());
  PermGroup padded = direct_sum(build_named("A5"), PermGroup::trivial(3));
  CHECK(fixed_points(padded) == pts({6, 7, 8}));
}

TEST_CASE("pointwise stabilizer") {
  PermGroup sum = build_named("L2(5)||A5");
  CHECK(pointwise_stabilizer(sum, pts({1, 2, 3, 4, 5, 6})).is_trivial());
  PermGroup a5 = build_named("A5");
  CHECK(same_group(pointwise_stabilizer(a5, {}), a5));
  PermGroup s1 = pointwise_stabilizer(build_named("S3"), pts({1}));
  CHECK(s1.order() == 2);
  CHECK(s1.contains(perm("(2,3)", 3)));
}

TEST_CASE("setwise stabilizer") {
  PermGroup m11 = build_named("M11^(2)");
  CHECK(setwise_stabilizer(m11, pts({1, 2, 3, 12, 16, 18})).is_trivial());
  PermGroup a6 = build_named("A6");
  PointSet all(6);
  std::iota(all.begin(), all.end(), Point{0});
  CHECK(same_group(setwise_stabilizer(a6, all), a6));
  CHECK(setwise_stabilizer(build_named("S3"), pts({1, 2})).order() == 2);
}

TEST_CASE("setwise stabilizer on the largest catalog group") {
  const CatalogEntry& m24 = catalog_entry("M24");
  PermGroup doubled = parallel_multiple(m24.group, 2);
  REQUIRE(m24.claimed_regular_set.has_value());
  CHECK(setwise_stabilizer(doubled, *m24.claimed_regular_set).is_trivial());
  CHECK(setwise_stabilizer(m24.group, pts({1, 2, 3, 4, 5, 6, 7, 8})).order() > 1);
}

TEST_CASE("enumerate_elements") {
  CHECK(enumerate_elements(build_named("A4")).size() == 12);
  CHECK(enumerate_elements(PermGroup::trivial(3)).size() == 1);
  auto l32 = enumerate_elements(build_named("L3(2)"));
  CHECK(l32.size() == 168);
  CHECK(std::set<Permutation>(l32.begin(), l32.end()).size() == 168);
  try {
    enumerate_elements(build_named("M24"));
    FAIL("expected budget_exceeded");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::budget_exceeded);
  }
  CHECK_THROWS_AS(enumerate_elements(build_named("A5"), 59), Error);
}

TEST_CASE("transitivity and primitivity") {
  PermGroup c4 = group(4, {"(1,2,3,4)"});
  CHECK(is_transitive(c4));
  CHECK_FALSE(is_primitive(c4));
  CHECK(minimal_block(c4, 0, 2) == pts({1, 3}));
  CHECK(is_primitive(build_named("A5")));
  CHECK_FALSE(is_transitive(build_named("L2(5)^(2)")));
  CHECK_THROWS_AS(is_primitive(build_named("L2(5)^(2)")), Error);
  for (const CatalogEntry* e : list_L()) CHECK(is_primitive(e->group));
}

TEST_CASE("property: chain invariants") {
  for (const auto& [name, g] : testsupport::suite_groups()) {
    CAPTURE(name);
    const StabilizerChain& chain = g.chain();
    Natural product = 1;
    std::vector<Point> base = chain.base();
    for (std::size_t i = 0; i < chain.levels().size(); ++i) {
      const ChainLevel& level = chain.levels()[i];
      product *= level.orbit.size();
      for (const auto& s : level.generators)
        for (std::size_t j = 0; j < i; ++j) CHECK(s[base[j]] == base[j]);
    }
    CHECK(product == g.order());
    for (const auto& gen : g.generators()) CHECK(chain.contains(gen));
    Natural factorial = 1;
    for (std::size_t i = 2; i <= g.degree(); ++i) factorial *= i;
    CHECK(factorial % g.order() == 0);
  }
}

TEST_CASE("property: orbit-stabilizer") {
  for (const auto& [name, g] : testsupport::suite_groups()) {
    if (g.order() > 1'000'000) continue;
    CAPTURE(name);
    for (Point x = 0; x < g.degree(); ++x)
      CHECK(Natural(orbit(g, x).size()) * pointwise_stabilizer(g, {x}).order() == g.order());
  }
}

TEST_CASE("property: setwise stabilizer matches the enumeration oracle") {
  std::mt19937_64 rng(11);
  for (const auto& [name, g] : testsupport::suite_groups()) {
    if (g.order() > 100'000) continue;
    CAPTURE(name);
    for (int i = 0; i < 100; ++i) {
      PointSet s = testsupport::random_subset(g.degree(), rng);
      PermGroup fast = setwise_stabilizer(g, s);
      PermGroup slow = filter_setwise(g, s);
      REQUIRE(same_group(fast, slow));
      REQUIRE(is_subgroup(pointwise_stabilizer(g, s), fast));
    }
  }
}

TEST_CASE("property: membership") {
  std::mt19937_64 rng(12);
  for (const auto& [name, g] : testsupport::suite_groups()) {
    CAPTURE(name);
    const auto& gens = g.generators();
    if (gens.empty()) continue;
    for (int i = 0; i < 20; ++i) {
      Permutation p(g.degree());
      std::size_t len = 1 + rng() % 5;
      for (std::size_t j = 0; j < len; ++j) p = p * gens[rng() % gens.size()];
      REQUIRE(g.contains(p));
    }
  }
  for (std::size_t n : {4, 5, 6, 7, 9}) {
    PermGroup an = build_named("A" + std::to_string(n));
    for (int i = 0; i < 50; ++i) {
      Permutation p = testsupport::random_perm(n, rng);
      if (p.parity() == Parity::odd) REQUIRE_FALSE(an.contains(p));
    }
  }
}

TEST_CASE("concurrent readers build the chain once") {
  PermGroup g = build_named("M12");
  PermGroup shared(g.degree(), g.generators());
  std::vector<std::thread> threads;
  std::vector<Natural> orders(8);
  for (std::size_t i = 0; i < orders.size(); ++i)
    threads.emplace_back([&, i] { orders[i] = shared.order(); });
  for (auto& t : threads) t.join();
  for (const auto& o : orders) CHECK(o == 95040);
  CHECK(&shared.chain() == &PermGroup(shared).chain());
}

TEST_CASE("restriction and derived subgroup") {
  PermGroup sum = build_named("L2(5)||A5");
  auto parts = orbits(sum);
  REQUIRE(parts.size() == 2);
  CHECK(restrict_to(sum, parts[1]).order() == 60);
  CHECK(derived_subgroup(build_named("S5")).order() == 60);
  CHECK(derived_subgroup(build_named("A5")).order() == 60);
  CHECK(derived_subgroup(build_named("S4")).order() == 12);
}
