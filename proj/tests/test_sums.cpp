#include <map>

#include "doctest.h"
#include "permsym/error.hpp"
#include "support.hpp"

using namespace permsym;
using testsupport::group;
using testsupport::perm;

namespace {

IsoSpec a6_psi() {
  PermGroup a6 = build_named("A6");
  std::vector<std::pair<Permutation, Permutation>> pairs = {
      {perm("(2,3)(4,5)", 6), perm("(2,5)(3,4)", 6)},
      {perm("(1,2,3,4)(5,6)", 6), perm("(1,2,3,4)(5,6)", 6)}};
  return IsoSpec{a6, a6, pairs};
}

IsoSpec identity_iso(const PermGroup& g) {
  IsoSpec iso{g, g, {}};
  for (const auto& x : g.generators()) iso.image_pairs.emplace_back(x, x);
  return iso;
}

std::multiset<std::size_t> orbit_sizes(const PermGroup& g) {
  std::multiset<std::size_t> out;
  for (const auto& o : orbits(g)) out.insert(o.size());
  return out;
}

PointSet range(Point from, Point to) {
  PointSet s;
  for (Point x = from; x < to; ++x) s.push_back(x);
  return s;
}

}  // namespace

TEST_CASE("direct_sum") {
  PermGroup c2 = group(2, {"(1,2)"});
  CHECK(direct_sum(c2, c2).order() == 4);
  PermGroup s6 = build_named("S6");
  PermGroup ss = direct_sum(s6, s6);
  CHECK(ss.degree() == 12);
  CHECK(ss.order() == 720 * 720);
  CHECK(fixed_points(direct_sum(build_named("A5"), PermGroup::trivial(2))) == PointSet{5, 6});
}

TEST_CASE("parallel_sum") {
  PermGroup psi = parallel_sum(a6_psi());
  CHECK(psi.order() == 360);
  CHECK(orbits(psi).size() == 2);

  PermGroup pair = build_named("L2(5)||A5");
  CHECK(pair.order() == 60);
  CHECK(pair.degree() == 11);

  PermGroup a5 = build_named("A5");
  CHECK(same_group(parallel_sum(identity_iso(a5)), parallel_multiple(a5, 2)));

  IsoSpec bad = a6_psi();
  bad.image_pairs[0].second = perm("(1,2)(3,4)(5,6)", 6);
  CHECK_THROWS_AS(parallel_sum(bad), Error);
}

TEST_CASE("subdirect_sum") {
  PermGroup s3 = build_named("S3");
  PermGroup a3 = build_named("A3");
  SubdirectSpec whole{s3, s3, s3, s3, {}};
  CHECK(same_group(subdirect_sum(whole), direct_sum(s3, s3)));

  PermGroup a5 = build_named("A5");
  SubdirectSpec trivial{a5, PermGroup::trivial(5), a5, PermGroup::trivial(5), {}};
  for (const auto& g : a5.generators()) trivial.quotient_pairs.emplace_back(g, g);
  CHECK(same_group(subdirect_sum(trivial), parallel_multiple(a5, 2)));

  SubdirectSpec s3a3{s3, a3, s3, a3, {{perm("(1,2)", 3), perm("(1,2)", 3)}}};
  CHECK(subdirect_sum(s3a3).order() == 18);

  SubdirectSpec broken{s3, a3, s3, PermGroup::trivial(3), {{perm("(1,2)", 3), perm("(1,2)", 3)}}};
  CHECK_THROWS_AS(subdirect_sum(broken), Error);
}

TEST_CASE("parallel_multiple") {
  PermGroup c3 = group(3, {"(1,2,3)"});
  PermGroup c33 = parallel_multiple(c3, 3);
  CHECK(same_group(c33, group(9, {"(1,2,3)(4,5,6)(7,8,9)"})));
  CHECK(same_group(parallel_multiple(c3, 1), c3));
  CHECK(parallel_multiple(build_named("A5"), 4).order() == 60);
}

TEST_CASE("decompose") {
  PermGroup psi = parallel_sum(a6_psi());
  Decomposition d = decompose(psi, range(0, 6), range(6, 12));
  CHECK(d.h1.is_trivial());
  CHECK(d.h2.is_trivial());
  CHECK(d.g1.order() == 360);
  CHECK(d.g2.order() == 360);

  PermGroup s3c2 = direct_sum(build_named("S3"), group(2, {"(1,2)"}));
  Decomposition e = decompose(s3c2, range(0, 3), range(3, 5));
  CHECK(same_group(e.h1, e.g1));
  CHECK(same_group(e.h2, e.g2));
  CHECK(e.g1.order() == 6);

  PermGroup c2c2 = group(4, {"(1,2)(3,4)"});
  Decomposition f = decompose(c2c2, range(0, 2), range(2, 4));
  CHECK(f.h1.is_trivial());
  CHECK(f.h2.is_trivial());
  CHECK(same_group(reconstruct(f), c2c2));

  CHECK_THROWS_AS(decompose(c2c2, {0, 2}, {1, 3}), Error);
}

TEST_CASE("strip_fixed_points") {
  StrippedGroup s = strip_fixed_points(group(5, {"(1,2)"}));
  CHECK(s.group.degree() == 2);
  CHECK(s.stripped == 3);
  CHECK(s.group.order() == 2);
  PermGroup a5 = build_named("A5");
  StrippedGroup t = strip_fixed_points(a5);
  CHECK(t.stripped == 0);
  CHECK(same_group(t.group, a5));
  CHECK(strip_fixed_points(PermGroup::trivial(3)).group.degree() == 0);
  PermGroup padded = direct_sum(build_named("L2(7)"), PermGroup::trivial(4));
  CHECK(strip_fixed_points(padded).group.order() == padded.order());
}

TEST_CASE("validate_isomorphism") {
  CHECK(validate_isomorphism(a6_psi()));
  PermGroup c6 = group(6, {"(1,2,3,4,5,6)"});
  Permutation g = perm("(1,2,3,4,5,6)", 6);
  PermGroup c2(6, {g * g * g});
  PermGroup c3(6, {g * g});
  CHECK_FALSE(validate_isomorphism(IsoSpec{c2, c3, {{g * g * g, g * g}}}));
  for (const char* name : {"A5", "L3(2)", "M11", "S4"})
    CHECK(validate_isomorphism(identity_iso(build_named(name))));
}

TEST_CASE("is_permutation_automorphism") {
  PermGroup a6 = build_named("A6");
  Permutation c = perm("(1,3,5)(2,4,6)", 6);
  IsoSpec inner{a6, a6, {}};
  for (const auto& g : a6.generators()) inner.image_pairs.emplace_back(g, c.inverse() * g * c);
  CHECK(is_permutation_automorphism(a6, inner));
  CHECK_FALSE(is_permutation_automorphism(a6, a6_psi()));

  const CatalogEntry& l32 = catalog_entry("L3(2)||psi");
  PermGroup base = catalog_entry(l32.base).group;
  CHECK_FALSE(is_permutation_automorphism(base, IsoSpec{base, base, l32.psi}));
}

TEST_CASE("property: construction orders") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 20; ++i) {
    IsoSpec iso = testsupport::random_parallel_pair(rng);
    PermGroup sum = parallel_sum(iso);
    REQUIRE(sum.order() == iso.source.order());
    std::size_t n = iso.source.degree();
    REQUIRE(pointwise_stabilizer(sum, range(0, n)).is_trivial());
    REQUIRE(pointwise_stabilizer(sum, range(n, sum.degree())).is_trivial());
    REQUIRE(direct_sum(iso.source, iso.target).order() == iso.source.order() * iso.target.order());
  }
}

TEST_CASE("property: decomposition round-trip on intransitive subgroups of S8") {
  std::mt19937_64 rng(22);
  for (int i = 0; i < 50; ++i) {
    PermGroup g = testsupport::random_intransitive_s8(rng);
    auto parts = orbits(g);
    REQUIRE(parts.size() >= 2);
    PointSet x1 = parts[0];
    PointSet x2 = complement(x1, g.degree());
    Decomposition d = decompose(g, x1, x2);
    PermGroup back = reconstruct(d);
    REQUIRE(back.order() == d.g1.order() * d.h2.order());
    REQUIRE(same_group(back, g));
  }
}

TEST_CASE("property: intransitive arrangements of simple catalog groups have trivial kernels") {
  std::vector<std::string> names;
  for (const CatalogEntry* e : list_L()) {
    if (e->group.order() > 1'000'000) continue;
    names.push_back(e->id + "^(2)");
    names.push_back(e->id + "^(3)");
  }
  for (const char* n : {"A5^(2)", "A6^(2)", "A7^(3)"}) names.push_back(n);
  for (const auto& id : catalog_ids()) {
    const CatalogEntry& e = catalog_entry(id);
    if (e.kind != EntryKind::primitive) names.push_back(id);
  }
  for (const auto& name : names) {
    CAPTURE(name);
    PermGroup g = build_named(name);
    REQUIRE(fixed_points(g).empty());
    auto parts = orbits(g);
    REQUIRE(parts.size() >= 2);
    for (const auto& block : parts) {
      Decomposition d = decompose(g, block, complement(block, g.degree()));
      CHECK(d.h1.is_trivial());
      CHECK(d.h2.is_trivial());
    }
  }
}

TEST_CASE("property: parallel sums commute up to relabelling") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 20; ++i) {
    IsoSpec iso = testsupport::random_parallel_pair(rng);
    IsoSpec back{iso.target, iso.source, {}};
    for (const auto& [a, b] : iso.image_pairs) back.image_pairs.emplace_back(b, a);
    PermGroup hk = parallel_sum(iso);
    PermGroup kh = parallel_sum(back);
    REQUIRE(hk.order() == kh.order());
    REQUIRE(orbit_sizes(hk) == orbit_sizes(kh));
  }
}

TEST_CASE("find_conjugator") {
  Permutation a = perm("(1,2,3)", 4), b = perm("(2,3,4)", 4);
  auto c = find_conjugator({{a, b}});
  REQUIRE(c.has_value());
  CHECK(c->inverse() * a * *c == b);
  CHECK_FALSE(find_conjugator({{perm("(1,2)", 4), perm("(1,2)(3,4)", 4)}}).has_value());
}
