#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "permsym/catalog.hpp"
#include "permsym/group.hpp"
#include "permsym/sums.hpp"

namespace testsupport {

using namespace permsym;

inline Permutation perm(const std::string& text, std::size_t degree) {
  return parse_cycles(text, degree);
}

inline PermGroup group(std::size_t degree, const std::vector<std::string>& gens) {
  std::vector<Permutation> perms;
  for (const auto& g : gens) perms.push_back(parse_cycles(g, degree));
  return PermGroup(degree, std::move(perms));
}

inline Permutation random_perm(std::size_t n, std::mt19937_64& rng) {
  std::vector<Point> images(n);
  std::iota(images.begin(), images.end(), Point{0});
  std::shuffle(images.begin(), images.end(), rng);
  return Permutation::from_images(std::move(images));
}

/// A random permutation preserving each block of `blocks`.
inline Permutation random_block_perm(const std::vector<PointSet>& blocks, std::size_t n,
                                     std::mt19937_64& rng) {
  std::vector<Point> images(n);
  for (const auto& b : blocks) {
    PointSet shuffled = b;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    for (std::size_t i = 0; i < b.size(); ++i) images[b[i]] = shuffled[i];
  }
  return Permutation::from_images(std::move(images));
}

/// 2 or 3 random generators preserving a random split of {0..7} into two or three blocks;
/// the generated group has at least two orbits.
inline PermGroup random_intransitive_s8(std::mt19937_64& rng) {
  constexpr std::size_t n = 8;
  std::vector<Point> pts(n);
  std::iota(pts.begin(), pts.end(), Point{0});
  std::shuffle(pts.begin(), pts.end(), rng);
  std::size_t parts = std::uniform_int_distribution<std::size_t>(2, 3)(rng);
  std::vector<PointSet> blocks(parts);
  for (std::size_t i = 0; i < n; ++i) blocks[i < parts ? i : rng() % parts].push_back(pts[i]);
  for (auto& b : blocks) std::sort(b.begin(), b.end());
  std::size_t count = std::uniform_int_distribution<std::size_t>(2, 3)(rng);
  std::vector<Permutation> gens;
  for (std::size_t i = 0; i < count; ++i) gens.push_back(random_block_perm(blocks, n, rng));
  return PermGroup(n, std::move(gens));
}

/// A random H ||phi K with H a 2-generator subgroup of S_m (m <= 8) and phi = conjugation by a
/// random element of H followed by a random relabelling, or A6 with its outer automorphism.
inline IsoSpec random_parallel_pair(std::mt19937_64& rng) {
  if (rng() % 5 == 0) {
    PermGroup a6 = build_named("A6");
    Permutation c = random_perm(6, rng);
    std::vector<std::pair<Permutation, Permutation>> pairs = {
        {perm("(2,3)(4,5)", 6), c.inverse() * perm("(2,5)(3,4)", 6) * c},
        {perm("(1,2,3,4)(5,6)", 6), c.inverse() * perm("(1,2,3,4)(5,6)", 6) * c}};
    std::vector<Permutation> targets = {pairs[0].second, pairs[1].second};
    return IsoSpec{a6, PermGroup(6, targets), pairs};
  }
  std::size_t m = std::uniform_int_distribution<std::size_t>(3, 8)(rng);
  PermGroup h(m, {random_perm(m, rng), random_perm(m, rng)});
  auto elements = enumerate_elements(h);
  const Permutation& inner = elements[rng() % elements.size()];
  Permutation c = random_perm(m, rng);
  IsoSpec iso{h, h, {}};
  std::vector<Permutation> images;
  for (const auto& g : h.generators()) {
    Permutation image = c.inverse() * inner.inverse() * g * inner * c;
    iso.image_pairs.emplace_back(g, image);
    images.push_back(image);
  }
  iso.target = PermGroup(m, images);
  return iso;
}

/// Catalog groups and a few standard ones, each named.
inline std::vector<std::pair<std::string, PermGroup>> suite_groups() {
  std::vector<std::pair<std::string, PermGroup>> out;
  for (const auto& id : catalog_ids()) out.emplace_back(id, build_named(id));
  for (const char* name : {"A3", "A4", "S4", "A5", "S5", "A6", "S6", "A7", "C7", "S3^(2)",
                           "A5^(2)", "A6^(2)", "A4^(3)"})
    out.emplace_back(name, build_named(name));
  return out;
}

inline PointSet random_subset(std::size_t n, std::mt19937_64& rng) {
  PointSet s;
  for (Point x = 0; x < n; ++x)
    if (rng() & 1) s.push_back(x);
  return s;
}

}  // namespace testsupport
