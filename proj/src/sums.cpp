#include "permsym/sums.hpp"

#include <algorithm>
#include <numeric>

#include "permsym/error.hpp"

namespace permsym {

namespace {

PointSet range_points(Point begin, Point end) {
  PointSet out(end - begin);
  std::iota(out.begin(), out.end(), begin);
  return out;
}

Permutation pair_perm(const Permutation& a, const Permutation& b) {
  std::vector<Point> images(a.degree() + b.degree());
  for (Point x = 0; x < a.degree(); ++x) images[x] = a[x];
  auto n = static_cast<Point>(a.degree());
  for (Point x = 0; x < b.degree(); ++x) images[n + x] = b[x] + n;
  return Permutation::from_images(std::move(images));
}

bool normal_in(const PermGroup& h, const PermGroup& g) {
  for (const auto& k : h.generators())
    for (const auto& s : g.generators())
      if (!h.contains(s.inverse() * k * s)) return false;
  return true;
}

/// Orders of the pointwise stabilizers of the second and first blocks (kernels on X1, X2).
std::pair<Natural, Natural> kernel_orders(const PermGroup& k, std::size_t n1) {
  auto n = static_cast<Point>(k.degree());
  auto split = static_cast<Point>(n1);
  return {pointwise_stabilizer(k, range_points(split, n)).order(),
          pointwise_stabilizer(k, range_points(0, split)).order()};
}

}  // namespace

PermGroup direct_sum(const PermGroup& g, const PermGroup& h) {
  const std::size_t n = g.degree() + h.degree();
  std::vector<Permutation> gens;
  for (const auto& s : g.generators()) gens.push_back(s.embed(n));
  for (const auto& s : h.generators()) gens.push_back(s.embed(n, static_cast<Point>(g.degree())));
  return PermGroup(n, std::move(gens));
}

PermGroup parallel_multiple(const PermGroup& g, std::size_t r) {
  if (r == 0) throw Error(Errc::invalid_argument, "parallel multiple needs r >= 1");
  const std::size_t n = g.degree();
  std::vector<Permutation> gens;
  for (const auto& s : g.generators()) {
    std::vector<Point> images(n * r);
    for (std::size_t c = 0; c < r; ++c)
      for (Point x = 0; x < n; ++x)
        images[c * n + x] = s[x] + static_cast<Point>(c * n);
    gens.push_back(Permutation::from_images(std::move(images)));
  }
  return PermGroup(n * r, std::move(gens));
}

namespace {

void check_pair_degrees(const IsoSpec& iso) {
  for (const auto& [a, b] : iso.image_pairs)
    if (a.degree() != iso.source.degree() || b.degree() != iso.target.degree())
      throw Error(Errc::degree_mismatch, "isomorphism pair does not match the group degrees");
}

PermGroup pairing_group(const IsoSpec& iso) {
  std::vector<Permutation> gens;
  for (const auto& [a, b] : iso.image_pairs) gens.push_back(pair_perm(a, b));
  return PermGroup(iso.source.degree() + iso.target.degree(), std::move(gens));
}

bool generated_equals(const std::vector<Permutation>& gens, const PermGroup& g) {
  return same_group(PermGroup(g.degree(), gens), g);
}

}  // namespace

bool validate_isomorphism(const IsoSpec& iso) {
  check_pair_degrees(iso);
  std::vector<Permutation> sources, targets;
  for (const auto& [a, b] : iso.image_pairs) {
    sources.push_back(a);
    targets.push_back(b);
  }
  if (!generated_equals(sources, iso.source) || !generated_equals(targets, iso.target))
    return false;
  PermGroup k = pairing_group(iso);
  auto [kernel1, kernel2] = kernel_orders(k, iso.source.degree());
  return kernel1 == 1 && kernel2 == 1;
}

PermGroup parallel_sum(const IsoSpec& iso) {
  if (!validate_isomorphism(iso))
    throw Error(Errc::invalid_isomorphism,
                "generator pairing does not extend to an isomorphism of the components");
  return pairing_group(iso);
}

PermGroup subdirect_sum(const SubdirectSpec& spec) {
  auto fail = [](const std::string& why) { throw Error(Errc::precondition, "subdirect sum: " + why); };
  if (spec.h1.degree() != spec.g1.degree() || spec.h2.degree() != spec.g2.degree())
    throw Error(Errc::degree_mismatch, "subdirect sum: kernel degree differs from its group");
  if (!is_subgroup(spec.h1, spec.g1) || !is_subgroup(spec.h2, spec.g2))
    fail("kernel is not a subgroup");
  if (!normal_in(spec.h1, spec.g1) || !normal_in(spec.h2, spec.g2)) fail("kernel is not normal");
  const Natural o1 = spec.g1.order(), k1 = spec.h1.order();
  const Natural o2 = spec.g2.order(), k2 = spec.h2.order();
  if (o1 / k1 != o2 / k2) fail("quotients have different orders");

  const std::size_t n1 = spec.g1.degree(), n = n1 + spec.g2.degree();
  std::vector<Permutation> gens;
  for (const auto& h : spec.h1.generators()) gens.push_back(h.embed(n));
  for (const auto& h : spec.h2.generators()) gens.push_back(h.embed(n, static_cast<Point>(n1)));
  for (const auto& [r, s] : spec.quotient_pairs) {
    if (r.degree() != n1 || s.degree() != spec.g2.degree())
      throw Error(Errc::degree_mismatch, "subdirect sum: pair degree mismatch");
    if (!spec.g1.contains(r) || !spec.g2.contains(s)) fail("pair element outside its group");
    gens.push_back(pair_perm(r, s));
  }
  PermGroup result(n, std::move(gens));
  auto [kernel1, kernel2] = kernel_orders(result, n1);
  if (kernel1 != k1 || kernel2 != k2 || result.order() != o1 * k2)
    fail("pairing is not a well-defined isomorphism of the quotients");
  return result;
}

std::vector<std::pair<Permutation, Permutation>> block_pairs(const PermGroup& g,
                                                             const PointSet& x1,
                                                             const PointSet& x2) {
  std::vector<std::pair<Permutation, Permutation>> out;
  for (const auto& s : g.generators()) out.emplace_back(restrict_perm(s, x1), restrict_perm(s, x2));
  return out;
}

Decomposition decompose(const PermGroup& g, const PointSet& x1, const PointSet& x2) {
  std::vector<int> side(g.degree(), -1);
  auto mark = [&](const PointSet& s, int v) {
    for (Point x : s) {
      if (x >= g.degree() || side[x] != -1)
        throw Error(Errc::invalid_argument, "split is not a partition of the domain");
      side[x] = v;
    }
  };
  mark(x1, 0);
  mark(x2, 1);
  if (std::find(side.begin(), side.end(), -1) != side.end())
    throw Error(Errc::invalid_argument, "split does not cover the domain");
  for (const auto& s : g.generators())
    for (Point x = 0; x < g.degree(); ++x)
      if (side[s[x]] != side[x])
        throw Error(Errc::invalid_argument, "split is not a union of orbits");

  PointSet a = x1, b = x2;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  Decomposition d;
  d.x1 = a;
  d.x2 = b;
  d.g1 = restrict_to(g, a);
  d.g2 = restrict_to(g, b);
  d.h1 = restrict_to(pointwise_stabilizer(g, b), a);
  d.h2 = restrict_to(pointwise_stabilizer(g, a), b);
  d.spec = SubdirectSpec{d.g1, d.h1, d.g2, d.h2, block_pairs(g, a, b)};
  return d;
}

PermGroup reconstruct(const Decomposition& d) {
  PermGroup flat = subdirect_sum(d.spec);
  PointSet original = d.x1;
  original.insert(original.end(), d.x2.begin(), d.x2.end());
  std::vector<Permutation> gens;
  for (const auto& s : flat.generators()) {
    std::vector<Point> images(original.size());
    for (Point k = 0; k < original.size(); ++k) images[original[k]] = original[s[k]];
    gens.push_back(Permutation::from_images(std::move(images)));
  }
  return PermGroup(original.size(), std::move(gens));
}

StrippedGroup strip_fixed_points(const PermGroup& g) {
  PointSet kept = complement(fixed_points(g), g.degree());
  return {restrict_to(g, kept), g.degree() - kept.size(), kept};
}

// ---------------------------------------------------------------------------
// Conjugator search

namespace {

std::vector<std::size_t> cycle_lengths(const Permutation& p) {
  std::vector<std::size_t> len(p.degree(), 0);
  for (Point x = 0; x < p.degree(); ++x) {
    if (len[x]) continue;
    std::vector<Point> cyc;
    Point y = x;
    do {
      cyc.push_back(y);
      y = p[y];
    } while (y != x);
    for (Point z : cyc) len[z] = cyc.size();
  }
  return len;
}

class ConjugatorSearch {
 public:
  explicit ConjugatorSearch(const std::vector<std::pair<Permutation, Permutation>>& pairs)
      : pairs_(pairs), n_(pairs.front().first.degree()), image_(n_, unset), preimage_(n_, unset) {
    for (const auto& [a, b] : pairs_) {
      source_len_.push_back(cycle_lengths(a));
      target_len_.push_back(cycle_lengths(b));
    }
    // one representative per orbit of the source, most constrained first
    std::vector<bool> seen(n_, false);
    for (Point x = 0; x < n_; ++x) {
      if (seen[x]) continue;
      std::vector<Point> orb{x};
      seen[x] = true;
      for (std::size_t k = 0; k < orb.size(); ++k)
        for (const auto& [a, b] : pairs_)
          if (!seen[a[orb[k]]]) {
            seen[a[orb[k]]] = true;
            orb.push_back(a[orb[k]]);
          }
      Point best = *std::min_element(orb.begin(), orb.end(), [&](Point p, Point q) {
        return std::make_pair(fan_key(p), p) < std::make_pair(fan_key(q), q);
      });
      reps_.push_back(best);
    }
    std::stable_sort(reps_.begin(), reps_.end(),
                     [&](Point p, Point q) { return fan_key(p) < fan_key(q); });
  }

  std::optional<Permutation> run() {
    if (!assign(0)) return std::nullopt;
    return Permutation::from_images(image_);
  }

 private:
  static constexpr Point unset = ~Point{0};

  std::size_t fan_key(Point x) const {
    std::size_t key = n_ + 1;
    for (const auto& len : source_len_) key = std::min(key, len[x]);
    return key;
  }

  bool profile_matches(Point x, Point y) const {
    for (std::size_t i = 0; i < pairs_.size(); ++i)
      if (source_len_[i][x] != target_len_[i][y]) return false;
    return true;
  }

  bool propagate(Point x, Point y, std::vector<Point>& assigned) {
    std::vector<std::pair<Point, Point>> queue{{x, y}};
    for (std::size_t k = 0; k < queue.size(); ++k) {
      auto [p, q] = queue[k];
      if (image_[p] != unset) {
        if (image_[p] != q) return false;
        continue;
      }
      if (preimage_[q] != unset || !profile_matches(p, q)) return false;
      image_[p] = q;
      preimage_[q] = p;
      assigned.push_back(p);
      for (const auto& [a, b] : pairs_) queue.emplace_back(a[p], b[q]);
    }
    return true;
  }

  void undo(const std::vector<Point>& assigned) {
    for (Point p : assigned) {
      preimage_[image_[p]] = unset;
      image_[p] = unset;
    }
  }

  bool assign(std::size_t k) {
    if (k == reps_.size()) return true;
    Point x = reps_[k];
    for (Point y = 0; y < n_; ++y) {
      if (preimage_[y] != unset || !profile_matches(x, y)) continue;
      std::vector<Point> assigned;
      if (propagate(x, y, assigned) && assign(k + 1)) return true;
      undo(assigned);
    }
    return false;
  }

  const std::vector<std::pair<Permutation, Permutation>>& pairs_;
  std::size_t n_;
  std::vector<Point> image_, preimage_;
  std::vector<std::vector<std::size_t>> source_len_, target_len_;
  std::vector<Point> reps_;
};

}  // namespace

std::optional<Permutation> find_conjugator(
    const std::vector<std::pair<Permutation, Permutation>>& pairs) {
  if (pairs.empty()) return std::nullopt;
  const std::size_t n = pairs.front().first.degree();
  for (const auto& [a, b] : pairs)
    if (a.degree() != n || b.degree() != n) return std::nullopt;
  return ConjugatorSearch(pairs).run();
}

bool is_permutation_isomorphism(const IsoSpec& iso) {
  if (iso.source.degree() != iso.target.degree()) return false;
  if (iso.image_pairs.empty()) return iso.source.is_trivial() && iso.target.is_trivial();
  return find_conjugator(iso.image_pairs).has_value();
}

bool is_permutation_automorphism(const PermGroup& g, const IsoSpec& iso) {
  if (!same_group(iso.source, g) || !same_group(iso.target, g))
    throw Error(Errc::precondition, "automorphism test needs source = target = G");
  return is_permutation_isomorphism(iso);
}

// ---------------------------------------------------------------------------
// Isomorphism search

std::optional<IsoSpec> search_isomorphism(const PermGroup& source, const PermGroup& target,
                                          const std::vector<std::optional<Permutation>>& fixed,
                                          const std::function<bool(const IsoSpec&)>& accept,
                                          std::uint64_t budget) {
  const auto& gens = source.generators();
  if (fixed.size() != gens.size())
    throw Error(Errc::invalid_argument, "one optional image per source generator expected");
  if (source.order() != target.order()) return std::nullopt;
  std::vector<Permutation> elements = enumerate_elements(target, budget);

  IsoSpec trial{source, target, {}};
  std::function<std::optional<IsoSpec>(std::size_t)> rec =
      [&](std::size_t i) -> std::optional<IsoSpec> {
    if (i == gens.size()) {
      if (validate_isomorphism(trial) && accept(trial)) return trial;
      return std::nullopt;
    }
    auto try_image = [&](const Permutation& t) -> std::optional<IsoSpec> {
      trial.image_pairs.emplace_back(gens[i], t);
      // a partial pairing must already be injective on both sides
      PermGroup partial = pairing_group(trial);
      auto [kernel1, kernel2] = kernel_orders(partial, source.degree());
      std::optional<IsoSpec> out;
      if (kernel1 == 1 && kernel2 == 1) out = rec(i + 1);
      trial.image_pairs.pop_back();
      return out;
    };
    if (fixed[i]) return try_image(*fixed[i]);
    const std::uint64_t want = gens[i].order();
    for (const auto& t : elements)
      if (t.order() == want)
        if (auto out = try_image(t)) return out;
    return std::nullopt;
  };
  return rec(0);
}

}  // namespace permsym
