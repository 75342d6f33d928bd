#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "permsym/group.hpp"

namespace permsym {

/// Generator images defining a homomorphism source -> target; the pairs must generate source.
struct IsoSpec {
  PermGroup source;
  PermGroup target;
  std::vector<std::pair<Permutation, Permutation>> image_pairs;
};

/// G1[H1] (+)_phi G2[H2]. `quotient_pairs` holds (r, s) with phi(H1 r) = H2 s for a set of r
/// generating G1 modulo H1.
struct SubdirectSpec {
  PermGroup g1, h1, g2, h2;
  std::vector<std::pair<Permutation, Permutation>> quotient_pairs;
};

struct Decomposition {
  PointSet x1, x2;
  PermGroup g1, g2;  // constituents, relabelled to 0..|Xi|-1
  PermGroup h1, h2;  // kernels, on the same relabelled domains
  SubdirectSpec spec;
};

struct StrippedGroup {
  PermGroup group;
  std::size_t stripped = 0;
  /// kept[i] is the original point now labelled i.
  PointSet kept;
};

PermGroup direct_sum(const PermGroup& g, const PermGroup& h);
PermGroup parallel_multiple(const PermGroup& g, std::size_t r);

bool validate_isomorphism(const IsoSpec& iso);
/// Throws Errc::invalid_isomorphism when the pairing does not extend to an isomorphism.
PermGroup parallel_sum(const IsoSpec& iso);
/// Throws Errc::precondition when the subdirect invariants fail.
PermGroup subdirect_sum(const SubdirectSpec& spec);

/// `x1` and `x2` must partition the domain into unions of orbits.
Decomposition decompose(const PermGroup& g, const PointSet& x1, const PointSet& x2);
/// The subdirect sum of the parts, relabelled back onto the original domain.
PermGroup reconstruct(const Decomposition& d);

StrippedGroup strip_fixed_points(const PermGroup& g);

/// A permutation c with c^-1 a c = b for every pair (a, b), if one exists.
std::optional<Permutation> find_conjugator(
    const std::vector<std::pair<Permutation, Permutation>>& pairs);
/// Whether the pairing is realised by relabelling points (source and target may differ).
bool is_permutation_isomorphism(const IsoSpec& iso);
/// Requires iso.source and iso.target to equal g.
bool is_permutation_automorphism(const PermGroup& g, const IsoSpec& iso);

/// The pairs (g|x1, g|x2) over the generators of g.
std::vector<std::pair<Permutation, Permutation>> block_pairs(const PermGroup& g,
                                                             const PointSet& x1,
                                                             const PointSet& x2);

/// Searches images for the source generators among the target's elements of equal order, in
/// enumeration order; `fixed[i]`, when set, pins the image of generator i. Returns the first
/// pairing that extends to an isomorphism and satisfies `accept`.
std::optional<IsoSpec> search_isomorphism(
    const PermGroup& source, const PermGroup& target,
    const std::vector<std::optional<Permutation>>& fixed,
    const std::function<bool(const IsoSpec&)>& accept,
    std::uint64_t budget = default_enumeration_budget);

}  // namespace permsym
