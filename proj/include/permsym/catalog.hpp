#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "permsym/group.hpp"

namespace permsym {

enum class EntryKind {
  /// A primitive group of the list L with its doubled regular set.
  primitive,
  /// H ||psi H with psi a nonpermutation automorphism.
  parallel_psi,
  /// H ||phi K for abstractly isomorphic, permutationally different H and K.
  parallel_pair,
  /// A sum expression over other entries.
  composite,
};

/// A correction to printed data. `applied` is set only when the printed text failed the
/// structural checks and the corrected text (or the derived value) passed them.
struct Repair {
  std::string field;
  std::string printed;
  std::string corrected;
  std::string reason;
  bool applied = false;
  std::string outcome;
};

struct CatalogEntry {
  std::string id;
  std::vector<std::string> aliases;
  std::string name;
  /// Abstract isomorphism type, e.g. "A6" for L2(9) on 10 points.
  std::string abstract_name;
  EntryKind kind = EntryKind::primitive;
  std::string provenance;
  std::vector<std::string> tables;
  /// parallel_psi: the id of H; parallel_pair: the ids of the two constituents.
  std::string base;
  std::vector<std::string> components;

  std::size_t degree = 0;
  /// Block sizes of an intransitive entry, in point order.
  std::vector<std::size_t> blocks;
  std::vector<std::string> printed_generators;
  /// Canonical rendering of the generators actually used, after repairs.
  std::vector<std::string> generator_texts;
  /// The doubled generators as printed, for entries that print them.
  std::vector<std::string> printed_double;

  Natural claimed_order;
  std::optional<std::uint32_t> claimed_D;
  std::optional<PointSet> claimed_regular_set;
  /// The regular set lives in H^(2) rather than in the entry's own group.
  bool regular_set_in_double = false;
  std::string regular_set_text;
  bool claimed_no_regular_set = false;
  /// Inclusive size range for which regular sets are claimed to exist.
  std::optional<std::pair<std::size_t, std::size_t>> regular_set_sizes;
  /// Generator images of a printed automorphism, on the base group's domain.
  std::vector<std::pair<Permutation, Permutation>> psi;
  std::vector<Repair> repairs;

  PermGroup group;
  /// Empty when the entry resolved; otherwise why no candidate passed the structural checks.
  std::string resolution_error;
};

/// Catalog ids in file order.
std::vector<std::string> catalog_ids();
/// Resolves an id or alias; entries are parsed, repaired and checked once, then cached.
/// Throws Errc::unknown_name.
const CatalogEntry& catalog_entry(std::string_view id);
/// The fourteen primitive groups of the list L, in degree order.
std::vector<const CatalogEntry*> list_L();

/// A_n, S_n, C_n (n <= 48), catalog ids and aliases, and X^(r) for any of these.
PermGroup build_named(std::string_view name);

struct Identification {
  std::optional<std::string> name;
  /// Every matching name; more than one means the signature is ambiguous.
  std::vector<std::string> candidates;
};

/// Matches degree, order, primitivity and perfectness against A_n, S_n, prime C_p and the list
/// L. Throws Errc::precondition for intransitive groups.
Identification identify(const PermGroup& g);

struct Prediction {
  std::uint32_t value = 2;
  std::string rule;
};

/// The distinguishing number of a simple permutation group by the classification of
/// exceptions. Fixed points are stripped first. Throws Errc::precondition when a constituent
/// is not identified or the group is not a parallel sum of simple constituents.
Prediction predict_D(const PermGroup& g);

/// Point set in 1-based text with optional primes; i' means offset + i.
PointSet parse_point_set(std::string_view text, std::size_t degree, std::size_t offset);
/// Cycle text with primes resolved against `offset`.
Permutation parse_primed(std::string_view text, std::size_t degree, std::size_t offset);
std::string render_point_set(const PointSet& s);

}  // namespace permsym
