#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "permsym/symmetry.hpp"

namespace permsym {

enum class CheckStatus { pass, fail, inconclusive };

struct Check {
  std::string name;
  CheckStatus status = CheckStatus::pass;
  std::string details;

  friend bool operator==(const Check&, const Check&) = default;
};

struct VerificationReport {
  std::string id;
  std::vector<Check> checks;
  double elapsed_ms = 0;

  /// fail if any check failed, else inconclusive if any was, else pass.
  CheckStatus overall() const;

  friend bool operator==(const VerificationReport&, const VerificationReport&) = default;
};

enum class Effort { quick, full };

struct VerifyOptions {
  Effort effort = Effort::quick;
  std::uint64_t seed = default_seed;
  std::uint64_t budget = default_search_budget;
};

/// Checks one catalog entry against its printed claims. Throws Errc::unknown_name.
VerificationReport verify_entry(std::string_view id, const VerifyOptions& options = {});

struct PaperSelection {
  bool table1 = false;
  bool table1b = false;
  bool table2 = false;
  bool lemma32 = false;
  bool lemma33 = false;
  bool theorem = false;

  static PaperSelection all() { return {true, true, true, true, true, true}; }
};

/// Reports in a fixed order: tables, lemmas, then the theorem and its corollary.
std::vector<VerificationReport> verify_paper(const PaperSelection& selection,
                                             const VerifyOptions& options = {});

std::string_view to_string(CheckStatus status);
std::string_view to_string(Effort effort);

}  // namespace permsym
