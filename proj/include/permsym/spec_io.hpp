#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "permsym/group.hpp"
#include "permsym/verify.hpp"

namespace permsym {

struct GroupSpec {
  PermGroup group;
  std::string name;
  /// Catalog and standard names the document refers to, in resolution order.
  std::vector<std::string> references;
};

/// Parses a group-spec JSON document, or a bare group name. Throws Errc::schema,
/// Errc::parse_error, Errc::unknown_name or Errc::invalid_isomorphism.
GroupSpec parse_group_spec(std::string_view document);

/// A plain {degree, generators, name} document.
std::string group_spec_json(const PermGroup& g, std::string_view name = {});

std::string report_to_json(const VerificationReport& report);
std::string reports_to_json(const std::vector<VerificationReport>& reports);
/// Throws Errc::schema.
VerificationReport report_from_json(std::string_view text);
std::vector<VerificationReport> reports_from_json(std::string_view text);

}  // namespace permsym
