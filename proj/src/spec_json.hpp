#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "permsym/group.hpp"

namespace permsym::detail {

extern const std::string_view catalog_json;

/// Builds a group from a group-spec value: a name string or a spec object. Catalog names used
/// along the way are appended to `references` when it is set.
PermGroup group_from_json(const nlohmann::json& doc, std::vector<std::string>* references);

}  // namespace permsym::detail
