#include "permsym/spec_io.hpp"

#include <set>

#include "permsym/catalog.hpp"
#include "permsym/error.hpp"
#include "permsym/sums.hpp"
#include "spec_json.hpp"

namespace permsym {

using nlohmann::json;

namespace detail {
namespace {

[[noreturn]] void schema(const std::string& what) { throw Error(Errc::schema, what); }

const json& field(const json& doc, const char* key) {
  if (!doc.contains(key)) schema(std::string("missing field '") + key + "'");
  return doc.at(key);
}

std::vector<std::pair<Permutation, Permutation>> read_pairs(const json& list, std::size_t d1,
                                                            std::size_t d2) {
  if (!list.is_array()) schema("'iso' must be an array of [source, image] pairs");
  std::vector<std::pair<Permutation, Permutation>> out;
  for (const auto& pr : list) {
    if (!pr.is_array() || pr.size() != 2 || !pr[0].is_string() || !pr[1].is_string())
      schema("each 'iso' item must be a pair of cycle strings");
    out.emplace_back(parse_cycles(pr[0].get<std::string>(), d1),
                     parse_cycles(pr[1].get<std::string>(), d2));
  }
  return out;
}

PermGroup sum_from_json(const json& sum, std::vector<std::string>* refs) {
  static const std::set<std::string> keys = {"kind", "components", "iso", "r", "kernels"};
  if (!sum.is_object()) schema("'sum' must be an object");
  for (const auto& [k, v] : sum.items())
    if (!keys.count(k)) schema("unknown field 'sum." + k + "'");
  const json& kind_value = field(sum, "kind");
  if (!kind_value.is_string()) schema("'sum.kind' must be a string");
  const std::string kind = kind_value.get<std::string>();
  const json& comps = field(sum, "components");
  if (!comps.is_array() || comps.empty()) schema("'sum.components' must be a nonempty array");
  std::vector<PermGroup> parts;
  for (const auto& c : comps) parts.push_back(group_from_json(c, refs));
  auto want = [&](std::size_t count) {
    if (parts.size() != count)
      schema("sum kind '" + kind + "' takes " + std::to_string(count) + " components");
  };

  if (kind == "direct") {
    if (parts.size() < 2) schema("a direct sum takes at least two components");
    PermGroup out = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i) out = direct_sum(out, parts[i]);
    return out;
  }
  if (kind == "multiple") {
    want(1);
    const json& r = field(sum, "r");
    if (!r.is_number_unsigned() || r.get<std::size_t>() == 0) schema("'sum.r' must be >= 1");
    return parallel_multiple(parts[0], r.get<std::size_t>());
  }
  if (kind == "parallel") {
    want(2);
    IsoSpec iso{parts[0], parts[1],
                read_pairs(field(sum, "iso"), parts[0].degree(), parts[1].degree())};
    return parallel_sum(iso);
  }
  if (kind == "subdirect") {
    want(2);
    const json& kernels = field(sum, "kernels");
    if (!kernels.is_array() || kernels.size() != 2) schema("'sum.kernels' must hold two specs");
    SubdirectSpec spec{parts[0], group_from_json(kernels[0], refs), parts[1],
                       group_from_json(kernels[1], refs),
                       read_pairs(field(sum, "iso"), parts[0].degree(), parts[1].degree())};
    return subdirect_sum(spec);
  }
  schema("unknown sum kind '" + kind + "'");
}

}  // namespace

PermGroup group_from_json(const json& doc, std::vector<std::string>* refs) {
  try {
    if (doc.is_string()) {
      std::string name = doc.get<std::string>();
      PermGroup g = build_named(name);
      if (refs) refs->push_back(name);
      return g;
    }
    if (!doc.is_object()) schema("a group spec must be an object or a name");
    if (doc.contains("sum")) {
      if (doc.contains("generators")) schema("'generators' and 'sum' are exclusive");
      PermGroup g = sum_from_json(doc.at("sum"), refs);
      if (doc.contains("degree") && doc.at("degree") != g.degree())
        schema("'degree' disagrees with the sum, which has degree " +
               std::to_string(g.degree()));
      return g;
    }
    const json& degree = field(doc, "degree");
    if (!degree.is_number_unsigned() || degree.get<std::size_t>() == 0)
      schema("'degree' must be a positive integer");
    const std::size_t n = degree.get<std::size_t>();
    const json& gens = field(doc, "generators");
    if (!gens.is_array()) schema("'generators' must be an array of cycle strings");
    std::size_t primes = 0;
    if (doc.contains("primes")) {
      if (!doc.at("primes").is_number_unsigned()) schema("'primes' must be a natural number");
      primes = doc.at("primes").get<std::size_t>();
    }
    std::vector<Permutation> perms;
    for (const auto& t : gens) {
      if (!t.is_string()) schema("'generators' must be an array of cycle strings");
      perms.push_back(parse_primed(t.get<std::string>(), n, primes));
    }
    return PermGroup(n, std::move(perms));
  } catch (const json::exception& e) {
    schema(e.what());
  }
}

}  // namespace detail

GroupSpec parse_group_spec(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error&) {
    std::string text(document);
    auto a = text.find_first_not_of(" \t\r\n");
    auto b = text.find_last_not_of(" \t\r\n");
    if (a == std::string::npos) throw Error(Errc::schema, "empty group spec");
    if (text[a] == '{' || text[a] == '[' || text[a] == '"')
      throw Error(Errc::schema, "malformed JSON group spec");
    doc = text.substr(a, b - a + 1);
  }
  GroupSpec out;
  out.group = detail::group_from_json(doc, &out.references);
  if (doc.is_string()) {
    out.name = doc.get<std::string>();
  } else if (doc.contains("name")) {
    if (!doc.at("name").is_string()) throw Error(Errc::schema, "'name' must be a string");
    out.name = doc.at("name").get<std::string>();
  }
  return out;
}

std::string group_spec_json(const PermGroup& g, std::string_view name) {
  json doc;
  if (!name.empty()) doc["name"] = name;
  doc["degree"] = g.degree();
  json gens = json::array();
  for (const auto& p : g.generators()) gens.push_back(render_cycles(p));
  doc["generators"] = gens;
  return doc.dump(2);
}

namespace {

CheckStatus status_from(const std::string& s) {
  if (s == "pass") return CheckStatus::pass;
  if (s == "fail") return CheckStatus::fail;
  if (s == "inconclusive") return CheckStatus::inconclusive;
  throw Error(Errc::schema, "unknown status '" + s + "'");
}

json report_json(const VerificationReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks)
    checks.push_back(
        {{"name", c.name}, {"status", to_string(c.status)}, {"details", c.details}});
  return {{"id", r.id},
          {"status", to_string(r.overall())},
          {"elapsed_ms", r.elapsed_ms},
          {"checks", checks}};
}

VerificationReport report_value(const json& doc) {
  try {
    VerificationReport r;
    r.id = doc.at("id").get<std::string>();
    r.elapsed_ms = doc.at("elapsed_ms").get<double>();
    for (const auto& c : doc.at("checks"))
      r.checks.push_back(Check{c.at("name").get<std::string>(),
                               status_from(c.at("status").get<std::string>()),
                               c.at("details").get<std::string>()});
    return r;
  } catch (const json::exception& e) {
    throw Error(Errc::schema, e.what());
  }
}

json parse_or_schema(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(Errc::schema, e.what());
  }
}

}  // namespace

std::string report_to_json(const VerificationReport& report) {
  return report_json(report).dump(2);
}

std::string reports_to_json(const std::vector<VerificationReport>& reports) {
  json list = json::array();
  CheckStatus overall = CheckStatus::pass;
  for (const auto& r : reports) {
    list.push_back(report_json(r));
    CheckStatus s = r.overall();
    if (s == CheckStatus::fail || (s == CheckStatus::inconclusive && overall == CheckStatus::pass))
      overall = s;
  }
  return json{{"status", to_string(overall)}, {"reports", list}}.dump(2);
}

VerificationReport report_from_json(std::string_view text) {
  return report_value(parse_or_schema(text));
}

std::vector<VerificationReport> reports_from_json(std::string_view text) {
  json doc = parse_or_schema(text);
  std::vector<VerificationReport> out;
  try {
    for (const auto& r : doc.at("reports")) out.push_back(report_value(r));
  } catch (const json::exception& e) {
    throw Error(Errc::schema, e.what());
  }
  return out;
}

}  // namespace permsym
