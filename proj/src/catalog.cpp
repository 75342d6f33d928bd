#include "permsym/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <memory>
#include <mutex>
#include <regex>
#include <sstream>

#include "permsym/error.hpp"
#include "permsym/sums.hpp"
#include "permsym/symmetry.hpp"
#include "spec_json.hpp"

namespace permsym {

using nlohmann::json;

namespace {

constexpr std::size_t max_named_degree = 48;

std::string primes_resolved(std::string_view text, std::size_t offset) {
  std::string out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
      out += text[i++];
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
    std::size_t value = 0;
    std::from_chars(text.data() + i, text.data() + j, value);
    if (j < text.size() && text[j] == '\'') {
      if (offset == 0) throw Error(Errc::parse_error, "primed point without a block size");
      value += offset;
      ++j;
    }
    out += std::to_string(value);
    i = j;
  }
  return out;
}

Natural factorial(std::size_t n) {
  Natural f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= i;
  return f;
}

bool is_prime(std::size_t n) {
  if (n < 2) return false;
  for (std::size_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Permutation cycle_on(std::size_t degree, std::vector<Point> pts) {
  std::vector<Point> images(degree);
  for (Point x = 0; x < degree; ++x) images[x] = x;
  for (std::size_t i = 0; i < pts.size(); ++i) images[pts[i]] = pts[(i + 1) % pts.size()];
  return Permutation::from_images(std::move(images));
}

std::vector<Point> range(Point lo, Point hi) {
  std::vector<Point> out;
  for (Point x = lo; x < hi; ++x) out.push_back(x);
  return out;
}

PermGroup alternating(std::size_t n) {
  std::vector<Permutation> gens;
  if (n >= 3) gens.push_back(cycle_on(n, {0, 1, 2}));
  if (n >= 4) {
    Permutation c = cycle_on(n, range(2, static_cast<Point>(n)));
    if (n % 2 == 0) c = cycle_on(n, {0, 1}) * c;
    gens.push_back(c);
  }
  return PermGroup(n, std::move(gens));
}

PermGroup symmetric(std::size_t n) {
  std::vector<Permutation> gens;
  if (n >= 2) gens.push_back(cycle_on(n, {0, 1}));
  if (n >= 3) gens.push_back(cycle_on(n, range(0, static_cast<Point>(n))));
  return PermGroup(n, std::move(gens));
}

PermGroup cyclic(std::size_t n) {
  std::vector<Permutation> gens;
  if (n >= 2) gens.push_back(cycle_on(n, range(0, static_cast<Point>(n))));
  return PermGroup(n, std::move(gens));
}

std::optional<PermGroup> standard_group(std::string_view name) {
  static const std::regex pattern("([ASC])([0-9]{1,2})");
  std::match_results<std::string_view::const_iterator> m;
  if (!std::regex_match(name.begin(), name.end(), m, pattern)) return std::nullopt;
  std::size_t n = std::stoul(m[2].str());
  if (n < 1 || n > max_named_degree)
    throw Error(Errc::unknown_name, "degree outside 1.." + std::to_string(max_named_degree) +
                                        ": " + std::string(name));
  switch (m[1].str()[0]) {
    case 'A': return alternating(n);
    case 'S': return symmetric(n);
    default: return cyclic(n);
  }
}

EntryKind kind_from(const std::string& s) {
  if (s == "primitive") return EntryKind::primitive;
  if (s == "parallel-psi") return EntryKind::parallel_psi;
  if (s == "parallel-pair") return EntryKind::parallel_pair;
  if (s == "composite") return EntryKind::composite;
  throw Error(Errc::schema, "unknown catalog entry kind: " + s);
}

Permutation placed(const std::vector<std::pair<Permutation, Point>>& parts, std::size_t degree) {
  Permutation out(degree);
  for (const auto& [p, offset] : parts) out = out * p.embed(degree, offset);
  return out;
}

struct Slot {
  json raw;
  std::once_flag once;
  CatalogEntry entry;
};

class Catalog {
 public:
  static Catalog& instance() {
    static Catalog c;
    return c;
  }

  const std::vector<std::string>& ids() const { return ids_; }

  const CatalogEntry& get(std::string_view name) {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) throw Error(Errc::unknown_name, "no catalog entry " + std::string(name));
    Slot& slot = *slots_[it->second];
    std::call_once(slot.once, [&] { slot.entry = resolve(slot.raw); });
    return slot.entry;
  }

  bool has(std::string_view name) const { return index_.count(std::string(name)) > 0; }

 private:
  Catalog() {
    json doc = json::parse(detail::catalog_json);
    if (doc.value("version", 0) != 1) throw Error(Errc::schema, "unsupported catalog version");
    for (const auto& e : doc.at("entries")) {
      auto slot = std::make_unique<Slot>();
      slot->raw = e;
      std::size_t k = slots_.size();
      ids_.push_back(e.at("id").get<std::string>());
      index_[ids_.back()] = k;
      for (const auto& a : e.value("aliases", json::array())) index_[a.get<std::string>()] = k;
      slots_.push_back(std::move(slot));
    }
  }

  static CatalogEntry resolve(const json& raw);

  std::vector<std::unique_ptr<Slot>> slots_;
  std::vector<std::string> ids_;
  std::map<std::string, std::size_t> index_;
};

std::size_t prime_offset(const json& raw) { return raw.value("primes", std::size_t{0}); }

std::vector<Permutation> parse_all(const std::vector<std::string>& texts, std::size_t degree,
                                   std::size_t offset) {
  std::vector<Permutation> out;
  for (const auto& t : texts) out.push_back(parse_primed(t, degree, offset));
  return out;
}

std::vector<PointSet> block_sets(const CatalogEntry& e) {
  std::vector<PointSet> out;
  Point start = 0;
  for (std::size_t b : e.blocks) {
    out.push_back(range(start, static_cast<Point>(start + b)));
    start += static_cast<Point>(b);
  }
  return out;
}

/// Empty when g passes every structural check the entry claims.
std::string structural_failure(const CatalogEntry& e, const PermGroup& g) {
  Natural ord = g.order();
  if (ord != e.claimed_order) {
    std::ostringstream os;
    os << "order " << ord << ", claimed " << e.claimed_order;
    return os.str();
  }
  if (!e.blocks.empty()) {
    for (const auto& block : block_sets(e)) {
      for (const auto& s : g.generators())
        for (Point x : block)
          if (!std::binary_search(block.begin(), block.end(), s[x]))
            return "block " + render_point_set(block) + " is not invariant";
      if (!pointwise_stabilizer(g, complement(block, g.degree())).is_trivial())
        return "nontrivial kernel on block " + render_point_set(block);
    }
  }
  if (!e.psi.empty()) {
    const std::size_t m = e.psi.front().first.degree();
    IsoSpec iso{PermGroup(m, {}), PermGroup(m, {}), e.psi};
    std::vector<Permutation> src, dst;
    for (const auto& [a, b] : e.psi) {
      src.push_back(a);
      dst.push_back(b);
    }
    iso.source = PermGroup(m, src);
    iso.target = PermGroup(m, dst);
    if (!validate_isomorphism(iso)) return "printed automorphism images do not define one";
    if (!same_group(parallel_sum(iso), g)) return "generators disagree with the automorphism";
  }
  if (e.claimed_regular_set) {
    PermGroup host = e.regular_set_in_double ? parallel_multiple(g, 2) : g;
    if (!setwise_stabilizer(host, *e.claimed_regular_set).is_trivial())
      return "claimed regular set " + e.regular_set_text + " has a nontrivial stabilizer";
  }
  return {};
}

void resolve_printed_double(CatalogEntry& e, const json& raw) {
  if (!raw.contains("printed_double")) return;
  e.printed_double = raw.at("printed_double").get<std::vector<std::string>>();
  PermGroup doubled = parallel_multiple(e.group, 2);
  const std::size_t n = e.degree;
  auto matches = [&](const std::vector<std::string>& texts, std::string& why) {
    try {
      auto perms = parse_all(texts, 2 * n, n);
      if (perms == doubled.generators()) return true;
      why = "differs from the doubled base generators";
    } catch (const Error& err) {
      why = err.what();
    }
    return false;
  };
  std::string why;
  if (matches(e.printed_double, why)) return;
  std::vector<std::string> fixed = e.printed_double;
  std::vector<Repair*> used;
  for (auto& r : e.repairs) {
    if (r.field.rfind("printed_double[", 0) != 0) continue;
    std::size_t k = std::stoul(r.field.substr(15));
    fixed.at(k) = r.corrected;
    used.push_back(&r);
  }
  std::string why_fixed;
  bool ok = !used.empty() && matches(fixed, why_fixed);
  for (Repair* r : used) {
    r->applied = ok;
    r->outcome = ok ? "printed text rejected (" + why + "); corrected text matches g^(2)"
                    : "corrected text rejected: " + why_fixed;
  }
  if (!ok) e.resolution_error = "printed doubled generators: " + why;
}

/// The isomorphism-search fallback: generators keep their parts outside `search_block` and the
/// images inside it are searched among the constituent's elements.
std::optional<std::vector<Permutation>> derive_generators(CatalogEntry& e, const json& rule,
                                                          const std::vector<Permutation>& printed) {
  if (e.blocks.size() != 2 || e.components.size() != 2) return std::nullopt;
  const std::size_t b = rule.at("search_block").get<std::size_t>();
  const std::size_t other = 1 - b;
  auto blocks = block_sets(e);
  std::vector<Permutation> kept, pinned_images;
  for (const auto& g : printed) {
    kept.push_back(restrict_perm(g, blocks[other]));
    pinned_images.push_back(restrict_perm(g, blocks[b]));
  }
  PermGroup source(blocks[other].size(), kept);
  PermGroup target = build_named(e.components[b]);
  if (target.degree() != blocks[b].size()) return std::nullopt;
  std::vector<std::optional<Permutation>> fixed(printed.size());
  for (const auto& k : rule.value("pinned", json::array())) {
    std::size_t i = k.get<std::size_t>();
    if (!target.contains(pinned_images.at(i))) return std::nullopt;
    fixed.at(i) = pinned_images[i];
  }
  auto assemble = [&](const IsoSpec& iso) {
    std::vector<Permutation> gens;
    for (const auto& [a, t] : iso.image_pairs)
      gens.push_back(placed({{t, blocks[b].front()}, {a, blocks[other].front()}}, e.degree));
    return gens;
  };
  auto found = search_isomorphism(source, target, fixed, [&](const IsoSpec& iso) {
    return structural_failure(e, PermGroup(e.degree, assemble(iso))).empty();
  });
  if (!found) return std::nullopt;
  return assemble(*found);
}

void resolve_flat(CatalogEntry& e, const json& raw) {
  const std::size_t offset = prime_offset(raw);
  if (raw.contains("psi")) {
    const std::size_t m = e.degree - offset;
    for (const auto& pr : raw.at("psi"))
      e.psi.emplace_back(parse_cycles(pr.at(0).get<std::string>(), m),
                         parse_cycles(pr.at(1).get<std::string>(), m));
  }

  std::vector<std::string> notes;
  std::optional<std::vector<Permutation>> printed;
  auto attempt = [&](const std::vector<std::string>& texts, const std::string& label)
      -> std::optional<std::vector<Permutation>> {
    try {
      auto gens = parse_all(texts, e.degree, offset);
      std::string why = structural_failure(e, PermGroup(e.degree, gens));
      if (why.empty()) return gens;
      notes.push_back(label + ": " + why);
      if (label == "printed") printed = gens;
    } catch (const Error& err) {
      notes.push_back(label + ": " + err.what());
    }
    return std::nullopt;
  };

  std::optional<std::vector<Permutation>> gens = attempt(e.printed_generators, "printed");
  std::vector<Repair*> textual, derived;
  for (auto& r : e.repairs) {
    if (r.field.rfind("generators[", 0) != 0) continue;
    (r.corrected.empty() ? derived : textual).push_back(&r);
  }
  auto mark = [&](const std::vector<Repair*>& rs, const std::string& outcome) {
    for (Repair* r : rs) {
      r->applied = true;
      r->outcome = outcome;
    }
  };

  if (!gens && !textual.empty()) {
    std::vector<std::string> texts = e.printed_generators;
    for (Repair* r : textual) texts.at(std::stoul(r->field.substr(11))) = r->corrected;
    gens = attempt(texts, "corrected");
    if (gens) mark(textual, "printed text rejected (" + notes.front() + ")");
  }
  if (!gens && !derived.empty() && printed) {
    const json* rule = nullptr;
    for (const auto& r : raw.at("repairs"))
      if (r.contains("derive")) rule = &r.at("derive");
    gens = derive_generators(e, *rule, *printed);
    if (gens) {
      for (Repair* r : derived) {
        std::size_t k = std::stoul(r->field.substr(11));
        r->corrected = render_cycles((*gens)[k]);
      }
      mark(derived, "printed text rejected (" + notes.front() +
                        "); substituted the first isomorphism found that passes every check");
    } else {
      notes.push_back("derived: no isomorphism passes the checks");
    }
  }
  for (auto& r : e.repairs)
    if (!r.applied && r.outcome.empty() && r.field.rfind("generators[", 0) == 0)
      r.outcome = gens ? "not needed; printed text passes" : "rejected";

  if (gens) {
    e.group = PermGroup(e.degree, *gens);
  } else {
    std::string joined;
    for (const auto& n : notes) joined += (joined.empty() ? "" : "; ") + n;
    e.resolution_error = joined;
    e.group = PermGroup(e.degree, printed.value_or(std::vector<Permutation>{}));
  }
  for (const auto& g : e.group.generators()) e.generator_texts.push_back(render_cycles(g));
}

CatalogEntry Catalog::resolve(const json& raw) {
  CatalogEntry e;
  e.id = raw.at("id").get<std::string>();
  e.aliases = raw.value("aliases", std::vector<std::string>{});
  e.name = raw.value("name", e.id);
  e.abstract_name = raw.value("abstract", std::string{});
  e.kind = kind_from(raw.at("kind").get<std::string>());
  e.provenance = raw.value("provenance", std::string{});
  e.tables = raw.value("tables", std::vector<std::string>{});
  e.base = raw.value("base", std::string{});
  e.components = raw.value("components", std::vector<std::string>{});
  e.blocks = raw.value("blocks", std::vector<std::size_t>{});
  e.claimed_order = Natural(raw.at("claimed_order").get<std::string>());
  if (raw.contains("claimed_D")) e.claimed_D = raw.at("claimed_D").get<std::uint32_t>();
  e.claimed_no_regular_set = raw.value("claimed_no_regular_set", false);
  if (raw.contains("regular_set_sizes")) {
    auto r = raw.at("regular_set_sizes").get<std::vector<std::size_t>>();
    e.regular_set_sizes = std::make_pair(r.at(0), r.at(1));
  }
  for (const auto& r : raw.value("repairs", json::array()))
    e.repairs.push_back(Repair{r.at("field").get<std::string>(),
                               r.value("printed", std::string{}),
                               r.value("corrected", std::string{}),
                               r.value("reason", std::string{}), false, {}});

  if (e.kind == EntryKind::composite) {
    e.group = detail::group_from_json(raw.at("sum").is_object() ? json{{"sum", raw.at("sum")}}
                                                                : raw.at("sum"),
                                      nullptr);
    e.degree = e.group.degree();
    for (const auto& g : e.group.generators()) e.generator_texts.push_back(render_cycles(g));
    std::string why = structural_failure(e, e.group);
    if (!why.empty()) e.resolution_error = why;
    return e;
  }

  e.degree = raw.at("degree").get<std::size_t>();
  e.printed_generators = raw.at("generators").get<std::vector<std::string>>();
  if (raw.contains("regular_set")) {
    const auto& rs = raw.at("regular_set");
    e.regular_set_in_double = rs.at("in").get<std::string>() == "double";
    e.regular_set_text = rs.at("points").get<std::string>();
    std::size_t host = e.regular_set_in_double ? 2 * e.degree : e.degree;
    std::size_t offset = e.regular_set_in_double ? e.degree : prime_offset(raw);
    e.claimed_regular_set = parse_point_set(e.regular_set_text, host, offset);
  }
  resolve_flat(e, raw);
  if (e.resolution_error.empty()) resolve_printed_double(e, raw);
  return e;
}

bool perfect(const PermGroup& g) { return derived_subgroup(g).order() == g.order(); }

std::string standard_name(const PermGroup& g) {
  const std::size_t n = g.degree();
  const Natural ord = g.order();
  if (n >= 3 && ord * 2 == factorial(n)) return "A" + std::to_string(n);
  if (is_prime(n) && ord == n) return "C" + std::to_string(n);
  if (n >= 2 && ord == factorial(n)) return "S" + std::to_string(n);
  return {};
}

bool simple_name(const std::string& name) {
  if (name.empty()) return false;
  if (name[0] == 'S') return false;
  if (name[0] == 'A' && std::isdigit(static_cast<unsigned char>(name[1]))) {
    std::size_t n = std::stoul(name.substr(1));
    return n == 3 || n >= 5;
  }
  return true;
}

}  // namespace

PointSet parse_point_set(std::string_view text, std::size_t degree, std::size_t offset) {
  std::string s = primes_resolved(text, offset);
  std::size_t a = s.find_first_not_of(" \t\n");
  std::size_t b = s.find_last_not_of(" \t\n");
  if (a == std::string::npos || s[a] != '{' || s[b] != '}')
    throw Error(Errc::parse_error, "point set must be written {p1,p2,...}");
  PointSet out;
  std::stringstream body(s.substr(a + 1, b - a - 1));
  std::string item;
  while (std::getline(body, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(),
                              [](unsigned char c) { return std::isspace(c); }),
               item.end());
    if (item.empty()) {
      if (out.empty() && body.eof()) break;
      throw Error(Errc::parse_error, "empty item in point set");
    }
    std::size_t v = 0;
    auto [p, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc{} || p != item.data() + item.size())
      throw Error(Errc::parse_error, "bad point '" + item + "'");
    if (v < 1 || v > degree)
      throw Error(Errc::parse_error, "point " + item + " outside 1.." + std::to_string(degree));
    out.push_back(static_cast<Point>(v - 1));
  }
  std::sort(out.begin(), out.end());
  if (std::adjacent_find(out.begin(), out.end()) != out.end())
    throw Error(Errc::parse_error, "repeated point in set");
  return out;
}

Permutation parse_primed(std::string_view text, std::size_t degree, std::size_t offset) {
  return parse_cycles(primes_resolved(text, offset), degree);
}

std::string render_point_set(const PointSet& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i] + 1);
  return out + "}";
}

std::vector<std::string> catalog_ids() { return Catalog::instance().ids(); }

const CatalogEntry& catalog_entry(std::string_view id) { return Catalog::instance().get(id); }

std::vector<const CatalogEntry*> list_L() {
  std::vector<const CatalogEntry*> out;
  for (const auto& id : catalog_ids()) {
    const CatalogEntry& e = catalog_entry(id);
    if (e.kind == EntryKind::primitive) out.push_back(&e);
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const CatalogEntry* a, const CatalogEntry* b) { return a->degree < b->degree; });
  return out;
}

PermGroup build_named(std::string_view name) {
  static const std::regex multiple(R"((.+)\^\(([0-9]+)\))");
  std::match_results<std::string_view::const_iterator> m;
  if (Catalog::instance().has(name)) {
    const CatalogEntry& e = catalog_entry(name);
    if (!e.resolution_error.empty())
      throw Error(Errc::precondition, "catalog entry " + e.id + " failed to resolve: " +
                                          e.resolution_error);
    return e.group;
  }
  if (auto g = standard_group(name)) return *g;
  if (std::regex_match(name.begin(), name.end(), m, multiple)) {
    std::size_t r = std::stoul(m[2].str());
    if (r == 0) throw Error(Errc::invalid_argument, "parallel multiple needs r >= 1");
    return parallel_multiple(build_named(m[1].str()), r);
  }
  throw Error(Errc::unknown_name, "unknown group name " + std::string(name));
}

Identification identify(const PermGroup& g) {
  if (!is_transitive(g)) throw Error(Errc::precondition, "identify needs a transitive group");
  Identification out;
  std::string standard = standard_name(g);
  if (!standard.empty()) out.candidates.push_back(standard);
  const Natural ord = g.order();
  std::optional<bool> primitive, is_perfect;
  for (const CatalogEntry* e : list_L()) {
    if (e->degree != g.degree() || e->claimed_order != ord) continue;
    if (!primitive) primitive = is_primitive(g);
    if (!*primitive) continue;
    if (!is_perfect) is_perfect = perfect(g);
    if (!*is_perfect) continue;
    out.candidates.push_back(e->id);
  }
  if (out.candidates.size() == 1) out.name = out.candidates.front();
  return out;
}

Prediction predict_D(const PermGroup& input) {
  StrippedGroup stripped = strip_fixed_points(input);
  const PermGroup& g = stripped.group;
  if (g.is_trivial()) return {1, "trivial group"};
  const std::string note = stripped.stripped ? " (fixed points stripped)" : "";

  std::vector<PointSet> blocks = orbits(g);
  std::vector<PermGroup> parts;
  std::vector<std::string> names;
  for (const auto& b : blocks) {
    parts.push_back(restrict_to(g, b));
    Identification id = identify(parts.back());
    if (!id.name) {
      std::string why = id.candidates.empty() ? "unidentified" : "ambiguous";
      throw Error(Errc::precondition, "constituent on " + render_point_set(b) + " is " + why);
    }
    if (!simple_name(*id.name))
      throw Error(Errc::precondition, "constituent " + *id.name + " is not simple");
    if (parts.back().order() != g.order())
      throw Error(Errc::precondition, "group is not a parallel sum of its constituents");
    names.push_back(*id.name);
  }

  static const std::vector<std::string> clause2 = {"L3(2)", "M11", "M12"};
  static const std::vector<std::string> clause3 = {"L2(5)", "L2(7)", "L2(8)",    "L2(9)",
                                                   "L2(11)@11", "M11@12", "L3(3)", "L4(2)",
                                                   "M22",   "M23",   "M24"};
  auto in = [](const std::vector<std::string>& v, const std::string& s) {
    return std::find(v.begin(), v.end(), s) != v.end();
  };
  auto alternating_degree = [](const std::string& s) -> std::size_t {
    if (s.size() < 2 || s[0] != 'A' || !std::isdigit(static_cast<unsigned char>(s[1]))) return 0;
    return std::stoul(s.substr(1));
  };

  const std::size_t r = blocks.size();
  const bool same = std::all_of(names.begin(), names.end(),
                                [&](const std::string& s) { return s == names.front(); });
  if (!same) return {2, "default: constituents not permutation isomorphic" + note};

  bool multiple = true;
  for (std::size_t i = 1; i < r && multiple; ++i) {
    std::vector<std::pair<Permutation, Permutation>> pairs;
    for (std::size_t k = 0; k < g.generators().size(); ++k)
      pairs.emplace_back(parts[0].generators()[k], parts[i].generators()[k]);
    multiple = find_conjugator(pairs).has_value();
  }
  const std::string& name = names.front();
  const std::size_t n = alternating_degree(name);
  if (multiple) {
    if (n >= 3) {
      auto d = static_cast<std::uint32_t>(an_parallel_formula(n, r));
      return {d, "A_n^(k): least d with d^k >= n-1" + note};
    }
    if (r == 1 && in(clause2, name)) return {4, "exceptional primitive group with D = 4" + note};
    if (r == 1 && in(clause3, name)) return {3, "exceptional primitive group with D = 3" + note};
    return {2, "default: a regular set exists" + note};
  }
  if (n == 6 && r == 2) return {3, "A6 ||psi A6" + note};
  return {2, "default: a regular set exists" + note};
}

}  // namespace permsym
