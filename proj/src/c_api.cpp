#include "permsym/permsym.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <new>
#include <sstream>
#include <string>

#include "json.hpp"
#include "permsym/catalog.hpp"
#include "permsym/error.hpp"
#include "permsym/spec_io.hpp"
#include "permsym/sums.hpp"
#include "permsym/symmetry.hpp"
#include "permsym/verify.hpp"

struct psym_group {
  permsym::PermGroup group;
};

namespace {

using namespace permsym;
using nlohmann::json;

thread_local std::string last_error;

psym_status status_of(Errc c) {
  switch (c) {
    case Errc::invalid_argument: return PSYM_INVALID_ARGUMENT;
    case Errc::parse_error: return PSYM_PARSE_ERROR;
    case Errc::degree_mismatch: return PSYM_DEGREE_MISMATCH;
    case Errc::invalid_isomorphism: return PSYM_INVALID_ISOMORPHISM;
    case Errc::unknown_name: return PSYM_UNKNOWN_NAME;
    case Errc::budget_exceeded: return PSYM_BUDGET_EXCEEDED;
    case Errc::precondition: return PSYM_PRECONDITION;
    case Errc::schema: return PSYM_SCHEMA;
  }
  return PSYM_INTERNAL;
}

template <typename F>
psym_status guarded(F&& f) {
  try {
    f();
    last_error.clear();
    return PSYM_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
  } catch (const std::exception& e) {
    last_error = e.what();
  }
  return PSYM_INTERNAL;
}

void need(const void* p, const char* what) {
  if (!p) throw Error(Errc::invalid_argument, std::string(what) + " is null");
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void emit(char** out, const json& doc) { *out = dup(doc.dump(2)); }

std::string str(const Natural& n) {
  std::ostringstream os;
  os << n;
  return os.str();
}

json points(const PointSet& s) {
  json a = json::array();
  for (Point x : s) a.push_back(x + 1);
  return a;
}

json generators(const PermGroup& g) {
  json a = json::array();
  for (const auto& p : g.generators()) a.push_back(render_cycles(p));
  return a;
}

json plain_spec(const PermGroup& g) {
  return {{"degree", g.degree()}, {"generators", generators(g)}};
}

std::string_view outcome_name(SearchOutcome o) {
  switch (o) {
    case SearchOutcome::found: return "found";
    case SearchOutcome::none: return "none";
    default: return "inconclusive";
  }
}

std::string_view kind_name(EntryKind k) {
  switch (k) {
    case EntryKind::primitive: return "primitive";
    case EntryKind::parallel_psi: return "parallel-psi";
    case EntryKind::parallel_pair: return "parallel-pair";
    default: return "composite";
  }
}

VerifyOptions verify_options(psym_effort effort, uint64_t seed, uint64_t budget) {
  VerifyOptions o;
  o.effort = effort == PSYM_EFFORT_FULL ? Effort::full : Effort::quick;
  if (seed) o.seed = seed;
  if (budget) o.budget = budget;
  return o;
}

}  // namespace

extern "C" {

const char* psym_last_error(void) { return last_error.c_str(); }

const char* psym_version(void) { return "1.0.0"; }

void psym_string_free(char* s) { std::free(s); }

psym_status psym_group_from_spec(const char* spec, psym_group** out) {
  return guarded([&] {
    need(spec, "spec");
    need(out, "out");
    *out = new psym_group{parse_group_spec(spec).group};
  });
}

psym_status psym_group_from_generators(size_t degree, const char* const* gens, size_t count,
                                       psym_group** out) {
  return guarded([&] {
    need(out, "out");
    if (count) need(gens, "generators");
    if (degree == 0) throw Error(Errc::invalid_argument, "degree must be positive");
    std::vector<Permutation> perms;
    for (size_t i = 0; i < count; ++i) {
      need(gens[i], "generator");
      perms.push_back(parse_cycles(gens[i], degree));
    }
    *out = new psym_group{PermGroup(degree, std::move(perms))};
  });
}

void psym_group_free(psym_group* g) { delete g; }

psym_status psym_group_degree(const psym_group* g, size_t* out) {
  return guarded([&] {
    need(g, "group");
    need(out, "out");
    *out = g->group.degree();
  });
}

psym_status psym_group_order(const psym_group* g, char** out) {
  return guarded([&] {
    need(g, "group");
    need(out, "out");
    *out = dup(str(g->group.order()));
  });
}

psym_status psym_group_contains(const psym_group* g, const char* perm, int* out) {
  return guarded([&] {
    need(g, "group");
    need(perm, "permutation");
    need(out, "out");
    *out = g->group.contains(parse_cycles(perm, g->group.degree())) ? 1 : 0;
  });
}

psym_status psym_group_spec(const psym_group* g, char** out) {
  return guarded([&] {
    need(g, "group");
    need(out, "out");
    emit(out, plain_spec(g->group));
  });
}

psym_status psym_group_info(const psym_group* g, char** out) {
  return guarded([&] {
    need(g, "group");
    need(out, "out");
    const PermGroup& G = g->group;
    json orb = json::array();
    for (const auto& o : orbits(G)) orb.push_back(points(o));
    bool transitive = is_transitive(G);
    json doc = {{"degree", G.degree()},
                {"order", str(G.order())},
                {"generators", generators(G)},
                {"orbits", orb},
                {"transitive", transitive},
                {"primitive", transitive ? json(is_primitive(G)) : json(nullptr)},
                {"fixed_points", points(fixed_points(G))}};
    if (transitive) {
      Identification id = identify(G);
      doc["identified"] = id.name ? json(*id.name) : json(nullptr);
      doc["candidates"] = id.candidates;
    }
    emit(out, doc);
  });
}

psym_status psym_regular_set(const psym_group* g, const psym_search_options* options,
                             char** out) {
  return guarded([&] {
    need(g, "group");
    need(out, "out");
    RegularSetQuery q;
    if (options) {
      if (options->budget) q.budget = options->budget;
      if (options->seed) q.seed = options->seed;
      q.mode = options->randomized ? SearchMode::randomized : SearchMode::exhaustive;
      q.min_size = options->min_size;
      q.max_size = options->max_size;
    }
    RegularSetResult r = find_regular_set(g->group, q);
    emit(out, {{"outcome", outcome_name(r.outcome)},
               {"set", r.report ? points(r.report->set) : json(nullptr)},
               {"candidates", r.candidates},
               {"budget", r.budget},
               {"seed", r.seed},
               {"mode", r.mode == SearchMode::randomized ? "randomized" : "exhaustive"}});
  });
}

psym_status psym_check_set(const psym_group* g, const char* set, char** out) {
  return guarded([&] {
    need(g, "group");
    need(set, "set");
    need(out, "out");
    RegularSetReport r = regular_set_report(g->group, parse_point_set(set, g->group.degree(), 0));
    emit(out, {{"set", points(r.set)},
               {"regular", r.regular()},
               {"stabilizer_order", str(r.stabilizer_order)},
               {"witness", r.witness ? json(render_cycles(*r.witness)) : json(nullptr)}});
  });
}

psym_status psym_distinguishing(const psym_group* g, uint32_t k_max, uint64_t budget,
                                char** out) {
  return guarded([&] {
    need(g, "group");
    need(out, "out");
    if (k_max == 0) k_max = static_cast<uint32_t>(std::max<size_t>(g->group.degree(), 1));
    DistinguishingResult r =
        distinguishing_number(g->group, k_max, budget ? budget : default_search_budget);
    std::string_view outcome = r.outcome == DOutcome::exact      ? "exact"
                               : r.outcome == DOutcome::exceeds ? "exceeds"
                                                                : "inconclusive";
    emit(out, {{"outcome", outcome},
               {"value", r.value},
               {"witness", r.witness ? json(r.witness->labels) : json(nullptr)},
               {"candidates", r.candidates},
               {"budget", r.budget}});
  });
}

psym_status psym_orbitals(const psym_group* g, int ordered, char** out) {
  return guarded([&] {
    need(g, "group");
    need(out, "out");
    auto classes = orbitals(g->group, ordered != 0);
    json list = json::array();
    for (const auto& c : classes) {
      json pairs = json::array();
      for (auto [x, y] : c) pairs.push_back({x + 1, y + 1});
      list.push_back(pairs);
    }
    emit(out, {{"ordered", ordered != 0}, {"count", classes.size()}, {"orbitals", list}});
  });
}

psym_status psym_predict_d(const psym_group* g, char** out) {
  return guarded([&] {
    need(g, "group");
    need(out, "out");
    Prediction p = predict_D(g->group);
    emit(out, {{"value", p.value}, {"rule", p.rule}});
  });
}

psym_status psym_decompose(const psym_group* g, const char* x1, char** out) {
  return guarded([&] {
    need(g, "group");
    need(x1, "x1");
    need(out, "out");
    const PermGroup& G = g->group;
    PointSet a = parse_point_set(x1, G.degree(), 0);
    PointSet b = complement(a, G.degree());
    Decomposition d = decompose(G, a, b);
    bool h1_full = d.h1.order() == d.g1.order(), h2_full = d.h2.order() == d.g2.order();
    std::string kind = h1_full && h2_full                        ? "direct"
                       : d.h1.is_trivial() && d.h2.is_trivial() ? "parallel"
                                                                 : "subdirect";
    json pairs = json::array();
    for (const auto& [r, s] : d.spec.quotient_pairs)
      pairs.push_back({render_cycles(r), render_cycles(s)});
    emit(out, {{"x1", points(a)},
               {"x2", points(b)},
               {"kind", kind},
               {"g1", plain_spec(d.g1)},
               {"g2", plain_spec(d.g2)},
               {"h1", plain_spec(d.h1)},
               {"h2", plain_spec(d.h2)},
               {"orders", {{"g", str(G.order())},
                           {"g1", str(d.g1.order())},
                           {"g2", str(d.g2.order())},
                           {"h1", str(d.h1.order())},
                           {"h2", str(d.h2.order())}}},
               {"quotient_pairs", pairs},
               {"reconstructs", same_group(reconstruct(d), G)}});
  });
}

psym_status psym_catalog_list(char** out) {
  return guarded([&] {
    need(out, "out");
    json list = json::array();
    for (const auto& id : catalog_ids()) {
      const CatalogEntry& e = catalog_entry(id);
      list.push_back({{"id", e.id},
                      {"name", e.name},
                      {"kind", kind_name(e.kind)},
                      {"degree", e.degree},
                      {"claimed_order", str(e.claimed_order)},
                      {"claimed_D", e.claimed_D ? json(*e.claimed_D) : json(nullptr)},
                      {"aliases", e.aliases},
                      {"provenance", e.provenance},
                      {"tables", e.tables},
                      {"resolved", e.resolution_error.empty()}});
    }
    emit(out, {{"entries", list}});
  });
}

psym_status psym_catalog_show(const char* id, char** out) {
  return guarded([&] {
    need(id, "id");
    need(out, "out");
    const CatalogEntry& e = catalog_entry(id);
    json repairs = json::array();
    for (const auto& r : e.repairs)
      repairs.push_back({{"field", r.field},
                         {"printed", r.printed},
                         {"corrected", r.corrected},
                         {"reason", r.reason},
                         {"applied", r.applied},
                         {"outcome", r.outcome}});
    emit(out, {{"id", e.id},
               {"name", e.name},
               {"abstract", e.abstract_name},
               {"kind", kind_name(e.kind)},
               {"provenance", e.provenance},
               {"degree", e.degree},
               {"blocks", e.blocks},
               {"printed_generators", e.printed_generators},
               {"generators", e.generator_texts},
               {"claimed_order", str(e.claimed_order)},
               {"claimed_D", e.claimed_D ? json(*e.claimed_D) : json(nullptr)},
               {"regular_set", e.claimed_regular_set ? json(points(*e.claimed_regular_set))
                                                     : json(nullptr)},
               {"regular_set_in_double", e.regular_set_in_double},
               {"repairs", repairs},
               {"resolution_error", e.resolution_error}});
  });
}

psym_status psym_verify_entry(const char* id, psym_effort effort, uint64_t seed, uint64_t budget,
                              char** out) {
  return guarded([&] {
    need(id, "id");
    need(out, "out");
    *out = dup(reports_to_json({verify_entry(id, verify_options(effort, seed, budget))}));
  });
}

psym_status psym_verify_paper(unsigned selection, psym_effort effort, uint64_t seed,
                              uint64_t budget, char** out) {
  return guarded([&] {
    need(out, "out");
    PaperSelection sel = PaperSelection::all();
    if (selection) {
      sel.table1 = selection & PSYM_PAPER_TABLE1;
      sel.table1b = selection & PSYM_PAPER_TABLE1B;
      sel.table2 = selection & PSYM_PAPER_TABLE2;
      sel.lemma32 = selection & PSYM_PAPER_LEMMA32;
      sel.lemma33 = selection & PSYM_PAPER_LEMMA33;
      sel.theorem = selection & PSYM_PAPER_THEOREM;
    }
    *out = dup(reports_to_json(verify_paper(sel, verify_options(effort, seed, budget))));
  });
}

}  // extern "C"
