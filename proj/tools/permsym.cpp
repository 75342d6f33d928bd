#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "permsym/permsym.h"

namespace {

using nlohmann::json;

enum Exit { exit_pass = 0, exit_fail = 1, exit_usage = 2, exit_inconclusive = 3 };

struct Failure {
  int code;
  std::string message;
};

struct GroupDeleter {
  void operator()(psym_group* g) const { psym_group_free(g); }
};
using Group = std::unique_ptr<psym_group, GroupDeleter>;

void check(psym_status s) {
  if (s == PSYM_OK) return;
  int code = s == PSYM_BUDGET_EXCEEDED ? exit_inconclusive : exit_usage;
  throw Failure{code, psym_last_error()};
}

json take(char* text) {
  json doc = json::parse(text);
  psym_string_free(text);
  return doc;
}

std::string read_argument(const std::string& arg) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(arg, ec)) {
    std::ifstream in(arg);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  return arg;
}

Group load_group(const std::string& arg) {
  psym_group* g = nullptr;
  check(psym_group_from_spec(read_argument(arg).c_str(), &g));
  return Group(g);
}

std::string set_text(const json& pts) {
  std::string out = "{";
  for (std::size_t i = 0; i < pts.size(); ++i) out += (i ? "," : "") + pts[i].dump();
  return out + "}";
}

std::string join(const json& items, const std::string& sep) {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : sep) + s.get<std::string>();
  return out;
}

struct Global {
  bool json_out = false;
  std::uint64_t seed = 0;
  std::uint64_t budget = 0;
};

int finish(const Global& g, const json& doc, const std::string& text, int code) {
  if (g.json_out)
    std::cout << doc.dump(2) << "\n";
  else
    std::cout << text;
  return code;
}

int cmd_info(const Global& g, const std::string& spec) {
  Group grp = load_group(spec);
  char* out = nullptr;
  check(psym_group_info(grp.get(), &out));
  json doc = take(out);
  std::ostringstream os;
  os << "degree: " << doc["degree"] << "\n"
     << "order: " << doc["order"].get<std::string>() << "\n"
     << "generators: " << join(doc["generators"], " ") << "\n"
     << "orbits:";
  for (const auto& o : doc["orbits"]) os << " " << set_text(o);
  os << "\ntransitive: " << (doc["transitive"].get<bool>() ? "yes" : "no") << "\n";
  if (!doc["primitive"].is_null())
    os << "primitive: " << (doc["primitive"].get<bool>() ? "yes" : "no") << "\n";
  os << "fixed points: " << set_text(doc["fixed_points"]) << "\n";
  if (doc.contains("identified"))
    os << "identified: "
       << (doc["identified"].is_null()
               ? (doc["candidates"].empty() ? std::string("none")
                                            : "ambiguous (" + join(doc["candidates"], ", ") + ")")
               : doc["identified"].get<std::string>())
       << "\n";
  return finish(g, doc, os.str(), exit_pass);
}

int cmd_regular_set(const Global& g, const std::string& spec, const std::string& set,
                    std::size_t min_size, std::size_t max_size, bool randomized) {
  Group grp = load_group(spec);
  char* out = nullptr;
  if (!set.empty()) {
    check(psym_check_set(grp.get(), set.c_str(), &out));
    json doc = take(out);
    bool regular = doc["regular"].get<bool>();
    std::ostringstream os;
    os << set_text(doc["set"]) << (regular ? " is regular" : " is not regular")
       << " (stabilizer order " << doc["stabilizer_order"].get<std::string>() << ")\n";
    if (!doc["witness"].is_null())
      os << "preserved by " << doc["witness"].get<std::string>() << "\n";
    return finish(g, doc, os.str(), regular ? exit_pass : exit_fail);
  }
  psym_search_options opt{g.budget, g.seed, randomized ? 1 : 0, min_size, max_size};
  check(psym_regular_set(grp.get(), &opt, &out));
  json doc = take(out);
  std::string outcome = doc["outcome"].get<std::string>();
  std::ostringstream os;
  std::string note = doc["mode"].get<std::string>() + ", " + doc["candidates"].dump() +
                     " candidates, budget " + doc["budget"].dump();
  if (doc["mode"] == "randomized") note += ", seed " + doc["seed"].dump();
  if (outcome == "found") {
    os << "regular set: " << set_text(doc["set"]) << " (" << note << ")\n";
    return finish(g, doc, os.str(), exit_pass);
  }
  if (outcome == "none") {
    os << "no regular set (" << note << ")\n";
    return finish(g, doc, os.str(), exit_fail);
  }
  os << "inconclusive: budget exhausted (" << note << ")\n";
  return finish(g, doc, os.str(), exit_inconclusive);
}

int cmd_distinguishing(const Global& g, const std::string& spec, std::uint32_t k_max) {
  Group grp = load_group(spec);
  char* out = nullptr;
  check(psym_distinguishing(grp.get(), k_max, g.budget, &out));
  json doc = take(out);
  std::string outcome = doc["outcome"].get<std::string>();
  std::ostringstream os;
  int code = exit_pass;
  if (outcome == "exact") {
    os << doc["value"] << "\n";
    std::string labels;
    for (const auto& l : doc["witness"]) labels += (labels.empty() ? "" : ",") + l.dump();
    os << "labeling: [" << labels << "]\n";
  } else if (outcome == "exceeds") {
    os << "D > " << doc["value"] << "\n";
    code = exit_fail;
  } else {
    os << "inconclusive at k = " << doc["value"] << " after " << doc["candidates"]
       << " candidates (budget " << doc["budget"] << ")\n";
    code = exit_inconclusive;
  }
  return finish(g, doc, os.str(), code);
}

int cmd_orbitals(const Global& g, const std::string& spec, bool ordered) {
  Group grp = load_group(spec);
  char* out = nullptr;
  check(psym_orbitals(grp.get(), ordered ? 1 : 0, &out));
  json doc = take(out);
  std::ostringstream os;
  os << doc["count"] << (ordered ? " ordered" : " unordered") << " orbitals\n";
  for (const auto& cls : doc["orbitals"]) {
    os << "  " << cls.size() << " pairs:";
    std::size_t shown = 0;
    for (const auto& p : cls) {
      if (shown++ == 6) {
        os << " ...";
        break;
      }
      os << " (" << p[0] << "," << p[1] << ")";
    }
    os << "\n";
  }
  return finish(g, doc, os.str(), exit_pass);
}

int cmd_predict(const Global& g, const std::string& spec) {
  Group grp = load_group(spec);
  char* out = nullptr;
  check(psym_predict_d(grp.get(), &out));
  json doc = take(out);
  std::ostringstream os;
  os << doc["value"] << " (" << doc["rule"].get<std::string>() << ")\n";
  return finish(g, doc, os.str(), exit_pass);
}

int cmd_sum(const Global& g, const std::string& spec) {
  Group grp = load_group(spec);
  char *out = nullptr, *order = nullptr;
  check(psym_group_spec(grp.get(), &out));
  check(psym_group_order(grp.get(), &order));
  json doc = take(out);
  doc["order"] = std::string(order);
  psym_string_free(order);
  std::ostringstream os;
  os << "degree: " << doc["degree"] << "\norder: " << doc["order"].get<std::string>()
     << "\ngenerators: " << join(doc["generators"], " ") << "\n";
  return finish(g, doc, os.str(), exit_pass);
}

int cmd_decompose(const Global& g, const std::string& spec, const std::string& x1) {
  Group grp = load_group(spec);
  char* out = nullptr;
  check(psym_decompose(grp.get(), x1.c_str(), &out));
  json doc = take(out);
  const json& o = doc["orders"];
  std::ostringstream os;
  os << "X1 = " << set_text(doc["x1"]) << ", X2 = " << set_text(doc["x2"]) << "\n"
     << "kind: " << doc["kind"].get<std::string>() << "\n"
     << "|G| = " << o["g"].get<std::string>() << ", |G1| = " << o["g1"].get<std::string>()
     << ", |G2| = " << o["g2"].get<std::string>() << ", |H1| = " << o["h1"].get<std::string>()
     << ", |H2| = " << o["h2"].get<std::string>() << "\n"
     << "G1: " << join(doc["g1"]["generators"], " ") << "\n"
     << "G2: " << join(doc["g2"]["generators"], " ") << "\n"
     << "reconstruction " << (doc["reconstructs"].get<bool>() ? "equals G" : "differs from G")
     << "\n";
  return finish(g, doc, os.str(), doc["reconstructs"].get<bool>() ? exit_pass : exit_fail);
}

int report_exit(const std::string& status) {
  if (status == "pass") return exit_pass;
  if (status == "fail") return exit_fail;
  return exit_inconclusive;
}

std::string render_reports(const json& doc) {
  std::ostringstream os;
  std::size_t counts[3] = {0, 0, 0};
  for (const auto& r : doc["reports"]) {
    std::string status = r["status"].get<std::string>();
    counts[status == "pass" ? 0 : status == "fail" ? 1 : 2]++;
    std::string tag = status == "pass" ? "PASS" : status == "fail" ? "FAIL" : "INCONCLUSIVE";
    os << tag << " " << r["id"].get<std::string>() << " ("
       << static_cast<long long>(r["elapsed_ms"].get<double>()) << " ms)\n";
    for (const auto& c : r["checks"])
      if (c["status"] != "pass")
        os << "  " << c["status"].get<std::string>() << " " << c["name"].get<std::string>()
           << ": " << c["details"].get<std::string>() << "\n";
  }
  os << counts[0] << " passed, " << counts[1] << " failed, " << counts[2] << " inconclusive\n";
  return os.str();
}

int cmd_verify(const Global& g, const std::vector<std::string>& tables,
               const std::vector<std::string>& lemmas, bool theorem, const std::string& effort) {
  unsigned sel = 0;
  for (const auto& t : tables)
    sel |= t == "1" ? PSYM_PAPER_TABLE1 : t == "1b" ? PSYM_PAPER_TABLE1B : PSYM_PAPER_TABLE2;
  for (const auto& l : lemmas) sel |= l == "3.2" ? PSYM_PAPER_LEMMA32 : PSYM_PAPER_LEMMA33;
  if (theorem) sel |= PSYM_PAPER_THEOREM;
  char* out = nullptr;
  check(psym_verify_paper(sel, effort == "full" ? PSYM_EFFORT_FULL : PSYM_EFFORT_QUICK, g.seed,
                          g.budget, &out));
  json doc = take(out);
  return finish(g, doc, render_reports(doc), report_exit(doc["status"].get<std::string>()));
}

int cmd_verify_entry(const Global& g, const std::string& id, const std::string& effort) {
  char* out = nullptr;
  check(psym_verify_entry(id.c_str(), effort == "full" ? PSYM_EFFORT_FULL : PSYM_EFFORT_QUICK,
                          g.seed, g.budget, &out));
  json doc = take(out);
  return finish(g, doc, render_reports(doc), report_exit(doc["status"].get<std::string>()));
}

int cmd_catalog_list(const Global& g) {
  char* out = nullptr;
  check(psym_catalog_list(&out));
  json doc = take(out);
  std::ostringstream os;
  for (const auto& e : doc["entries"]) {
    os << e["id"].get<std::string>() << "\t" << e["name"].get<std::string>() << "\tdegree "
       << e["degree"] << "\torder " << e["claimed_order"].get<std::string>();
    if (!e["claimed_D"].is_null()) os << "\tD " << e["claimed_D"];
    os << "\t" << e["provenance"].get<std::string>() << "\n";
  }
  return finish(g, doc, os.str(), exit_pass);
}

int cmd_catalog_show(const Global& g, const std::string& id) {
  char* out = nullptr;
  check(psym_catalog_show(id.c_str(), &out));
  json doc = take(out);
  std::ostringstream os;
  os << doc["id"].get<std::string>() << ": " << doc["name"].get<std::string>() << "\n"
     << "provenance: " << doc["provenance"].get<std::string>() << "\n"
     << "degree: " << doc["degree"] << "\n"
     << "claimed order: " << doc["claimed_order"].get<std::string>() << "\n"
     << "generators: " << join(doc["generators"], " ") << "\n";
  if (!doc["claimed_D"].is_null()) os << "claimed D: " << doc["claimed_D"] << "\n";
  for (const auto& r : doc["repairs"])
    os << "repair " << r["field"].get<std::string>() << ": "
       << (r["applied"].get<bool>() ? "applied" : "not applied") << " ("
       << r["outcome"].get<std::string>() << ")\n";
  if (!doc["resolution_error"].get<std::string>().empty())
    os << "resolution failed: " << doc["resolution_error"].get<std::string>() << "\n";
  return finish(g, doc, os.str(), doc["resolution_error"].get<std::string>().empty()
                                      ? exit_pass
                                      : exit_fail);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Permutation groups, parallel sums and distinguishing numbers"};
  app.require_subcommand(1);
  app.fallthrough();
  Global global;
  app.add_flag("--json", global.json_out, "Machine-readable output");
  app.add_option("--seed", global.seed, "Seed for randomized searches");
  app.add_option("--budget", global.budget, "Candidate budget for searches");
  app.set_version_flag("--version", psym_version());

  std::string spec, set, x1, effort = "quick", id;
  std::size_t min_size = 0, max_size = SIZE_MAX;
  std::uint32_t k_max = 0;
  bool randomized = false, ordered = false, theorem = false;
  std::vector<std::string> tables, lemmas;
  int code = exit_pass;

  const char* group_help = "Group spec file, inline JSON, or group name";
  auto* info = app.add_subcommand("info", "Order, orbits, transitivity, primitivity");
  info->add_option("group", spec, group_help)->required();

  auto* regular = app.add_subcommand("regular-set", "Find or check a regular set");
  regular->add_option("group", spec, group_help)->required();
  regular->add_option("--set", set, "Check this set, written {1,2,...}");
  regular->add_option("--min", min_size, "Smallest size searched");
  regular->add_option("--max", max_size, "Largest size searched");
  regular->add_flag("--randomized", randomized, "Random sampling instead of exhaustive search");

  auto* dist = app.add_subcommand("distinguishing", "Distinguishing number");
  dist->add_option("group", spec, group_help)->required();
  dist->add_option("--k-max", k_max, "Largest number of labels tried (default: degree)");

  auto* orb = app.add_subcommand("orbitals", "Orbits on pairs of distinct points");
  orb->add_option("group", spec, group_help)->required();
  orb->add_flag("--ordered", ordered, "Ordered pairs instead of unordered");

  auto* predict = app.add_subcommand("predict", "Distinguishing number of a simple group by rule");
  predict->add_option("group", spec, group_help)->required();

  auto* sum = app.add_subcommand("sum", "Build a group from a sum expression");
  sum->add_option("spec", spec, "Group spec file or inline JSON")->required();

  auto* dec = app.add_subcommand("decompose", "Split an intransitive group over X1 and its complement");
  dec->add_option("group", spec, group_help)->required();
  dec->add_option("--x1", x1, "Union of orbits, written {1,2,...}")->required();

  auto* verify = app.add_subcommand("verify-paper", "Verify the published tables, lemmas and theorem");
  verify->add_option("--table", tables, "1, 1b or 2")->check(CLI::IsMember({"1", "1b", "2"}));
  verify->add_option("--lemma", lemmas, "3.2 or 3.3")->check(CLI::IsMember({"3.2", "3.3"}));
  verify->add_flag("--theorem", theorem, "Distinguishing numbers and orbitals of simple groups");
  verify->add_option("--effort", effort, "quick or full")->check(CLI::IsMember({"quick", "full"}));

  auto* entry = app.add_subcommand("verify-entry", "Verify one catalog entry");
  entry->add_option("id", id, "Catalog id")->required();
  entry->add_option("--effort", effort, "quick or full")->check(CLI::IsMember({"quick", "full"}));

  auto* catalog = app.add_subcommand("catalog", "Catalog of named groups and sums");
  catalog->require_subcommand(1);
  auto* list = catalog->add_subcommand("list", "List catalog entries");
  auto* show = catalog->add_subcommand("show", "Show one catalog entry");
  show->add_option("id", id, "Catalog id or alias")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? exit_pass : exit_usage;
  }

  try {
    if (*info) code = cmd_info(global, spec);
    else if (*regular) code = cmd_regular_set(global, spec, set, min_size, max_size, randomized);
    else if (*dist) code = cmd_distinguishing(global, spec, k_max);
    else if (*orb) code = cmd_orbitals(global, spec, ordered);
    else if (*predict) code = cmd_predict(global, spec);
    else if (*sum) code = cmd_sum(global, spec);
    else if (*dec) code = cmd_decompose(global, spec, x1);
    else if (*verify) code = cmd_verify(global, tables, lemmas, theorem, effort);
    else if (*entry) code = cmd_verify_entry(global, id, effort);
    else if (*list) code = cmd_catalog_list(global);
    else if (*show) code = cmd_catalog_show(global, id);
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  }
  return code;
}
