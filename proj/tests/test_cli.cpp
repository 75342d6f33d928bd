#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "permsym/spec_io.hpp"
#include "permsym/verify.hpp"

using namespace permsym;
using nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

std::string quote(const std::string& arg) {
  std::string out = "'";
  for (char c : arg) out += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return out + "'";
}

Run run(const std::vector<std::string>& args) {
  std::string cmd = quote(PERMSYM_CLI_PATH);
  for (const auto& a : args) cmd += " " + quote(a);
  cmd += " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::vector<VerificationReport> without_times(std::vector<VerificationReport> reports) {
  for (auto& r : reports) r.elapsed_ms = 0;
  return reports;
}

bool all_pass(const std::vector<VerificationReport>& reports) {
  for (const auto& r : reports)
    for (const auto& c : r.checks)
      if (c.status != CheckStatus::pass) return false;
  return true;
}

}  // namespace

TEST_CASE("verify-paper table 1 at quick effort") {
  Run r = run({"verify-paper", "--table", "1", "--effort", "quick"});
  CHECK(r.code == 0);
  CHECK(r.out.find("14 passed, 0 failed, 0 inconclusive") != std::string::npos);
}

TEST_CASE("distinguishing prints D first") {
  Run r = run({"distinguishing", "A5"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("4\n", 0) == 0);
  Run spec = run({"distinguishing", R"j({"degree": 5, "generators": ["(1,2,3,4,5)", "(1,2,3)"]})j"});
  CHECK(spec.code == 0);
  CHECK(spec.out.rfind("4\n", 0) == 0);
}

TEST_CASE("input errors exit 2") {
  CHECK(run({"info", "{\"degree\": 3, \"generators\": [\"(1,4)\"]}"}).code == 2);
  CHECK(run({"info", "{"}).code == 2);
  CHECK(run({"info", "NoSuchGroup"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"verify-paper", "--table", "7"}).code == 2);
}

TEST_CASE("query exit codes") {
  CHECK(run({"regular-set", "A6||psi"}).code == 1);
  CHECK(run({"regular-set", "L2(5)^(2)", "--set", "{1,2,3,8,10,12}"}).code == 0);
  CHECK(run({"regular-set", "A6||psi", "--budget", "5"}).code == 3);
  CHECK(run({"distinguishing", "S6", "--k-max", "3"}).code == 1);
  Run orb = run({"orbitals", "A6||psi"});
  CHECK(orb.code == 0);
  CHECK(orb.out.rfind("3 unordered orbitals", 0) == 0);
  Run predict = run({"predict", "M12"});
  CHECK(predict.out.rfind("4 ", 0) == 0);
  Run dec = run({"decompose", "A6||psi", "--x1", "{1,2,3,4,5,6}"});
  CHECK(dec.code == 0);
  CHECK(dec.out.find("kind: parallel") != std::string::npos);
  Run info = run({"info", "L2(9)"});
  CHECK(info.out.find("order: 360") != std::string::npos);
  CHECK(info.out.find("identified: L2(9)") != std::string::npos);
  CHECK(run({"catalog", "list"}).code == 0);
  CHECK(run({"catalog", "show", "L4(2)"}).out.find("repair generators[1]: applied") !=
        std::string::npos);
  CHECK(run({"--version"}).code == 0);
}

TEST_CASE("sum from a spec file") {
  auto path = std::filesystem::temp_directory_path() / "permsym_cli_sum.json";
  std::ofstream(path) << R"j({"sum": {"kind": "multiple", "components": ["A6"], "r": 2}})j";
  Run r = run({"--json", "sum", path.string()});
  std::filesystem::remove(path);
  REQUIRE(r.code == 0);
  json doc = json::parse(r.out);
  CHECK(doc["order"] == "360");
  CHECK(doc["degree"] == 12);
}

TEST_CASE("--json reports round-trip to the in-process reports") {
  struct Case {
    std::vector<std::string> args;
    PaperSelection selection;
  };
  PaperSelection t1b, t2, l33, theorem;
  t1b.table1b = true;
  t2.table2 = true;
  l33.lemma33 = true;
  theorem.theorem = true;
  std::vector<Case> cases = {{{"--table", "1b"}, t1b},
                             {{"--table", "2"}, t2},
                             {{"--lemma", "3.3"}, l33},
                             {{"--theorem"}, theorem}};
  for (const auto& c : cases) {
    std::vector<std::string> args = {"--json", "verify-paper"};
    args.insert(args.end(), c.args.begin(), c.args.end());
    CAPTURE(args[2]);
    Run r = run(args);
    auto parsed = reports_from_json(r.out);
    auto local = verify_paper(c.selection);
    CHECK(without_times(parsed) == without_times(local));
    CHECK((r.code == 0) == all_pass(local));
  }
  Run entry = run({"--json", "verify-entry", "M11@12||M11"});
  CHECK(without_times(reports_from_json(entry.out)) ==
        without_times({verify_entry("M11@12||M11")}));
  CHECK(entry.code == 0);
}

TEST_CASE("exit 0 only when every check passes") {
  Run full = run({"verify-entry", "M22", "--effort", "full"});
  VerificationReport local = verify_entry("M22", {.effort = Effort::full});
  CHECK(local.overall() == CheckStatus::inconclusive);
  CHECK(full.code == 3);
  Run quick = run({"verify-entry", "M22"});
  CHECK(quick.code == 0);
}
