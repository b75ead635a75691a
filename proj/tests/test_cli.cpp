#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "json.hpp"

namespace {

struct CliResult {
  int exit_code;
  std::string output;  // stdout and stderr combined
};

std::string binary_path() {
  const char* env = std::getenv("RECPAIR_BIN");
  REQUIRE_MESSAGE(env != nullptr, "RECPAIR_BIN must point at the recpair binary");
  return env;
}

CliResult run_cli(const std::string& args) {
  std::string command = binary_path() + " " + args + " 2>&1";
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string output;
  char buffer[4096];
  std::size_t got;
  while ((got = fread(buffer, 1, sizeof buffer, pipe)) > 0) output.append(buffer, got);
  int status = pclose(pipe);
  int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return {code, output};
}

class TempFile {
public:
  TempFile(const std::string& name, const std::string& contents) {
    path_ = std::filesystem::temp_directory_path() / ("recpair_cli_" + name);
    std::ofstream out(path_);
    out << contents;
  }
  ~TempFile() { std::filesystem::remove(path_); }
  std::string path() const { return path_.string(); }

private:
  std::filesystem::path path_;
};

constexpr const char* kShiftText =
    "(VAR x y)\n"
    "f(x,s(y)) -> f(s(s(x)),y)\n"
    "f(x,0) -> f(s(0),x)\n";

constexpr const char* kCopyText =
    "(VAR x y)\n"
    "f(x,s(y)) -> f(s(x),y)\n"
    "f(x,0) -> f(x,s(x))\n";

constexpr const char* kUnaryText =
    "(VAR x)\n"
    "f(x) -> s(x)\n"
    "f(g(x,0)) -> f(x)\n";

}  // namespace

TEST_CASE("detect: verified certificate exits 0") {
  TempFile file("copy.trs", kCopyText);
  CliResult r = run_cli("detect " + file.path());
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("n1=1 n2=0 n3=1") != std::string::npos);
  CHECK(r.output.find("trs: 8/8 segments verified") != std::string::npos);
  CHECK(r.output.find("lp: 8/8 segments verified") != std::string::npos);
}

TEST_CASE("detect: json output carries the certificate") {
  TempFile file("copy.trs", kCopyText);
  CliResult r = run_cli("detect --json " + file.path());
  CHECK(r.exit_code == 0);
  auto parsed = nlohmann::json::parse(r.output);
  REQUIRE(parsed["certificates"].size() == 1);
  const auto& cert = parsed["certificates"][0];
  CHECK(cert["r1_index"] == 0);
  CHECK(cert["r2_index"] == 1);
  CHECK(cert["f"] == "f");
  CHECK(cert["c"] == "s([])");
  CHECK(cert["s"] == "0");
  CHECK(cert["t"] == "x");
  CHECK(cert["n1"] == 1);
  CHECK(cert["n2"] == 0);
  CHECK(cert["n3"] == 1);
  CHECK(cert["verified_trs"] == true);
  CHECK(cert["verified_lp"] == true);
  REQUIRE(cert["witness"].size() == 8);
  CHECK(cert["witness"][0]["pi"] == "0");
  CHECK(cert["witness"][0]["pi_prime"] == "1");
  CHECK(cert["witness"][0]["term"] == "f(0,s(0))");
  CHECK(cert["witness"][2]["term"] == "f(s(s(s(0))),s(s(s(s(0)))))");
}

TEST_CASE("detect: identical runs produce identical json, timing aside") {
  TempFile file("shift.trs", kShiftText);
  CliResult a = run_cli("detect --json " + file.path());
  CliResult b = run_cli("detect --json " + file.path());
  auto ja = nlohmann::json::parse(a.output);
  auto jb = nlohmann::json::parse(b.output);
  ja.erase("elapsed_ms");
  jb.erase("elapsed_ms");
  CHECK(ja.dump() == jb.dump());
}

TEST_CASE("detect: mode restriction leaves the other flag null") {
  TempFile file("shift.trs", kShiftText);
  CliResult r = run_cli("detect --json --mode trs " + file.path());
  CHECK(r.exit_code == 0);
  auto parsed = nlohmann::json::parse(r.output);
  CHECK(parsed["certificates"][0]["verified_trs"] == true);
  CHECK(parsed["certificates"][0]["verified_lp"].is_null());
}

TEST_CASE("detect: no certificate exits 1") {
  TempFile file("unary.trs", kUnaryText);
  CliResult r = run_cli("detect " + file.path());
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("no recurrent pair") != std::string::npos);
}

TEST_CASE("detect: input errors exit 2") {
  TempFile empty("empty.trs", "# only a comment\n");
  CHECK(run_cli("detect " + empty.path()).exit_code == 2);
  TempFile broken("broken.trs", "(VAR x)\nf(x -> x\n");
  CliResult r = run_cli("detect " + broken.path());
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("line 2") != std::string::npos);
  CHECK(run_cli("detect /nonexistent/program.trs").exit_code == 2);
  CHECK(run_cli("detect --mode sideways " + empty.path()).exit_code == 2);
  CHECK(run_cli("").exit_code == 2);
}

TEST_CASE("detect: a tight size cap still exits 0 with a note") {
  TempFile file("shift.trs", kShiftText);
  CliResult r = run_cli("detect --max-term-size 40 " + file.path());
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("size guard reached") != std::string::npos);
}

TEST_CASE("witness: selects one rule pair") {
  TempFile file("shift.trs", kShiftText);
  CliResult hit = run_cli("witness --pair 0,1 --steps 4 " + file.path());
  CHECK(hit.exit_code == 0);
  CHECK(hit.output.find("4/4 segments verified") != std::string::npos);

  CliResult miss = run_cli("witness --pair 1,0 " + file.path());
  CHECK(miss.exit_code == 1);

  CHECK(run_cli("witness --pair 5,0 " + file.path()).exit_code == 2);
  CHECK(run_cli("witness --pair nonsense " + file.path()).exit_code == 2);
  CHECK(run_cli("witness " + file.path()).exit_code == 2);  // --pair required
}

TEST_CASE("rewrite: narrowing reaches f(0) in one step") {
  TempFile file("unary.trs", kUnaryText);
  CliResult r = run_cli("rewrite --term 'f(g(x,x))' --rule 1 --mode lp " + file.path());
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("~>[1] f(0)") != std::string::npos);
  CHECK(r.output.find("1 step(s) applied") != std::string::npos);
}

TEST_CASE("rewrite: instantiation steps and rule selection") {
  TempFile file("unary.trs", kUnaryText);
  CliResult r = run_cli("rewrite --term 'f(f(x))' --rule 0 --mode trs " + file.path());
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("->[0] s(f(x))") != std::string::npos);

  // first applicable rule in program order when --rule is absent
  CliResult multi = run_cli("rewrite --term 'f(f(x))' --steps 3 --mode trs " + file.path());
  CHECK(multi.exit_code == 0);
  CHECK(multi.output.find("->[0] s(f(x))") != std::string::npos);
  CHECK(multi.output.find("1 step(s) applied") != std::string::npos);  // s(...) is stuck

  CliResult stuck = run_cli("rewrite --term 0 --mode trs " + file.path());
  CHECK(stuck.exit_code == 1);
  CHECK(stuck.output.find("0 step(s) applied") != std::string::npos);

  CHECK(run_cli("rewrite --term 'f(x,x)' --mode trs " + file.path()).exit_code == 2);
  CHECK(run_cli("rewrite --term 'f(f(x))' --mode trs --rule 7 " + file.path()).exit_code == 2);
  CHECK(run_cli("rewrite --term 'f(f(x))' " + file.path()).exit_code == 2);  // --mode required
}

TEST_CASE("detect: file mode hint narrows the default") {
  TempFile file("hinted.trs", std::string("(MODE trs)\n") + kShiftText);
  CliResult r = run_cli("detect --json " + file.path());
  CHECK(r.exit_code == 0);
  auto parsed = nlohmann::json::parse(r.output);
  CHECK(parsed["certificates"][0]["verified_trs"] == true);
  CHECK(parsed["certificates"][0]["verified_lp"].is_null());
}
