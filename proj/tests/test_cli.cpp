// Runs the installed-style binary as a subprocess.

#include <doctest.h>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  std::string cmd = std::string(TCRCALC_BINARY) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  Run r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

nlohmann::json json_of(const Run& r) { return nlohmann::json::parse(r.out); }

}  // namespace

TEST_CASE("witt") {
  Run r = run("witt --ring Z/2 --level 3 --format json");
  CHECK(r.code == 0);
  CHECK(json_of(r)["group"]["invariants"] == nlohmann::json::parse("[8]"));
  Run t = run("witt --ring Z/2 --level 3");
  CHECK(t.code == 0);
  CHECK(t.out.find("ℤ/8") != std::string::npos);
}

TEST_CASE("mu output is minimal when it is an isomorphism") {
  Run r = run("mu --ring Z/9 --format json");
  CHECK(r.code == 0);
  CHECK(json_of(r) == nlohmann::json::parse(R"({"mu_iso": true})"));
  Run bad = run("mu --ring 'Z/4[C2]' --format json");
  CHECK(bad.code == 0);
  CHECK(json_of(bad)["mu_iso"] == false);
}

TEST_CASE("tcr of the integers") {
  Run r = run("tcr phi --ring Z --prime 2 --window -1:4 --format json");
  CHECK(r.code == 0);
  nlohmann::json j = json_of(r);
  CHECK(j["oracle_checked"] == true);
  CHECK(j["groups"]["0"] == nlohmann::json::parse("[8]"));
  CHECK(j["groups"]["2"] == nlohmann::json::parse("[]"));
}

TEST_CASE("bar construction") {
  Run r = run("bar --group C2 --format json");
  CHECK(r.code == 0);
  CHECK(json_of(r)["psi"]["image"] == nlohmann::json::parse("[0, 0, 3, 3]"));
  Run z = run("bar --group Z --format json");
  CHECK(z.code == 0);
  CHECK(json_of(z)["closed_form"]["ok"] == true);
}

TEST_CASE("exit codes") {
  CHECK(run("witt --ring Q").code == 2);
  CHECK(run("tcr phi --ring Z/2 --window 0:100").code == 2);
  CHECK(run("nonsense").code == 2);
  CHECK(run("tcr phi --ring Z/4 --prime 2").code == 3);
  Run refusal = run("green --ring 'Z/4[C2]' --format json");
  CHECK(refusal.code == 3);
  CHECK(json_of(refusal)["refusal"] == "mu-iso");
  CHECK(run("bar --group 'ZxS3'").code == 3);
}

TEST_CASE("json output is deterministic") {
  for (const char* args : {"trr tower --ring Z/2 --level 2 --window 0:4 --format json",
                           "green ml --ring Z/8 --depth 2 --format json", "bredon norm --level 4 --format json"}) {
    CAPTURE(args);
    Run a = run(args), b = run(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("fixtures subcommand") {
  Run one = run("fixtures --fixture c01-witt-f2-n2 --format json");
  CHECK(one.code == 0);
  nlohmann::json j = json_of(one);
  CHECK(j["passed"] == 1);
  CHECK(j["failed"] == 0);
  CHECK(run("fixtures --fixture no-such-id").code == 2);

  const std::string path = "tcrcalc_corrupt_fixtures.json";
  {
    std::ofstream f(path);
    f << "{\"fixtures\": [ {\"id\": ";
  }
  CHECK(run("fixtures --file " + path).code == 2);

  {
    std::ofstream f(path);
    f << R"({"fixtures": [{"id": "x", "criterion": 1, "kind": "command",
             "params": {"command": "witt", "ring": "Z/2", "level": 2}, "expect": {"group": {"invariants": [2]}}}]})";
  }
  Run failing = run("fixtures --file " + path + " --format json");
  CHECK(failing.code == 1);
  CHECK(json_of(failing)["failed"] == 1);
  std::remove(path.c_str());
}

TEST_CASE("text rendering lists degrees in order") {
  Run r = run("tcr phi --ring Z/2 --prime 2 --window -1:2");
  CHECK(r.code == 0);
  auto a = r.out.find("π_-1"), b = r.out.find("π_0"), c = r.out.find("π_2");
  CHECK(a != std::string::npos);
  CHECK(a < b);
  CHECK(b < c);
}
