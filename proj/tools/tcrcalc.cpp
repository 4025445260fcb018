// tcrcalc: command-line front end.

#include "tcrcalc/commands.hpp"
#include "tcrcalc/errors.hpp"
#include "tcrcalc/fixtures.hpp"

#include <CLI11.hpp>

#include <pthread.h>
#include <signal.h>

#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

namespace {

using namespace tcrcalc;

constexpr int kExitInternal = 1;
constexpr int kExitParse = 2;
constexpr int kExitRefusal = 3;
constexpr int kExitCancelled = 130;

struct Options {
  std::string mode;
  std::string ring;
  std::string group;
  unsigned prime = 0;
  unsigned level = 1;
  std::string window;
  unsigned depth = 0;
  std::string format = "text";
  std::string fixture;
  std::string file;
};

void add_common(CLI::App* sub, Options& o, bool with_mode) {
  if (with_mode) sub->add_option("mode", o.mode, "Variant of the computation");
  sub->add_option("--ring", o.ring, "Ring spec, e.g. \"GF(2,x^2+x+1) with galois\"");
  sub->add_option("--prime", o.prime, "Prime");
  sub->add_option("--level", o.level, "Witt length, tower level or sphere weight");
  sub->add_option("--window", o.window, "Degree window lo:hi");
  sub->add_option("--depth", o.depth, "Truncation depth (at most 12)");
  sub->add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
}

Request to_request(const std::string& command, const Options& o) {
  Request r;
  r.command = command;
  r.mode = o.mode;
  r.ring = o.ring;
  r.group = o.group;
  if (o.prime != 0) r.prime = o.prime;
  r.level = o.level;
  if (!o.window.empty()) r.window = parse_window(o.window);
  if (o.depth != 0) r.depth = o.depth;
  return r;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read fixture file " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int run_fixtures(const Options& o, const Budget& budget) {
  std::vector<Fixture> all = o.file.empty() ? default_fixtures() : parse_fixtures(read_file(o.file));
  std::vector<Fixture> chosen;
  for (auto& f : all)
    if (o.fixture.empty() || f.id == o.fixture) chosen.push_back(f);
  if (chosen.empty()) throw ParseError("no fixture named '" + o.fixture + "'");

  Json report = Json::array();
  std::size_t failed = 0;
  for (const Fixture& f : chosen) {
    FixtureOutcome r = run_fixture(f, budget);
    if (!r.pass) ++failed;
    if (o.format == "json") {
      Json j{{"id", r.id}, {"criterion", r.criterion}, {"pass", r.pass}};
      if (!r.pass) j["detail"] = r.detail;
      report.push_back(j);
    } else {
      std::printf("%s %-40s c%02d %8.3fs%s%s\n", r.pass ? "PASS" : "FAIL", r.id.c_str(), r.criterion, r.seconds,
                  r.pass ? "" : "  ", r.detail.c_str());
    }
  }
  if (o.format == "json")
    std::cout << dump(Json{{"fixtures", report}, {"passed", chosen.size() - failed}, {"failed", failed}});
  else
    std::printf("%zu passed, %zu failed\n", chosen.size() - failed, failed);
  return failed == 0 ? 0 : kExitInternal;
}

// SIGINT is blocked everywhere and turned into a stop request by a dedicated thread.
std::stop_source install_interrupt() {
  std::stop_source src;
  sigset_t set;
  sigemptyset(&set);
  sigaddset(&set, SIGINT);
  pthread_sigmask(SIG_BLOCK, &set, nullptr);
  std::thread([src, set]() mutable {
    int sig = 0;
    if (sigwait(&set, &sig) == 0) src.request_stop();
  }).detach();
  return src;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations of Witt vectors, Bredon homology and real topological cyclic homology"};
  app.require_subcommand(1);
  Options o;
  const std::vector<std::pair<std::string, std::string>> commands{
      {"witt", "Additive group of W_n(A;p) with R, F, V"},
      {"bredon", "Bredon homology of representation spheres (mode: constant|norm; --level is the weight)"},
      {"tcr", "Geometric fixed points of real topological cyclic homology (mode: phi|full)"},
      {"trr", "Geometric fixed points of TRR^n and TRR (mode: tower|limit)"},
      {"mu", "Whether multiplication on the norm tensor is an isomorphism"},
      {"green", "pi_0 Green functor of TRR^n (mode: levels|ml)"},
      {"bar", "Components of the dihedral bar construction"},
  };
  std::map<std::string, CLI::App*> subs;
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    add_common(sub, o, name == "bredon" || name == "tcr" || name == "trr" || name == "green");
    subs[name] = sub;
  }
  subs["bar"]->add_option("--group", o.group, "Group spec, e.g. \"C2xC4\", \"D4 with inv\", \"Z\"");
  CLI::App* fixtures = app.add_subcommand("fixtures", "Run the fixture suite");
  fixtures->add_option("--fixture", o.fixture, "Run a single fixture by id");
  fixtures->add_option("--file", o.file, "Fixture file replacing the built-in suite");
  fixtures->add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitParse;
  }

  std::stop_source stop = install_interrupt();
  Budget budget = Budget::from_environment();
  budget.stop = stop.get_token();

  try {
    if (fixtures->parsed()) return run_fixtures(o, budget);
    for (const auto& [name, sub] : subs) {
      if (!sub->parsed()) continue;
      Json result = run_request(to_request(name, o), budget);
      std::cout << (o.format == "json" ? dump(result) : render_text(result));
      return 0;
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const Refusal& e) {
    if (o.format == "json")
      std::cout << dump(Json{{"refusal", e.hypothesis()}, {"detail", e.what()}});
    std::cerr << "refused (" << e.hypothesis() << "): " << e.what() << "\n";
    return kExitRefusal;
  } catch (const Cancelled&) {
    std::cerr << "cancelled\n";
    return kExitCancelled;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}
