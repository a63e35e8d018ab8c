#include "doctest.h"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <sys/wait.h>

#include "json.hpp"

// End-to-end checks of the command-line surface. The binary path comes from
// DDK_BIN (set by the test harness); everything runs with --no-cache so the
// tests stay hermetic.

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

const char* binary() { return std::getenv("DDK_BIN"); }

RunResult run(const std::string& args) {
  RunResult r;
  const std::string cmd = std::string(binary()) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf;
  while (std::size_t got = fread(buf.data(), 1, buf.size(), pipe)) {
    r.out.append(buf.data(), got);
  }
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

bool contains(const std::string& s, const std::string& needle) {
  return s.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("cli end to end" * doctest::skip(binary() == nullptr)) {
  SUBCASE("enumerate") {
    const RunResult r = run("--no-cache enumerate --n 2");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "6"));
    const RunResult r0 = run("--no-cache enumerate --n 0");
    CHECK(contains(r0.out, "2"));
  }

  SUBCASE("resource refusals exit with 3") {
    CHECK(run("--no-cache enumerate --n 7").exit_code == 3);
    // triple-kernel target 8 needs base 5 and exceeds the default budget
    CHECK(run("--no-cache compute --target 8 --method h3").exit_code == 3);
  }

  SUBCASE("usage errors exit with 2") {
    CHECK(run("--no-cache enumerate").exit_code == 2);          // missing --n
    CHECK(run("--no-cache bogus-subcommand").exit_code == 2);
    CHECK(run("--no-cache crt --pairs 2:0,4:1").exit_code == 2);  // non-coprime
    CHECK(run("--no-cache compute --target 1 --method g2").exit_code == 2);
    CHECK(run("--no-cache residue --target 7 --mod 5 --method p4mod3").exit_code ==
          2);
  }

  SUBCASE("classes and histogram") {
    const RunResult r = run("--no-cache classes --n 5");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "210"));
    const RunResult h = run("--no-cache --format csv classes --n 4 --hist");
    CHECK(h.exit_code == 0);
    CHECK(contains(h.out, "orbit_size,classes"));
    CHECK(contains(h.out, "12,7"));
  }

  SUBCASE("compute") {
    const RunResult r = run("--no-cache compute --target 5 --method f4");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "7581"));
    const RunResult d = run("--no-cache compute --target 4 --method direct");
    CHECK(d.exit_code == 0);
    CHECK(contains(d.out, "168"));
  }

  SUBCASE("residue JSON carries decimal strings") {
    const RunResult r =
        run("--no-cache --format json residue --target 7 --mod 12 --method h3");
    REQUIRE(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("sum").get<std::string>() == "566167187562");
    CHECK(j.at("residue").get<std::string>() == "6");
    CHECK(j.at("base_arity").get<std::string>() == "4");
  }

  SUBCASE("residue via the small-kernel routes") {
    const RunResult g = run(
        "--no-cache --format json residue --target 4 --mod 2 --method g2");
    REQUIRE(g.exit_code == 0);
    const auto jg = nlohmann::json::parse(g.out);
    CHECK(jg.at("sum").get<std::string>() == "70");
    CHECK(jg.at("residue").get<std::string>() == "0");

    const RunResult p = run(
        "--no-cache --format json residue --target 5 --mod 3 --method p4mod3");
    REQUIRE(p.exit_code == 0);
    CHECK(nlohmann::json::parse(p.out).at("sum").get<std::string>() == "105");

    const RunResult l = run(
        "--no-cache --format json residue --target 5 --mod 2 --method lambda2");
    REQUIRE(l.exit_code == 0);
    CHECK(nlohmann::json::parse(l.out).at("sum").get<std::string>() == "81");
  }

  SUBCASE("p4 with matrix check") {
    const RunResult r = run("--no-cache p4 --n 2 --matrix-check");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "105"));
    const RunResult r3 = run("--no-cache p4 --n 3");
    CHECK(contains(r3.out, "3490"));
  }

  SUBCASE("crt") {
    const RunResult r = run("--no-cache crt --pairs 2:0,3:0,5:1,7:6");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "6"));
    CHECK(contains(r.out, "210"));
    const RunResult j = run("--no-cache --format json crt --pairs 3:1,5:2");
    const auto parsed = nlohmann::json::parse(j.out);
    CHECK(parsed.at("modulus").get<std::string>() == "15");
    CHECK(parsed.at("residue").get<std::string>() == "7");
  }

  SUBCASE("thread count does not change output") {
    const std::string cmd =
        "--no-cache --format json residue --target 6 --mod 12 --method h3";
    const RunResult a = run("--threads 1 " + cmd);
    const RunResult b = run("--threads 4 " + cmd);
    REQUIRE(a.exit_code == 0);
    REQUIRE(b.exit_code == 0);
    const auto ja = nlohmann::json::parse(a.out);
    const auto jb = nlohmann::json::parse(b.out);
    CHECK(ja.at("sum") == jb.at("sum"));
    CHECK(ja.at("residue") == jb.at("residue"));
  }

  SUBCASE("tables emit") {
    const RunResult r = run("--no-cache tables --emit");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "2414682040998"));
    CHECK(contains(r.out, "868329572680304346696"));
    CHECK(contains(r.out, "423295099074735261880"));
  }
}
