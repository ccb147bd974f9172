#include <doctest.h>

#include <cstdio>
#include <string>

#include <nlohmann/json.hpp>

#include "pgl/json_io.hpp"

namespace {

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run(const std::string& args, bool keep_stderr = false) {
  std::string cmd = std::string(PGL_BIN) + " " + args + (keep_stderr ? " 2>&1" : " 2>/dev/null");
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

std::string sample(const std::string& name) { return std::string(PGL_SAMPLES) + "/" + name; }

}  // namespace

TEST_CASE("query prints the entailment degree") {
  auto r = run("query " + sample("example1.pgl") + " --goal friend_mary_john");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "0.6\n");

  auto in_file_goal = run("query " + sample("example1.pgl"));
  CHECK(in_file_goal.out == "0.6\n");

  CHECK(run("query " + sample("empty.pgl") + " --goal q").out == "0\n");
  CHECK(run("query " + sample("example3.pgl")).out == "1\n");
  CHECK(run("query " + sample("young_john.pgl")).out == "0.6\n");
}

TEST_CASE("json output carries exact rationals and the trace") {
  auto r = run("query " + sample("example3.pgl") + " --trace --oracle --json");
  CHECK(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("goal") == "john_is_about_16");
  CHECK(j.at("degree").at("num") == 1);
  CHECK(j.at("degree").at("den") == 1);
  CHECK(j.at("satisfiable") == true);
  CHECK(j.at("oracle_degree") == j.at("degree"));
  CHECK(j.at("divergence").at("num") == 0);
  CHECK(j.at("trace").at("goal") == "john_is_about_16");
  CHECK(j.at("trace").at("rule") == "in");
  CHECK(j.at("trace").at("premises").size() == 2);
  CHECK(j.at("trace").at("premises").at(0).at("rule") == "fact");
  CHECK(j.at("trace").at("premises").at(0).at("side_conditions").contains("clause_weight"));
  CHECK(pgl::degree_from_json(j.at("degree")) == pgl::Degree::one());
}

TEST_CASE("oracle agrees with the engine on context-free input") {
  auto r = run("query " + sample("example1.pgl") + " --oracle --json");
  auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("degree") == j.at("oracle_degree"));
  CHECK(j.at("satisfiable") == true);
}

TEST_CASE("same input and flags give byte-identical output") {
  for (const char* args : {"query ", "saturate "}) {
    std::string cmd = args + sample("example3.pgl") + " --json";
    auto first = run(cmd);
    auto second = run(cmd);
    CHECK(first.out == second.out);
    CHECK(first.exit_code == second.exit_code);
  }
}

TEST_CASE("check validates and reports") {
  auto ok = run("check " + sample("example3.pgl"));
  CHECK(ok.exit_code == 0);
  CHECK(ok.out.find("ok:") == 0);

  auto missing = run("check /nonexistent.pgl", true);
  CHECK(missing.exit_code == 1);
}

TEST_CASE("saturate lists every atom's degree") {
  auto r = run("saturate " + sample("example3.pgl"));
  CHECK(r.exit_code == 0);
  CHECK(r.out ==
        "john_is_about_16 1\n"
        "john_is_14_16 1\n"
        "john_is_16_18 1\n");
  auto j = nlohmann::json::parse(run("saturate " + sample("example3.pgl") + " --json").out);
  CHECK(j.at("atoms").size() == 3);
  CHECK(j.at("atoms").at("john_is_about_16").at("num") == 1);
}

TEST_CASE("exit codes distinguish usage, parse and resource errors") {
  CHECK(run("query", true).exit_code == 1);              // missing file argument
  CHECK(run("frobnicate x", true).exit_code == 1);       // unknown subcommand
  auto parse_error = run("check " + sample("../README.md"), true);
  CHECK(parse_error.exit_code == 1);
  auto cap = run("query " + sample("example3.pgl") + " --oracle --max-space 10", true);
  CHECK(cap.exit_code == 2);
  CHECK(run("query " + sample("example1.pgl") + " --goal nope", true).exit_code == 1);
}

TEST_CASE("scheduling flags do not change results") {
  auto reference = run("query " + sample("young_john.pgl") + " --json").out;
  CHECK(run("query " + sample("young_john.pgl") + " --naive --json").out == reference);
  CHECK(run("query " + sample("young_john.pgl") + " --seed 7 --json").out == reference);
}
