#include "skelcalc/gen.hpp"
#include "skelcalc/io.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

using namespace skc;
namespace fs = std::filesystem;

namespace {

fs::path scratch() {
  fs::path d = fs::temp_directory_path() / "skelcalc_cli_test";
  fs::create_directories(d);
  return d;
}

std::string put(const std::string& name, const std::string& text) {
  fs::path p = scratch() / name;
  std::ofstream(p) << text;
  return p.string();
}

int run(const std::string& args) {
  std::string cmd = std::string(SKC_BIN) + " " + args + " > " + (scratch() / "out.txt").string() + " 2>&1";
  int st = std::system(cmd.c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

std::string fixture_file(const std::string& name) { return std::string(SKC_FIXTURES) + "/" + name + ".inst"; }

}  // namespace

TEST_CASE("all rows pass: exit 0") {
  CHECK(run("bound --instance " + fixture_file("theta")) == 0);
  CHECK(run("verify --instance " + fixture_file("circle")) == 0);
  CHECK(run("analyze --instance " + fixture_file("path3") + " --report structured") == 0);
  CHECK(run("bound --oracle --instance " + fixture_file("disk-gos")) == 0);
}

TEST_CASE("a failing row: exit 1") {
  std::string f = put("adv.inst", serialize(adversarial("convex-spectral")));
  CHECK(run("bound --instance " + f) == 1);
  CHECK(run("bound --instance " + f + " --equations 3.37") == 1);
}

TEST_CASE("only inapplicable rows: exit 2") {
  CHECK(run("bound --instance " + fixture_file("circle") + " --equations 3.71") == 2);
}

TEST_CASE("bad input: exit 3") {
  CHECK(run("bound --instance " + put("junk.inst", "[skeleton]\nvertex=a genus=?\n")) == 3);
  CHECK(run("bound --instance " + (scratch() / "missing.inst").string()) == 3);
  CHECK(run("bound --report fancy --instance " + fixture_file("theta")) == 3);
  CHECK(run("frobnicate") == 3);
}

TEST_CASE("generate writes something analyze can read back") {
  fs::path out = scratch() / "gen.inst";
  CHECK(run("generate --seed 5 --out " + out.string()) == 0);
  CHECK_NOTHROW(read_instance(out.string()));
  fs::path p = scratch() / "gen2.inst";
  CHECK(run("generate --fixture theta --out " + p.string()) == 0);
  CHECK(serialize(read_instance(p.string())) == serialize(fixture("theta")));
  CHECK(run("export-dot --instance " + fixture_file("theta")) == 0);
}
