#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "qelie/catalog.hpp"
#include "qelie/commands.hpp"
#include "qelie/document.hpp"
#include "qelie/error.hpp"

using namespace qelie;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + QELIE_CLI_PATH + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("qelie_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name, const std::string& text) const {
    const auto p = path / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string str() const { return path.string(); }
  static int& counter() {
    static int c = 0;
    return c;
  }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* kH3 = R"({"name": "h3", "dim": 3, "basis": ["x", "y", "z"], "brackets": [["x", "y", "z", "1"]]})";

}  // namespace

TEST_SUITE("cmd functions") {
  TEST_CASE("check on H3") {
    TempDir d;
    const auto r = cmd_check(d.file("h3.json", kH3), {});
    CHECK(r.exit_code == 0);
    CHECK(r.json["jacobi"]["residual"] == 0.0);
    CHECK(r.json["exact"] == true);
  }
  TEST_CASE("check fails on a non-Lie bracket") {
    TempDir d;
    const auto p = d.file("bad.json", R"({"name":"b","dim":3,"basis":["a","b","c"],
      "brackets":[["a","b","c","1"],["c","a","a","1"]]})");
    CHECK(cmd_check(p, {}).exit_code == 1);
  }
  TEST_CASE("ricci formulas on H3") {
    TempDir d;
    const auto p = d.file("h3.json", kH3);
    for (const char* f : {"oracle", "nilpotent", "solvable", "standard"}) {
      CommandOptions o;
      o.formula = f;
      INFO(f);
      const auto r = cmd_ricci(p, o);
      CHECK(r.exit_code == 0);
      CHECK(r.json["eigenvalues"][0] == -0.5);
      CHECK(r.json["eigenvalues"][2] == 0.5);
    }
  }
  TEST_CASE("qe on H3 with m = 2") {
    TempDir d;
    CommandOptions o;
    o.m = 2;
    const auto r = cmd_qe(d.file("h3.json", kH3), o);
    CHECK(r.exit_code == 0);
    REQUIRE(r.json["solutions"].size() == 2);
    CHECK(r.json["solutions"][0]["lambda"] == -0.5);
    CHECK(r.json["solutions"][0]["X"][2].get<double>() == doctest::Approx(std::sqrt(2.0)));
  }
  TEST_CASE("qe with no solution exits 1") {
    TempDir d;
    const auto p = d.file("n6a.json", emit_algebra(document_from_entry(make_n6a(1, 2))));
    const auto r = cmd_qe(p, {});
    CHECK(r.exit_code == 1);
    CHECK(r.json["solutions"].empty());
  }
  TEST_CASE("catalog tables writes files and reports the failing rows") {
    TempDir d;
    CommandOptions o;
    o.family = "tables";
    o.emit = d.str();
    const auto r = cmd_catalog(o);
    CHECK(fs::exists(d.path / "table1_h3.json"));
    CHECK(fs::exists(d.path / "table2_R+h5.json"));
    CHECK(r.exit_code == 1);  // n6a rows
  }
  TEST_CASE("lattice on N6a uses the family reduction") {
    TempDir d;
    const auto p = d.file("n6a.json", emit_algebra(document_from_entry(make_n6a(1, 2))));
    const auto r = cmd_lattice(p, {});
    CHECK(r.exit_code == 0);
    CHECK(r.json["verdict"] == "obstructed");
  }
  TEST_CASE("exit codes for errors") {
    CHECK(exit_code_for(Error(Errc::ParseError, "x")) == 2);
    CHECK(exit_code_for(Error(Errc::FileNotFound, "x")) == 2);
    CHECK(exit_code_for(Error(Errc::BadFlags, "x")) == 2);
    CHECK(exit_code_for(Error(Errc::BadParams, "x")) == 2);
    CHECK(exit_code_for(Error(Errc::NotNilpotent, "x")) == 1);
  }
  TEST_CASE("QELIE_TOL") {
    ::setenv("QELIE_TOL", "1e-6", 1);
    CHECK(default_tolerance() == 1e-6);
    ::setenv("QELIE_TOL", "garbage", 1);
    CHECK(default_tolerance() == 1e-9);
    ::unsetenv("QELIE_TOL");
    CHECK(default_tolerance() == 1e-9);
  }
}

TEST_SUITE("qelie binary") {
  TEST_CASE("H3 happy path") {
    TempDir d;
    const auto p = d.file("h3.json", kH3);
    auto r = run("check " + p);
    CHECK(r.code == 0);
    r = run("qe --m 2 " + p);
    CHECK(r.code == 0);
    CHECK(r.out.find("lambda -0.5") != std::string::npos);
    CHECK(r.out.find("1.4142135623731") != std::string::npos);
    r = run("ricci --formula nilpotent " + p);
    CHECK(r.code == 0);
    r = run("lattice " + p);
    CHECK(r.code == 0);
    CHECK(r.out.find("rational") != std::string::npos);
  }
  TEST_CASE("malformed and missing files") {
    TempDir d;
    CHECK(run("check " + d.file("bad.json", "{\"name\": ")).code == 2);
    CHECK(run("check " + d.file("dup.json", R"({"name":"h","dim":2,"basis":["x","x"],"brackets":[]})")).code == 2);
    const auto r = run("qe " + (d.path / "missing.json").string());
    CHECK(r.code == 2);
    CHECK(r.out.find("FileNotFound") != std::string::npos);
  }
  TEST_CASE("bad flags") {
    TempDir d;
    const auto p = d.file("h3.json", kH3);
    CHECK(run("qe --m 0 " + p).code != 0);
    CHECK(run("check --frobnicate " + p).code == 2);
    CHECK(run("ricci --formula bogus " + p).code == 2);
    CHECK(run("catalog --family nosuch").code == 2);
    CHECK(run("catalog --family heisenberg --params s=0").code == 2);
    CHECK(run("").code == 2);
  }
  TEST_CASE("catalog round trip") {
    TempDir d;
    const auto out = (d.path / "n7a.json").string();
    CHECK(run("catalog --family n7a --params a=1,c=2 --emit " + out).code == 0);
    const std::string first = slurp(out);
    CHECK(first == emit_algebra(document_from_entry(make_n7a(1, 2))));
    CHECK(emit_algebra(parse_algebra(first)) == first);
    CHECK(structurally_equal(parse_algebra(first).algebra, make_n7a(1, 2).algebra, 1e-12));
  }
  TEST_CASE("json output and determinism") {
    TempDir d;
    const auto p = d.file("h3.json", kH3);
    const auto a = run("--json qe " + p), b = run("--json qe " + p);
    CHECK(a.out == b.out);
    const auto j = nlohmann::json::parse(a.out);
    CHECK(j["command"] == "qe");
    CHECK(j["solutions"].size() == 2);
  }
  TEST_CASE("QELIE_TOL reaches the binary") {
    TempDir d;
    const auto p = d.file("h3.json", kH3);
    const auto r = run("qe " + p, "QELIE_TOL=1e-3");
    CHECK(r.code == 0);
    CHECK(run("qe " + p, "QELIE_TOL=1e-3").out != run("qe " + p).out);
  }
  TEST_CASE("--all over a directory") {
    TempDir d;
    d.file("a.json", kH3);
    d.file("b.json", emit_algebra(document_from_entry(make_heisenberg(2, 1))));
    const auto r = run("--all check " + d.str());
    CHECK(r.code == 0);
    CHECK(r.out.find("h3") < r.out.find("h5"));
  }
}
