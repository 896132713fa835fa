#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "fanoforge/cli.hpp"
#include "fanoforge/errors.hpp"

using fanoforge::cli::run;

namespace {

struct Result {
  int rc;
  std::string out;
  std::string err;
};

Result invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int rc = run(args, out, err);
  return {rc, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string temp_path(const char* name) {
  return std::string("/tmp/fanoforge_test_") + name;
}

int count_lines_starting(const std::string& text, const std::string& prefix) {
  int count = 0;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind(prefix, 0) == 0) ++count;
  }
  return count;
}

}  // namespace

// ---------------------------------------------------------------------------
// argument handling
// ---------------------------------------------------------------------------

TEST_CASE("no subcommand is a usage error") {
  const Result r = invoke({});
  CHECK(r.rc == 2);
  CHECK(!r.err.empty());
}

TEST_CASE("help prints the subcommands and succeeds") {
  const Result r = invoke({"--help"});
  CHECK(r.rc == 0);
  for (const char* name :
       {"build", "verify", "fano", "census", "bound", "export-graph", "export-incidence"}) {
    CHECK(r.out.find(name) != std::string::npos);
  }
}

TEST_CASE("unknown options and subcommands are usage errors") {
  CHECK(invoke({"frobnicate"}).rc == 2);
  CHECK(invoke({"census", "--source", "field", "--k", "2", "--frob"}).rc == 2);
  CHECK(invoke({"census", "--source", "mystery", "--k", "2"}).rc == 2);
  CHECK(invoke({"verify", "--source", "field", "--k", "2", "--mode", "psychic"}).rc == 2);
  CHECK(invoke({"build", "--source", "field", "--k", "2", "--modulus", "zebra"}).rc == 2);
  CHECK(invoke({"build", "--source", "table:"}).rc == 2);
  CHECK(invoke({"build", "--source", "field"}).rc == 2);  // --k missing
}

// ---------------------------------------------------------------------------
// bound
// ---------------------------------------------------------------------------

TEST_CASE("bound prints the bare number") {
  CHECK(invoke({"bound", "--n", "32"}).out == "4961\n");
  CHECK(invoke({"bound", "--n", "10"}).out == "121\n");
  CHECK(invoke({"bound", "--k", "5"}).out == "4961\n");
  CHECK(invoke({"bound", "--n", "2"}).out == "1\n");
  const Result odd = invoke({"bound", "--n", "7"});
  CHECK(odd.rc == 2);
  CHECK(odd.err.find("even") != std::string::npos);
  CHECK(invoke({"bound"}).rc == 2);
}

// ---------------------------------------------------------------------------
// build
// ---------------------------------------------------------------------------

TEST_CASE("build reports the construction summary") {
  const Result r = invoke({"build", "--source", "field", "--k", "2"});
  CHECK(r.rc == 0);
  CHECK(r.out ==
        "build n=4 source=field k=2 modulus=0x7\n"
        "presemifield distributive=true no-zero-divisors=true commutative=true\n"
        "plane points=21 lines=21\n"
        "polarity absolutes=5 pole=16 baer-line=\"vertical 0\"\n");
  CHECK(r.err.find("time build=") != std::string::npos);
}

TEST_CASE("build accepts an explicit modulus in hex or decimal") {
  const Result hex = invoke({"build", "--source", "field", "--k", "3", "--modulus", "0xd"});
  CHECK(hex.rc == 0);
  CHECK(hex.out.find("build n=8 source=field k=3 modulus=0xd\n") == 0);
  const Result dec = invoke({"build", "--source", "field", "--k", "3", "--modulus", "13"});
  CHECK(dec.out == hex.out);
  CHECK(invoke({"build", "--source", "field", "--k", "3", "--modulus", "0x9"}).rc == 2);
}

TEST_CASE("build --out dumps a table the table source accepts back") {
  const std::string path = temp_path("roundtrip.txt");
  const Result w = invoke({"build", "--source", "knuth", "--k", "3", "--out", path});
  REQUIRE(w.rc == 0);
  const std::string table = slurp(path);
  CHECK(table.rfind("semifield k=3 n=8\n", 0) == 0);

  const Result back = invoke({"census", "--source", "table:" + path});
  CHECK(back.rc == 0);
  const Result direct = invoke({"census", "--source", "knuth", "--k", "3"});
  CHECK(back.out == direct.out);

  // table -> plane -> exported table is byte-identical
  const std::string again = temp_path("roundtrip2.txt");
  REQUIRE(invoke({"build", "--source", "table:" + path, "--out", again}).rc == 0);
  CHECK(slurp(again) == table);
  std::remove(path.c_str());
  std::remove(again.c_str());
}

TEST_CASE("exit codes follow the error taxonomy") {
  CHECK(int(fanoforge::ExitCode::ok) == 0);
  CHECK(int(fanoforge::ExitCode::verification) == 1);
  CHECK(int(fanoforge::ExitCode::input) == 2);
  CHECK(int(fanoforge::ExitCode::internal) == 3);
  CHECK(fanoforge::VerificationError("x").code() == fanoforge::ExitCode::verification);
  CHECK(fanoforge::InputError("x").code() == fanoforge::ExitCode::input);
  CHECK(fanoforge::InternalError("x").code() == fanoforge::ExitCode::internal);
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

TEST_CASE("verify passes all fifteen checks on real algebras") {
  for (const char* k : {"1", "2", "3"}) {
    const Result r = invoke({"verify", "--source", "field", "--k", k});
    INFO("k = ", k);
    CHECK(r.rc == 0);
    CHECK(count_lines_starting(r.out, "check ") == 15);
    std::istringstream lines(r.out);
    std::string line;
    while (std::getline(lines, line)) {
      if (line.rfind("check ", 0) == 0) {
        CHECK(line.find(" pass") != std::string::npos);
        CHECK(line.find(" fail ") == std::string::npos);
      }
    }
    CHECK(r.out.find("result pass checks=15 failures=0\n") != std::string::npos);
  }
  const Result r = invoke({"verify", "--source", "field", "--k", "1"});
  CHECK(r.out.rfind("verify n=2 source=field k=1 modulus=0x3 mode=exhaustive seed=123456789\n",
                    0) == 0);
}

TEST_CASE("verify output is byte-identical across reruns") {
  const std::vector<std::string> args{"verify", "--source", "knuth", "--k",    "5",
                                      "--mode", "sampled",  "--samples", "5000"};
  const Result a = invoke(args);
  const Result b = invoke(args);
  CHECK(a.rc == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("mode=sampled") != std::string::npos);
}

TEST_CASE("a non-commutative table is rejected as a verification failure") {
  const std::string path = temp_path("skew.txt");
  {
    std::ofstream f(path);
    f << "semifield k=2 n=4\n"
         "0 0 0 0\n"
         "0 1 3 2\n"
         "0 2 1 3\n"
         "0 3 2 1\n";
  }
  const Result r = invoke({"verify", "--source", "table:" + path});
  CHECK(r.rc == 1);
  CHECK(r.err.find("commutativity") != std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("a corrupt table file is an input error") {
  const std::string path = temp_path("corrupt.txt");
  {
    std::ofstream f(path);
    f << "semifield k=2 n=4\n0 0 0 0\n";
  }
  CHECK(invoke({"build", "--source", "table:" + path}).rc == 2);
  std::remove(path.c_str());
  CHECK(invoke({"build", "--source", "table:" + path}).rc == 2);  // missing file
}

TEST_CASE("seed comes from the environment unless given explicitly") {
  setenv("FANOFORGE_SEED", "42", 1);
  const Result env = invoke({"verify", "--source", "field", "--k", "4", "--mode", "sampled",
                             "--samples", "500"});
  CHECK(env.out.find("seed=42\n") != std::string::npos);
  const Result flag = invoke({"verify", "--source", "field", "--k", "4", "--mode", "sampled",
                              "--samples", "500", "--seed", "7"});
  CHECK(flag.out.find("seed=7\n") != std::string::npos);
  setenv("FANOFORGE_SEED", "not-a-number", 1);
  CHECK(invoke({"bound", "--n", "4"}).rc == 2);
  unsetenv("FANOFORGE_SEED");
  const Result plain = invoke({"verify", "--source", "field", "--k", "4", "--mode", "sampled",
                               "--samples", "500"});
  CHECK(plain.out.find("seed=123456789\n") != std::string::npos);
}

// ---------------------------------------------------------------------------
// fano and census
// ---------------------------------------------------------------------------

TEST_CASE("fano emits the certificate then the census") {
  const Result r = invoke({"fano", "--source", "field", "--k", "2"});
  CHECK(r.rc == 0);
  CHECK(r.out ==
        "fano-certificate n=4 source=field k=2 modulus=0x7\n"
        "point 0 slope 0\n"
        "point 1 affine 0 0\n"
        "point 2 affine 0 1\n"
        "point 3 infinity\n"
        "point 4 affine 1 0\n"
        "point 5 affine 1 1\n"
        "point 6 slope 1\n"
        "line 0 vertical 0\n"
        "line 1 regular 0 0\n"
        "line 2 regular 0 1\n"
        "line 3 at-infinity\n"
        "line 4 regular 1 0\n"
        "line 5 regular 1 1\n"
        "line 6 vertical 1\n"
        "incidence 0x0e2a62929498e\n"
        "verified true\n"
        "census n=4 nonabsolute-edges=30 triangle-lb=10 absolute-cap=5 good-triangles=10 "
        "fano-lb=5\n");
}

TEST_CASE("census agrees with the closed-form counts") {
  CHECK(invoke({"census", "--source", "field", "--k", "3"}).out ==
        "census n=8 nonabsolute-edges=252 triangle-lb=84 absolute-cap=27 good-triangles=84 "
        "fano-lb=57\n");
  const Result workers = invoke({"census", "--source", "field", "--k", "3", "--workers", "4"});
  CHECK(workers.out == invoke({"census", "--source", "field", "--k", "3"}).out);
}

TEST_CASE("census --out goes to the file, not stdout") {
  const std::string path = temp_path("census.txt");
  const Result r = invoke({"census", "--source", "field", "--k", "2", "--out", path});
  CHECK(r.rc == 0);
  CHECK(r.out.empty());
  CHECK(slurp(path) ==
        "census n=4 nonabsolute-edges=30 triangle-lb=10 absolute-cap=5 good-triangles=10 "
        "fano-lb=5\n");
  std::remove(path.c_str());
}

// ---------------------------------------------------------------------------
// exports
// ---------------------------------------------------------------------------

TEST_CASE("export-graph writes the order-2 edge list") {
  const Result r = invoke({"export-graph", "--source", "field", "--k", "1"});
  CHECK(r.rc == 0);
  CHECK(r.out ==
        "# polarity-graph n=2 absolutes=3 pole=4\n"
        "0 0\n0 2\n0 4\n1 1\n1 3\n1 4\n2 3\n2 5\n3 5\n4 6\n5 6\n6 6\n");
}

TEST_CASE("export-incidence text matches the frozen order-2 table") {
  const Result r = invoke({"export-incidence", "--source", "field", "--k", "1"});
  CHECK(r.rc == 0);
  CHECK(r.out ==
        "plane n=2 source=field\n"
        "0 2 4\n1 3 4\n0 3 5\n1 2 5\n0 1 6\n2 3 6\n4 5 6\n");
}

TEST_CASE("packed export needs a file and writes the exact bytes") {
  CHECK(invoke({"export-incidence", "--source", "field", "--k", "1", "--format", "packed"}).rc ==
        2);
  const std::string path = temp_path("packed.bin");
  const Result r = invoke(
      {"export-incidence", "--source", "field", "--k", "1", "--format", "packed", "--out", path});
  CHECK(r.rc == 0);
  const std::string bin = slurp(path);
  const std::string header = "plane n=2 source=field format=packed\n";
  REQUIRE(bin.size() == header.size() + 7);
  CHECK(bin.substr(0, header.size()) == header);
  const unsigned char want[7] = {0x15, 0x1a, 0x29, 0x26, 0x43, 0x4c, 0x70};
  for (int i = 0; i < 7; ++i) {
    CHECK(static_cast<unsigned char>(bin[header.size() + i]) == want[i]);
  }
  CHECK(invoke({"export-incidence", "--source", "field", "--k", "1", "--format", "sideways"}).rc ==
        2);
  std::remove(path.c_str());
}

// ---------------------------------------------------------------------------
// the installed binary
// ---------------------------------------------------------------------------

TEST_CASE("the binary runs standalone") {
  const std::string bin = FANOFORGE_CLI_BIN;
  const std::string out_path = temp_path("spawn.txt");

  REQUIRE(std::system((bin + " --help > " + out_path + " 2>/dev/null").c_str()) == 0);
  CHECK(slurp(out_path).find("export-graph") != std::string::npos);

  REQUIRE(std::system((bin + " bound --n 32 > " + out_path + " 2>/dev/null").c_str()) == 0);
  CHECK(slurp(out_path) == "4961\n");

  // the kernel override only affects speed, never results
  REQUIRE(std::system(("FANOFORGE_KERNELS=scalar " + bin +
                       " census --source field --k 4 > " + out_path + " 2>/dev/null")
                          .c_str()) == 0);
  CHECK(slurp(out_path) ==
        "census n=16 nonabsolute-edges=2040 triangle-lb=680 absolute-cap=119 good-triangles=680 "
        "fano-lb=561\n");
  std::remove(out_path.c_str());
}
