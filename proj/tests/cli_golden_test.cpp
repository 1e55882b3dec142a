#include "doctest.h"

#include <array>
#include <cstdio>
#include <string>

// FOLGEO_CLI_PATH and FOLGEO_DATA_DIR are provided by the build.

namespace {

struct RunResult {
  std::string out;
  int exit_code = -1;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(FOLGEO_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

const std::string kData = FOLGEO_DATA_DIR;
const std::string kFixA = kData + "/fixA.model";

}  // namespace

TEST_CASE("cli eval") {
  RunResult r = run_cli("eval " + kFixA + " f1 --vars x:s,y:s --formula \"x == y\"");
  CHECK(r.exit_code == 0);
  CHECK(r.out ==
        "indices: 0 4 8\n"
        "point: x=0 y=0\n"
        "point: x=1 y=1\n"
        "point: x=2 y=2\n");
}

TEST_CASE("cli closure") {
  RunResult r = run_cli("closure " + kFixA + " f12 --vars x:s --set 1");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "closure: 1 2\norbit: 1 2\n");
}

TEST_CASE("cli aut") {
  RunResult r = run_cli("aut " + kFixA + " f12");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "s: ()\ns: (1 2)\n");

  RunResult rigid = run_cli("aut " + kFixA + " f1");
  CHECK(rigid.exit_code == 0);
  CHECK(rigid.out == "s: ()\n");
}

TEST_CASE("cli kb-equiv") {
  RunResult pos = run_cli("kb-equiv " + kData + "/kb_pair_a.model " + kData +
                          "/kb_pair_b.model");
  CHECK(pos.exit_code == 0);
  CHECK(pos.out ==
        "verdict: EQUIVALENT\n"
        "alpha: f1 -> g2\n"
        "alpha: f12 -> g12\n"
        "delta[f1]: s: 0 1 2\n"
        "delta[f12]: s: 0 1 2\n");

  RunResult neg = run_cli("kb-equiv " + kData + "/kb_pair_a.model " + kData +
                          "/kb_pair_c.model");
  CHECK(neg.exit_code == 1);
  CHECK(neg.out == "verdict: NOT-EQUIVALENT\n");
}

TEST_CASE("cli theory-closure-member") {
  std::string base = "theory-closure-member " + kFixA + " f1 --theory-file " + kData +
                     "/theoryA.theory --formula ";
  RunResult in = run_cli(base + "\"!(x == add(x,x))\"");
  CHECK(in.exit_code == 0);
  CHECK(in.out == "member: true\n");

  RunResult out = run_cli(base + "\"x == add(x,x)\"");
  CHECK(out.exit_code == 1);
  CHECK(out.out == "member: false\n");
}

TEST_CASE("cli support") {
  RunResult r = run_cli("support " + kFixA + " f1 --vars x:s,y:s --formula \"p(x) & y == y\"");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "support: x\n");
}

TEST_CASE("cli normalize") {
  RunResult r = run_cli("normalize " + kFixA +
                        " --vars x:s --source z:s --map z=x --formula \"E z. p(z)\"");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "context: _v0:s,x:s\nformula: E _v0. p(_v0)\n");
}

TEST_CASE("cli admissible") {
  std::string base = "admissible " + kFixA +
                     " f1 --source z:s --target x:s,y:s --map \"z=add(x,y)\" ";
  RunResult yes = run_cli(base +
                          "--formula-a \"add(x,y) == add(add(x,y),add(x,y))\" "
                          "--formula-b \"z == add(z,z)\"");
  CHECK(yes.exit_code == 0);
  CHECK(yes.out == "admissible: true\n");

  RunResult no = run_cli(base + "--formula-a \"x == x\" --formula-b \"p(z)\"");
  CHECK(no.exit_code == 1);
  CHECK(no.out == "admissible: false\n");
}

TEST_CASE("cli rf") {
  RunResult r = run_cli("rf " + kFixA + " f12 --vars x:s");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "count: 4\nset:\nset: 0\nset: 1 2\nset: 0 1 2\n");

  RunResult rigid = run_cli("rf " + kFixA + " f1 --vars x:s");
  CHECK(rigid.exit_code == 0);
  CHECK(rigid.out.substr(0, 9) == "count: 8\n");
}

TEST_CASE("cli geo-equiv") {
  RunResult dis = run_cli("geo-equiv " + kFixA + " f1 " + kFixA + " f12");
  CHECK(dis.exit_code == 0);
  CHECK(dis.out ==
        "verdict: DISAGREE\n"
        "context: x:s\n"
        "theory: p(x)\n"
        "candidate: p(add(x,x))\n"
        "in-first: false\n"
        "in-second: true\n");

  RunResult same = run_cli("geo-equiv " + kFixA + " f1 " + kFixA + " f2");
  CHECK(same.exit_code == 1);
  CHECK(same.out == "verdict: NO-DISAGREEMENT-UP-TO-BOUNDS\n");
}

TEST_CASE("cli errors exit 2") {
  CHECK(run_cli("eval " + kFixA + " nosuch --vars x:s --formula \"p(x)\"").exit_code == 2);
  CHECK(run_cli("eval " + kFixA + " f1 --vars x:s --formula \"p(\"").exit_code == 2);
  CHECK(run_cli("eval no_such_file.model f1 --vars x:s --formula \"p(x)\"").exit_code == 2);
  CHECK(run_cli("no-such-subcommand").exit_code == 2);
}
