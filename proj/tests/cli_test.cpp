#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "doctest.h"
#include "json.hpp"

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + AISEMI_CLI + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p);
  std::string out;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string golden(const std::string& name) {
  return slurp(std::string(AISEMI_SOURCE_DIR) + "/tests/golden/" + name);
}

std::string temp_file(const std::string& name, const std::string& body) {
  const std::string path = std::string(AISEMI_BINARY_DIR) + "/" + name;
  std::ofstream(path) << body;
  return path;
}

}  // namespace

TEST_CASE("golden outputs") {
  CHECK(run("registry S7").out == golden("registry_S7.txt"));
  auto h = run("holds S2 --ineq \"x <= y\"");
  CHECK(h.code == 1);
  CHECK(h.out == golden("holds_S2_fail.txt"));
  CHECK(run("--json holds S2 --ineq \"x <= y\"").out == golden("holds_S2_fail.json"));
  CHECK(run("quotient S4_124 --blocks \"1,2|3|4\"").out == golden("quotient_S4_124.txt"));
  CHECK(run("subalgebra S4_124 --subset 1,2,4").out == golden("subalgebra_S4_124.txt"));
  CHECK(run("enumerate --order 2 --classify").out == golden("enumerate_2.txt"));
  CHECK(run("subdirect S4_359 --theta1 1,2 --theta2 1,4").out == golden("subdirect_S4_359.txt"));
}

TEST_CASE("validate exit codes") {
  auto dump = run("registry S7").out;
  CHECK(run("validate " + temp_file("s7.alg", dump)).code == 0);

  auto broken = dump;
  broken.replace(broken.find("0 a 0"), 5, "0 a 1");  // a + 1 = 1 but 1 + a = 0
  auto r = run("validate " + temp_file("broken.alg", broken));
  CHECK(r.code == 1);
  CHECK(r.out.find("commutativity") != std::string::npos);

  CHECK(run("validate " + temp_file("empty.alg", "")).code == 2);
  CHECK(run("validate /nonexistent/file").code == 2);
}

TEST_CASE("satisfaction commands") {
  CHECK(run("holds S7 --ineq \"y2 <= x1x2 + x2x3 + x3x1 + y1y2 + y2y1 + y1\"").code == 0);
  CHECK(run("holds S2 --ineq \"x <= x\"").code == 0);
  CHECK(run("holds S2 --id \"xy = yx\"").code == 0);
  CHECK(run("holds S2 --ineq \"x <=\"").code == 2);
  CHECK(run("holds S2").code == 2);
  CHECK(run("holds S99 --ineq \"x <= x\"").code == 2);

  auto d = run("--json decide s53 --ineq \"x1x3 <= x1x4x3\" --oracle");
  CHECK(d.code == 0);
  auto j = nlohmann::json::parse(d.out);
  CHECK(j["holds"] == true);
  CHECK(j["agree"] == true);
  CHECK(run("decide s7 --ineq \"x <= y\" --oracle").code == 1);
  CHECK(run("decide s9 --ineq \"x <= y\"").code == 2);

  CHECK(run("family --algebra S4_124 --nmax 2").code == 0);
  CHECK(run("family --algebra S2 --nmax 4").code == 2);  // guard
}

TEST_CASE("structure commands") {
  CHECK(run("quotient S7 --blocks \"0,1\"").code == 1);
  CHECK(run("subalgebra S4_124 --subset 4").code == 1);
  CHECK(run("iso S2 S2").code == 0);
  CHECK(run("iso S2 S53").code == 1);
  auto q = temp_file("q.alg", run("quotient S4_124 --blocks \"1,2\"").out);
  CHECK(run("iso " + q + " S7").code == 0);
}

TEST_CASE("census and screening") {
  auto j = nlohmann::json::parse(run("--json enumerate --order 3 --classify --screen-family 2").out);
  CHECK(j["classes"] == 61);
  CHECK(j["family_screen"]["passing"].size() >= 32);
  const auto path = std::string(AISEMI_BINARY_DIR) + "/census4.txt";
  auto r = run("enumerate --order 4 --classify --output " + path);
  CHECK(r.code == 0);
  CHECK(r.out.find("866 classes") != std::string::npos);
  CHECK(run("validate " + path).code == 0);
  CHECK(run("enumerate --order 5").code == 2);
  CHECK(run("enumerate --order 3", "AISEMI_CENSUS_MAX_CLASSES=3").code == 1);
}

TEST_CASE("derivations") {
  const auto sample = std::string(AISEMI_SOURCE_DIR) + "/samples/commutativity.txt";
  CHECK(run("derive check " + sample).code == 0);
  auto text = slurp(sample);
  text.replace(text.find("chain: yxz"), 10, "chain: xzy");
  auto r = run("derive check " + temp_file("bad.deriv", text));
  CHECK(r.code == 1);
  CHECK(r.out.find("step 1") != std::string::npos);

  auto s = run("derive search --sigma \"xy = yx\" --claim \"xyz = zyx\"");
  CHECK(s.code == 0);
  CHECK(run("derive check " + temp_file("found.deriv", s.out)).code == 0);
  CHECK(run("derive search --claim \"x = y\"").code == 1);
  CHECK(run("derive check " + temp_file("junk.deriv", "chain: x +\n")).code == 2);
}

TEST_CASE("paper-verify") {
  auto r = run("--json paper-verify");
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  int out_of_scope = 0;
  for (const auto& c : j["claims"]) {
    if (c["status"] == "out of scope: not machine-checkable") ++out_of_scope;
    if (c["id"] == 10) CHECK(c["status"] == "skipped");
  }
  CHECK(out_of_scope >= 1);

  // Negative control: S53 with one multiplication entry changed.
  auto dump = run("registry").out;
  auto at = dump.find("algebra S53");
  REQUIRE(at != std::string::npos);
  auto mul = dump.find("mul\n", at) + 4;
  dump[mul] = dump[mul] == '1' ? '2' : '1';
  auto bad = run("paper-verify --registry-file " + temp_file("corrupt.reg", dump));
  CHECK(bad.code == 1);
  CHECK(bad.out.find("fail") != std::string::npos);
  CHECK(bad.out.find("FAILED") != std::string::npos);
}
