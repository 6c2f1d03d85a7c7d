// End-to-end checks of the command-line tool: report envelope, exit codes,
// error handling, and byte-identical output across repeated runs and thread
// counts.  The harness passes the binary path in NCPOLYDOM_BIN.
#include <doctest.h>
#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "ncpolydom/json_io.hpp"

using ncpolydom::json;

namespace {

struct CliResult {
  std::string out;
  int code = -1;
};

std::string binary() {
  const char* bin = std::getenv("NCPOLYDOM_BIN");
  REQUIRE_MESSAGE(bin != nullptr, "NCPOLYDOM_BIN must point at the CLI binary");
  return bin;
}

CliResult run_shell(const std::string& cmd) {
  CliResult res;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) res.out.append(buf, got);
  int status = pclose(pipe);
  res.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

// stdout only; stderr dropped.
CliResult run_cli(const std::string& args, const std::string& env = "") {
  std::string cmd = env.empty() ? "" : env + " ";
  cmd += binary() + " " + args + " 2>/dev/null";
  return run_shell(cmd);
}

// stderr only; stdout dropped.
CliResult run_cli_stderr(const std::string& args) {
  return run_shell(binary() + " " + args + " 2>&1 1>/dev/null");
}

std::string quote(const json& j) { return "'" + j.dump() + "'"; }

const json kFibQ = {{"n", 1},
                    {"terms", {{{"word", {1}}, {"coeff", 1.0}}, {{"word", {1, 1}}, {"coeff", 1.0}}}}};

json geometric_series(double c, int levels) {
  json terms = json::array();
  for (int p = 0; p <= levels; ++p) {
    json word = json::array();
    for (int t = 0; t < p; ++t) word.push_back(1);
    terms.push_back({{"words", {word}}, {"block", {{std::pow(c, p), 0.0}}}});
  }
  return {{"k", 1}, {"n", {1}}, {"coeff_dim", 1}, {"terms", terms}};
}

json scalar_x(double v) {
  return {{"dim", 1}, {"blocks", {{{{v, 0.0}}}}}};
}

}  // namespace

TEST_CASE("report envelope carries tool, inputs, config, and results") {
  CliResult r = run_cli("bcoeffs --q " + quote(kFibQ) + " --max 10");
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["tool"] == "ncpolydom");
  CHECK(j.contains("version"));
  CHECK(j["subcommand"] == "bcoeffs");
  CHECK(j["inputs"].contains("q"));
  CHECK(j["inputs"]["q"].contains("fnv1a64"));
  CHECK(j["config"]["max"] == 10);
  // The weight sequence of Z + Z^2 is the shifted Fibonacci sequence.
  std::vector<double> expect{1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89};
  CHECK(j["results"]["b"].get<std::vector<double>>() == expect);
}

TEST_CASE("repeat runs and different thread counts emit identical bytes") {
  std::string args = "modelnorm --series " + quote(geometric_series(1.0, 24)) +
                     " --q " + quote(kFibQ) + " --r 0.5 --caps 20";
  CliResult a = run_cli(args);
  CliResult b = run_cli(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CliResult serial = run_cli(args, "NCPOLYDOM_THREADS=1");
  CliResult team = run_cli(args, "NCPOLYDOM_THREADS=3");
  CHECK(serial.code == 0);
  CHECK(serial.out == a.out);
  CHECK(team.out == a.out);

  // Same discipline on a kernel-assembly command.
  json x = {{"dim", 2}, {"blocks", {{{{0.0, 0.0}, {0.4, 0.1}, {0.0, 0.0}, {0.0, 0.0}}}}}};
  std::string bargs = "berezin --q " + quote(json::array({{{"n", 1}, {"terms", {{{"word", {1}}, {"coeff", 1.0}}}}}})) +
                      " --x " + quote(x) + " --caps 6 --verify";
  CliResult k1 = run_cli(bargs, "NCPOLYDOM_THREADS=1");
  CliResult k3 = run_cli(bargs, "NCPOLYDOM_THREADS=3");
  REQUIRE(k1.code == 0);
  CHECK(k1.out == k3.out);
}

TEST_CASE("validation failures produce an error envelope and exit code 1") {
  json bad = {{"n", 1}, {"terms", {{{"word", json::array()}, {"coeff", 1.0}}}}};
  CliResult r = run_cli("bcoeffs --q " + quote(bad));
  CHECK(r.code == 1);
  json j = json::parse(r.out);
  CHECK(j["tool"] == "ncpolydom");
  std::string msg = j["error"].get<std::string>();
  CHECK(msg.find("constant term") != std::string::npos);

  CliResult e = run_cli_stderr("bcoeffs --q " + quote(bad));
  CHECK(e.out.rfind("error:", 0) == 0);
}

TEST_CASE("uncertified evaluation is reported with exit code 2") {
  // Unit-coefficient polynomial at a point of gauge ~0.38: the extrapolated
  // tail is finite but far above the certification threshold.
  CliResult r = run_cli("eval --series " + quote(geometric_series(1.0, 3)) + " --q " +
                        quote(kFibQ) + " --x " + quote(scalar_x(0.3)));
  CHECK(r.code == 2);
  json j = json::parse(r.out);
  CHECK(j["results"]["certified"] == false);
  CHECK(j["results"]["tail_estimate"].get<double>() > 1e-6);
  // The value itself is still the exact polynomial sum.
  double v = j["results"]["value"]["entries"][0][0].get<double>();
  double expect = 1 + 0.3 + 0.09 + 0.027;
  CHECK(v == doctest::Approx(expect).epsilon(1e-12));

  // The same series certifies on a tuple deep inside the domain.
  CliResult ok = run_cli("eval --series " + quote(geometric_series(1.0, 3)) + " --q " +
                         quote(kFibQ) + " --x " + quote(scalar_x(0.01)));
  CHECK(ok.code == 0);
}

TEST_CASE("--out mirrors stdout bytes into a file") {
  std::string path = "/tmp/ncpolydom_cli_out.json";
  std::remove(path.c_str());
  CliResult r = run_cli("minkowski --q " + quote(kFibQ) + " --x " + quote(scalar_x(0.5)) +
                        " --out " + path);
  REQUIRE(r.code == 0);
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == r.out);
  json j = json::parse(r.out);
  // The gauge of the point 0.5 in this scalar domain.
  CHECK(j["results"]["gauge"].get<double>() == doctest::Approx(0.6360098).epsilon(1e-5));
  std::remove(path.c_str());
}

TEST_CASE("membership margins are ordered by binary counting over factors") {
  json x = {{"dim", 1}, {"blocks", {{{{0.5, 0.0}}}, {{{0.3, 0.0}}}}}};
  json q2 = json::array({kFibQ, {{"n", 1}, {"terms", {{{"word", {1}}, {"coeff", 1.0}}}}}});
  CliResult r = run_cli("membership --q " + quote(q2) + " --x " + quote(x) + " --mode open");
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["results"]["accepted"] == true);
  auto margins = j["results"]["margins"];
  REQUIRE(margins.size() == 4);
  CHECK(margins[0]["p"] == json::array({0, 0}));
  CHECK(margins[1]["p"] == json::array({0, 1}));
  CHECK(margins[2]["p"] == json::array({1, 0}));
  CHECK(margins[3]["p"] == json::array({1, 1}));
  CHECK(margins[1]["margin"].get<double>() == doctest::Approx(1 - 0.09).epsilon(1e-12));
  CHECK(margins[2]["margin"].get<double>() == doctest::Approx(1 - 0.25 - 0.0625).epsilon(1e-12));
}

TEST_CASE("missing required options exit nonzero without a report") {
  CliResult r = run_cli("membership --q " + quote(kFibQ));
  CHECK(r.code != 0);
}
