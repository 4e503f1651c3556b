#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "cyclat/cli.hpp"

using cyclat::run_cli;
using json = nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "cyclat");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

bool near(double x, double y, double rel) { return std::abs(x - y) <= rel * std::max(std::abs(x), std::abs(y)); }

std::string join(const json& values) {
  std::string s;
  char buf[64];
  for (const auto& v : values) {
    std::snprintf(buf, sizeof buf, "%.17g", v.get<double>());
    s += (s.empty() ? "" : ",") + std::string(buf);
  }
  return s;
}

}  // namespace

TEST_CASE("solve n=5") {
  const Run r = cli({"solve", "--n", "5", "--r0", "1", "--seed", "7"});
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["kissing"] == 40);
  CHECK(near(doc["delta"].get<double>(), 0.0883883, 1e-6));
  CHECK(doc["converged"] == true);
  CHECK(doc["enumeration"] == "complete");
  CHECK(r.err.empty());
}

TEST_CASE("solve defaults and variants") {
  const Run half = cli({"solve", "--n", "2", "--r0", "1", "--variant", "half-6b"});
  REQUIRE(half.code == 0);
  CHECK(near(json::parse(half.out)["delta"].get<double>(), 0.288675, 1e-6));

  const Run dflt = cli({"solve", "--n", "12"});
  REQUIRE(dflt.code == 0);
  CHECK(json::parse(dflt.out)["r0"] == 4);

  const Run pow2 = cli({"solve", "--n", "8"});
  CHECK(pow2.code == 1);
  CHECK(pow2.err.find("no-valid-r0") != std::string::npos);

  const Run half8 = cli({"solve", "--n", "8", "--variant", "half-6b"});
  REQUIRE(half8.code == 0);
  CHECK(json::parse(half8.out)["r0"] == 4);
}

TEST_CASE("singular system") {
  CHECK(cli({"solve", "--n", "4", "--r0", "1"}).code == 1);
  const Run r = cli({"solve", "--n", "4", "--r0", "1", "--allow-singular"});
  REQUIRE((r.code == 0 || r.code == 2));
  if (r.code == 0) {
    const json doc = json::parse(r.out);
    CHECK(doc["enumeration"] == "singular");
    CHECK(std::find(doc["flags"].begin(), doc["flags"].end(), "singular-lattice") != doc["flags"].end());
  }
}

TEST_CASE("non-convergence exits with 2") {
  const Run r = cli({"solve", "--n", "5", "--epsilon", "1e-300", "--max-starts", "1"});
  CHECK(r.code == 2);
  CHECK(r.err.find("did not converge") != std::string::npos);
  CHECK(json::parse(r.out)["converged"] == false);
}

TEST_CASE("analyze fixtures") {
  const json a = json::parse(cli({"analyze", "--u", "1,1,0"}).out);
  CHECK(near(a["det"]["direct"].get<double>(), 2.0, 1e-12));
  CHECK(near(a["min_norm_sq"].get<double>(), 2.0, 1e-12));
  CHECK(a["kissing"] == 12);
  CHECK(near(a["delta"].get<double>(), 0.176777, 1e-5));

  const json z = json::parse(cli({"analyze", "--u", "1,0,0,0"}).out);
  CHECK(z["delta"].get<double>() == 1.0 / 16);

  const json d = json::parse(cli({"analyze", "--u", "0,1,0,0,-1"}).out);
  CHECK(std::find(d["flags"].begin(), d["flags"].end(), "degenerate: a=0") != d["flags"].end());
}

TEST_CASE("analyze parse errors name the token") {
  const Run r = cli({"analyze", "--u", "1,0.5x,3"});
  CHECK(r.code == 1);
  CHECK(r.err.find("token 2") != std::string::npos);
  CHECK(r.err.find("'0.5x'") != std::string::npos);
  CHECK(cli({"analyze", "--u", "1,,3"}).code == 1);
  CHECK(cli({"analyze", "--u", "1"}).code == 1);
  CHECK(cli({"analyze", "--u", "1,nan"}).code == 1);
  CHECK(cli({"analyze", "--u", " 1 , +2 "}).code == 0);
}

TEST_CASE("table") {
  const Run r = cli({"table", "--n-max", "12"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("n,method,delta_ours,delta_Dn,delta_An,best_known\n", 0) == 0);
  CHECK(r.out.find("\n12,a2eq4b-r0=4,9.765625e-4,") != std::string::npos);
  CHECK(r.out.find("\n8,half-n,") != std::string::npos);
  const json rows = json::parse(cli({"table", "--n-max", "5", "--format", "json"}).out);
  CHECK(rows.size() == 4);
  CHECK(cli({"table", "--n-max", "65"}).code == 1);
  CHECK(cli({"table", "--n-max", "1"}).code == 1);
}

TEST_CASE("verify and its negative control") {
  const Run ok = cli({"verify", "--quick"});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("FAIL") == std::string::npos);
  CHECK(ok.out.find("PASS norm-expansion") != std::string::npos);
  const Run bad = cli({"verify", "--quick", "--tamper"});
  CHECK(bad.code == 3);
  CHECK(bad.out.find("FAIL norm-expansion") != std::string::npos);
  CHECK(bad.err.find("first counterexample (norm-expansion)") != std::string::npos);
}

TEST_CASE("usage errors") {
  CHECK(cli({}).code == 1);
  CHECK(cli({"solve"}).code == 1);
  CHECK(cli({"solve", "--n", "5", "--variant", "other"}).code == 1);
  CHECK(cli({"solve", "--n", "5", "--format", "csv"}).code == 1);
  CHECK(cli({"frobnicate"}).code == 1);
  const Run help = cli({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("solve") != std::string::npos);
}

TEST_CASE("identical invocations give identical bytes") {
  const std::vector<std::string> solve_args{"solve", "--n", "9", "--seed", "3"};
  CHECK(cli(solve_args).out == cli(solve_args).out);
  CHECK(cli({"table"}).out == cli({"table"}).out);
}

TEST_CASE("analyze reproduces a solve report") {
  for (const std::vector<std::string>& args : {std::vector<std::string>{"solve", "--n", "7", "--r0", "2", "--seed", "1"},
                                             std::vector<std::string>{"solve", "--n", "6", "--variant", "half-minus-2b"}}) {
    const json s = json::parse(cli(args).out);
    const json a = json::parse(cli({"analyze", "--u", join(s["u"])}).out);
    CHECK(a["r0"] == s["r0"]);
    CHECK(a["variant"] == s["variant"]);
    CHECK(a["kissing"] == s["kissing"]);
    for (const char* key : {"a", "b", "min_norm_sq", "delta", "delta_closed"})
      CHECK(near(a[key].get<double>(), s[key].get<double>(), 1e-9));
    for (const char* key : {"direct", "eigen", "closed"})
      CHECK(near(a["det"][key].get<double>(), s["det"][key].get<double>(), 1e-9));
  }
}

TEST_CASE("output path") {
  const auto path = std::filesystem::temp_directory_path() / "cyclat_table_test.csv";
  const Run r = cli({"table", "--n-max", "4", "--output-path", path.string()});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::stringstream content;
  content << in.rdbuf();
  CHECK(content.str() == cli({"table", "--n-max", "4"}).out);
  std::filesystem::remove(path);
  CHECK(cli({"table", "--output-path", "/nonexistent-dir/x.csv"}).code == 1);
}
