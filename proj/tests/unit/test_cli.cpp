#include "bkd/commands.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

using namespace bkd;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "bkd");
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string without_elapsed(const std::string& json) {
  auto j = nlohmann::ordered_json::parse(json);
  j.erase("elapsed_ms");
  return j.dump();
}

}  // namespace

TEST_CASE("expand") {
  const auto r = run({"expand", "--k", "1", "--n", "100", "--format", "csv"});
  CHECK(r.code == 0);
  std::istringstream lines(r.out);
  std::string line;
  std::vector<std::string> rows;
  while (std::getline(lines, line)) rows.push_back(line);
  REQUIRE(rows.size() == 102);
  CHECK(rows[0] == "n,delta");
  CHECK(rows[2] == "1,3");
  CHECK(rows[3] == "2,8");
  CHECK(rows[4] == "3,18");
  CHECK(r.err.find("k=1 N=100 first=1") != std::string::npos);

  CHECK(run({"expand", "--k", "1", "--n", "0"}).out == "n,delta\n0,1\n");
  CHECK(run({"expand", "--k", "2", "--n", "3", "--format", "json"}).out ==
        "{\"k\":2,\"N\":3,\"coeffs\":[\"1\",\"3\",\"8\",\"19\"]}\n");
  CHECK(run({"expand", "--k", "-1", "--n", "3"}).code == kExitUsage);
  CHECK(run({"expand", "--k", "1", "--n", "-3"}).code == kExitUsage);
}

TEST_CASE("expand to a file prints the checksum") {
  const auto path = std::filesystem::temp_directory_path() / "bkd-cli-expand.csv";
  const auto r = run({"expand", "--k", "1", "--n", "10", "--out", path.string()});
  CHECK(r.code == 0);
  CHECK(r.out.find("last=1308 sha256=") != std::string::npos);
  std::ifstream in(path);
  std::string first;
  std::getline(in, first);
  CHECK(first == "n,delta");
  std::filesystem::remove(path);
  CHECK(run({"expand", "--k", "1", "--n", "10", "--out", "/nonexistent-dir/x.csv"}).code == kExitUsage);
}

TEST_CASE("verify exit codes") {
  CHECK(run({"verify", "turan3", "--k", "1", "--from", "6", "--to", "800"}).code == kExitPass);
  CHECK(run({"verify", "turan3", "--k", "1", "--from", "1", "--to", "800"}).code == kExitCounterexample);
  CHECK(run({"verify", "theta-mono", "--k", "2", "--from", "7", "--to", "800"}).code == kExitPass);
  CHECK(run({"verify", "dlog", "--k", "1", "--r", "3", "--from", "3", "--to", "800"}).code == kExitPass);
  CHECK(run({"verify", "logconcave", "--k", "2", "--from", "1", "--to", "800"}).code == kExitPass);
  CHECK(run({"verify", "nosuch", "--k", "1", "--from", "1", "--to", "5"}).code == kExitUsage);
  CHECK(run({"verify", "turan3", "--k", "1", "--from", "9", "--to", "5"}).code == kExitUsage);
  CHECK(run({"verify", "turan3", "--k", "1"}).code == kExitUsage);
  CHECK(run({"verify", "bessel", "--z-grid", "1484:2000:3", "--prec", "32"}).code == kExitUsage);
  CHECK(run({"verify", "bessel", "--z-grid", "100:2000:3"}).code == kExitUsage);
  CHECK(run({"verify", "turan3", "--k", "1", "--from", "1", "--to", "5", "--workers", "0"}).code == kExitUsage);
  CHECK(run({"--help"}).code == 0);
  CHECK(run({}).code == kExitUsage);
}

TEST_CASE("json reports are deterministic across worker counts") {
  const auto a = run({"verify", "turan3", "--k", "1", "--from", "1", "--to", "900", "--format", "json"});
  const auto b =
      run({"verify", "turan3", "--k", "1", "--from", "1", "--to", "900", "--format", "json", "--workers", "4"});
  CHECK(a.code == 1);
  CHECK(without_elapsed(a.out) == without_elapsed(b.out));
  const auto j = nlohmann::json::parse(a.out);
  CHECK(j["check"] == "turan3");
  CHECK(j["pass"] == false);
  CHECK(j["failures"] == nlohmann::json::array({2, 4}));

  const auto c = run({"verify", "sandwich", "--k", "1", "--from", "3512", "--to", "4000", "--step", "100",
                      "--format", "json", "--workers", "3"});
  const auto d = run({"verify", "sandwich", "--k", "1", "--from", "3512", "--to", "4000", "--step", "100",
                      "--format", "json"});
  CHECK(c.code == 0);
  CHECK(without_elapsed(c.out) == without_elapsed(d.out));
}

TEST_CASE("margins csv") {
  const auto r = run({"verify", "turan3", "--k", "1", "--from", "1", "--to", "4", "--format", "csv"});
  CHECK(r.out.rfind("n,margin\n", 0) == 0);
  CHECK(r.out.find("\n2,-100\n") != std::string::npos);
  const auto t = run({"verify", "theta-bounds", "--k", "1", "--from", "15081", "--to", "15081", "--format", "csv"});
  CHECK(t.code == 0);
  CHECK(t.out.rfind("# precision_bits=384\nn,theta_exact,theta_lo,theta_hi,lambda_lo,lambda_hi,g,G,verdict\n", 0) == 0);
  CHECK(t.out.find(",PASS\n") != std::string::npos);
}

TEST_CASE("scan") {
  const auto r3 = run({"scan", "conjecture", "--k", "1", "--r", "3", "--to", "1000"});
  CHECK(r3.code == 0);
  CHECK(r3.out.find("candidate 3") != std::string::npos);
  const auto r2 = run({"scan", "conjecture", "--k", "1", "--r", "2", "--to", "1000", "--format", "json"});
  CHECK(nlohmann::json::parse(r2.out)["threshold"] == 1);
  const auto k3 = run({"scan", "conjecture", "--k", "3", "--r", "2", "--to", "600", "--format", "json"});
  CHECK(k3.code == 0);
  CHECK(nlohmann::json::parse(k3.out)["threshold"].is_number());
  CHECK(run({"scan", "conjecture", "--k", "1", "--r", "0", "--to", "100"}).code == kExitUsage);
}

TEST_CASE("other verify targets") {
  CHECK(run({"verify", "phi-psi"}).code == 0);
  CHECK(run({"verify", "domination"}).code == 0);
  CHECK(run({"verify", "lemma-uv", "--samples", "500"}).code == 0);
  CHECK(run({"verify", "tau", "--samples", "500"}).code == 0);
  CHECK(run({"verify", "envelope", "--k", "1", "--from", "971", "--to", "1500", "--step", "250",
             "--orientation", "phi-upper"}).code == 0);
  CHECK(run({"verify", "envelope", "--k", "1", "--from", "971", "--to", "1500", "--step", "250"}).code == 1);
}

#ifdef BKD_CLI_PATH
TEST_CASE("installed binary") {
  const std::string cmd = std::string(BKD_CLI_PATH) + " verify turan3 --k 1 --from 1 --to 10 > /dev/null";
  const int status = std::system(cmd.c_str());
  REQUIRE(WIFEXITED(status));
  CHECK(WEXITSTATUS(status) == 1);
  const int usage = std::system((std::string(BKD_CLI_PATH) + " bogus 2> /dev/null").c_str());
  CHECK(WEXITSTATUS(usage) == 3);
}
#endif
