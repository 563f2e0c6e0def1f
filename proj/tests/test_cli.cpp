#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "r1c/cli.hpp"
#include "r1c/serialization.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

using namespace r1c;

namespace {

struct TempFile {
  std::filesystem::path path;
  explicit TempFile(const std::string& name, const std::string& contents = "") {
    path = std::filesystem::temp_directory_path() / name;
    if (!contents.empty()) {
      std::ofstream f(path);
      f << contents;
    }
  }
  ~TempFile() { std::error_code ec; std::filesystem::remove(path, ec); }
};

const char* kGoodMeasure = R"({"space":"full","n":2,
  "atoms":[{"weight":0.5,"matrix":[[1,0],[0,1]]},
           {"weight":0.5,"matrix":[[1,0],[0,-1]]}]})";

const char* kNotLaminate = R"({"space":"full","n":2,
  "atoms":[{"weight":0.5,"matrix":[[1,0],[0,1]]},
           {"weight":0.5,"matrix":[[-1,0],[0,-1]]}]})";

const char* kBadWeights = R"({"space":"full","n":2,
  "atoms":[{"weight":0.5,"matrix":[[1,0],[0,1]]},
           {"weight":0.6,"matrix":[[1,0],[0,-1]]}]})";

}  // namespace

TEST_CASE("cli: usage errors exit 2, help exits 0") {
  CHECK(cli::run_capture({}).exit_code == 2);
  CHECK(cli::run_capture({"scan"}).exit_code == 2);              // missing --integrand
  CHECK(cli::run_capture({"scan", "--bogus"}).exit_code == 2);   // unknown flag
  CHECK(cli::run_capture({"frobnicate"}).exit_code == 2);        // unknown subcommand
  CHECK(cli::run_capture({"--help"}).exit_code == 0);
  CHECK(cli::run_capture({"jensen", "--measure", "/no/such/file.json"}).exit_code == 2);
  CHECK(cli::run_capture({"scan", "--integrand", "nope", "--samples", "1"}).exit_code == 2);
}

TEST_CASE("cli: jensen verdicts drive the exit code") {
  TempFile rankone("r1lab_test_rankone.json", kGoodMeasure);
  const auto ok = cli::run_capture({"jensen", "--measure", rankone.path.string()});
  CHECK(ok.exit_code == 0);
  const json jok = json::parse(ok.out);
  CHECK(jok["overall_pass"] == true);

  TempFile mix("r1lab_test_mix.json", kNotLaminate);
  const auto bad = cli::run_capture({"jensen", "--measure", mix.path.string()});
  CHECK(bad.exit_code == 1);
  const json jbad = json::parse(bad.out);
  CHECK(jbad["overall_pass"] == false);
  CHECK(jbad["results"][0]["data"]["witness"]["integrand"] == "eq:det");

  TempFile off("r1lab_test_weights.json", kBadWeights);
  const auto err = cli::run_capture({"jensen", "--measure", off.path.string()});
  CHECK(err.exit_code == 2);
  CHECK(err.err.find("weights sum to 1.1") != std::string::npos);
}

TEST_CASE("cli: prelaminate lemma-hom reproduces the worked lambdas") {
  const auto res = cli::run_capture(
      {"prelaminate", "--kind", "lemma-hom", "--a", "2", "--z", "1", "--w", "0", "--t", "2"});
  REQUIRE(res.exit_code == 0);
  const json j = json::parse(res.out);
  CHECK(j["results"][0]["data"]["lambda1"].get<double>() == doctest::Approx(4.0 / 7.0));
  CHECK(j["results"][0]["data"]["lambda2"].get<double>() == doctest::Approx(5.0 / 8.0));
  CHECK(j["results"][0]["data"]["prelaminate"]["tree"].contains("left"));

  // CSV atom dump: weight plus four coordinates per row.
  const auto csv = cli::run_capture({"prelaminate", "--kind", "lemma-hom", "--a", "2", "--z",
                                     "1", "--w", "0", "--t", "2", "--format", "csv"});
  CHECK(csv.exit_code == 0);
  CHECK(csv.out.find("weight,point") != std::string::npos);
}

TEST_CASE("cli: prelaminate diag-split accepts inline matrices") {
  const auto res = cli::run_capture({"prelaminate", "--kind", "diag-split", "--matrix",
                                     "[[1,0],[0,1]]", "--t", "2"});
  REQUIRE(res.exit_code == 0);
  const json j = json::parse(res.out);
  CHECK(j["results"][0]["data"]["prelaminate"]["atoms"].size() == 3);
}

TEST_CASE("cli: prelaminate --k shortcut and symmetric diag-split") {
  const auto res = cli::run_capture(
      {"prelaminate", "--kind", "lemma-hom", "--a", "2", "--k", "0", "--t", "2"});
  REQUIRE(res.exit_code == 0);
  const json j = json::parse(res.out);
  CHECK(j["results"][0]["data"]["lambda1"].get<double>() == doctest::Approx(4.0 / 7.0));

  const auto sym = cli::run_capture({"prelaminate", "--kind", "diag-split", "--matrix",
                                     "[[1,2],[2,-1]]", "--t", "1.5", "--space", "symmetric"});
  CHECK(sym.exit_code == 0);

  const auto bad = cli::run_capture({"prelaminate", "--kind", "diag-split", "--matrix",
                                     "[[1,2],[3,4]]", "--t", "1.5", "--space", "symmetric"});
  CHECK(bad.exit_code == 2);  // not symmetric
}

TEST_CASE("cli: scan on symmetric-domain integrands") {
  const auto res = cli::run_capture({"scan", "--integrand", "F:1", "--n", "3", "--samples",
                                     "30", "--directions", "5", "--seed", "2"});
  CHECK(res.exit_code == 0);
}

TEST_CASE("cli: scan pass/fail exit codes") {
  const auto pass = cli::run_capture({"scan", "--integrand", "det+", "--samples", "50",
                                      "--directions", "5", "--seed", "11"});
  CHECK(pass.exit_code == 0);
  const auto fail = cli::run_capture({"scan", "--integrand", "neg:det+", "--samples", "50",
                                      "--directions", "5", "--seed", "11"});
  CHECK(fail.exit_code == 1);
  const json j = json::parse(fail.out);
  CHECK(j["results"][0]["data"]["violation_count"].get<long>() > 0);
}

TEST_CASE("cli: fit-nl recovers det and rejects |A|^2") {
  const auto det = cli::run_capture({"fit-nl", "--integrand", "det+", "--region", "det+",
                                     "--samples", "200", "--seed", "3"});
  CHECK(det.exit_code == 0);
  const auto frob = cli::run_capture({"fit-nl", "--integrand", "frob2", "--samples", "200",
                                      "--seed", "3"});
  CHECK(frob.exit_code == 1);  // residual above threshold: not rank-one affine
}

TEST_CASE("cli: identical command and seed produce byte-identical reports") {
  const std::vector<std::string> cmd{"verify-all", "--profile", "quick", "--seed", "42"};
  const auto a = cli::run_capture(cmd);
  const auto b = cli::run_capture(cmd);
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);

  // Thread count must not change the bytes either.
  const auto c =
      cli::run_capture({"verify-all", "--profile", "quick", "--seed", "42", "--threads", "1"});
  CHECK(c.out == a.out);
}

TEST_CASE("cli: R1LAB_SEED is the seed fallback") {
  setenv("R1LAB_SEED", "77", 1);
  const auto env_run = cli::run_capture({"identity-check", "--profile", "quick"});
  const auto flag_run = cli::run_capture({"identity-check", "--profile", "quick", "--seed", "77"});
  unsetenv("R1LAB_SEED");
  CHECK(env_run.exit_code == 0);
  CHECK(env_run.out == flag_run.out);

  setenv("R1LAB_SEED", "not-a-number", 1);
  const auto bad = cli::run_capture({"identity-check", "--profile", "quick"});
  unsetenv("R1LAB_SEED");
  CHECK(bad.exit_code == 2);
}

TEST_CASE("cli: --out writes the report to a file") {
  TempFile out("r1lab_test_report.json");
  const auto res = cli::run_capture({"identity-check", "--profile", "quick", "--seed", "5",
                                     "--out", out.path.string()});
  CHECK(res.exit_code == 0);
  std::ifstream f(out.path);
  REQUIRE(f.good());
  json j;
  f >> j;
  CHECK(j["overall_pass"] == true);
  CHECK(j["command"]["subcommand"] == "identity-check");
}
