#include <doctest.h>

#include <filesystem>
#include <sstream>

#include <json.hpp>

#include "lbv/cli.hpp"
#include "lbv/errors.hpp"
#include "lbv/io.hpp"
#include "process.hpp"

using namespace lbv;
using lbv::testing::data_file;
using lbv::testing::run_cli;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {
fs::path scratch(const std::string& name) { return fs::temp_directory_path() / ("lbv_cli_" + name); }
}  // namespace

TEST_CASE("argument parsing") {
  const char* argv[] = {"lbv", "modulus", "--function", LBV_TEST_DATA "/bumps.json", "--q", "2", "--delta", "0.5"};
  std::ostringstream out;
  auto cfg = cli::parse_args(8, argv, out);
  REQUIRE(cfg);
  CHECK(cfg->subcommand == "modulus");
  CHECK(cfg->q == 2.0);
  CHECK(cfg->delta == 0.5);
  CHECK(cfg->format == cli::Format::Structured);

  const char* emb[] = {"lbv", "embed-check", "--lambda", "constant:1", "--omega", "power:1"};
  CHECK(cli::parse_args(6, emb, out)->format == cli::Format::Csv);

  const char* none[] = {"lbv"};
  CHECK_THROWS_AS((void)cli::parse_args(1, none, out), ArgumentError);
  const char* help[] = {"lbv", "--help"};
  CHECK_FALSE(cli::parse_args(2, help, out));
  CHECK(out.str().find("counterexample") != std::string::npos);
}

TEST_CASE("exit code matrix") {
  struct Row {
    std::string args;
    int status;
  };
  const std::string bumps = data_file("bumps.json");
  const Row rows[] = {
      {"variation --function " + bumps + " --lambda constant:1 --p 1 --exact", 0},
      {"variation --function " + bumps + " --lambda constant:1 --greedy", 0},
      {"modulus --function " + bumps + " --q 1 --delta 0.3", 0},
      {"embed-check --lambda constant:1 --omega power:1 --n-max 256", 0},
      {"extremal --lambda power:0.5 --n 3 --r 2", 0},
      {"counterexample --lambda constant:1 --omega power:2 --p 1 --q 1 --stages 1", 0},
      // domain errors
      {"counterexample --lambda constant:1 --omega power:1 --stages 1 --n-limit 5000", 1},
      // usage errors
      {"", 2},
      {"frobnicate", 2},
      {"variation --function /does/not/exist.json --lambda constant:1", 2},
      {"variation --function " + data_file("bad.json") + " --lambda constant:1", 2},
      {"variation --function " + bumps + " --lambda power:3", 2},
      {"variation --function " + bumps + " --lambda constant:1 --exact --limit 2", 2},
      {"variation --function " + bumps + " --lambda constant:1 --p 0.5", 2},
      {"modulus --function " + bumps + " --q 1 --delta 1.5", 2},
      {"modulus --function " + bumps + " --q 1", 2},
      {"embed-check --lambda constant:1 --omega tabulated:0:0,0.5:0,1:1", 2},
      {"embed-check --lambda constant:1", 2},
      {"embed-check --lambda constant:1 --omega power:1 --format xml", 2},
      {"extremal --lambda constant:1 --n 0 --r 1", 2},
      {"counterexample --lambda constant:1 --omega power:2 --stages -1", 2},
  };
  for (const auto& row : rows) {
    CAPTURE(row.args);
    CHECK(run_cli(row.args).status == row.status);
  }
}

TEST_CASE("usage errors print one diagnostic line") {
  auto res = run_cli("variation --function " + data_file("bumps.json") + " --lambda power:3", true);
  CHECK(res.status == 2);
  CHECK(!res.out.empty());
  CHECK(res.out.find('\n') == res.out.size() - 1);
}

TEST_CASE("variation output") {
  auto res = run_cli("variation --function " + data_file("bumps.json") + " --lambda constant:1 --p 1 --exact");
  REQUIRE(res.status == 0);
  auto j = json::parse(res.out);
  CHECK(j.at("value") == 22.0);
  CHECK(j.at("exact") == true);
  CHECK(j.at("witness").size() == 3);

  auto csv = run_cli("variation --function " + data_file("bumps.json") +
                     " --lambda explicit:1,100 --exact --format csv");
  REQUIRE(csv.status == 0);
  CHECK(csv.out == "a,b,change\n0,1,20\n");
}

TEST_CASE("modulus output") {
  auto res = run_cli("modulus --function " + data_file("indicator.json") + " --q 1 --delta 0.25");
  REQUIRE(res.status == 0);
  CHECK(json::parse(res.out).at("omega_q") == 0.25);
  auto prof = run_cli("modulus --function " + data_file("indicator.json") + " --q 1 --delta 0.5 --profile");
  REQUIRE(prof.status == 0);
  CHECK(prof.out.rfind("gamma,distance\n", 0) == 0);
}

TEST_CASE("embed-check writes CSV and a summary") {
  auto summary = scratch("summary.json");
  auto out = scratch("rows.csv");
  auto res = run_cli("embed-check --lambda constant:1 --omega power:2 --p 1 --q 1 --n-max 16384 -o " +
                     out.string() + " --summary " + summary.string());
  REQUIRE(res.status == 0);
  auto csv = lbv::testing::slurp(out);
  CHECK(csv.rfind("n,E_n,k_star\n", 0) == 0);
  CHECK(csv.find("\n16384,16384,1\n") != std::string::npos);
  auto j = json::parse(lbv::testing::slurp(summary));
  CHECK(j.at("verdict") == "divergent");
  CHECK(j.at("slope").get<double>() == doctest::Approx(1.0).epsilon(0.01));
  fs::remove(summary);
  fs::remove(out);
}

TEST_CASE("counterexample output and emitted g") {
  auto gpath = scratch("g.json");
  auto res = run_cli("counterexample --lambda constant:1 --omega power:2 --p 1 --q 1 --stages 2 --emit-g " +
                     gpath.string());
  REQUIRE(res.status == 0);
  auto j = json::parse(res.out);
  CHECK(j.at("plan").at("stages").at(0).at("n") == 17);
  CHECK(j.at("passed") == true);
  CHECK(j.at("certificates").size() == 2);

  auto text = lbv::testing::slurp(gpath);
  auto g = io::read_step_function(gpath);
  CHECK(io::dump(g) == text);
  auto plan = io::plan_from_json(j.at("plan"));
  CHECK(g == build_g(plan, WatermanSequence::constant(1), 1));
  fs::remove(gpath);
}

TEST_CASE("config file supplies lambda and omega") {
  auto conf = scratch("conf.json");
  io::write_atomically(conf, R"({"lambda":{"kind":"constant","c":1},"omega":{"kind":"power","beta":2}})");
  auto res = run_cli("counterexample --config " + conf.string() + " --stages 1 --format csv");
  CHECK(res.status == 0);
  CHECK(res.out.find("\n1,17,17,4,4,") != std::string::npos);
  fs::remove(conf);
}
