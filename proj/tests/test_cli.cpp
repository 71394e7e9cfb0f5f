#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "twistscl/cli.hpp"

using namespace twistscl;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::main(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("IntRange::parse") {
  const auto single = cli::IntRange::parse("7");
  CHECK(single.single());
  CHECK(single.lo == 7);
  const auto range = cli::IntRange::parse("2..10");
  CHECK(range.lo == 2);
  CHECK(range.hi == 10);
  CHECK_THROWS(cli::IntRange::parse("10..2"));
  CHECK_THROWS(cli::IntRange::parse("a..b"));
  CHECK_THROWS(cli::IntRange::parse(""));
}

TEST_CASE("bound") {
  auto r = invoke({"bound", "--g", "6", "--h", "2"});
  CHECK(r.code == cli::ok);
  CHECK(r.out == "90/91 (≈0.98901099)\n");

  r = invoke({"bound", "--g", "5", "--h", "3"});
  CHECK(r.code == cli::ok);
  CHECK(r.out.find("875/649") == 0);
  CHECK(r.out.find("via symmetry") != std::string::npos);

  r = invoke({"bound", "--g", "6", "--h", "2", "--precision", "3"});
  CHECK(r.out == "90/91 (≈0.989)\n");

  r = invoke({"bound", "--g", "6", "--h", "2", "--format", "json"});
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["value"]["num"] == "90");
  CHECK(j["value"]["den"] == "91");
  CHECK(j["decomposition"]["k"] == 3);
}

TEST_CASE("usage errors exit with 2") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"bound", "--g", "1", "--h", "0"},
           {"bound", "--g", "5", "--h", "7"},
           {"bound", "--g", "x", "--h", "1"},
           {"bound", "--g", "5"},
           {"replay", "--g", "5", "--h", "7"},
           {"table", "--g", "9..3"},
           {"bound", "--g", "5", "--h", "1", "--format", "yaml"},
           {"frobnicate"},
           {}}) {
    const auto r = invoke(args);
    CHECK_MESSAGE(r.code == cli::usage_error, (args.empty() ? std::string("(none)") : args[0]));
    CHECK(r.out.empty());
    CHECK_FALSE(r.err.empty());
  }
}

TEST_CASE("verify commands") {
  auto r = invoke({"verify-lemma8", "--n", "12"});
  CHECK(r.code == cli::ok);
  CHECK(r.out.find("11/11 steps valid") != std::string::npos);

  r = invoke({"verify-lemma8", "--n", "1..6"});
  CHECK(r.code == cli::ok);

  r = invoke({"verify-homology", "--g", "2..3"});
  CHECK(r.code == cli::ok);
  CHECK(r.out.find("FAIL") == std::string::npos);

  r = invoke({"verify-identity", "--g", "2..5"});
  CHECK(r.code == cli::ok);
  CHECK(r.out == "6/6 coefficient identities hold for 2 <= g <= 5\n");

  r = invoke({"replay", "--g", "6", "--h", "2", "--format", "json"});
  CHECK(r.code == cli::ok);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["bound"]["num"] == "90");
}

TEST_CASE("table formats") {
  auto r = invoke({"table", "--g", "2..3", "--h", "all", "--format", "csv"});
  CHECK(r.code == cli::ok);
  CHECK(r.out ==
        "g,h,k,r,bound_num,bound_den,bound_decimal,lower_num,lower_den,nonsep_num,nonsep_den\n"
        "2,1,2,0,3,5,0.60000000,1,42,1,15\n"
        "3,1,3,0,15,28,0.53571429,1,60,3,56\n"
        "3,2,3,0,15,28,0.53571429,1,60,3,56\n");

  r = invoke({"table", "--g", "2..30", "--format", "json"});
  const auto rows = nlohmann::json::parse(r.out);
  CHECK(rows.is_array());
  CHECK(rows.size() == 435);  // sum of g - 1 over g = 2..30
  for (const auto& row : rows) {
    const std::string num = row["bound"]["num"], den = row["bound"]["den"];
    CHECK(parse_rational(num + "/" + den) == bound(row["g"], row["h"]).value);
  }
}

TEST_CASE("output is deterministic across runs and thread counts") {
  const auto a = invoke({"table", "--g", "2..60", "--format", "csv", "--threads", "1"});
  const auto b = invoke({"table", "--g", "2..60", "--format", "csv", "--threads", "4"});
  const auto c = invoke({"table", "--g", "2..60", "--format", "csv", "--threads", "4"});
  CHECK(a.out == b.out);
  CHECK(b.out == c.out);
}

TEST_CASE("--out writes the file instead of stdout") {
  const auto path = std::filesystem::temp_directory_path() / "twistscl_cli_out_test.csv";
  std::filesystem::remove(path);
  const auto r = invoke({"table", "--g", "2..4", "--format", "csv", "--out", path.string()});
  CHECK(r.code == cli::ok);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::stringstream content;
  content << in.rdbuf();
  CHECK(content.str() == invoke({"table", "--g", "2..4", "--format", "csv"}).out);
  std::filesystem::remove(path);
}
