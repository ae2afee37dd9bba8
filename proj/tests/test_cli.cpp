#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "ordlim/cli.hpp"
#include "ordlim/config.hpp"
#include "ordlim/errors.hpp"

using namespace ordlim;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

const std::string kChain23 = R"({"chain":{"type":"constant","k":2,"l":3}})";
const std::string kTrefoil =
    R"({"chain":{"type":"handles","family":[{"level":0,"kind":"z","N":2},{"level":1,"kind":"z","N":3}],)"
    R"("default":{"kind":"cyclic"}},"m":1})";

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("ordlim_test_" + name)).string();
}

}  // namespace

TEST_CASE("config parses every chain type") {
  CHECK(config::load(kChain23).chain->key() == ChainSpec::constant(2, 3).key());
  CHECK(config::load(R"({"type":"periodic","pairs":[[2,3],[3,2]]})").chain ==
        ChainSpec::periodic({{2, 3}, {3, 2}}));
  CHECK(config::load(R"({"type":"table","entries":{"0":[2,3]},"default":[2,2]})").chain ==
        ChainSpec::table({{0, {2, 3}}}, {2, 2}));
  CHECK(config::load(R"({"type":"cyclic-tower","l":2})").chain == ChainSpec::cyclic_tower(2));
  const config::RunConfig c = config::load(kTrefoil);
  REQUIRE(c.family);
  CHECK(c.family->levels.size() == 2);
  CHECK(c.family->fallback);
  CHECK(c.m == 1);
  const config::RunConfig b = config::load(R"({"chain":{"type":"constant","k":2,"l":2},"budgets":{"sign":5},"radius":3})");
  CHECK(b.budgets.at("sign") == 5);
  CHECK(b.radius == 3);
}

TEST_CASE("config rejects malformed input") {
  for (const char* bad : {R"({"chain":{"type":"constant","k":2}})", R"({"chain":{"type":"nope"}})",
                          R"({"type":"table","entries":{"x":[2,3]},"default":[2,2]})",
                          R"({"type":"table","entries":{"0":[2,3]}})", R"({"type":"periodic","pairs":[[2]]})",
                          R"({"chain":{"type":"constant","k":2,"l":3},"budgets":{"sign":0}})",
                          R"({"chain":{"type":"constant","k":2,"l":3},"m":-1})", R"({"type":"handles"})",
                          R"({"type":"handles","family":[{"level":0,"kind":"klein"}]})",
                          R"({"type":"handles","family":[{"kind":"z","N":2}]})", "{not json"}) {
    CAPTURE(std::string(bad));
    CHECK_THROWS_AS(config::load(bad), InputError);
  }
  CHECK_THROWS_AS(config::load("/nonexistent/config.json"), InputError);
}

TEST_CASE("handle family without default throws on missing levels") {
  const config::RunConfig c = config::load(R"({"type":"handles","family":[{"level":0,"kind":"z","N":2}]})");
  const ito::HandleFamily F = config::family(*c.family, {});
  CHECK(F(0).generators().size() == 1);
  CHECK_THROWS_AS(F(1), InputError);
}

TEST_CASE("sign example") {
  const Run r = run({"sign", "--spec", kChain23, "g(-1)^-1 g(0)"});
  CHECK(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["value"] == "positive");
  CHECK(j["certificate"] == json::array({"a(0,1)"}));
  CHECK(j["basis"] == "chain");
}

TEST_CASE("props at m = 1 passes") {
  const Run r = run({"props", "--spec", kChain23, "--m", "1"});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["verdict"] == "pass");
}

TEST_CASE("euclid example") {
  const Run r = run({"euclid", "--k", "4", "--l", "6"});
  CHECK(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["obstruction"]["d"] == 2);
  CHECK(j["resolutions"] == 2);
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({"sign", "--spec", kChain23, "g(0"}).code == 1);
  CHECK(run({"sign", "--spec", kChain23, "g(0)", "--budget", "sign=0"}).code == 1);
  CHECK(run({"sign", "--spec", kChain23, "g(0)", "--budget", "nope=4"}).code == 1);
  CHECK(run({"sign", "--spec", kChain23, "g(0)", "--budget", "sign"}).code == 1);
  CHECK(run({"sign", "g(0)"}).code == 1);
  CHECK(run({"sign", "--spec", R"({"type":"cyclic-tower","l":2})", "--m", "0", "g(1)"}).code == 1);
  const Run tower = run({"witness", "--spec", R"({"type":"cyclic-tower","l":2})", "g(0)"});
  CHECK(tower.code == 3);
  CHECK(json::parse(tower.out)["outcome"] == "not-found");
  const Run narrow = run({"witness", "--spec", kChain23, "--m", "1", "--radius", "3"});
  CHECK(narrow.code == 3);
  const Run truncated = run({"gamma", "--spec", kChain23, "--budget", "gamma=5", "g(0)"});
  CHECK(truncated.code == 3);
  CHECK(json::parse(truncated.out)["truncated"] == true);
  CHECK(run({"deduce", "--spec", kChain23, "--seed", "g(0)"}).code == 1);
}

TEST_CASE("output is byte-identical across runs") {
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"witness", "--spec", kChain23},
        std::vector<std::string>{"gamma", "--spec", kChain23, "--radius", "3", "g(0)"},
        std::vector<std::string>{"ito-verify", "--spec", kTrefoil}}) {
    const Run a = run(args), b = run(args);
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("json-out writes the file and check-cert accepts it") {
  const std::string path = temp_path("witness.json");
  const Run r = run({"witness", "--spec", kChain23, "--json-out", path});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  REQUIRE(std::filesystem::exists(path));
  CHECK_FALSE(std::filesystem::exists(path + ".tmp"));
  const Run c = run({"check-cert", "--spec", kChain23, path});
  CHECK(c.code == 0);
  const json j = json::parse(c.out);
  CHECK(j["certificates"].get<int>() > 0);
  CHECK(j["valid"] == true);
  std::filesystem::remove(path);
}

TEST_CASE("check-cert rejects a tampered certificate") {
  const std::string path = temp_path("sign.json");
  json j = json::parse(run({"sign", "--spec", kChain23, "g(1)"}).out);
  j["certificate"][0] = "a(0,1)";
  std::ofstream(path) << j.dump();
  const Run c = run({"check-cert", "--spec", kChain23, path});
  CHECK(c.code == 2);
  CHECK(json::parse(c.out)["invalid"].size() == 1);
  std::filesystem::remove(path);
}

TEST_CASE("check-cert over handle bases") {
  const std::string path = temp_path("ito.json");
  CHECK(run({"ito-verify", "--spec", kTrefoil, "--json-out", path}).code == 0);
  const Run c = run({"check-cert", "--spec", kTrefoil, path});
  CHECK(c.code == 0);
  CHECK(json::parse(c.out)["certificates"].get<int>() > 10);
  std::filesystem::remove(path);
}

TEST_CASE("deduce replays its trace") {
  const Run r = run({"deduce", "--spec", kChain23, "--seed", "a(1,1)", "--target", "g(2)"});
  CHECK(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["complete"] == true);
  CHECK(j["replay"]["valid"] == true);
}

TEST_CASE("hnn-sign variants") {
  const json p = json::parse(run({"hnn-sign", "--spec", kChain23, "--t", "1", "g(0)^-5"}).out);
  const json n = json::parse(run({"hnn-sign", "--spec", kChain23, "--variant", "tnegative", "--t", "1", "g(0)"}).out);
  CHECK(p["value"] == "positive");
  CHECK(n["value"] == "negative");
  CHECK(run({"hnn-sign", "--spec", kChain23, "--variant", "sideways", "g(0)"}).code == 1);
}
