#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "orbitmetric/cli.hpp"
#include "test_util.hpp"

using namespace orbitmetric;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / ("orbitmetric_cli_test_" + name);
  std::ofstream(path) << content;
  return path;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("pair writes CSV with a config preamble") {
  const auto r = run({"pair", "--system", "circle", "--x", "0.1", "--y", "0.3", "--cap", "20"});
  REQUIRE(r.code == kExitOk);
  const auto l = lines(r.out);
  REQUIRE(l.size() == 3 + 7);
  CHECK(l[0].rfind("# metric=pair system={\"kind\":\"circle_rotation\"", 0) == 0);
  CHECK(l[1].rfind("# config={\"command\":\"pair\",\"seed\":0", 0) == 0);
  CHECK(l[2] == "n,ebar_n,besicovitch_n");
  CHECK(l[3].rfind("1,", 0) == 0);
  CHECK(l.back().rfind("17,", 0) == 0);

  const auto d = run({"pair", "--system", "shift", "--x", "(0)", "--y", "0000000000(1)", "--cap", "10",
                      "--delta", "0.01"});
  REQUIRE(d.code == kExitOk);
  CHECK(lines(d.out)[2] == "n,ebar_n,besicovitch_n,delta_n");
}

TEST_CASE("flags override the config file") {
  const auto cfg = temp_file("override.json",
                             R"({"system": {"kind": "tent_map"}, "x": 0.1, "y": 0.4, "cap": 30, "seed": 3})");
  const Json c = parse_config({"pair", "--config", cfg.string(), "--seed", "7"});
  CHECK(c["seed"] == 7);
  CHECK(c["cap"] == 30);
  CHECK(c["system"]["kind"] == "tent_map");

  const auto r = run({"pair", "--config", cfg.string(), "--seed", "7", "--format", "json"});
  REQUIRE(r.code == kExitOk);
  const Json j = Json::parse(r.out);
  CHECK(j["config"]["seed"] == 7);
  std::filesystem::remove(cfg);
}

TEST_CASE("input errors exit with code 2") {
  const auto unknown = run({"pair", "--bogus", "1"});
  CHECK(unknown.code == kExitInputError);
  CHECK(unknown.err.find("--bogus") != std::string::npos);
  CHECK(unknown.err.find("--system") != std::string::npos);
  CHECK(unknown.err.find("--seed") != std::string::npos);

  CHECK(run({"pair", "--system", "tent", "--alpha", "0.3", "--x", "0.1", "--y", "0.2"}).code == kExitInputError);
  CHECK(run({"pair", "--system", "nonsense", "--x", "0.1", "--y", "0.2"}).code == kExitInputError);
  CHECK(run({"pair", "--system", "tent", "--x", "2.5", "--y", "0.2"}).code == kExitInputError);
  CHECK(run({"modulus", "--system", "tent"}).code == kExitInputError);
  CHECK(run({}).code == kExitInputError);

  const auto sys = temp_file("system.json", R"({"kind": "tent_map"})");
  const auto both = run({"pair", "--system", "circle", "--system-json", sys.string(), "--x", "0.1", "--y", "0.2"});
  CHECK(both.code == kExitInputError);

  const auto cfg = temp_file("conflict.json", R"({"system": {"kind": "tent_map"}, "x": 0.1, "y": 0.4})");
  CHECK(run({"pair", "--config", cfg.string(), "--system", "circle"}).code == kExitInputError);

  const auto bad = temp_file("bad.json", "{\"system\": {\"kind\": \"tent_map\"},\n \"x\": 0.1,,}");
  const auto malformed = run({"pair", "--config", bad.string()});
  CHECK(malformed.code == kExitInputError);
  CHECK(malformed.err.find("bad.json:2:") != std::string::npos);
  CHECK(malformed.err.find("malformed JSON") != std::string::npos);

  const auto key = temp_file("key.json", R"({"system": {"kind": "tent_map"}, "x": 0.1, "y": 0.4, "colour": 1})");
  CHECK(run({"pair", "--config", key.string()}).code == kExitInputError);

  for (const auto& p : {sys, cfg, bad, key}) std::filesystem::remove(p);
}

TEST_CASE("strict mode exits 1 on a violated verdict") {
  const std::vector<std::string> base{"modulus", "--system", "shift", "--delta", "0.0009765625",
                                      "--cap", "300", "--samples", "4"};
  CHECK(run(base).code == kExitOk);
  auto strict = base;
  strict.push_back("--strict");
  CHECK(run(strict).code == kExitViolated);
  CHECK(run({"modulus", "--system", "circle", "--delta", "0.05", "--cap", "300", "--samples", "4", "--strict"}).code ==
        kExitOk);
}

TEST_CASE("JSON output embeds config, version and observations") {
  const auto r = run({"ue", "--system", "circle", "--samples", "3", "--cap", "1000", "--format", "json"});
  REQUIRE(r.code == kExitOk);
  const Json j = Json::parse(r.out);
  CHECK(j["name"] == "unique_ergodicity");
  CHECK(j["version"] == ORBITMETRIC_VERSION);
  CHECK(j["config"]["command"] == "ue");
  CHECK(j["config"]["samples"] == 3);
  CHECK(j["observations"]["columns"] == Json::array({"i", "j", "ebar_tail_sup"}));
  CHECK(j["observations"]["rows"].size() == 3);
  CHECK(j["verdict"] == "consistent");
}

TEST_CASE("output file and determinism") {
  const auto path = std::filesystem::temp_directory_path() / "orbitmetric_cli_test_out.csv";
  const std::vector<std::string> args{"birkhoff", "--system", "doubling", "--observable", "cos2pi", "--samples",
                                      "5", "--cap", "200", "--seed", "11", "--output", path.string()};
  REQUIRE(run(args).code == kExitOk);
  std::ifstream first_in(path);
  const std::string first((std::istreambuf_iterator<char>(first_in)), {});
  REQUIRE(run(args).code == kExitOk);
  std::ifstream second_in(path);
  const std::string second((std::istreambuf_iterator<char>(second_in)), {});
  CHECK_FALSE(first.empty());
  CHECK(first == second);
  std::filesystem::remove(path);
}

TEST_CASE("version and selftest") {
  const auto v = run({"--version"});
  CHECK(v.code == kExitOk);
  CHECK(v.out == std::string(ORBITMETRIC_VERSION) + "\n");
  const auto s = run({"selftest", "--criterion", "1"});
  CHECK(s.code == kExitOk);
  CHECK(s.out.rfind("PASS", 0) == 0);
}

}
