#include "doctest.h"

#include <fstream>

#include "affind/scenario.hpp"

using namespace affind;

TEST_CASE("bundled scenarios parse and build") {
  for (const auto& [name, text] : bundled_scenarios()) {
    CAPTURE(name);
    Scenario sc = build_scenario_from_text(text);
    CHECK(sc.name == name);
  }
  CHECK(find_bundled("thm3.3-A1") != nullptr);
  CHECK(find_bundled("no-such") == nullptr);
}

TEST_CASE("config validation rejects inconsistencies") {
  // charge_zero_witness with a = 1 is rejected at parse time
  CHECK_THROWS_WITH_AS(
      build_scenario_from_text(R"({
        "scenario": "bad", "algebra": "A1", "subset_s": [],
        "inducing": {"kind": "imaginary_whittaker", "eta": {"default": "1"}, "a": "1"},
        "checks": ["charge_zero_witness"]})"),
      doctest::Contains("central charge 0"), std::invalid_argument);

  // unknown check name
  CHECK_THROWS_AS(build_scenario_from_text(R"({
        "scenario": "bad", "algebra": "A1", "checks": ["nope"]})"),
                  std::invalid_argument);

  // unsupported algebra label names the supported ones
  CHECK_THROWS_WITH_AS(build_scenario_from_text(R"({
        "scenario": "bad", "algebra": "E8", "checks": ["algebra_selftest"]})"),
                       doctest::Contains("A1, A2"), std::invalid_argument);

  // tensor with mismatched charges
  CHECK_THROWS_WITH_AS(
      build_scenario_from_text(R"({
        "scenario": "bad", "algebra": "A2", "subset_s": [1],
        "inducing": {"kind": "tensor",
          "left": {"kind": "verma", "chi": ["1"], "a": "1"},
          "right": {"eta": {"default": "1"}, "a": "2"},
          "a": "1", "lambda": ["0"]},
        "checks": ["probe"]})"),
      doctest::Contains("charges"), std::invalid_argument);

  // probe needs nonzero charge
  CHECK_THROWS_AS(build_scenario_from_text(R"({
        "scenario": "bad", "algebra": "A1", "subset_s": [],
        "inducing": {"kind": "extended_whittaker", "eta": {"default": "1"}, "a": "0",
                     "lambda": ["0"]},
        "checks": ["probe"]})"),
                  std::invalid_argument);

  // budgets must be positive
  CHECK_THROWS_AS(build_scenario_from_text(R"({
        "scenario": "bad", "algebra": "A1", "checks": ["algebra_selftest"],
        "budgets": {"D": 0}})"),
                  std::invalid_argument);

  // malformed JSON
  CHECK_THROWS_AS(build_scenario_from_text("{nope"), std::invalid_argument);
}

TEST_CASE("reports are byte-identical across runs and thread counts") {
  for (const std::string name : {"prop3.1-a0-witness", "lem4.1-A2", "thm3.3-A1"}) {
    CAPTURE(name);
    auto run_once = [&](bool parallel) {
      Scenario sc = build_scenario_from_text(*find_bundled(name));
      RunOptions opt;
      opt.parallel = parallel;
      RunResult r = run_scenario(sc, opt);
      return r.report.dump(2);
    };
    const std::string serial1 = run_once(false);
    const std::string serial2 = run_once(false);
    const std::string parallel = run_once(true);
    CHECK(serial1 == serial2);
    CHECK(serial1 == parallel);
  }
}

TEST_CASE("seed change perturbs sampled checks deterministically") {
  Json config = Json::parse(*find_bundled("prop3.1-A1"));
  Scenario sc1 = build_scenario(config);
  RunResult r1 = run_scenario(sc1, RunOptions{});
  config["budgets"]["seed"] = 999;
  Scenario sc2 = build_scenario(config);
  RunResult r2 = run_scenario(sc2, RunOptions{});
  // same verdicts, different sampled witnesses, different config hash
  CHECK(r1.report.at("checks")[1].at("verdict") == r2.report.at("checks")[1].at("verdict"));
  CHECK(r1.report.at("config_hash") != r2.report.at("config_hash"));
  CHECK(r1.report.at("checks")[1].at("witness") != r2.report.at("checks")[1].at("witness"));
}

TEST_CASE("exit codes follow expectations") {
  // witness_found where verified is expected -> nonzero exit
  Scenario sc = build_scenario_from_text(R"({
    "scenario": "expect-mismatch", "algebra": "A1", "subset_s": [],
    "inducing": {"kind": "imaginary_whittaker", "eta": {"default": "1"}, "a": "0"},
    "checks": ["charge_zero_witness"],
    "expect": {"charge_zero_witness": "verified"},
    "budgets": {"D": 2, "window": 3}})");
  RunResult r = run_scenario(sc, RunOptions{});
  CHECK(r.exit_code == 1);

  // with the default expectation the same scenario exits 0
  Scenario sc2 = build_scenario_from_text(R"({
    "scenario": "expect-ok", "algebra": "A1", "subset_s": [],
    "inducing": {"kind": "imaginary_whittaker", "eta": {"default": "1"}, "a": "0"},
    "checks": ["charge_zero_witness"],
    "budgets": {"D": 2, "window": 3}})");
  RunResult r2 = run_scenario(sc2, RunOptions{});
  CHECK(r2.exit_code == 0);

  // budget exhaustion is marked inconclusive but exits 0
  Scenario sc3 = build_scenario_from_text(R"({
    "scenario": "starved", "algebra": "A2", "subset_s": [1],
    "inducing": {"kind": "universal_whittaker_levi",
                 "eta": {"e": {"a1": "1"}, "f_theta": ["1"]}, "a": "1", "lambda": ["0"]},
    "checks": ["probe"],
    "budgets": {"D": 2, "N_max": 1, "B": 1, "R": 0, "seed": 3}})");
  RunResult r3 = run_scenario(sc3, RunOptions{});
  CHECK(r3.exit_code == 0);
  CHECK(r3.report.at("checks")[0].at("verdict") == "inconclusive");
}

TEST_CASE("report embeds config hash and recheck status") {
  Scenario sc = build_scenario_from_text(*find_bundled("prop3.2-A1"));
  RunResult r = run_scenario(sc, RunOptions{});
  CHECK(r.report.at("schema_version") == 1);
  CHECK(r.report.at("config_hash").get<std::string>().size() == 16);
  for (const auto& c : r.report.at("checks")) CHECK(c.at("recheck") == "ok");
  CHECK(r.exit_code == 0);
}

TEST_CASE("descent golden witness for the imaginary parabolic") {
  Scenario sc = build_scenario_from_text(*find_bundled("thm3.3-A1"));
  RunOptions opt;
  RunResult r = run_scenario(sc, opt);
  for (const auto& c : r.report.at("checks")) {
    if (c.at("name") == "descent") {
      CHECK(c.at("witness").at("operator") == Json::array({"e[a1]@0"}));
      CHECK(c.at("witness").at("trajectory") == Json::array({1, 0}));
    }
  }
}

TEST_CASE("pivot strategy independence of golden scenario verdicts") {
  for (const std::string name : {"thm4.2-A2", "thm4.6-A2"}) {
    CAPTURE(name);
    Json config = Json::parse(*find_bundled(name));
    for (const std::string strat : {"largest_k", "least_tau_then_least_k"}) {
      config["pivot_strategy"] = strat;
      // shrink the probe for test speed; the acceptance suite runs it full
      config["budgets"]["D"] = 1;
      config["budgets"]["R"] = 2;
      Scenario sc = build_scenario(config);
      RunResult r = run_scenario(sc, RunOptions{true, 0});
      for (const auto& c : r.report.at("checks"))
        CHECK(c.at("verdict") == "verified");
    }
  }
}

namespace {
std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  REQUIRE(f.good());
  return std::string(std::istreambuf_iterator<char>(f), {});
}
}  // namespace

TEST_CASE("golden reports: committed files and hashes match fresh runs") {
  const std::string root = AFFIND_SOURCE_DIR;
  const RunOptions opt{true, 0};
  // small scenarios: full byte comparison against committed reports
  for (const std::string name : {"selftest-A1", "selftest-A2", "prop3.1-A1", "prop3.2-A1",
                                 "prop3.1-a0-witness", "lem4.1-A2"}) {
    CAPTURE(name);
    Scenario sc = build_scenario_from_text(*find_bundled(name));
    RunResult r = run_scenario(sc, opt);
    CHECK(r.report.dump(2) + "\n" == slurp(root + "/tests/golden/" + name + ".report.json"));
  }
  // probe scenarios: byte-exact via recorded content hash
  const Json hashes = Json::parse(slurp(root + "/tests/golden/probe_hashes.json"));
  for (const std::string name : {"thm3.3-A1", "thm4.2-A2", "thm4.4-A2", "thm4.6-A2"}) {
    CAPTURE(name);
    Scenario sc = build_scenario_from_text(*find_bundled(name));
    RunResult r = run_scenario(sc, opt);
    const std::string bytes = r.report.dump(2) + "\n";
    char hex[32];
    std::snprintf(hex, sizeof hex, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(bytes)));
    CHECK(std::string(hex) == hashes.at(name).at("fnv1a64").get<std::string>());
    CHECK(bytes.size() == hashes.at(name).at("bytes").get<size_t>());
  }
}

TEST_CASE("committed scenario configs match the bundled ones") {
  const std::string root = AFFIND_SOURCE_DIR;
  for (const auto& [name, text] : bundled_scenarios()) {
    CAPTURE(name);
    CHECK(text + "\n" == slurp(root + "/data/scenarios/" + name + ".json"));
  }
}
