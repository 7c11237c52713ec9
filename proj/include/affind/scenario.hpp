#pragma once

#include <memory>

#include "affind/certify.hpp"

namespace affind {

/// A parsed and validated scenario: the algebra, parabolic, inducing
/// module and the list of checks with their expected verdicts.
struct Scenario {
  std::string name;
  Json config;  // canonical parsed form
  std::string algebra_label;
  std::vector<int> subset;
  Budgets budgets;
  PivotStrategy strategy = PivotStrategy::LargestK;
  std::vector<std::pair<std::string, Verdict>> checks;
  std::string out_dir;

  std::unique_ptr<AffineAlgebra> alg;
  std::unique_ptr<Parabolic> par;
  std::shared_ptr<InducingModule> inducing;
  std::unique_ptr<InducedModule> induced;

  const CharInducedModule* char_module() const {
    return inducing ? inducing->as_char_induced() : nullptr;
  }
};

/// Parses a config. Throws std::invalid_argument with a diagnostic on any
/// inconsistency (unknown checks, incompatible charge, bad budgets, ...).
Scenario build_scenario(const Json& config);
Scenario build_scenario_from_text(const std::string& text);

struct RunResult {
  Json report;          // deterministic machine-readable report
  std::string summary;  // human-readable summary with wall times
  int exit_code = 0;
  std::vector<Report> reports;
};

/// Runs every requested check, re-verifies each embedded witness through
/// the independent re-check pass, and assembles the report. Deterministic
/// given (config, seed); wall times appear only in the text summary.
RunResult run_scenario(Scenario& sc, const RunOptions& opt);

/// Writes report and summary files atomically; returns the report path.
std::string write_report_files(const RunResult& result, const std::string& scenario_name,
                               const std::string& out_dir);

std::uint64_t config_hash(const Json& config);

/// Bundled scenario configs, by name.
const std::vector<std::pair<std::string, std::string>>& bundled_scenarios();
const std::string* find_bundled(const std::string& name);

}  // namespace affind
