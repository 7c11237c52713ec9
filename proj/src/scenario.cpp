#include "affind/scenario.hpp"

#include <filesystem>
#include <fstream>

namespace affind {

namespace {

const std::vector<std::string> kKnownChecks = {
    "whittaker", "torsion", "descent", "probe", "charge_zero_witness", "algebra_selftest"};

Verdict default_expectation(const std::string& check) {
  return check == "charge_zero_witness" ? Verdict::WitnessFound : Verdict::Verified;
}

Verdict verdict_from_name(const std::string& name) {
  if (name == "verified") return Verdict::Verified;
  if (name == "witness_found") return Verdict::WitnessFound;
  if (name == "inconclusive") return Verdict::Inconclusive;
  throw std::invalid_argument("unknown verdict '" + name + "'");
}

HeisenbergCharacter parse_heis_eta(const Json& j) {
  HeisenbergCharacter eta;
  if (j.contains("default")) eta.default_value = rat_parse(j.at("default").get<std::string>());
  if (j.contains("table"))
    for (const auto& row : j.at("table"))
      eta.table[{row.at(0).get<int>() - 1, row.at(1).get<int>()}] =
          rat_parse(row.at(2).get<std::string>());
  return eta;
}

AffineCharacter parse_affine_eta(const Json& j, const Parabolic& par) {
  AffineCharacter eta;
  if (j.contains("e"))
    for (const auto& [key, val] : j.at("e").items()) {
      if (key.size() < 2 || key[0] != 'a')
        throw std::invalid_argument("affine character keys look like 'a1'");
      const int idx = std::stoi(key.substr(1)) - 1;
      bool in_s = false;
      for (int s : par.subset()) in_s = in_s || s == idx;
      if (!in_s)
        throw std::invalid_argument("affine character value on a root outside S: " + key);
      eta.e_values[idx] = rat_parse(val.get<std::string>());
    }
  if (j.contains("f_theta"))
    for (const auto& val : j.at("f_theta"))
      eta.f_theta_values.push_back(rat_parse(val.get<std::string>()));
  if (eta.f_theta_values.size() > par.s_components().size())
    throw std::invalid_argument("more f_theta values than components of S");
  return eta;
}

std::vector<Rat> parse_rat_list(const Json& j) {
  std::vector<Rat> out;
  for (const auto& v : j) out.push_back(rat_parse(v.get<std::string>()));
  return out;
}

std::shared_ptr<InducingModule> build_inducing(const Json& j, const Parabolic& par, Rat& a_out,
                                               std::string& kind_out) {
  const std::string kind = j.at("kind").get<std::string>();
  kind_out = kind;
  const Rat a = j.contains("a") ? rat_parse(j.at("a").get<std::string>()) : Rat(0);
  a_out = a;
  if (kind == "imaginary_whittaker")
    return make_imaginary_whittaker(par, parse_heis_eta(j.at("eta")), a);
  if (kind == "extended_whittaker")
    return make_extended_whittaker(par, parse_heis_eta(j.at("eta")), a,
                                   parse_rat_list(j.at("lambda")));
  if (kind == "universal_whittaker_levi")
    return make_universal_whittaker_levi(par, parse_affine_eta(j.at("eta"), par), a,
                                         parse_rat_list(j.at("lambda")));
  if (kind == "evaluation") {
    std::vector<long> mu;
    for (const auto& v : j.at("mu")) mu.push_back(v.get<long>());
    return make_evaluation(par, mu, parse_rat_list(j.at("points")));
  }
  if (kind == "tensor") {
    const Json& left = j.at("left");
    const Json& right = j.at("right");
    const Rat a_left =
        left.contains("a") ? rat_parse(left.at("a").get<std::string>()) : a;
    const Rat a_right =
        right.contains("a") ? rat_parse(right.at("a").get<std::string>()) : a;
    const std::vector<Rat> lambda = parse_rat_list(j.at("lambda"));
    const std::string lkind = left.at("kind").get<std::string>();
    if (lkind == "verma") {
      auto verma = make_verma(par, parse_rat_list(left.at("chi")), a_left);
      auto whit =
          make_complement_whittaker(par, parse_heis_eta(right.at("eta")), a_right, true);
      return make_mixed_tensor(par, verma, whit, lambda, true);
    }
    if (lkind == "whittaker_evaluation") {
      auto w = make_whittaker_no_d(par, parse_affine_eta(left.at("eta"), par), a_left);
      std::vector<long> mu;
      for (const auto& v : left.at("mu")) mu.push_back(v.get<long>());
      auto e = make_evaluation(par, mu, parse_rat_list(left.at("points")));
      auto core_left = make_leibniz_tensor(w, e);
      auto s2 =
          make_complement_whittaker(par, parse_heis_eta(right.at("eta")), a_right, false);
      auto core = make_mixed_tensor(par, core_left, s2, lambda, false);
      return make_free_derivation(core);
    }
    throw std::invalid_argument("unknown tensor left kind '" + lkind + "'");
  }
  throw std::invalid_argument("unknown inducing kind '" + kind + "'");
}

std::string render_cartan_vector(const std::vector<Rat>& u) {
  std::string out;
  for (size_t i = 0; i < u.size(); ++i) {
    if (is_zero(u[i])) continue;
    if (!out.empty() && sgn(u[i]) > 0) out += "+";
    if (u[i] == Rat(-1)) out += "-";
    else if (u[i] != Rat(1)) out += rat_str(u[i]);
    out += "h" + std::to_string(i + 1);
  }
  return out.empty() ? "0" : out;
}

}  // namespace

std::uint64_t config_hash(const Json& config) {
  // canonical form: keys sorted
  const nlohmann::json sorted = nlohmann::json::parse(config.dump());
  return fnv1a64(sorted.dump());
}

Scenario build_scenario_from_text(const std::string& text) {
  Json config;
  try {
    config = Json::parse(text);
  } catch (const std::exception& e) {
    throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
  }
  return build_scenario(config);
}

Scenario build_scenario(const Json& config) {
  Scenario sc;
  sc.config = config;
  if (config.contains("schema_version") && config.at("schema_version").get<int>() != 1)
    throw std::invalid_argument("unsupported schema_version");
  sc.name = config.at("scenario").get<std::string>();
  sc.algebra_label = config.at("algebra").get<std::string>();
  if (config.contains("subset_s"))
    for (const auto& v : config.at("subset_s")) sc.subset.push_back(v.get<int>() - 1);
  sc.budgets = Budgets::from_json(config.contains("budgets") ? config.at("budgets")
                                                             : Json::object());
  if (config.contains("pivot_strategy")) {
    const std::string s = config.at("pivot_strategy").get<std::string>();
    if (s == "largest_k") sc.strategy = PivotStrategy::LargestK;
    else if (s == "least_tau_then_least_k") sc.strategy = PivotStrategy::LeastTauThenLeastK;
    else throw std::invalid_argument("unknown pivot strategy '" + s + "'");
  }
  if (config.contains("out")) sc.out_dir = config.at("out").get<std::string>();

  if (!config.contains("checks") || config.at("checks").empty())
    throw std::invalid_argument("config lists no checks");
  for (const auto& c : config.at("checks")) {
    const std::string name = c.get<std::string>();
    if (std::find(kKnownChecks.begin(), kKnownChecks.end(), name) == kKnownChecks.end())
      throw std::invalid_argument("unknown check '" + name + "'");
    Verdict expect = default_expectation(name);
    if (config.contains("expect") && config.at("expect").contains(name))
      expect = verdict_from_name(config.at("expect").at(name).get<std::string>());
    sc.checks.emplace_back(name, expect);
  }

  sc.alg = std::make_unique<AffineAlgebra>(RootSystem::build(sc.algebra_label));
  sc.par = std::make_unique<Parabolic>(*sc.alg, sc.subset);

  Rat charge(0);
  std::string kind;
  if (config.contains("inducing"))
    sc.inducing = build_inducing(config.at("inducing"), *sc.par, charge, kind);

  bool needs_induced = false;
  for (const auto& [name, expect] : sc.checks) {
    if (name == "algebra_selftest") continue;
    if (!sc.inducing)
      throw std::invalid_argument("check '" + name + "' needs an inducing module");
    if (name == "whittaker" || name == "torsion" || name == "charge_zero_witness") {
      if (!sc.inducing->as_char_induced())
        throw std::invalid_argument("check '" + name + "' needs a Whittaker-type module");
    }
    if (name == "torsion" || name == "descent" || name == "probe") {
      if (is_zero(sc.inducing->charge()))
        throw std::invalid_argument("check '" + name + "' requires nonzero central charge");
    }
    if (name == "charge_zero_witness") {
      if (!is_zero(sc.inducing->charge()))
        throw std::invalid_argument("charge_zero_witness requires central charge 0");
      if (kind != "imaginary_whittaker")
        throw std::invalid_argument(
            "charge_zero_witness applies to the Heisenberg Whittaker module");
    }
    if (name == "descent" || name == "probe") needs_induced = true;
  }
  if (needs_induced) sc.induced = std::make_unique<InducedModule>(*sc.par, sc.inducing);
  return sc;
}

RunResult run_scenario(Scenario& sc, const RunOptions& opt) {
  RunResult result;
  Json checks_json = Json::array();
  std::string summary;
  summary += "scenario " + sc.name + "\n";
  summary += "  algebra " + sc.algebra_label + ", parabolic " + sc.par->tag() + "\n";
  {
    std::string hl = "[", hp = "[";
    for (size_t i = 0; i < sc.par->hl_basis().size(); ++i)
      hl += (i ? ", " : "") + render_cartan_vector(sc.par->hl_basis()[i]);
    for (size_t i = 0; i < sc.par->hperp_basis().size(); ++i)
      hp += (i ? ", " : "") + render_cartan_vector(sc.par->hperp_basis()[i]);
    summary += "  h_l basis " + hl + "], h_l_perp basis " + hp + "]\n";
  }
  if (sc.inducing) summary += "  inducing: " + sc.inducing->describe() + "\n";

  bool against_expectation = false;
  bool recheck_failed = false;

  for (const auto& [name, expect] : sc.checks) {
    Report rep;
    try {
      if (name == "algebra_selftest") {
        rep = algebra_selftest(sc.algebra_label, opt);
      } else if (name == "whittaker") {
        rep = check_whittaker(*sc.inducing->as_char_induced(), sc.budgets.window);
      } else if (name == "torsion") {
        rep = check_torsion(*sc.inducing->as_char_induced(), sc.budgets);
      } else if (name == "charge_zero_witness") {
        rep = check_charge_zero_witness(*sc.inducing->as_char_induced(), sc.budgets);
      } else if (name == "descent") {
        // golden single-vector descent: the first length-1 basis vector
        const auto basis = sc.induced->enumerate_basis(1, 1);
        InducedModule::Vector v;
        for (const auto& key : basis) {
          if (key.first.word_length() == 1 && sc.inducing->length(key.second) == 0) {
            InducedModule::add(v, key, Rat(1));
            break;
          }
        }
        rep = descend(*sc.induced, v, sc.budgets, sc.strategy);
      } else if (name == "probe") {
        rep = probe_irreducibility(*sc.induced, sc.budgets, sc.strategy, opt);
      }
    } catch (const std::exception& e) {
      rep.check = name;
      rep.verdict = Verdict::Inconclusive;
      rep.note = std::string("check raised an error: ") + e.what();
      against_expectation = true;
    }

    Json rj = rep.to_json();
    RecheckContext ctx;
    ctx.induced = sc.induced.get();
    ctx.char_module = sc.char_module();
    std::optional<std::string> recheck_err;
    try {
      recheck_err = recheck_report(rj, ctx);
    } catch (const std::exception& e) {
      recheck_err = std::string("recheck raised: ") + e.what();
    }
    rj["recheck"] = recheck_err ? ("failed: " + *recheck_err) : "ok";
    if (recheck_err) recheck_failed = true;

    const bool matches = rep.verdict == expect;
    if (!matches && (rep.verdict == Verdict::WitnessFound || expect == Verdict::WitnessFound))
      against_expectation = true;
    rj["expected"] = verdict_name(expect);
    checks_json.push_back(rj);

    char line[160];
    std::snprintf(line, sizeof line, "  check %-20s %-13s (%.1f ms) expected %s, recheck %s\n",
                  name.c_str(), verdict_name(rep.verdict).c_str(), rep.millis,
                  verdict_name(expect).c_str(), recheck_err ? "FAILED" : "ok");
    summary += line;
    if (!rep.note.empty()) summary += "    " + rep.note + "\n";
    result.reports.push_back(std::move(rep));
  }

  char hash_hex[32];
  std::snprintf(hash_hex, sizeof hash_hex, "%016llx",
                static_cast<unsigned long long>(config_hash(sc.config)));

  Json report = Json::object();
  report["schema_version"] = 1;
  report["scenario"] = sc.name;
  report["config_hash"] = std::string(hash_hex);
  Json context = Json::object();
  context["algebra"] = sc.algebra_label;
  context["parabolic"] = sc.par->tag();
  {
    Json hl = Json::array(), hp = Json::array();
    for (const auto& u : sc.par->hl_basis()) hl.push_back(render_cartan_vector(u));
    for (const auto& u : sc.par->hperp_basis()) hp.push_back(render_cartan_vector(u));
    context["hl_basis"] = hl;
    context["hperp_basis"] = hp;
  }
  if (sc.inducing) context["inducing"] = sc.inducing->describe();
  report["context"] = context;
  report["checks"] = checks_json;

  result.report = report;
  result.exit_code = (against_expectation || recheck_failed) ? 1 : 0;
  summary += "  exit " + std::to_string(result.exit_code) + "\n";
  result.summary = summary;
  return result;
}

std::string write_report_files(const RunResult& result, const std::string& scenario_name,
                               const std::string& out_dir) {
  namespace fs = std::filesystem;
  const fs::path dir = out_dir.empty() ? fs::path(".") : fs::path(out_dir);
  fs::create_directories(dir);
  const fs::path report_path = dir / (scenario_name + ".report.json");
  const fs::path summary_path = dir / (scenario_name + ".summary.txt");
  auto atomic_write = [](const fs::path& path, const std::string& bytes) {
    const fs::path tmp = path.string() + ".tmp";
    {
      std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
      f << bytes;
    }
    fs::rename(tmp, path);
  };
  atomic_write(report_path, result.report.dump(2) + "\n");
  atomic_write(summary_path, result.summary);
  return report_path.string();
}

// ---------------------------------------------------------------------------
// bundled scenarios

namespace {

const std::vector<std::pair<std::string, std::string>> kBundled = {
    {"selftest-A1", R"json({
  "schema_version": 1,
  "scenario": "selftest-A1",
  "algebra": "A1",
  "checks": ["algebra_selftest"],
  "budgets": {"seed": 1}
})json"},
    {"selftest-A2", R"json({
  "schema_version": 1,
  "scenario": "selftest-A2",
  "algebra": "A2",
  "checks": ["algebra_selftest"],
  "budgets": {"seed": 1}
})json"},
    {"prop3.1-A1", R"json({
  "schema_version": 1,
  "scenario": "prop3.1-A1",
  "algebra": "A1",
  "subset_s": [],
  "inducing": {"kind": "imaginary_whittaker", "eta": {"default": "1"}, "a": "1"},
  "checks": ["whittaker", "torsion"],
  "budgets": {"D": 2, "window": 6, "samples": 50, "seed": 31}
})json"},
    {"prop3.2-A1", R"json({
  "schema_version": 1,
  "scenario": "prop3.2-A1",
  "algebra": "A1",
  "subset_s": [],
  "inducing": {"kind": "extended_whittaker", "eta": {"default": "1"}, "a": "1", "lambda": ["0"]},
  "checks": ["whittaker", "torsion"],
  "budgets": {"D": 2, "window": 6, "samples": 50, "seed": 32}
})json"},
    {"prop3.1-a0-witness", R"json({
  "schema_version": 1,
  "scenario": "prop3.1-a0-witness",
  "algebra": "A1",
  "subset_s": [],
  "inducing": {"kind": "imaginary_whittaker", "eta": {"default": "1"}, "a": "0"},
  "checks": ["whittaker", "charge_zero_witness"],
  "budgets": {"D": 3, "window": 4, "seed": 33}
})json"},
    {"lem4.1-A2", R"json({
  "schema_version": 1,
  "scenario": "lem4.1-A2",
  "algebra": "A2",
  "subset_s": [1],
  "inducing": {
    "kind": "universal_whittaker_levi",
    "eta": {"e": {"a1": "1"}, "f_theta": ["1"]},
    "a": "1",
    "lambda": ["0"]
  },
  "checks": ["whittaker", "torsion"],
  "budgets": {"D": 2, "window": 6, "samples": 50, "seed": 41}
})json"},
    {"thm3.3-A1", R"json({
  "schema_version": 1,
  "scenario": "thm3.3-A1",
  "algebra": "A1",
  "subset_s": [],
  "inducing": {"kind": "extended_whittaker", "eta": {"default": "1"}, "a": "1", "lambda": ["0"]},
  "checks": ["whittaker", "descent", "probe"],
  "budgets": {"D": 3, "N_max": 12, "B": 200, "R": 20, "window": 6, "seed": 330}
})json"},
    {"thm4.2-A2", R"json({
  "schema_version": 1,
  "scenario": "thm4.2-A2",
  "algebra": "A2",
  "subset_s": [1],
  "inducing": {
    "kind": "universal_whittaker_levi",
    "eta": {"e": {"a1": "1"}, "f_theta": ["1"]},
    "a": "1",
    "lambda": ["0"]
  },
  "checks": ["descent", "probe"],
  "pivot_strategy": "least_tau_then_least_k",
  "budgets": {"D": 2, "N_max": 12, "B": 200, "R": 20, "window": 6, "seed": 420}
})json"},
    {"thm4.4-A2", R"json({
  "schema_version": 1,
  "scenario": "thm4.4-A2",
  "algebra": "A2",
  "subset_s": [1],
  "inducing": {
    "kind": "tensor",
    "left": {
      "kind": "whittaker_evaluation",
      "eta": {"e": {"a1": "1"}, "f_theta": ["1"]},
      "mu": [1],
      "points": ["2"]
    },
    "right": {"eta": {"default": "1"}},
    "a": "1",
    "lambda": ["0"]
  },
  "checks": ["descent", "probe"],
  "budgets": {"D": 2, "N_max": 12, "B": 200, "R": 20, "window": 6, "seed": 440}
})json"},
    {"thm4.6-A2", R"json({
  "schema_version": 1,
  "scenario": "thm4.6-A2",
  "algebra": "A2",
  "subset_s": [1],
  "inducing": {
    "kind": "tensor",
    "left": {"kind": "verma", "chi": ["2"]},
    "right": {"eta": {"default": "1"}},
    "a": "1",
    "lambda": ["0"]
  },
  "checks": ["descent", "probe"],
  "budgets": {"D": 2, "N_max": 12, "B": 200, "R": 20, "window": 6, "seed": 460}
})json"},
};

}  // namespace

const std::vector<std::pair<std::string, std::string>>& bundled_scenarios() { return kBundled; }

const std::string* find_bundled(const std::string& name) {
  for (const auto& [n, text] : kBundled)
    if (n == name) return &text;
  return nullptr;
}

}  // namespace affind
