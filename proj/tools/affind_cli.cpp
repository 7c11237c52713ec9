#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "affind/scenario.hpp"

using namespace affind;

namespace {

std::string load_config_text(const std::string& arg) {
  if (std::filesystem::exists(arg)) {
    std::ifstream f(arg, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(f), {});
  }
  if (const std::string* bundled = find_bundled(arg)) return *bundled;
  throw std::invalid_argument("no such config file or bundled scenario: '" + arg +
                              "' (try --list-scenarios)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"affind: exact certification of induced modules over affine Lie algebras"};
  app.require_subcommand(0, 1);
  app.fallthrough();

  std::string out_dir;
  std::uint64_t seed = 0;
  bool seed_set = false;
  bool selftest = false;
  bool list = false;
  bool serial = false;
  int threads = 0;
  std::string dump_dir;

  app.add_flag("--selftest", selftest, "run the exhaustive algebra self-tests and exit");
  app.add_flag("--list-scenarios", list, "list bundled scenarios and exit");
  app.add_option("--dump-scenarios", dump_dir, "write the bundled scenario configs to a directory");
  app.add_option("--out", out_dir, "output directory for reports");
  auto* seed_opt = app.add_option("--seed", seed, "override the budget seed");
  app.add_flag("--serial", serial, "disable the OpenMP parallel path");
  app.add_option("--threads", threads, "OpenMP thread count (0 = default)");

  CLI::App* run = app.add_subcommand("run", "run a scenario config (path or bundled name)");
  std::string config_arg;
  run->add_option("config", config_arg, "config file path or bundled scenario name")->required();

  CLI11_PARSE(app, argc, argv);
  seed_set = seed_opt->count() > 0;

  RunOptions opt;
  opt.parallel = !serial;
  opt.threads = threads;

  try {
    if (list) {
      for (const auto& [name, text] : bundled_scenarios()) std::cout << name << "\n";
      return 0;
    }
    if (!dump_dir.empty()) {
      std::filesystem::create_directories(dump_dir);
      for (const auto& [name, text] : bundled_scenarios()) {
        std::ofstream f(std::filesystem::path(dump_dir) / (name + ".json"),
                        std::ios::binary | std::ios::trunc);
        f << text << "\n";
      }
      std::cout << "wrote " << bundled_scenarios().size() << " configs to " << dump_dir << "\n";
      return 0;
    }
    if (selftest) {
      int rc = 0;
      for (const std::string label : {"A1", "A2"}) {
        Report rep = algebra_selftest(label, opt);
        std::cout << "selftest " << label << ": " << verdict_name(rep.verdict) << " ("
                  << rep.witness.at("jacobi_triples").get<long>() << " Jacobi triples, "
                  << rep.millis << " ms)\n";
        if (rep.verdict != Verdict::Verified) {
          std::cout << "  offender: " << rep.witness.at("offender").get<std::string>() << "\n";
          rc = 1;
        }
      }
      return rc;
    }
    if (run->parsed()) {
      const std::string text = load_config_text(config_arg);
      Json config = Json::parse(text);
      if (seed_set) config["budgets"]["seed"] = seed;
      Scenario sc = build_scenario(config);
      if (!out_dir.empty()) sc.out_dir = out_dir;
      RunResult result = run_scenario(sc, opt);
      const std::string path = write_report_files(result, sc.name, sc.out_dir);
      std::cout << result.summary;
      std::cout << "report: " << path << "\n";
      return result.exit_code;
    }
    std::cout << app.help();
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
