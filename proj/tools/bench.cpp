// Compares the serial reference path with the OpenMP path on the two heavy
// kernels (exhaustive Jacobi sweep, irreducibility probe) and checks that
// both produce identical results.

#include <chrono>
#include <iostream>

#include "affind/scenario.hpp"

using namespace affind;
using Clock = std::chrono::steady_clock;

namespace {

double run_ms(const std::function<void()>& fn) {
  const auto t0 = Clock::now();
  fn();
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string run_probe(const std::string& name, const RunOptions& opt) {
  Scenario sc = build_scenario_from_text(*find_bundled(name));
  RunResult r = run_scenario(sc, opt);
  return r.report.dump();
}

}  // namespace

int main() {
  RunOptions serial{false, 0};
  RunOptions parallel{true, 0};

  std::cout << "kernel 1: algebra self-test (exhaustive Jacobi sweep, A2)\n";
  Report r_serial, r_parallel;
  const double t1s = run_ms([&] { r_serial = algebra_selftest("A2", serial); });
  const double t1p = run_ms([&] { r_parallel = algebra_selftest("A2", parallel); });
  const bool k1_same = r_serial.to_json() == r_parallel.to_json();
  std::cout << "  serial   " << t1s << " ms\n  parallel " << t1p << " ms  (speedup "
            << (t1p > 0 ? t1s / t1p : 0) << "x)\n  results identical: "
            << (k1_same ? "yes" : "NO") << "\n";

  std::cout << "kernel 2: irreducibility probe (thm3.3-A1)\n";
  std::string p_serial, p_parallel;
  const double t2s = run_ms([&] { p_serial = run_probe("thm3.3-A1", serial); });
  const double t2p = run_ms([&] { p_parallel = run_probe("thm3.3-A1", parallel); });
  const bool k2_same = p_serial == p_parallel;
  std::cout << "  serial   " << t2s << " ms\n  parallel " << t2p << " ms  (speedup "
            << (t2p > 0 ? t2s / t2p : 0) << "x)\n  reports identical: "
            << (k2_same ? "yes" : "NO") << "\n";

  return k1_same && k2_same ? 0 : 1;
}
