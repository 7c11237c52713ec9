#pragma once

#include <functional>
#include <optional>

#include "json.hpp"

#include "affind/induced_module.hpp"
#include "affind/parallel_util.hpp"

namespace affind {

using Json = nlohmann::ordered_json;

enum class Verdict { Verified, WitnessFound, Inconclusive };

std::string verdict_name(Verdict v);

/// Search budgets for the certification checks. All checks are
/// deterministic given the budgets and the seed.
struct Budgets {
  int max_degree = 2;        // D: monomial degree bound
  int n_max = 12;            // N_max: loop-degree scan bound
  int attempts = 200;        // B: action evaluations per descent
  int random_combos = 20;    // R: random combinations per weight space
  std::uint64_t seed = 1;
  int window = 6;            // degree window for Whittaker/torsion checks
  int samples = 50;          // torsion sample count

  Json to_json() const;
  static Budgets from_json(const Json& j);
  static Budgets from_json(const Json& j, const Budgets& base);
};

/// Result of one check: the verdict plus an exact, re-checkable witness.
/// A "verified"/"witness_found" report embeds everything the independent
/// re-check pass needs; "inconclusive" states which budget ran out.
struct Report {
  std::string check;
  Verdict verdict = Verdict::Inconclusive;
  Json witness = Json::object();
  Json budgets = Json::object();
  std::string note;
  double millis = 0;  // printed in the text summary, never in the JSON report

  Json to_json() const;  // deterministic, timing excluded
};

/// vector <-> JSON (exact; canonical order)
Json vec_to_json(const InducedModule& m, const InducedModule::Vector& v);
InducedModule::Vector vec_from_json(const InducedModule& m, const Json& j);
Json vsparse_to_json(const VSparse& v);
VSparse vsparse_from_json(const InducingModule& m, const Json& j);

enum class PivotStrategy { LargestK, LeastTauThenLeastK };
std::string pivot_strategy_name(PivotStrategy s);

/// Whittaker relation x v = eta(x) v on all positive generators in the
/// window and on all degree-2 products.
Report check_whittaker(const CharInducedModule& m, int window);

/// Torsion-freeness of the negative imaginary part (charge must be
/// nonzero): sampled y * (u * v) != 0, plus the central-extraction
/// identity that pairs equal-degree imaginary elements across the charge.
Report check_torsion(const CharInducedModule& m, const Budgets& b);

/// At charge zero, the span of positive-degree basis monomials is an exact
/// invariant subspace at truncation: returns the escape pair if any.
std::optional<Json> find_span_escape(const CharInducedModule& m, int max_degree, int window);

/// Reducibility witness at central charge zero (Heisenberg Whittaker only).
Report check_charge_zero_witness(const CharInducedModule& m, const Budgets& b);

/// Descent: an explicit enveloping-algebra element carrying a nonzero
/// vector into the inducing space. Implements the tau-reduction loop and
/// the pivot scan of the irreducibility proofs.
Report descend(const InducedModule& m, const InducedModule::Vector& v, const Budgets& b,
               PivotStrategy strategy);

/// Runs descend on every basis vector of degree <= D and on R seeded
/// random combinations per weight space; verified means every probed
/// vector reaches a nonzero vector of the inducing space.
Report probe_irreducibility(const InducedModule& m, const Budgets& b, PivotStrategy strategy,
                            const RunOptions& opt);

/// Exhaustive algebra self-test (antisymmetry and grade additivity for
/// |n| <= 3, Jacobi for |n| <= 2, invariance of the form on the finite
/// part, parabolic closure). The bracket can be wrapped for fault
/// injection in tests.
using BracketHook =
    std::function<LieElement(const BasisElem&, const BasisElem&, const LieElement&)>;
Report algebra_selftest(const std::string& label, const RunOptions& opt,
                        const BracketHook& hook = nullptr);

/// Independent re-check pass: re-verifies a report from its embedded
/// witness alone, using only act/bracket. Returns an error string on
/// failure.
struct RecheckContext {
  const InducedModule* induced = nullptr;          // for descent/probe
  const CharInducedModule* char_module = nullptr;  // for whittaker/torsion/charge-zero
};
std::optional<std::string> recheck_report(const Json& report_json, const RecheckContext& ctx);

}  // namespace affind
