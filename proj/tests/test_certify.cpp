#include "doctest.h"

#include "affind/certify.hpp"

using namespace affind;

namespace {

HeisenbergCharacter eta_ones() {
  HeisenbergCharacter eta;
  eta.default_value = 1;
  return eta;
}

AffineCharacter affine_ones(const Parabolic& par) {
  AffineCharacter eta;
  for (int s : par.subset()) eta.e_values[s] = 1;
  eta.f_theta_values.assign(par.s_components().size(), Rat(1));
  return eta;
}

struct A1Whit {
  AffineAlgebra alg{RootSystem::build("A1")};
  Parabolic par{alg, {}};
  std::shared_ptr<InducingModule> v = make_extended_whittaker(par, eta_ones(), Rat(1), {Rat(0)});
  InducedModule mod{par, v};
};

struct A2Mixed {
  AffineAlgebra alg{RootSystem::build("A2")};
  Parabolic par{alg, {0}};
  std::shared_ptr<InducingModule> v =
      make_mixed_tensor(par, make_verma(par, {Rat(2)}, Rat(1)),
                        make_complement_whittaker(par, eta_ones(), Rat(1), true),
                        {Rat(0)}, true);
  InducedModule mod{par, v};
};

}  // namespace

TEST_CASE("whittaker check verifies and rechecks") {
  A1Whit t;
  Report rep = check_whittaker(*t.v->as_char_induced(), 6);
  CHECK(rep.verdict == Verdict::Verified);
  RecheckContext ctx;
  ctx.char_module = t.v->as_char_induced();
  CHECK(!recheck_report(rep.to_json(), ctx).has_value());
}

TEST_CASE("torsion check: samples nonzero, extraction returns a*v") {
  A1Whit t;
  Budgets b;
  b.samples = 60;
  b.max_degree = 2;
  b.window = 5;
  b.seed = 7;
  Report rep = check_torsion(*t.v->as_char_induced(), b);
  CHECK(rep.verdict == Verdict::Verified);
  CHECK(rep.witness.at("samples").size() == 60);
  CHECK(rep.witness.at("extraction").size() == 4);
  RecheckContext ctx;
  ctx.char_module = t.v->as_char_induced();
  CHECK(!recheck_report(rep.to_json(), ctx).has_value());

  // a = 0 rejected
  auto zero = make_imaginary_whittaker(t.par, eta_ones(), Rat(0));
  CHECK_THROWS_AS(check_torsion(*zero->as_char_induced(), b), std::invalid_argument);
}

TEST_CASE("torsion and extraction on the A2 Levi Whittaker module") {
  AffineAlgebra alg(RootSystem::build("A2"));
  Parabolic par(alg, {0});
  auto m = make_universal_whittaker_levi(par, affine_ones(par), Rat(1), {Rat(0)});
  Budgets b;
  b.samples = 60;
  b.max_degree = 2;
  b.window = 4;
  b.seed = 11;
  Report rep = check_torsion(*m->as_char_induced(), b);
  CHECK(rep.verdict == Verdict::Verified);
  RecheckContext ctx;
  ctx.char_module = m->as_char_induced();
  CHECK(!recheck_report(rep.to_json(), ctx).has_value());
}

TEST_CASE("charge-zero reducibility witness") {
  AffineAlgebra alg(RootSystem::build("A1"));
  Parabolic par(alg, {});
  auto zero = make_imaginary_whittaker(par, eta_ones(), Rat(0));
  Budgets b;
  b.max_degree = 3;
  b.window = 4;
  Report rep = check_charge_zero_witness(*zero->as_char_induced(), b);
  CHECK(rep.verdict == Verdict::WitnessFound);
  RecheckContext ctx;
  ctx.char_module = zero->as_char_induced();
  CHECK(!recheck_report(rep.to_json(), ctx).has_value());

  // at a = 1 the same span is not invariant: the action escapes to degree 0
  auto one = make_imaginary_whittaker(par, eta_ones(), Rat(1));
  auto escape = find_span_escape(*one->as_char_induced(), 3, 4);
  REQUIRE(escape.has_value());
  CHECK(escape->contains("unit_component"));

  // a != 0 rejected for the check itself
  CHECK_THROWS_AS(check_charge_zero_witness(*one->as_char_induced(), b),
                  std::invalid_argument);
}

TEST_CASE("descend: spec examples") {
  A1Whit t;
  Budgets b;

  // v = (f (x) t^-1) (x) v_eta  ->  U = e[a1]@0, result (h@-1) v_eta
  InducedModule::Vector v = t.mod.act_elem(BasisElem::root(1, -1), t.mod.unit_vector());
  Report rep = descend(t.mod, v, b, PivotStrategy::LargestK);
  CHECK(rep.verdict == Verdict::Verified);
  CHECK(rep.witness.at("operator") == Json::array({"e[a1]@0"}));
  RecheckContext ctx;
  ctx.induced = &t.mod;
  CHECK(!recheck_report(rep.to_json(), ctx).has_value());

  // v = 1 (x) w, w != 0  ->  U = identity
  InducedModule::Vector w = t.mod.act_elem(BasisElem::cartan(0, -2), t.mod.unit_vector());
  REQUIRE(t.mod.in_inducing_space(w));
  Report rep2 = descend(t.mod, w, b, PivotStrategy::LargestK);
  CHECK(rep2.verdict == Verdict::Verified);
  CHECK(rep2.witness.at("operator").empty());
  CHECK(rep2.witness.at("trajectory") == Json::array({0}));

  // zero vector and zero charge rejected
  CHECK_THROWS_AS(descend(t.mod, InducedModule::Vector{}, b, PivotStrategy::LargestK),
                  std::invalid_argument);
}

TEST_CASE("descend: tau = 2 two-step reduction in A2") {
  A2Mixed t;
  Budgets b;
  // v = (f[a1+a2]@-1 * f[a2]@0) (x) w with tau = 2
  InducedModule::Vector v = t.mod.unit_vector();
  v = t.mod.act_elem(BasisElem::root(4, 0), v);   // f[a2]@0
  v = t.mod.act_elem(BasisElem::root(5, -1), v);  // f[a1+a2]@-1
  REQUIRE(t.mod.tau(v) == 2);
  for (PivotStrategy s : {PivotStrategy::LargestK, PivotStrategy::LeastTauThenLeastK}) {
    Report rep = descend(t.mod, v, b, s);
    CHECK(rep.verdict == Verdict::Verified);
    const Json traj = rep.witness.at("trajectory");
    CHECK(traj.front().get<long>() == 2);
    CHECK(traj.back().get<long>() == 0);
    // descent progress: every accepted step strictly decreases tau
    for (size_t i = 0; i + 1 < traj.size(); ++i)
      CHECK(traj[i].get<long>() > traj[i + 1].get<long>());
    RecheckContext ctx;
    ctx.induced = &t.mod;
    CHECK(!recheck_report(rep.to_json(), ctx).has_value());
  }
}

TEST_CASE("probe on a reduced budget verifies with both pivot strategies") {
  A1Whit t;
  Budgets b;
  b.max_degree = 2;
  b.random_combos = 3;
  b.seed = 5;
  RunOptions opt;
  for (PivotStrategy s : {PivotStrategy::LargestK, PivotStrategy::LeastTauThenLeastK}) {
    Report rep = probe_irreducibility(t.mod, b, s, opt);
    CHECK(rep.verdict == Verdict::Verified);
    CHECK(rep.witness.at("inconclusive").get<int>() == 0);
    RecheckContext ctx;
    ctx.induced = &t.mod;
    CHECK(!recheck_report(rep.to_json(), ctx).has_value());
  }
}

TEST_CASE("probe rejects charge zero") {
  AffineAlgebra alg(RootSystem::build("A1"));
  Parabolic par(alg, {});
  auto zero = make_extended_whittaker(par, eta_ones(), Rat(0), {Rat(0)});
  InducedModule mod(par, zero);
  Budgets b;
  CHECK_THROWS_AS(probe_irreducibility(mod, b, PivotStrategy::LargestK, RunOptions{}),
                  std::invalid_argument);
}

TEST_CASE("algebra selftest passes and catches corruption") {
  RunOptions opt;
  for (const char* label : {"A1", "A2"}) {
    Report rep = algebra_selftest(label, opt);
    CHECK(rep.verdict == Verdict::Verified);
  }
  // fault injection: flip the sign of one bracket and expect the offending
  // triple to be reported
  BracketHook corrupt = [](const BasisElem& a, const BasisElem& b, const LieElement& raw) {
    if (a.kind == ElemKind::RootVector && b.kind == ElemKind::RootVector && a.idx == 0 &&
        b.idx == 1 && a.deg == 0 && b.deg == 0) {
      LieElement bad = raw;
      bad *= Rat(-1);
      return bad;
    }
    return raw;
  };
  Report rep = algebra_selftest("A1", opt, corrupt);
  CHECK(rep.verdict == Verdict::WitnessFound);
  CHECK(rep.witness.contains("offender"));
}

TEST_CASE("tampered witnesses fail the recheck") {
  A1Whit t;
  Budgets b;
  InducedModule::Vector v = t.mod.act_elem(BasisElem::root(1, -1), t.mod.unit_vector());
  Report rep = descend(t.mod, v, b, PivotStrategy::LargestK);
  RecheckContext ctx;
  ctx.induced = &t.mod;

  Json good = rep.to_json();
  CHECK(!recheck_report(good, ctx).has_value());

  Json bad = good;
  bad["witness"]["result"][0][0] = "2";  // forge the coefficient
  CHECK(recheck_report(bad, ctx).has_value());

  Json bad2 = good;
  bad2["witness"]["operator"] = Json::array({"e[a1]@1"});  // wrong operator
  CHECK(recheck_report(bad2, ctx).has_value());
}

TEST_CASE("descent reports inconclusive when budgets exhaust") {
  A1Whit t;
  Budgets b;
  b.attempts = 1;  // starve the search
  InducedModule::Vector v = t.mod.unit_vector();
  v = t.mod.act_elem(BasisElem::root(1, -1), v);
  v = t.mod.act_elem(BasisElem::root(1, -2), v);  // tau = 2
  REQUIRE(t.mod.tau(v) == 2);
  Report rep = descend(t.mod, v, b, PivotStrategy::LargestK);
  CHECK(rep.verdict == Verdict::Inconclusive);
  CHECK(rep.note.find("budget") != std::string::npos);
}
