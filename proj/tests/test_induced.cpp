#include "doctest.h"

#include "affind/induced_module.hpp"

using namespace affind;

namespace {

HeisenbergCharacter eta_ones() {
  HeisenbergCharacter eta;
  eta.default_value = 1;
  return eta;
}

struct ImagA1 {
  AffineAlgebra alg{RootSystem::build("A1")};
  Parabolic par{alg, {}};
  std::shared_ptr<InducingModule> v = make_extended_whittaker(par, eta_ones(), Rat(1), {Rat(0)});
  InducedModule mod{par, v};
};

struct MixedA2 {
  AffineAlgebra alg{RootSystem::build("A2")};
  Parabolic par{alg, {0}};
  std::shared_ptr<InducingModule> v =
      make_mixed_tensor(par, make_verma(par, {Rat(2)}, Rat(1)),
                        make_complement_whittaker(par, eta_ones(), Rat(1), true),
                        {Rat(0)}, true);
  InducedModule mod{par, v};
};

std::vector<BasisElem> all_window(const AffineAlgebra& alg, int w) {
  std::vector<BasisElem> out;
  const RootSystem& rs = alg.root_system();
  for (int n = -w; n <= w; ++n) {
    for (int id = 0; id < rs.num_roots(); ++id) out.push_back(BasisElem::root(id, n));
    for (int i = 0; i < rs.rank(); ++i) out.push_back(BasisElem::cartan(i, n));
  }
  out.push_back(BasisElem::central());
  out.push_back(BasisElem::derivation());
  return out;
}

}  // namespace

TEST_CASE("imaginary parabolic action example") {
  ImagA1 t;
  // v = (f (x) t^-1) (x) v_eta ; act by e (x) t^0: result 1 (x) (h (x) t^-1) v_eta != 0
  InducedModule::Vector v = t.mod.unit_vector();
  v = t.mod.act_elem(BasisElem::root(1, -1), v);
  REQUIRE(v.size() == 1);
  CHECK(!v.begin()->first.first.is_unit());

  InducedModule::Vector r = t.mod.act_elem(BasisElem::root(0, 0), v);
  REQUIRE(!r.empty());
  CHECK(t.mod.in_inducing_space(r));
  // the inducing component is (h@-1) v_eta with coefficient 1
  VSparse comp = t.mod.inducing_component(r);
  REQUIRE(comp.size() == 1);
  CHECK(comp.begin()->second == Rat(1));

  // c acts by the charge everywhere
  InducedModule::Vector cv = t.mod.act_elem(BasisElem::central(), v);
  REQUIRE(cv.size() == 1);
  CHECK(cv.begin()->second == Rat(1));
}

TEST_CASE("radical_plus annihilates the inducing vector") {
  ImagA1 t;
  InducedModule::Vector one = t.mod.unit_vector();
  // e (x) t^n lies in u_+ for every n; on 1 (x) v it must vanish
  for (int n = -2; n <= 2; ++n)
    CHECK(InducedModule::is_zero_vec(t.mod.act_elem(BasisElem::root(0, n), one)));
}

TEST_CASE("representation property on sampled pairs") {
  ImagA1 t33;
  MixedA2 t46;
  auto run = [](auto& t, int window, int deg) {
    const auto elems = all_window(t.alg, window);
    const auto basis = t.mod.enumerate_basis(deg, deg);
    SplitMix64 rng(fnv1a64(t.par.tag()));
    for (int trial = 0; trial < 60; ++trial) {
      const BasisElem x = elems[rng.next() % elems.size()];
      const BasisElem y = elems[rng.next() % elems.size()];
      InducedModule::Vector v;
      InducedModule::add(v, basis[rng.next() % basis.size()], rng.small_rat());
      InducedModule::Vector lhs = t.mod.act_elem(x, t.mod.act_elem(y, v));
      InducedModule::axpy(lhs, Rat(-1), t.mod.act_elem(y, t.mod.act_elem(x, v)));
      const LieElement br = t.alg.bracket_basis(x, y);
      InducedModule::Vector rhs;
      for (const auto& [e, c] : br.terms())
        InducedModule::axpy(rhs, c, t.mod.act_elem(e, v));
      InducedModule::axpy(lhs, Rat(-1), rhs);
      CHECK(InducedModule::is_zero_vec(lhs));
    }
  };
  run(t33, 2, 2);
  run(t46, 2, 2);
}

TEST_CASE("weight components") {
  ImagA1 t;
  InducedModule::Vector v = t.mod.unit_vector();
  InducedModule::Vector f1 = t.mod.act_elem(BasisElem::root(1, -1), v);
  CHECK(t.mod.weight_components(f1).size() == 1);

  InducedModule::Vector f2 = t.mod.act_elem(BasisElem::root(1, -2), v);
  InducedModule::Vector sum = f1;
  InducedModule::axpy(sum, Rat(1), f2);
  auto comps = t.mod.weight_components(sum);
  CHECK(comps.size() == 2);
  InducedModule::Vector back;
  for (auto& [lbl, comp] : comps) InducedModule::axpy(back, Rat(1), comp);
  InducedModule::axpy(back, Rat(-1), sum);
  CHECK(InducedModule::is_zero_vec(back));

  // homogeneous action shifts each component by the element's grade
  const BasisElem x = BasisElem::cartan(0, -3);
  for (auto& [lbl, comp] : comps) {
    InducedModule::Vector moved = t.mod.act_elem(x, comp);
    if (InducedModule::is_zero_vec(moved)) continue;
    auto moved_comps = t.mod.weight_components(moved);
    REQUIRE(moved_comps.size() == 1);
    CHECK(moved_comps[0].first.delta == lbl.delta - 3);
    CHECK(moved_comps[0].first.hvals == lbl.hvals);
  }
}

TEST_CASE("tau of induced vectors") {
  MixedA2 t;
  InducedModule::Vector v = t.mod.unit_vector();
  CHECK(t.mod.tau(v) == 0);
  InducedModule::Vector f = t.mod.act_elem(BasisElem::root(4, 0), v);  // f[a2]
  CHECK(t.mod.tau(f) == 1);
  InducedModule::Vector ff =
      t.mod.act_elem(BasisElem::root(5, -1), f);  // f[a1+a2]@-1 on top
  CHECK(t.mod.tau(ff) == 2);
  // levi factors do not change tau
  InducedModule::Vector hf = t.mod.act_elem(BasisElem::cartan(0, -1), f);
  CHECK(t.mod.tau(hf) == 1);
}

TEST_CASE("induction requires the full Levi action") {
  AffineAlgebra alg(RootSystem::build("A1"));
  Parabolic par(alg, {});
  auto plain = make_imaginary_whittaker(par, eta_ones(), Rat(1));
  // the plain Heisenberg Whittaker module has no d action, so it is not a
  // module over the Levi G + H
  CHECK_THROWS_AS(InducedModule(par, plain), std::invalid_argument);
}

TEST_CASE("enumeration of induced basis") {
  ImagA1 t;
  auto basis1 = t.mod.enumerate_basis(1, 1);
  // length <= 1, degrees in [-1,1]: unit, f@-1, f@0, f@1 monomials and
  // inducing directions h@-1, d
  CHECK(basis1.size() == 6);
  for (const auto& k : basis1) {
    CHECK(t.mod.weight_of(k).hvals.size() == 1);
  }
  // deterministic and duplicate-free
  auto again = t.mod.enumerate_basis(1, 1);
  CHECK(basis1 == again);
}
