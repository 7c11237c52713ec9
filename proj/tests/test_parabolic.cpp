#include "doctest.h"

#include "affind/pbw.hpp"

using namespace affind;

TEST_CASE("A1 empty-subset parabolic: Levi is G + H") {
  AffineAlgebra alg(RootSystem::build("A1"));
  Parabolic par(alg, {});
  // all root vectors are radical, Cartan loops / c / d are levi
  CHECK(par.classify(BasisElem::root(0, -7)) == Block::RadicalPlus);
  CHECK(par.classify(BasisElem::root(1, 3)) == Block::RadicalMinus);
  CHECK(par.classify(BasisElem::cartan(0, 5)) == Block::Levi);
  CHECK(par.classify(BasisElem::central()) == Block::Levi);
  CHECK(par.classify(BasisElem::derivation()) == Block::Levi);
  CHECK(par.hl_basis().empty());
  CHECK(par.hperp_basis().size() == 1);
}

TEST_CASE("A2 S={a1} parabolic data") {
  AffineAlgebra alg(RootSystem::build("A2"));
  Parabolic par(alg, {0});
  CHECK(par.classify(BasisElem::root(1, 0)) == Block::RadicalPlus);   // e[a2]
  CHECK(par.classify(BasisElem::root(3, 3)) == Block::Levi);          // f[a1]@3
  CHECK(par.classify(BasisElem::root(2, -1)) == Block::RadicalPlus);  // e[a1+a2]@-1
  CHECK(par.classify(BasisElem::root(5, 2)) == Block::RadicalMinus);  // f[a1+a2]@2
  // G(l) spanned by h_{a1}; complement is the a1+2a2 coroot direction
  REQUIRE(par.hl_basis().size() == 1);
  CHECK(par.hl_basis()[0] == std::vector<Rat>{Rat(1), Rat(0)});
  REQUIRE(par.hperp_basis().size() == 1);
  CHECK(par.hperp_basis()[0] == std::vector<Rat>{Rat(1), Rat(2)});
  // orthogonality under the stored form
  const RootSystem& rs = par.root_system();
  Rat ip(0);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      ip += par.hl_basis()[0][i] * rs.form_matrix()[i][j] * par.hperp_basis()[0][j];
  CHECK(ip == Rat(0));
}

TEST_CASE("negation swaps radicals and fixes levi") {
  AffineAlgebra alg(RootSystem::build("A2"));
  Parabolic par(alg, {0});
  const RootSystem& rs = alg.root_system();
  for (int id = 0; id < rs.num_roots(); ++id)
    for (int n = -2; n <= 2; ++n) {
      Block b = par.classify(BasisElem::root(id, n));
      Block nb = par.classify(BasisElem::root(rs.negate_id(id), -n));
      if (b == Block::Levi) CHECK(nb == Block::Levi);
      if (b == Block::RadicalPlus) CHECK(nb == Block::RadicalMinus);
      if (b == Block::RadicalMinus) CHECK(nb == Block::RadicalPlus);
    }
}

TEST_CASE("bracket closure on generators in a degree window") {
  for (auto [label, subset] : std::vector<std::pair<std::string, std::vector<int>>>{
           {"A1", {}}, {"A2", {}}, {"A2", {0}}, {"A2", {1}}}) {
    AffineAlgebra alg(RootSystem::build(label));
    Parabolic par(alg, subset);
    const RootSystem& rs = alg.root_system();
    std::vector<BasisElem> all;
    for (int n = -3; n <= 3; ++n) {
      for (int id = 0; id < rs.num_roots(); ++id) all.push_back(BasisElem::root(id, n));
      for (int i = 0; i < rs.rank(); ++i) all.push_back(BasisElem::cartan(i, n));
    }
    all.push_back(BasisElem::central());
    all.push_back(BasisElem::derivation());
    auto expect_block = [&](Block x, Block y) {
      if (x == Block::Levi && y == Block::Levi) return Block::Levi;
      if (x == y) return x;
      if (x == Block::Levi) return y;
      if (y == Block::Levi) return x;
      return Block::Levi;  // mixed radicals may land anywhere; skip
    };
    for (const BasisElem& x : all)
      for (const BasisElem& y : all) {
        Block bx = par.classify(x), by = par.classify(y);
        if (bx != by && bx != Block::Levi && by != Block::Levi) continue;
        const Block want = expect_block(bx, by);
        const LieElement br = alg.bracket_basis(x, y);
        for (const auto& [e, c] : br.terms()) {
          if (want == Block::Levi) CHECK(par.classify(e) == Block::Levi);
          else if (e.kind == ElemKind::RootVector) CHECK(par.classify(e) == want);
          // Cartan/central terms from opposite radical pairs are levi by definition
        }
      }
  }
}

TEST_CASE("radical pair of opposite weight lands in levi") {
  AffineAlgebra alg(RootSystem::build("A2"));
  for (auto subset : std::vector<std::vector<int>>{{}, {0}, {1}}) {
    Parabolic par(alg, subset);
    const RootSystem& rs = alg.root_system();
    for (int id = 0; id < rs.num_roots(); ++id) {
      BasisElem plus = BasisElem::root(id, 1);
      if (par.classify(plus) != Block::RadicalPlus) continue;
      BasisElem minus = BasisElem::root(rs.negate_id(id), -1);
      CHECK(par.classify(minus) == Block::RadicalMinus);
      const LieElement br = alg.bracket_basis(plus, minus);
      for (const auto& [e, c] : br.terms())
        CHECK(par.classify(e) == Block::Levi);
    }
  }
}

TEST_CASE("subset validation") {
  AffineAlgebra alg(RootSystem::build("A1"));
  CHECK_THROWS_AS(Parabolic(alg, {3}), std::invalid_argument);
}
