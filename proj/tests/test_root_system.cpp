#include "doctest.h"

#include "affind/root_system.hpp"

using namespace affind;

TEST_CASE("A1 root data") {
  RootSystem rs = RootSystem::build("A1");
  CHECK(rs.rank() == 1);
  CHECK(rs.num_positive() == 1);
  CHECK(rs.form({1}, {1}) == Rat(2));  // (alpha_1, alpha_1) = 2
  CHECK(rs.num_roots() == 2);
}

TEST_CASE("A2 root data") {
  RootSystem rs = RootSystem::build("A2");
  CHECK(rs.rank() == 2);
  CHECK(rs.positive_roots() ==
        std::vector<std::vector<long>>{{1, 0}, {0, 1}, {1, 1}});
  CHECK(rs.cartan(0, 0) == 2);
  CHECK(rs.cartan(0, 1) == -1);
  CHECK(rs.cartan(1, 0) == -1);
  CHECK(rs.cartan(1, 1) == 2);
  CHECK(rs.num_roots() == 6);  // closed under negation, classified count
  CHECK(rs.form({1, 0}, {0, 1}) == Rat(-1));
  // bilinear expansion oracle: (a1+a2, a1+a2) = 2 - 1 - 1 + 2 = 2
  Rat expect = rs.form({1, 0}, {1, 0}) + 2 * rs.form({1, 0}, {0, 1}) +
               rs.form({0, 1}, {0, 1});
  CHECK(rs.form({1, 1}, {1, 1}) == expect);
  CHECK(rs.form({1, 1}, {1, 1}) == Rat(2));
  // highest root normalization
  CHECK(rs.form(rs.highest_root(), rs.highest_root()) == Rat(2));
}

TEST_CASE("Cartan/form compatibility holds entry by entry") {
  for (const char* label : {"A1", "A2"}) {
    RootSystem rs = RootSystem::build(label);
    for (int i = 0; i < rs.rank(); ++i)
      for (int j = 0; j < rs.rank(); ++j) {
        std::vector<long> ei(rs.rank(), 0), ej(rs.rank(), 0);
        ei[i] = 1;
        ej[j] = 1;
        // A_ij = 2 (alpha_i, alpha_j) / (alpha_j, alpha_j)
        CHECK(Rat(rs.cartan(i, j)) == 2 * rs.form(ei, ej) / rs.form(ej, ej));
      }
  }
}

TEST_CASE("unsupported label rejected") {
  CHECK_THROWS_AS(RootSystem::build("B2"), std::invalid_argument);
}

TEST_CASE("form rejects dimension mismatches") {
  RootSystem rs = RootSystem::build("A2");
  CHECK_THROWS_AS(rs.form({1}, {0, 1}), std::invalid_argument);
}

TEST_CASE("tau_count") {
  AffineWeight w({1, 1}, 0);
  CHECK(tau_count(w, {0}) == 1);             // one alpha2 outside S={a1}
  CHECK(tau_count(AffineWeight({1, 0}, 5), {0}) == 0);
  CHECK(tau_count(w, {}) == 2);
  // negation symmetry and additivity on same-sign weights
  CHECK(tau_count(-w, {0}) == tau_count(w, {0}));
  AffineWeight u({0, 2}, -1);
  CHECK(tau_count(w + u, {0}) == tau_count(w, {0}) + tau_count(u, {0}));
}
