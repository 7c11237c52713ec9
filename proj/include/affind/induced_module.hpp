#pragma once

#include "affind/inducing_modules.hpp"
#include "affind/pbw.hpp"

namespace affind {

/// Parabolically induced module U(g) (x)_{U(p)} V, realized on the basis
/// {normal-ordered monomial in the opposite radical} x {basis of V}. The
/// action straightens words in the enveloping algebra, keeps radical_minus
/// factors as the output monomial, routes Levi factors (and c, d) into the
/// inducing module right-to-left, and kills any term with a radical_plus
/// factor next to the inducing vector.
class InducedModule {
 public:
  using Key = std::pair<PbwMonomial, VIdx>;
  using Vector = std::map<Key, Rat>;

  InducedModule(const Parabolic& par, std::shared_ptr<const InducingModule> inducing);

  const Parabolic& parabolic() const { return *par_; }
  const AffineAlgebra& algebra() const { return par_->algebra(); }
  const PbwOrder& order() const { return order_; }
  const InducingModule& inducing() const { return *inducing_; }
  Rat charge() const { return inducing_->charge(); }

  Vector unit_vector() const;
  static bool is_zero_vec(const Vector& v) { return v.empty(); }
  static void add(Vector& acc, const Key& k, const Rat& c);
  static void axpy(Vector& acc, const Rat& s, const Vector& x);

  Vector act_basis(const BasisElem& x, const Key& k) const;
  Vector act(const LieElement& x, const Vector& v) const;
  Vector act_elem(const BasisElem& x, const Vector& v) const;
  /// action of a homogeneous adapted element (used by witnesses that carry
  /// Cartan combinations)
  Vector act_adapted(const Adapted& x, const Vector& v) const;
  /// apply a word of operators, rightmost first
  Vector act_word(const std::vector<Adapted>& word, Vector v) const;

  WeightLabel weight_of(const Key& k) const;
  std::vector<std::pair<WeightLabel, Vector>> weight_components(const Vector& v) const;

  /// tau of a weight-homogeneous vector: simple-root occurrences outside S
  /// in the monomial weights (equal across terms; checked)
  long tau(const Vector& v) const;
  /// non-S coefficient vector of the monomial weights (negative or zero)
  std::vector<long> outside_profile(const Vector& v) const;

  bool in_inducing_space(const Vector& v) const;
  /// the inducing-space component as a sparse vector over V's basis
  VSparse inducing_component(const Vector& v) const;

  /// basis vectors with word length (monomial plus inducing part) <= max_len
  /// and factor loop degrees in [-window, window]
  std::vector<Key> enumerate_basis(int max_len, int window) const;

  std::string render_key(const Key& k) const;
  std::string render(const Vector& v) const;

 private:
  const Parabolic* par_;
  std::shared_ptr<const InducingModule> inducing_;
  PbwOrder order_;
};

}  // namespace affind
