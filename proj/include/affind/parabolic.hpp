#pragma once

#include <vector>

#include "affind/affine_algebra.hpp"

namespace affind {

enum class Block : int { RadicalMinus = 0, Levi = 1, RadicalPlus = 2 };

/// Parabolic subalgebra determined by a subset S of the finite simple roots.
/// The Levi factor always contains H and the whole Heisenberg subalgebra;
/// the radicals consist of the real root vectors whose weight has nonzero
/// coefficient sum outside S. Carries the exact decomposition data used by
/// the inducing modules: the Cartan split h = h_l (+) h_l_perp and the
/// per-degree split of the Heisenberg algebra into G(l) and its complement.
class Parabolic {
 public:
  Parabolic(const AffineAlgebra& alg, std::vector<int> subset_s);

  const AffineAlgebra& algebra() const { return *alg_; }
  const RootSystem& root_system() const { return alg_->root_system(); }
  const std::vector<int>& subset() const { return s_; }
  /// stable identity for order tags and config hashing
  const std::string& tag() const { return tag_; }

  Block classify(const BasisElem& e) const;
  bool levi_root(int signed_root_id) const;

  /// Cartan bases adapted to S, as rational vectors over the simple coroots.
  /// hl is spanned by the coroots of S; hperp is its exact orthogonal
  /// complement under the invariant form (primitive integer vectors).
  const std::vector<std::vector<Rat>>& hl_basis() const { return hl_; }
  const std::vector<std::vector<Rat>>& hperp_basis() const { return hperp_; }

  /// coordinates of the canonical coroot h_i over (hl..., hperp...)
  const std::vector<Rat>& coroot_in_adapted(int i) const { return coroot_adapted_[i]; }
  /// Gram matrices of the invariant form on the adapted bases
  const std::vector<std::vector<Rat>>& gram_hl() const { return gram_hl_; }
  const std::vector<std::vector<Rat>>& gram_hperp() const { return gram_hperp_; }

  /// value phi(u) for a root id and a Cartan vector u over the coroots
  Rat root_eval(int signed_root_id, const std::vector<Rat>& u) const;

  /// affine positivity: n > 0, or n == 0 and the root is positive
  bool affine_positive(int signed_root_id, int deg) const;

  /// connected components of S in the Dynkin diagram (type A: runs of
  /// consecutive indices); each yields one affine simple root f_theta (x) t
  const std::vector<std::vector<int>>& s_components() const { return s_components_; }
  /// signed root id of the highest root of a component
  int component_theta_id(const std::vector<int>& comp) const;

  /// functional on the coroots with prescribed values on the adapted basis
  std::vector<Rat> functional_from_adapted(const std::vector<Rat>& on_hl,
                                           const std::vector<Rat>& on_hperp) const;

 private:
  const AffineAlgebra* alg_;
  std::vector<int> s_;
  std::string tag_;
  std::vector<std::vector<Rat>> hl_, hperp_;
  std::vector<std::vector<Rat>> coroot_adapted_;
  std::vector<std::vector<Rat>> gram_hl_, gram_hperp_;
  std::vector<std::vector<int>> s_components_;
};

}  // namespace affind
