#include "affind/parabolic.hpp"

#include <algorithm>
#include <stdexcept>

namespace affind {

Parabolic::Parabolic(const AffineAlgebra& alg, std::vector<int> subset_s)
    : alg_(&alg), s_(std::move(subset_s)) {
  const RootSystem& rs = alg.root_system();
  std::sort(s_.begin(), s_.end());
  s_.erase(std::unique(s_.begin(), s_.end()), s_.end());
  for (int i : s_)
    if (i < 0 || i >= rs.rank())
      throw std::invalid_argument("parabolic subset: not a simple root index");

  tag_ = rs.label() + ":S={";
  for (size_t k = 0; k < s_.size(); ++k)
    tag_ += (k ? "," : "") + std::to_string(s_[k] + 1);
  tag_ += "}";

  const int r = rs.rank();
  // h_l: coroots of S
  for (int i : s_) {
    std::vector<Rat> v(r, Rat(0));
    v[i] = 1;
    hl_.push_back(std::move(v));
  }
  // h_l_perp: kernel of the form rows indexed by S
  if (s_.empty()) {
    for (int i = 0; i < r; ++i) {
      std::vector<Rat> v(r, Rat(0));
      v[i] = 1;
      hperp_.push_back(std::move(v));
    }
  } else {
    std::vector<std::vector<Rat>> rows;
    for (int i : s_) rows.push_back(rs.form_matrix()[i]);
    hperp_ = kernel_basis(rows, static_cast<size_t>(r));
  }

  // change of basis: express the canonical coroots over (hl..., hperp...)
  std::vector<std::vector<Rat>> m(r, std::vector<Rat>(r));
  for (int col = 0; col < r; ++col) {
    const std::vector<Rat>& src =
        col < static_cast<int>(hl_.size()) ? hl_[col] : hperp_[col - hl_.size()];
    for (int row = 0; row < r; ++row) m[row][col] = src[row];
  }
  for (int i = 0; i < r; ++i) {
    std::vector<Rat> rhs(r, Rat(0));
    rhs[i] = 1;
    coroot_adapted_.push_back(solve_linear(m, rhs));
  }

  auto gram = [&](const std::vector<std::vector<Rat>>& basis) {
    std::vector<std::vector<Rat>> g(basis.size(), std::vector<Rat>(basis.size(), Rat(0)));
    for (size_t a = 0; a < basis.size(); ++a)
      for (size_t b = 0; b < basis.size(); ++b)
        for (int i = 0; i < r; ++i)
          for (int j = 0; j < r; ++j)
            g[a][b] += basis[a][i] * rs.form_matrix()[i][j] * basis[b][j];
    return g;
  };
  gram_hl_ = gram(hl_);
  gram_hperp_ = gram(hperp_);

  // components of S: maximal runs of consecutive simple-root indices
  for (size_t k = 0; k < s_.size();) {
    std::vector<int> comp{s_[k]};
    size_t j = k + 1;
    while (j < s_.size() && s_[j] == s_[j - 1] + 1) comp.push_back(s_[j++]);
    s_components_.push_back(std::move(comp));
    k = j;
  }
}

Block Parabolic::classify(const BasisElem& e) const {
  if (e.kind != ElemKind::RootVector) return Block::Levi;
  const std::vector<long> c = root_system().root_coeffs(e.idx);
  long outside = 0;
  for (size_t i = 0; i < c.size(); ++i)
    if (std::find(s_.begin(), s_.end(), static_cast<int>(i)) == s_.end())
      outside += c[i];
  if (outside > 0) return Block::RadicalPlus;
  if (outside < 0) return Block::RadicalMinus;
  return Block::Levi;
}

bool Parabolic::levi_root(int signed_root_id) const {
  return classify(BasisElem::root(signed_root_id, 0)) == Block::Levi;
}

Rat Parabolic::root_eval(int signed_root_id, const std::vector<Rat>& u) const {
  const RootSystem& rs = root_system();
  const std::vector<long> c = rs.root_coeffs(signed_root_id);
  // phi(h_j) = sum_i c_i A_ij with A the Cartan matrix
  Rat acc(0);
  for (int j = 0; j < rs.rank(); ++j) {
    long val = 0;
    for (int i = 0; i < rs.rank(); ++i) val += c[i] * rs.cartan(i, j);
    acc += Rat(val) * u[j];
  }
  return acc;
}

bool Parabolic::affine_positive(int signed_root_id, int deg) const {
  if (deg != 0) return deg > 0;
  return root_system().is_positive_id(signed_root_id);
}

int Parabolic::component_theta_id(const std::vector<int>& comp) const {
  std::vector<long> coeffs(root_system().rank(), 0);
  for (int i : comp) coeffs[i] = 1;
  const int id = root_system().find_root(coeffs);
  if (id < 0) throw std::logic_error("component highest root not found");
  return id;
}

std::vector<Rat> Parabolic::functional_from_adapted(
    const std::vector<Rat>& on_hl, const std::vector<Rat>& on_hperp) const {
  if (on_hl.size() != hl_.size() || on_hperp.size() != hperp_.size())
    throw std::invalid_argument("functional_from_adapted: size mismatch");
  const int r = root_system().rank();
  std::vector<Rat> vals(r, Rat(0));
  for (int i = 0; i < r; ++i) {
    const std::vector<Rat>& coords = coroot_adapted_[i];
    for (size_t a = 0; a < hl_.size(); ++a) vals[i] += coords[a] * on_hl[a];
    for (size_t b = 0; b < hperp_.size(); ++b)
      vals[i] += coords[hl_.size() + b] * on_hperp[b];
  }
  return vals;
}

}  // namespace affind
