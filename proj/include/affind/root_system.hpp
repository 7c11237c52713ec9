#pragma once

#include <string>
#include <vector>

#include "affind/rational.hpp"

namespace affind {

/// Element phi + n*delta of the affine root/weight lattice. The finite part
/// is stored as integer coordinates over the simple roots.
struct AffineWeight {
  std::vector<long> finite;  // coefficients over alpha_1..alpha_r
  long delta = 0;

  AffineWeight() = default;
  AffineWeight(std::vector<long> f, long d) : finite(std::move(f)), delta(d) {}

  bool is_zero() const {
    if (delta != 0) return false;
    for (long c : finite)
      if (c != 0) return false;
    return true;
  }
  AffineWeight operator+(const AffineWeight& o) const;
  AffineWeight operator-() const;
  bool operator==(const AffineWeight& o) const {
    return delta == o.delta && finite == o.finite;
  }
};

/// Finite root system of type A1 or A2 with the invariant form normalized
/// so that (theta, theta) = 2. Root data is hard-coded per type; everything
/// downstream is derived from it exactly.
class RootSystem {
 public:
  static RootSystem build(const std::string& label);

  const std::string& label() const { return label_; }
  int rank() const { return rank_; }

  /// positive roots as coefficient vectors over the simple roots,
  /// ordered by (height, lex); simple roots come first
  const std::vector<std::vector<long>>& positive_roots() const {
    return positive_;
  }
  int num_positive() const { return static_cast<int>(positive_.size()); }

  /// root ids: [0, P) positive in list order, [P, 2P) their negatives
  int num_roots() const { return 2 * num_positive(); }
  bool is_positive_id(int id) const { return id < num_positive(); }
  int negate_id(int id) const {
    return id < num_positive() ? id + num_positive() : id - num_positive();
  }
  std::vector<long> root_coeffs(int id) const;
  /// id of the root with the given coefficient vector, or -1
  int find_root(const std::vector<long>& coeffs) const;

  long cartan(int i, int j) const { return cartan_[i][j]; }  // A_ij
  /// invariant form on the root lattice, (alpha_i, alpha_j)
  Rat form(const std::vector<long>& u, const std::vector<long>& v) const;
  const std::vector<std::vector<Rat>>& form_matrix() const { return form_; }

  /// (row, col) of the matrix unit realizing the positive root with this id,
  /// in the defining representation of sl(r+1)
  std::pair<int, int> matrix_unit(int pos_id) const;

  /// traceless (r+1)x(r+1) integer matrix of a basis element:
  /// root vector (by signed id) or simple coroot h_i
  std::vector<long> root_vector_matrix(int id) const;
  std::vector<long> coroot_matrix(int i) const;

  std::vector<long> highest_root() const;

  std::string render_finite(const std::vector<long>& coeffs) const;

 private:
  std::string label_;
  int rank_ = 0;
  std::vector<std::vector<long>> positive_;
  std::vector<std::vector<long>> cartan_;
  std::vector<std::vector<Rat>> form_;
};

/// Number of simple-root occurrences outside S in the finite part, counted
/// with absolute values; the delta part is ignored. Additive on same-sign
/// weights and symmetric under negation.
long tau_count(const AffineWeight& w, const std::vector<int>& subset_s);

}  // namespace affind
