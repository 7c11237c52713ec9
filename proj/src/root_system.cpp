#include "affind/root_system.hpp"

#include <algorithm>
#include <stdexcept>

namespace affind {

AffineWeight AffineWeight::operator+(const AffineWeight& o) const {
  if (finite.size() != o.finite.size())
    throw std::invalid_argument("AffineWeight: rank mismatch");
  AffineWeight r = *this;
  for (size_t i = 0; i < finite.size(); ++i) r.finite[i] += o.finite[i];
  r.delta += o.delta;
  return r;
}

AffineWeight AffineWeight::operator-() const {
  AffineWeight r = *this;
  for (long& c : r.finite) c = -c;
  r.delta = -r.delta;
  return r;
}

RootSystem RootSystem::build(const std::string& label) {
  RootSystem rs;
  rs.label_ = label;
  if (label == "A1") {
    rs.rank_ = 1;
    rs.positive_ = {{1}};
    rs.cartan_ = {{2}};
  } else if (label == "A2") {
    rs.rank_ = 2;
    rs.positive_ = {{1, 0}, {0, 1}, {1, 1}};
    rs.cartan_ = {{2, -1}, {-1, 2}};
  } else {
    throw std::invalid_argument("unsupported root system label '" + label +
                                "' (supported: A1, A2)");
  }
  // simply laced, normalized with (theta, theta) = 2: form = Cartan matrix
  rs.form_.assign(rs.rank_, std::vector<Rat>(rs.rank_));
  for (int i = 0; i < rs.rank_; ++i)
    for (int j = 0; j < rs.rank_; ++j) rs.form_[i][j] = Rat(rs.cartan_[i][j]);
  return rs;
}

std::vector<long> RootSystem::root_coeffs(int id) const {
  const int p = num_positive();
  if (id < 0 || id >= 2 * p) throw std::out_of_range("root id");
  std::vector<long> c = positive_[id % p];
  if (id >= p)
    for (long& x : c) x = -x;
  return c;
}

int RootSystem::find_root(const std::vector<long>& coeffs) const {
  for (int id = 0; id < num_roots(); ++id)
    if (root_coeffs(id) == coeffs) return id;
  return -1;
}

Rat RootSystem::form(const std::vector<long>& u,
                     const std::vector<long>& v) const {
  if (static_cast<int>(u.size()) != rank_ ||
      static_cast<int>(v.size()) != rank_)
    throw std::invalid_argument("invariant form: dimension mismatch");
  Rat acc(0);
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < rank_; ++j) acc += Rat(u[i]) * form_[i][j] * Rat(v[j]);
  return acc;
}

std::pair<int, int> RootSystem::matrix_unit(int pos_id) const {
  // type A interval root alpha_i + ... + alpha_j  ->  E_{i, j+1}
  const std::vector<long>& c = positive_[pos_id];
  int lo = -1, hi = -1;
  for (int i = 0; i < rank_; ++i) {
    if (c[i] != 0) {
      if (lo < 0) lo = i;
      hi = i;
    }
  }
  return {lo, hi + 1};
}

std::vector<long> RootSystem::root_vector_matrix(int id) const {
  const int n = rank_ + 1;
  std::vector<long> m(static_cast<size_t>(n) * n, 0);
  auto [row, col] = matrix_unit(id % num_positive());
  if (id >= num_positive()) std::swap(row, col);
  m[static_cast<size_t>(row) * n + col] = 1;
  return m;
}

std::vector<long> RootSystem::coroot_matrix(int i) const {
  const int n = rank_ + 1;
  std::vector<long> m(static_cast<size_t>(n) * n, 0);
  m[static_cast<size_t>(i) * n + i] = 1;
  m[static_cast<size_t>(i + 1) * n + i + 1] = -1;
  return m;
}

std::vector<long> RootSystem::highest_root() const {
  return std::vector<long>(rank_, 1);
}

std::string RootSystem::render_finite(const std::vector<long>& coeffs) const {
  std::string out;
  for (int i = 0; i < rank_; ++i) {
    const long c = coeffs[i];
    if (c == 0) continue;
    if (!out.empty()) out += c > 0 ? "+" : "-";
    else if (c < 0) out += "-";
    const long a = std::abs(c);
    if (a != 1) out += std::to_string(a);
    out += "a" + std::to_string(i + 1);
  }
  return out.empty() ? "0" : out;
}

long tau_count(const AffineWeight& w, const std::vector<int>& subset_s) {
  long total = 0;
  for (size_t i = 0; i < w.finite.size(); ++i) {
    if (std::find(subset_s.begin(), subset_s.end(), static_cast<int>(i)) !=
        subset_s.end())
      continue;
    total += std::abs(w.finite[i]);
  }
  return total;
}

}  // namespace affind
