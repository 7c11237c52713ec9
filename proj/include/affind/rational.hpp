#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace affind {

/// Exact rational scalar. Every coefficient, character value, charge and
/// weight in the library is one of these; no floating point anywhere.
using Rat = mpq_class;

inline Rat rat_parse(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  Rat q;
  if (q.set_str(s, 10) != 0)
    throw std::invalid_argument("bad rational literal: '" + s + "'");
  q.canonicalize();
  return q;
}

inline std::string rat_str(const Rat& q) { return q.get_str(); }

inline bool is_zero(const Rat& q) { return sgn(q) == 0; }

/// Solve A x = b exactly over the rationals (A square, invertible).
inline std::vector<Rat> solve_linear(std::vector<std::vector<Rat>> a,
                                     std::vector<Rat> b) {
  const size_t n = a.size();
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && is_zero(a[piv][col])) ++piv;
    if (piv == n) throw std::runtime_error("solve_linear: singular matrix");
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    const Rat inv = 1 / a[col][col];
    for (size_t j = col; j < n; ++j) a[col][j] *= inv;
    b[col] *= inv;
    for (size_t row = 0; row < n; ++row) {
      if (row == col || is_zero(a[row][col])) continue;
      const Rat f = a[row][col];
      for (size_t j = col; j < n; ++j) a[row][j] -= f * a[col][j];
      b[row] -= f * b[col];
    }
  }
  return b;
}

/// Basis of the kernel of an m x n rational matrix, as primitive integer
/// vectors with positive leading entry, in a deterministic order.
inline std::vector<std::vector<Rat>> kernel_basis(
    std::vector<std::vector<Rat>> a, size_t ncols) {
  const size_t nrows = a.size();
  std::vector<size_t> pivot_col;
  size_t row = 0;
  for (size_t col = 0; col < ncols && row < nrows; ++col) {
    size_t piv = row;
    while (piv < nrows && is_zero(a[piv][col])) ++piv;
    if (piv == nrows) continue;
    std::swap(a[piv], a[row]);
    const Rat inv = 1 / a[row][col];
    for (size_t j = 0; j < ncols; ++j) a[row][j] *= inv;
    for (size_t r = 0; r < nrows; ++r) {
      if (r == row || is_zero(a[r][col])) continue;
      const Rat f = a[r][col];
      for (size_t j = 0; j < ncols; ++j) a[r][j] -= f * a[row][j];
    }
    pivot_col.push_back(col);
    ++row;
  }
  std::vector<bool> is_pivot(ncols, false);
  for (size_t c : pivot_col) is_pivot[c] = true;
  std::vector<std::vector<Rat>> basis;
  for (size_t free = 0; free < ncols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rat> v(ncols, Rat(0));
    v[free] = 1;
    for (size_t r = 0; r < pivot_col.size(); ++r) v[pivot_col[r]] = -a[r][free];
    // scale to a primitive integer vector
    mpz_class lcm_den = 1;
    for (const Rat& q : v) lcm_den = lcm(lcm_den, q.get_den());
    mpz_class gcd_num = 0;
    for (Rat& q : v) {
      q *= Rat(lcm_den);
      q.canonicalize();
      gcd_num = gcd(gcd_num, q.get_num());
    }
    if (gcd_num != 0)
      for (Rat& q : v) {
        q /= Rat(gcd_num);
        q.canonicalize();
      }
    for (const Rat& q : v) {
      if (!is_zero(q)) {
        if (sgn(q) < 0)
          for (Rat& w : v) w = -w;
        break;
      }
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Deterministic 64-bit generator used for all sampling; seeds are recorded
/// in reports so every run can be replayed.
struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  /// uniform in [lo, hi]
  long range(long lo, long hi) {
    return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  /// small nonzero rational, numerator in [-9,9], denominator in [1,3]
  Rat small_rat() {
    long num = range(1, 9);
    if (next() & 1) num = -num;
    const long den = range(1, 3);
    Rat q(num, den);
    q.canonicalize();
    return q;
  }
};

inline std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::uint64_t mix64(std::uint64_t a, std::uint64_t b) {
  SplitMix64 g(a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2)));
  return g.next();
}

}  // namespace affind
