#pragma once

#include <map>
#include <memory>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "affind/rational.hpp"
#include "affind/root_system.hpp"

namespace affind {

enum class ElemKind : int { RootVector = 0, CartanLoop = 1, Central = 2, Derivation = 3 };

/// Canonical basis element of the untwisted affine algebra: a root vector
/// x_phi (x) t^n, a simple-coroot loop h_i (x) t^n, the central element c,
/// or the derivation d.
struct BasisElem {
  ElemKind kind = ElemKind::Central;
  int idx = 0;   // signed root id for RootVector, coroot index for CartanLoop
  int deg = 0;   // loop degree n (0 for c, d)

  static BasisElem root(int signed_id, int n) { return {ElemKind::RootVector, signed_id, n}; }
  static BasisElem cartan(int i, int n) { return {ElemKind::CartanLoop, i, n}; }
  static BasisElem central() { return {ElemKind::Central, 0, 0}; }
  static BasisElem derivation() { return {ElemKind::Derivation, 0, 0}; }

  bool operator==(const BasisElem& o) const {
    return kind == o.kind && idx == o.idx && deg == o.deg;
  }
  /// canonical order, independent of any parabolic
  bool operator<(const BasisElem& o) const {
    if (kind != o.kind) return static_cast<int>(kind) < static_cast<int>(o.kind);
    if (deg != o.deg) return deg < o.deg;
    return idx < o.idx;
  }
};

struct BasisElemHash {
  size_t operator()(const BasisElem& e) const {
    std::uint64_t h = static_cast<std::uint64_t>(e.kind);
    h = mix64(h, static_cast<std::uint64_t>(static_cast<std::int64_t>(e.idx)));
    h = mix64(h, static_cast<std::uint64_t>(static_cast<std::int64_t>(e.deg)));
    return static_cast<size_t>(h);
  }
};

/// Finite rational combination of canonical basis elements; no zero
/// coefficients are stored and iteration order is canonical.
class LieElement {
 public:
  LieElement() = default;
  explicit LieElement(const std::string& rs_label) : label_(rs_label) {}

  const std::string& label() const { return label_; }
  const std::map<BasisElem, Rat>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add(const BasisElem& e, const Rat& c);
  LieElement& operator+=(const LieElement& o);
  LieElement& operator*=(const Rat& s);
  LieElement operator-() const;

  std::string render(const RootSystem& rs) const;

 private:
  std::string label_;
  std::map<BasisElem, Rat> terms_;
};

/// The affine Kac-Moody algebra of the given finite type. Structure
/// constants come from traceless-matrix commutators in the defining
/// representation; the loop bracket is
///   [a(x)t^m, b(x)t^n] = [a,b](x)t^{m+n} + m delta_{m+n,0} (a|b) c,
/// with [d, x(x)t^n] = n x(x)t^n and c central.
class AffineAlgebra {
 public:
  explicit AffineAlgebra(RootSystem rs) : rs_(std::move(rs)) {}

  const RootSystem& root_system() const { return rs_; }

  AffineWeight grade(const BasisElem& e) const;

  /// bracket of basis elements (memoized; safe for concurrent use)
  LieElement bracket_basis(const BasisElem& a, const BasisElem& b) const;
  LieElement bracket(const LieElement& x, const LieElement& y) const;

  /// trace form on the finite part of basis elements (0 unless both live in
  /// the finite algebra slice with matching loop degrees handled by caller)
  Rat finite_form(const BasisElem& a, const BasisElem& b) const;

  /// all CartanLoop(i, n) with n in [lo, hi], n != 0, plus c
  std::vector<BasisElem> heisenberg_basis(int lo, int hi) const;

  std::string render(const BasisElem& e) const;
  BasisElem parse_elem(const std::string& text) const;

 private:
  LieElement bracket_uncached(const BasisElem& a, const BasisElem& b) const;
  std::vector<long> matrix_of(const BasisElem& e) const;

  RootSystem rs_;
  mutable std::shared_mutex memo_mutex_;
  mutable std::unordered_map<std::uint64_t, LieElement> memo_;
};

}  // namespace affind
