#include "affind/affine_algebra.hpp"

#include <mutex>
#include <stdexcept>

namespace affind {

void LieElement::add(const BasisElem& e, const Rat& c) {
  if (affind::is_zero(c)) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
  } else {
    it->second += c;
    if (affind::is_zero(it->second)) terms_.erase(it);
  }
}

LieElement& LieElement::operator+=(const LieElement& o) {
  if (label_.empty()) label_ = o.label_;
  else if (!o.label_.empty() && o.label_ != label_)
    throw std::invalid_argument("LieElement: mixed root systems");
  for (const auto& [e, c] : o.terms_) add(e, c);
  return *this;
}

LieElement& LieElement::operator*=(const Rat& s) {
  if (affind::is_zero(s)) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= s;
  return *this;
}

LieElement LieElement::operator-() const {
  LieElement r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

std::string LieElement::render(const RootSystem& rs) const {
  if (terms_.empty()) return "0";
  AffineAlgebra tmp(rs);  // rendering only touches the root system
  std::string out;
  for (const auto& [e, c] : terms_) {
    if (!out.empty()) out += " + ";
    out += rat_str(c) + "*" + tmp.render(e);
  }
  return out;
}

AffineWeight AffineAlgebra::grade(const BasisElem& e) const {
  switch (e.kind) {
    case ElemKind::RootVector:
      return AffineWeight(rs_.root_coeffs(e.idx), e.deg);
    case ElemKind::CartanLoop:
      return AffineWeight(std::vector<long>(rs_.rank(), 0), e.deg);
    default:
      return AffineWeight(std::vector<long>(rs_.rank(), 0), 0);
  }
}

std::vector<long> AffineAlgebra::matrix_of(const BasisElem& e) const {
  if (e.kind == ElemKind::RootVector) return rs_.root_vector_matrix(e.idx);
  if (e.kind == ElemKind::CartanLoop) return rs_.coroot_matrix(e.idx);
  throw std::logic_error("matrix_of: not a loop element");
}

Rat AffineAlgebra::finite_form(const BasisElem& a, const BasisElem& b) const {
  const int n = rs_.rank() + 1;
  const std::vector<long> ma = matrix_of(a), mb = matrix_of(b);
  long tr = 0;
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) tr += ma[static_cast<size_t>(i) * n + k] * mb[static_cast<size_t>(k) * n + i];
  return Rat(tr);
}

LieElement AffineAlgebra::bracket_uncached(const BasisElem& a, const BasisElem& b) const {
  LieElement out(rs_.label());
  // central element
  if (a.kind == ElemKind::Central || b.kind == ElemKind::Central) return out;
  // derivation: [d, x] = n x
  if (a.kind == ElemKind::Derivation && b.kind == ElemKind::Derivation) return out;
  if (a.kind == ElemKind::Derivation) {
    out.add(b, Rat(b.deg));
    return out;
  }
  if (b.kind == ElemKind::Derivation) {
    out.add(a, Rat(-a.deg));
    return out;
  }
  // loop part via matrix commutator
  const int n = rs_.rank() + 1;
  const std::vector<long> ma = matrix_of(a), mb = matrix_of(b);
  std::vector<long> comm(static_cast<size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      long acc = 0;
      for (int k = 0; k < n; ++k)
        acc += ma[static_cast<size_t>(i) * n + k] * mb[static_cast<size_t>(k) * n + j] -
               mb[static_cast<size_t>(i) * n + k] * ma[static_cast<size_t>(k) * n + j];
      comm[static_cast<size_t>(i) * n + j] = acc;
    }
  const int deg = a.deg + b.deg;
  // off-diagonal entries are root-vector coefficients
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const long v = comm[static_cast<size_t>(i) * n + j];
      if (v == 0) continue;
      std::vector<long> coeffs(rs_.rank(), 0);
      const int lo = std::min(i, j), hi = std::max(i, j);
      for (int k = lo; k < hi; ++k) coeffs[k] = i < j ? 1 : -1;
      const int id = rs_.find_root(coeffs);
      out.add(BasisElem::root(id, deg), Rat(v));
    }
  // diagonal decomposes over simple coroots via partial sums
  long partial = 0;
  for (int i = 0; i < rs_.rank(); ++i) {
    partial += comm[static_cast<size_t>(i) * n + i];
    if (partial != 0) out.add(BasisElem::cartan(i, deg), Rat(partial));
  }
  // central term m delta_{m+n,0} (a|b) c
  if (deg == 0 && a.deg != 0) {
    const Rat f = finite_form(a, b);
    if (!is_zero(f)) out.add(BasisElem::central(), Rat(a.deg) * f);
  }
  return out;
}

LieElement AffineAlgebra::bracket_basis(const BasisElem& a, const BasisElem& b) const {
  BasisElemHash h;
  const std::uint64_t key = mix64(h(a), mix64(h(b), 0x5bd1e995ULL));
  {
    std::shared_lock lock(memo_mutex_);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
  }
  LieElement r = bracket_uncached(a, b);
  {
    std::unique_lock lock(memo_mutex_);
    memo_.emplace(key, r);
  }
  return r;
}

LieElement AffineAlgebra::bracket(const LieElement& x, const LieElement& y) const {
  if ((!x.label().empty() && x.label() != rs_.label()) ||
      (!y.label().empty() && y.label() != rs_.label()))
    throw std::invalid_argument("bracket: mixed root systems");
  LieElement out(rs_.label());
  for (const auto& [ea, ca] : x.terms())
    for (const auto& [eb, cb] : y.terms()) {
      LieElement br = bracket_basis(ea, eb);
      br *= ca * cb;
      out += br;
    }
  return out;
}

std::vector<BasisElem> AffineAlgebra::heisenberg_basis(int lo, int hi) const {
  if (lo > hi) throw std::invalid_argument("heisenberg_basis: empty window");
  std::vector<BasisElem> out;
  for (int n = lo; n <= hi; ++n) {
    if (n == 0) continue;
    for (int i = 0; i < rs_.rank(); ++i) out.push_back(BasisElem::cartan(i, n));
  }
  out.push_back(BasisElem::central());
  return out;
}

std::string AffineAlgebra::render(const BasisElem& e) const {
  switch (e.kind) {
    case ElemKind::Central:
      return "c";
    case ElemKind::Derivation:
      return "d";
    case ElemKind::CartanLoop:
      return "h" + std::to_string(e.idx + 1) + "@" + std::to_string(e.deg);
    case ElemKind::RootVector: {
      const bool pos = rs_.is_positive_id(e.idx);
      const int pid = pos ? e.idx : rs_.negate_id(e.idx);
      std::vector<long> c = rs_.root_coeffs(pid);
      return std::string(pos ? "e[" : "f[") + rs_.render_finite(c) + "]@" +
             std::to_string(e.deg);
    }
  }
  return "?";
}

BasisElem AffineAlgebra::parse_elem(const std::string& text) const {
  if (text == "c") return BasisElem::central();
  if (text == "d") return BasisElem::derivation();
  const auto at = text.rfind('@');
  if (at == std::string::npos) throw std::invalid_argument("bad basis element: " + text);
  const int deg = std::stoi(text.substr(at + 1));
  if (text[0] == 'h') {
    const int i = std::stoi(text.substr(1, at - 1)) - 1;
    if (i < 0 || i >= rs_.rank()) throw std::invalid_argument("bad coroot index: " + text);
    return BasisElem::cartan(i, deg);
  }
  if ((text[0] == 'e' || text[0] == 'f') && text[1] == '[') {
    const auto close = text.find(']');
    if (close == std::string::npos) throw std::invalid_argument("bad basis element: " + text);
    const std::string body = text.substr(2, close - 2);
    for (int pid = 0; pid < rs_.num_positive(); ++pid) {
      if (rs_.render_finite(rs_.root_coeffs(pid)) == body) {
        const int id = text[0] == 'e' ? pid : rs_.negate_id(pid);
        return BasisElem::root(id, deg);
      }
    }
    throw std::invalid_argument("unknown root: " + text);
  }
  throw std::invalid_argument("bad basis element: " + text);
}

}  // namespace affind
