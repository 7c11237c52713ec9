#include "affind/pbw.hpp"

#include <stdexcept>
#include <tuple>

#include "affind/straighten.hpp"

namespace affind {

bool PbwOrder::less(const BasisElem& a, const BasisElem& b) const {
  const int block_a = static_cast<int>(par_->classify(a));
  const int block_b = static_cast<int>(par_->classify(b));
  auto cd_rank = [](const BasisElem& e) {
    if (e.kind == ElemKind::Central) return 1;
    if (e.kind == ElemKind::Derivation) return 2;
    return 0;
  };
  const RootSystem& rs = par_->root_system();
  auto weight_of = [&](const BasisElem& e) {
    return e.kind == ElemKind::RootVector ? rs.root_coeffs(e.idx)
                                          : std::vector<long>(rs.rank(), 0);
  };
  const auto ka = std::make_tuple(block_a, cd_rank(a), a.deg, weight_of(a),
                                  static_cast<int>(a.kind), a.idx);
  const auto kb = std::make_tuple(block_b, cd_rank(b), b.deg, weight_of(b),
                                  static_cast<int>(b.kind), b.idx);
  return ka < kb;
}

bool PbwMonomial::operator<(const PbwMonomial& o) const {
  return factors < o.factors;  // BasisElem canonical order + exponents
}

void EnvElement::add(const PbwMonomial& m, const Rat& c) {
  if (affind::is_zero(c)) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
  } else {
    it->second += c;
    if (affind::is_zero(it->second)) terms_.erase(it);
  }
}

EnvElement& EnvElement::operator+=(const EnvElement& o) {
  if (tag_.empty()) tag_ = o.tag_;
  else if (!o.tag_.empty() && o.tag_ != tag_)
    throw std::invalid_argument("EnvElement: order tag mismatch");
  for (const auto& [m, c] : o.terms_) add(m, c);
  return *this;
}

EnvElement& EnvElement::operator*=(const Rat& s) {
  if (affind::is_zero(s)) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= s;
  return *this;
}

static PbwMonomial compress(const std::vector<BasisElem>& sorted_word) {
  PbwMonomial m;
  for (const BasisElem& e : sorted_word) {
    if (!m.factors.empty() && m.factors.back().first == e)
      ++m.factors.back().second;
    else
      m.factors.emplace_back(e, 1);
  }
  return m;
}

EnvElement normal_order(const AffineAlgebra& alg, const PbwOrder& order,
                        const std::vector<BasisElem>& word) {
  EnvElement out(order.tag());
  auto less = [&](const BasisElem& a, const BasisElem& b) { return order.less(a, b); };
  auto bracket = [&](const BasisElem& a, const BasisElem& b) {
    std::vector<std::pair<BasisElem, Rat>> terms;
    const LieElement br = alg.bracket_basis(a, b);
    for (const auto& [e, c] : br.terms()) terms.emplace_back(e, c);
    return terms;
  };
  auto sink = [&](const Rat& c, const std::vector<BasisElem>& w) {
    out.add(compress(w), c);
  };
  straighten_words<BasisElem>({{Rat(1), word}}, less, bracket, sink);
  return out;
}

EnvElement multiply(const AffineAlgebra& alg, const PbwOrder& order,
                    const EnvElement& a, const EnvElement& b) {
  if (!a.tag().empty() && !b.tag().empty() && a.tag() != b.tag())
    throw std::invalid_argument("multiply: order tag mismatch");
  EnvElement out(order.tag());
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) {
      std::vector<BasisElem> w = ma.expand();
      const std::vector<BasisElem> wb = mb.expand();
      w.insert(w.end(), wb.begin(), wb.end());
      EnvElement part = normal_order(alg, order, w);
      part *= ca * cb;
      out += part;
    }
  return out;
}

std::string render_monomial(const AffineAlgebra& alg, const PbwMonomial& m) {
  if (m.is_unit()) return "1";
  std::string out;
  for (const auto& [e, k] : m.factors) {
    if (!out.empty()) out += "*";
    out += alg.render(e);
    if (k != 1) out += "^" + std::to_string(k);
  }
  return out;
}

PbwMonomial parse_monomial(const AffineAlgebra& alg, const std::string& text) {
  PbwMonomial m;
  if (text == "1") return m;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t star = text.find('*', pos);
    if (star == std::string::npos) star = text.size();
    std::string factor = text.substr(pos, star - pos);
    int exp = 1;
    const size_t caret = factor.rfind('^');
    // '^' only appears as an exponent marker (degrees use '@')
    if (caret != std::string::npos) {
      exp = std::stoi(factor.substr(caret + 1));
      factor = factor.substr(0, caret);
    }
    m.factors.emplace_back(alg.parse_elem(factor), exp);
    pos = star + 1;
  }
  return m;
}

}  // namespace affind
