#pragma once

#include <map>
#include <string>
#include <vector>

#include "affind/parabolic.hpp"

namespace affind {

/// Parabolic-adapted total order on the canonical basis: block order
/// radical_minus < levi < radical_plus; within a block by (delta-degree,
/// finite weight lex, kind, index), with c and d placed last inside the
/// levi block. Total, deterministic and block-separating.
class PbwOrder {
 public:
  explicit PbwOrder(const Parabolic& par) : par_(&par) {}

  const Parabolic& parabolic() const { return *par_; }
  const std::string& tag() const { return par_->tag(); }

  bool less(const BasisElem& a, const BasisElem& b) const;

 private:
  const Parabolic* par_;
};

/// Normal-ordered monomial: factors strictly increasing in the ambient
/// order, positive exponents, empty list = unit.
struct PbwMonomial {
  std::vector<std::pair<BasisElem, int>> factors;

  bool is_unit() const { return factors.empty(); }
  int word_length() const {
    int n = 0;
    for (const auto& [e, k] : factors) n += k;
    return n;
  }
  std::vector<BasisElem> expand() const {
    std::vector<BasisElem> w;
    for (const auto& [e, k] : factors)
      for (int i = 0; i < k; ++i) w.push_back(e);
    return w;
  }
  bool operator==(const PbwMonomial& o) const { return factors == o.factors; }
  bool operator<(const PbwMonomial& o) const;  // deterministic map order
};

/// Element of the universal enveloping algebra: finite rational combination
/// of normal-ordered monomials, all relative to the same order tag.
class EnvElement {
 public:
  EnvElement() = default;
  explicit EnvElement(std::string order_tag) : tag_(std::move(order_tag)) {}

  const std::string& tag() const { return tag_; }
  const std::map<PbwMonomial, Rat>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add(const PbwMonomial& m, const Rat& c);
  EnvElement& operator+=(const EnvElement& o);
  EnvElement& operator*=(const Rat& s);

  static EnvElement unit(const std::string& tag) {
    EnvElement e(tag);
    e.add(PbwMonomial{}, Rat(1));
    return e;
  }

 private:
  std::string tag_;
  std::map<PbwMonomial, Rat> terms_;
};

/// Straightens an arbitrary word of basis elements into normal order.
EnvElement normal_order(const AffineAlgebra& alg, const PbwOrder& order,
                        const std::vector<BasisElem>& word);

/// Product in the enveloping algebra; rejects mismatched order tags.
EnvElement multiply(const AffineAlgebra& alg, const PbwOrder& order,
                    const EnvElement& a, const EnvElement& b);

std::string render_monomial(const AffineAlgebra& alg, const PbwMonomial& m);
PbwMonomial parse_monomial(const AffineAlgebra& alg, const std::string& text);

}  // namespace affind
