#pragma once

#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "affind/parabolic.hpp"

namespace affind {

struct NotInAlgebra : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Homogeneous element acting on an inducing module: a Levi root vector,
/// a Cartan loop u (x) t^n with u a rational vector over the simple
/// coroots, the central element, or the derivation.
struct Adapted {
  enum class Kind { Root, Cartan, C, D } kind = Kind::C;
  int root_id = 0;
  int deg = 0;
  std::vector<Rat> cartan;

  static Adapted root(int id, int n) { return {Kind::Root, id, n, {}}; }
  static Adapted cartan_vec(std::vector<Rat> u, int n) {
    return {Kind::Cartan, 0, n, std::move(u)};
  }
  static Adapted central() { return {Kind::C, 0, 0, {}}; }
  static Adapted derivation() { return {Kind::D, 0, 0, {}}; }
  static Adapted from_basis(const BasisElem& e, int rank);

  int delta_degree() const { return kind == Kind::Root || kind == Kind::Cartan ? deg : 0; }
};

std::string render_adapted(const AffineAlgebra& alg, const Adapted& x);
Adapted parse_adapted(const AffineAlgebra& alg, const std::string& text);

/// Index of a basis vector of an inducing module, as a flat code whose
/// meaning is owned by the module; compares and serializes canonically.
using VIdx = std::vector<int>;
using VSparse = std::map<VIdx, Rat>;

void vsparse_add(VSparse& acc, const VIdx& k, const Rat& c);
void vsparse_axpy(VSparse& acc, const Rat& s, const VSparse& x);

/// (h-functional, delta-degree) grading label of a basis vector; the
/// constant lambda shift on h_l_perp is not included.
struct WeightLabel {
  std::vector<Rat> hvals;
  long delta = 0;
  bool operator==(const WeightLabel& o) const {
    return delta == o.delta && hvals == o.hvals;
  }
  bool operator<(const WeightLabel& o) const {
    if (delta != o.delta) return delta < o.delta;
    return hvals < o.hvals;
  }
};

/// Heisenberg-type Whittaker character: values on an abelian positive part
/// indexed by (basis direction, degree), with a default value for
/// untabulated degrees. A nonzero default models the "nonzero for
/// infinitely many n" hypothesis; reports state which rule applies.
struct HeisenbergCharacter {
  std::map<std::pair<int, int>, Rat> table;
  Rat default_value = Rat(0);

  Rat value(int j, int n) const {
    auto it = table.find({j, n});
    return it == table.end() ? default_value : it->second;
  }
  bool infinitely_many_nonzero() const { return !is_zero(default_value); }
  std::string describe() const;
};

/// Whittaker character on the positive part of an affine subalgebra:
/// values are carried on the affine simple root vectors only (e_s (x) t^0
/// and f_theta (x) t^1 per component of S), so it vanishes on brackets of
/// positive generators and on every imaginary root space.
struct AffineCharacter {
  std::map<int, Rat> e_values;          // by simple root index in S
  std::vector<Rat> f_theta_values;      // by component of S
  std::string describe() const;
};

class CharInducedModule;

/// An inducing module: an explicit countable basis with an exact action
/// rule for every element of the Levi factor (and c, d where applicable).
class InducingModule {
 public:
  virtual ~InducingModule() = default;

  const Parabolic& parabolic() const { return *par_; }
  const AffineAlgebra& algebra() const { return par_->algebra(); }
  virtual Rat charge() const = 0;

  virtual VIdx unit() const = 0;
  /// action of a homogeneous element on a basis vector; throws NotInAlgebra
  /// when the element lies outside the module's acting algebra
  virtual VSparse act(const Adapted& x, const VIdx& w) const = 0;
  virtual WeightLabel weight(const VIdx& w) const = 0;
  virtual int length(const VIdx& w) const = 0;
  /// all basis vectors of PBW length <= max_len with loop degrees in
  /// [-window, window]; deterministic order
  virtual std::vector<VIdx> enumerate(int max_len, int window) const = 0;
  virtual std::string render(const VIdx& w) const = 0;
  /// rejects malformed codes (used when re-checking serialized witnesses)
  virtual void validate(const VIdx& w) const = 0;
  virtual std::string describe() const = 0;

  virtual const CharInducedModule* as_char_induced() const { return nullptr; }

  VSparse act_canonical(const BasisElem& e, const VIdx& w) const {
    return act(Adapted::from_basis(e, algebra().root_system().rank()), w);
  }
  VSparse act_linear(const Adapted& x, const VSparse& v) const;

 protected:
  explicit InducingModule(const Parabolic& par) : par_(&par) {}
  const Parabolic* par_;
};

/// Module induced from a one-dimensional character of a triangular frame:
/// basis = PBW monomials in the free directions, positive directions act
/// through the character, scalar directions by fixed values. Covers the
/// Whittaker modules over the Heisenberg subalgebra (with or without d),
/// universal Whittaker modules over a Levi, Verma modules over the real
/// affine part, and Whittaker modules over the Heisenberg complement.
class CharInducedModule : public InducingModule {
 public:
  enum class Variant {
    HeisenbergWhittaker,      // over G, basis U(G_-)
    ExtendedWhittaker,        // over G + Cd (+ h via lambda)
    LeviWhittaker,            // universal Whittaker over l_1 (+ lambda)
    LeviWhittakerNoD,         // over the derivation-free l_2
    VermaL0,                  // over l_0, d acting by the grading
    ComplementWhittaker,      // over G(l)-perp (+ optional free d)
  };

  struct Dir {
    int kind;  // 0 root, 1 hl, 2 hperp, 3 c, 4 d
    int idx;
    int deg;
    bool operator==(const Dir& o) const {
      return kind == o.kind && idx == o.idx && deg == o.deg;
    }
    bool operator<(const Dir& o) const {
      if (kind != o.kind) return kind < o.kind;
      if (deg != o.deg) return deg < o.deg;
      return idx < o.idx;
    }
  };

  CharInducedModule(const Parabolic& par, Variant variant,
                    HeisenbergCharacter heis_eta, AffineCharacter affine_eta,
                    Rat a, std::vector<Rat> lambda, std::vector<Rat> chi,
                    bool with_d);

  Rat charge() const override { return charge_; }
  VIdx unit() const override { return {}; }
  VSparse act(const Adapted& x, const VIdx& w) const override;
  WeightLabel weight(const VIdx& w) const override;
  int length(const VIdx& w) const override;
  std::vector<VIdx> enumerate(int max_len, int window) const override;
  std::string render(const VIdx& w) const override;
  void validate(const VIdx& w) const override;
  std::string describe() const override;
  const CharInducedModule* as_char_induced() const override { return this; }

  Variant variant() const { return variant_; }
  /// positive generators carrying the Whittaker relation, with their
  /// character values, for degrees up to the window
  std::vector<std::pair<Adapted, Rat>> positive_generators(int window) const;
  /// basis of the negative imaginary part of the module's Levi-Heisenberg
  /// slice (G(l)_- for Levi modules, G_- for Heisenberg ones)
  std::vector<Adapted> negative_imaginary(int window) const;
  /// character value of an adapted element that decomposes into value
  /// directions (throws otherwise)
  Rat character_value(const Adapted& x) const;
  bool has_hl_dirs() const;
  bool has_hperp_dirs() const;

 private:
  enum class DirClass { Free, Value, NotIn };
  DirClass classify_dir(const Dir& d) const;
  Rat dir_value(const Dir& d) const;
  bool dir_less(const Dir& a, const Dir& b) const;
  std::vector<std::pair<Dir, Rat>> bracket_dirs(const Dir& a, const Dir& b) const;
  std::vector<std::pair<Dir, Rat>> decompose(const Adapted& x) const;
  void act_word(const Rat& coeff, std::vector<Dir> word, VSparse& out) const;
  std::vector<Dir> free_dirs(int window) const;
  void check_value_consistency() const;

  Variant variant_;
  HeisenbergCharacter heis_eta_;
  AffineCharacter affine_eta_;
  Rat charge_;
  std::vector<Rat> lambda_;  // values on the hperp basis (or on h for S = {})
  std::vector<Rat> chi_;     // Verma highest weight, values on the hl basis
  bool with_d_;

  mutable std::shared_mutex memo_mutex_;
  mutable std::map<std::pair<Dir, Dir>, std::vector<std::pair<Dir, Rat>>> bracket_memo_;
};

/// Evaluation module over the loop algebra of a rank-one Levi part:
/// tensor product of finite-dimensional sl2 representations with
/// x (x) t^n acting through evaluation at pairwise distinct nonzero points
/// weighted by point^n. The central element acts as zero.
class EvaluationModule : public InducingModule {
 public:
  EvaluationModule(const Parabolic& par, std::vector<long> mu, std::vector<Rat> points);

  Rat charge() const override { return Rat(0); }
  VIdx unit() const override { return VIdx(mu_.size(), 0); }
  VSparse act(const Adapted& x, const VIdx& w) const override;
  WeightLabel weight(const VIdx& w) const override;
  int length(const VIdx&) const override { return 0; }
  std::vector<VIdx> enumerate(int max_len, int window) const override;
  std::string render(const VIdx& w) const override;
  void validate(const VIdx& w) const override;
  std::string describe() const override;

  const std::vector<long>& highest_weights() const { return mu_; }
  const std::vector<Rat>& points() const { return points_; }

 private:
  int s_index_;  // the single simple root of the Levi part
  std::vector<long> mu_;
  std::vector<Rat> points_;
};

/// Tensor product of two modules over the same acting algebra, with the
/// Leibniz action x(v (x) w) = xv (x) w + v (x) xw.
class LeibnizTensorModule : public InducingModule {
 public:
  LeibnizTensorModule(std::shared_ptr<const InducingModule> left,
                      std::shared_ptr<const InducingModule> right);

  Rat charge() const override { return left_->charge() + right_->charge(); }
  VIdx unit() const override;
  VSparse act(const Adapted& x, const VIdx& w) const override;
  WeightLabel weight(const VIdx& w) const override;
  int length(const VIdx& w) const override;
  std::vector<VIdx> enumerate(int max_len, int window) const override;
  std::string render(const VIdx& w) const override;
  void validate(const VIdx& w) const override;
  std::string describe() const override;

 private:
  std::pair<VIdx, VIdx> split(const VIdx& w) const;
  std::shared_ptr<const InducingModule> left_, right_;
};

/// Mixed tensor module M (x) S: M over the real affine
/// part l_0 (optionally with its own d action), S a Whittaker module over
/// the Heisenberg complement, glued over the shared central charge, with
/// h_l_perp acting by lambda and d by the tensor-product rule.
class MixedTensorModule : public InducingModule {
 public:
  MixedTensorModule(const Parabolic& par, std::shared_ptr<const InducingModule> left,
                    std::shared_ptr<const InducingModule> right, std::vector<Rat> lambda,
                    bool left_has_d);

  Rat charge() const override { return left_->charge(); }
  VIdx unit() const override;
  VSparse act(const Adapted& x, const VIdx& w) const override;
  WeightLabel weight(const VIdx& w) const override;
  int length(const VIdx& w) const override;
  std::vector<VIdx> enumerate(int max_len, int window) const override;
  std::string render(const VIdx& w) const override;
  void validate(const VIdx& w) const override;
  std::string describe() const override;

 private:
  std::pair<VIdx, VIdx> split(const VIdx& w) const;
  std::shared_ptr<const InducingModule> left_, right_;
  std::vector<Rat> lambda_;
  bool left_has_d_;
};

/// Adjoins a free polynomial direction in d to a module over a
/// derivation-free algebra: basis d^k (x) w, with homogeneous elements
/// commuted past the d-powers by the binomial twist.
class FreeDerivationModule : public InducingModule {
 public:
  explicit FreeDerivationModule(std::shared_ptr<const InducingModule> inner);

  Rat charge() const override { return inner_->charge(); }
  VIdx unit() const override;
  VSparse act(const Adapted& x, const VIdx& w) const override;
  WeightLabel weight(const VIdx& w) const override;
  int length(const VIdx& w) const override;
  std::vector<VIdx> enumerate(int max_len, int window) const override;
  std::string render(const VIdx& w) const override;
  void validate(const VIdx& w) const override;
  std::string describe() const override;

 private:
  std::shared_ptr<const InducingModule> inner_;
};

// Builders for the concrete module families. The parabolic must outlive
// the module.
std::shared_ptr<InducingModule> make_imaginary_whittaker(const Parabolic& par,
                                                         HeisenbergCharacter eta, Rat a);
std::shared_ptr<InducingModule> make_extended_whittaker(const Parabolic& par,
                                                        HeisenbergCharacter eta, Rat a,
                                                        std::vector<Rat> lambda);
std::shared_ptr<InducingModule> make_universal_whittaker_levi(const Parabolic& par,
                                                              AffineCharacter eta, Rat a,
                                                              std::vector<Rat> lambda);
std::shared_ptr<InducingModule> make_whittaker_no_d(const Parabolic& par,
                                                    AffineCharacter eta, Rat a);
std::shared_ptr<InducingModule> make_verma(const Parabolic& par, std::vector<Rat> chi, Rat a);
std::shared_ptr<InducingModule> make_complement_whittaker(const Parabolic& par,
                                                          HeisenbergCharacter eta, Rat a,
                                                          bool with_d);
std::shared_ptr<InducingModule> make_evaluation(const Parabolic& par, std::vector<long> mu,
                                                std::vector<Rat> points);
std::shared_ptr<InducingModule> make_leibniz_tensor(std::shared_ptr<const InducingModule> left,
                                                    std::shared_ptr<const InducingModule> right);
std::shared_ptr<InducingModule> make_mixed_tensor(const Parabolic& par,
                                                  std::shared_ptr<const InducingModule> left,
                                                  std::shared_ptr<const InducingModule> right,
                                                  std::vector<Rat> lambda, bool left_has_d);
std::shared_ptr<InducingModule> make_free_derivation(std::shared_ptr<const InducingModule> inner);

}  // namespace affind
