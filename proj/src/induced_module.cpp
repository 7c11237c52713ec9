#include "affind/induced_module.hpp"

#include <algorithm>

namespace affind {

InducedModule::InducedModule(const Parabolic& par,
                             std::shared_ptr<const InducingModule> inducing)
    : par_(&par), inducing_(std::move(inducing)), order_(par) {
  if (&inducing_->parabolic() != par_)
    throw std::invalid_argument("inducing module built for a different parabolic");
  // the inducing module must carry an action of the full Levi factor
  const VIdx u = inducing_->unit();
  try {
    inducing_->act(Adapted::derivation(), u);
    inducing_->act(Adapted::central(), u);
    const int r = par.root_system().rank();
    for (int i = 0; i < r; ++i) {
      std::vector<Rat> ei(static_cast<size_t>(r), Rat(0));
      ei[i] = 1;
      inducing_->act(Adapted::cartan_vec(ei, 0), u);
      inducing_->act(Adapted::cartan_vec(ei, 1), u);
    }
  } catch (const NotInAlgebra& e) {
    throw std::invalid_argument(
        std::string("inducing module does not carry the full Levi action: ") + e.what());
  }
}

InducedModule::Vector InducedModule::unit_vector() const {
  Vector v;
  v.emplace(Key{PbwMonomial{}, inducing_->unit()}, Rat(1));
  return v;
}

void InducedModule::add(Vector& acc, const Key& k, const Rat& c) {
  if (is_zero(c)) return;
  auto it = acc.find(k);
  if (it == acc.end()) {
    acc.emplace(k, c);
  } else {
    it->second += c;
    if (is_zero(it->second)) acc.erase(it);
  }
}

void InducedModule::axpy(Vector& acc, const Rat& s, const Vector& x) {
  if (is_zero(s)) return;
  for (const auto& [k, c] : x) add(acc, k, s * c);
}

InducedModule::Vector InducedModule::act_basis(const BasisElem& x, const Key& k) const {
  std::vector<BasisElem> word;
  word.push_back(x);
  const std::vector<BasisElem> tail = k.first.expand();
  word.insert(word.end(), tail.begin(), tail.end());
  const EnvElement straightened = normal_order(par_->algebra(), order_, word);

  Vector out;
  for (const auto& [mono, coeff] : straightened.terms()) {
    // split the sorted monomial into radical_minus | levi | radical_plus
    size_t levi_start = mono.factors.size(), plus_start = mono.factors.size();
    for (size_t i = 0; i < mono.factors.size(); ++i) {
      const Block b = par_->classify(mono.factors[i].first);
      if (b != Block::RadicalMinus && levi_start == mono.factors.size()) levi_start = i;
      if (b == Block::RadicalPlus) {
        plus_start = i;
        break;
      }
    }
    if (plus_start < mono.factors.size()) continue;  // u_+ kills the inducing vector
    // apply levi factors to the inducing vector, rightmost first
    VSparse w;
    w.emplace(k.second, coeff);
    for (size_t i = mono.factors.size(); i-- > levi_start;) {
      const auto& [elem, exp] = mono.factors[i];
      const Adapted a = Adapted::from_basis(elem, par_->root_system().rank());
      for (int t = 0; t < exp && !w.empty(); ++t) w = inducing_->act_linear(a, w);
      if (w.empty()) break;
    }
    PbwMonomial stay;
    stay.factors.assign(mono.factors.begin(), mono.factors.begin() + levi_start);
    for (const auto& [vidx, c] : w) add(out, Key{stay, vidx}, c);
  }
  return out;
}

InducedModule::Vector InducedModule::act_elem(const BasisElem& x, const Vector& v) const {
  Vector out;
  for (const auto& [k, c] : v) {
    Vector part = act_basis(x, k);
    axpy(out, c, part);
  }
  return out;
}

InducedModule::Vector InducedModule::act(const LieElement& x, const Vector& v) const {
  if (!x.label().empty() && x.label() != par_->root_system().label())
    throw std::invalid_argument("act: mixed root systems");
  Vector out;
  for (const auto& [e, ce] : x.terms()) {
    Vector part = act_elem(e, v);
    axpy(out, ce, part);
  }
  return out;
}

InducedModule::Vector InducedModule::act_adapted(const Adapted& x, const Vector& v) const {
  if (x.kind != Adapted::Kind::Cartan) {
    BasisElem e = x.kind == Adapted::Kind::Root ? BasisElem::root(x.root_id, x.deg)
                  : x.kind == Adapted::Kind::C  ? BasisElem::central()
                                                : BasisElem::derivation();
    return act_elem(e, v);
  }
  Vector out;
  for (size_t i = 0; i < x.cartan.size(); ++i) {
    if (is_zero(x.cartan[i])) continue;
    Vector part = act_elem(BasisElem::cartan(static_cast<int>(i), x.deg), v);
    axpy(out, x.cartan[i], part);
  }
  return out;
}

InducedModule::Vector InducedModule::act_word(const std::vector<Adapted>& word,
                                              Vector v) const {
  for (size_t i = word.size(); i-- > 0;) v = act_adapted(word[i], v);
  return v;
}

WeightLabel InducedModule::weight_of(const Key& k) const {
  const RootSystem& rs = par_->root_system();
  WeightLabel lbl = inducing_->weight(k.second);
  for (const auto& [e, exp] : k.first.factors) {
    if (e.kind == ElemKind::RootVector) {
      const std::vector<long> c = rs.root_coeffs(e.idx);
      for (int j = 0; j < rs.rank(); ++j) {
        long val = 0;
        for (int i = 0; i < rs.rank(); ++i) val += c[i] * rs.cartan(i, j);
        lbl.hvals[j] += Rat(val * exp);
      }
    }
    if (e.kind == ElemKind::RootVector || e.kind == ElemKind::CartanLoop)
      lbl.delta += static_cast<long>(e.deg) * exp;
  }
  return lbl;
}

std::vector<std::pair<WeightLabel, InducedModule::Vector>>
InducedModule::weight_components(const Vector& v) const {
  std::map<WeightLabel, Vector> groups;
  for (const auto& [k, c] : v) groups[weight_of(k)].emplace(k, c);
  return {groups.begin(), groups.end()};
}

std::vector<long> InducedModule::outside_profile(const Vector& v) const {
  if (v.empty()) throw std::invalid_argument("outside_profile of the zero vector");
  const RootSystem& rs = par_->root_system();
  std::vector<long> profile;
  bool first = true;
  for (const auto& [k, c] : v) {
    std::vector<long> cur(static_cast<size_t>(rs.rank()), 0);
    for (const auto& [e, exp] : k.first.factors) {
      if (e.kind != ElemKind::RootVector) continue;
      const std::vector<long> rc = rs.root_coeffs(e.idx);
      for (int i = 0; i < rs.rank(); ++i) cur[i] += rc[i] * exp;
    }
    for (int s : par_->subset()) cur[s] = 0;
    if (first) {
      profile = cur;
      first = false;
    } else if (profile != cur) {
      throw std::invalid_argument("vector is not weight-homogeneous outside S");
    }
  }
  return profile;
}

long InducedModule::tau(const Vector& v) const {
  const std::vector<long> profile = outside_profile(v);
  long total = 0;
  for (long c : profile) total += std::abs(c);
  return total;
}

bool InducedModule::in_inducing_space(const Vector& v) const {
  for (const auto& [k, c] : v)
    if (!k.first.is_unit()) return false;
  return true;
}

VSparse InducedModule::inducing_component(const Vector& v) const {
  VSparse out;
  for (const auto& [k, c] : v)
    if (k.first.is_unit()) vsparse_add(out, k.second, c);
  return out;
}

std::vector<InducedModule::Key> InducedModule::enumerate_basis(int max_len,
                                                               int window) const {
  const RootSystem& rs = par_->root_system();
  std::vector<BasisElem> dirs;
  for (int id = 0; id < rs.num_roots(); ++id)
    for (int n = -window; n <= window; ++n) {
      const BasisElem e = BasisElem::root(id, n);
      if (par_->classify(e) == Block::RadicalMinus) dirs.push_back(e);
    }
  std::sort(dirs.begin(), dirs.end(),
            [this](const BasisElem& a, const BasisElem& b) { return order_.less(a, b); });

  std::vector<std::pair<PbwMonomial, int>> monos;
  std::vector<BasisElem> current;
  auto rec = [&](auto&& self, size_t start, int remaining) -> void {
    PbwMonomial m;
    for (const BasisElem& e : current) {
      if (!m.factors.empty() && m.factors.back().first == e)
        ++m.factors.back().second;
      else
        m.factors.emplace_back(e, 1);
    }
    monos.emplace_back(std::move(m), static_cast<int>(current.size()));
    if (remaining == 0) return;
    for (size_t i = start; i < dirs.size(); ++i) {
      current.push_back(dirs[i]);
      self(self, i, remaining - 1);
      current.pop_back();
    }
  };
  rec(rec, 0, max_len);

  std::vector<Key> out;
  for (const auto& [m, len] : monos)
    for (const VIdx& w : inducing_->enumerate(max_len - len, window))
      out.emplace_back(m, w);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string InducedModule::render_key(const Key& k) const {
  return render_monomial(par_->algebra(), k.first) + " . " + inducing_->render(k.second);
}

std::string InducedModule::render(const Vector& v) const {
  if (v.empty()) return "0";
  std::string out;
  for (const auto& [k, c] : v) {
    if (!out.empty()) out += " + ";
    out += rat_str(c) + "*(" + render_key(k) + ")";
  }
  return out;
}

}  // namespace affind
