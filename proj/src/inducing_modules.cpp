#include "affind/inducing_modules.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>

#include "affind/straighten.hpp"

namespace affind {

Adapted Adapted::from_basis(const BasisElem& e, int rank) {
  switch (e.kind) {
    case ElemKind::RootVector:
      return root(e.idx, e.deg);
    case ElemKind::CartanLoop: {
      std::vector<Rat> u(rank, Rat(0));
      u[e.idx] = 1;
      return cartan_vec(std::move(u), e.deg);
    }
    case ElemKind::Central:
      return central();
    case ElemKind::Derivation:
      return derivation();
  }
  throw std::logic_error("from_basis");
}

std::string render_adapted(const AffineAlgebra& alg, const Adapted& x) {
  switch (x.kind) {
    case Adapted::Kind::C:
      return "c";
    case Adapted::Kind::D:
      return "d";
    case Adapted::Kind::Root:
      return alg.render(BasisElem::root(x.root_id, x.deg));
    case Adapted::Kind::Cartan: {
      std::string out = "H[";
      for (size_t i = 0; i < x.cartan.size(); ++i)
        out += (i ? "," : "") + rat_str(x.cartan[i]);
      return out + "]@" + std::to_string(x.deg);
    }
  }
  throw std::logic_error("render_adapted");
}

Adapted parse_adapted(const AffineAlgebra& alg, const std::string& text) {
  if (text == "c") return Adapted::central();
  if (text == "d") return Adapted::derivation();
  if (text.rfind("H[", 0) == 0) {
    const size_t close = text.find(']');
    const size_t at = text.rfind('@');
    if (close == std::string::npos || at == std::string::npos)
      throw std::invalid_argument("bad adapted element: " + text);
    std::vector<Rat> u;
    std::stringstream body(text.substr(2, close - 2));
    std::string item;
    while (std::getline(body, item, ',')) u.push_back(rat_parse(item));
    return Adapted::cartan_vec(std::move(u), std::stoi(text.substr(at + 1)));
  }
  const BasisElem e = alg.parse_elem(text);
  return Adapted::from_basis(e, alg.root_system().rank());
}

void vsparse_add(VSparse& acc, const VIdx& k, const Rat& c) {
  if (is_zero(c)) return;
  auto it = acc.find(k);
  if (it == acc.end()) {
    acc.emplace(k, c);
  } else {
    it->second += c;
    if (is_zero(it->second)) acc.erase(it);
  }
}

void vsparse_axpy(VSparse& acc, const Rat& s, const VSparse& x) {
  if (is_zero(s)) return;
  for (const auto& [k, c] : x) vsparse_add(acc, k, s * c);
}

VSparse InducingModule::act_linear(const Adapted& x, const VSparse& v) const {
  VSparse out;
  for (const auto& [w, c] : v) {
    VSparse part = act(x, w);
    vsparse_axpy(out, c, part);
  }
  return out;
}

std::string HeisenbergCharacter::describe() const {
  std::string s = "eta(j,n): default " + rat_str(default_value);
  s += infinitely_many_nonzero()
           ? " (nonzero default rule: eta nonzero at every untabulated degree)"
           : " (zero default rule: eta supported on the table only)";
  if (!table.empty()) {
    s += ", table {";
    bool first = true;
    for (const auto& [key, v] : table) {
      if (!first) s += ", ";
      first = false;
      s += "(" + std::to_string(key.first + 1) + "," + std::to_string(key.second) +
           ")=" + rat_str(v);
    }
    s += "}";
  }
  return s;
}

std::string AffineCharacter::describe() const {
  std::string s = "eta on affine simple slots: e {";
  bool first = true;
  for (const auto& [i, v] : e_values) {
    if (!first) s += ", ";
    first = false;
    s += "a" + std::to_string(i + 1) + "=" + rat_str(v);
  }
  s += "}, f_theta {";
  for (size_t c = 0; c < f_theta_values.size(); ++c)
    s += (c ? ", " : "") + rat_str(f_theta_values[c]);
  return s + "}";
}

// ---------------------------------------------------------------------------
// CharInducedModule

namespace {
constexpr int KRoot = 0, KHl = 1, KHperp = 2, KC = 3, KD = 4;

void validate_heis_table(const HeisenbergCharacter& eta, size_t nfam) {
  for (const auto& [key, v] : eta.table) {
    if (key.second <= 0)
      throw std::invalid_argument("Whittaker character table entry at degree <= 0");
    if (key.first < 0 || key.first >= static_cast<int>(nfam))
      throw std::invalid_argument("Whittaker character table: bad direction index");
  }
}
}  // namespace

CharInducedModule::CharInducedModule(const Parabolic& par, Variant variant,
                                     HeisenbergCharacter heis_eta,
                                     AffineCharacter affine_eta, Rat a,
                                     std::vector<Rat> lambda, std::vector<Rat> chi,
                                     bool with_d)
    : InducingModule(par),
      variant_(variant),
      heis_eta_(std::move(heis_eta)),
      affine_eta_(std::move(affine_eta)),
      charge_(std::move(a)),
      lambda_(std::move(lambda)),
      chi_(std::move(chi)),
      with_d_(with_d) {
  check_value_consistency();
}

bool CharInducedModule::has_hl_dirs() const {
  switch (variant_) {
    case Variant::LeviWhittaker:
    case Variant::LeviWhittakerNoD:
    case Variant::VermaL0:
      return !par_->hl_basis().empty();
    default:
      return false;
  }
}

bool CharInducedModule::has_hperp_dirs() const {
  switch (variant_) {
    case Variant::HeisenbergWhittaker:
    case Variant::ExtendedWhittaker:
    case Variant::LeviWhittaker:
    case Variant::ComplementWhittaker:
      return !par_->hperp_basis().empty();
    default:
      return false;
  }
}

CharInducedModule::DirClass CharInducedModule::classify_dir(const Dir& d) const {
  const bool has_roots = variant_ == Variant::LeviWhittaker ||
                         variant_ == Variant::LeviWhittakerNoD ||
                         variant_ == Variant::VermaL0;
  switch (d.kind) {
    case KC:
      return DirClass::Value;
    case KD:
      switch (variant_) {
        case Variant::ExtendedWhittaker:
        case Variant::LeviWhittaker:
          return DirClass::Free;
        case Variant::VermaL0:
          return DirClass::Value;  // grading action, offset 0
        case Variant::ComplementWhittaker:
          return with_d_ ? DirClass::Free : DirClass::NotIn;
        default:
          return DirClass::NotIn;
      }
    case KRoot: {
      if (!has_roots || !par_->levi_root(d.idx)) return DirClass::NotIn;
      return par_->affine_positive(d.idx, d.deg) ? DirClass::Value : DirClass::Free;
    }
    case KHl: {
      if (!has_roots) return DirClass::NotIn;  // hl loops live with the real part
      if (d.deg < 0) return DirClass::Free;
      if (d.deg > 0) return DirClass::Value;
      return variant_ == Variant::VermaL0 ? DirClass::Value : DirClass::Free;
    }
    case KHperp: {
      switch (variant_) {
        case Variant::HeisenbergWhittaker:
          return d.deg == 0 ? DirClass::NotIn
                            : (d.deg < 0 ? DirClass::Free : DirClass::Value);
        case Variant::ExtendedWhittaker:
          return d.deg < 0 ? DirClass::Free : DirClass::Value;  // deg 0: lambda
        case Variant::LeviWhittaker:
          return d.deg < 0 ? DirClass::Free : DirClass::Value;  // deg 0: lambda
        case Variant::ComplementWhittaker:
          return d.deg == 0 ? DirClass::NotIn
                            : (d.deg < 0 ? DirClass::Free : DirClass::Value);
        default:
          return DirClass::NotIn;
      }
    }
  }
  return DirClass::NotIn;
}

Rat CharInducedModule::dir_value(const Dir& d) const {
  switch (d.kind) {
    case KC:
      return charge_;
    case KD:
      return Rat(0);  // Verma grading offset
    case KRoot: {
      // affine character: nonzero on simple slots only
      const RootSystem& rs = par_->root_system();
      if (d.deg == 0 && rs.is_positive_id(d.idx)) {
        const std::vector<long> c = rs.root_coeffs(d.idx);
        long height = 0;
        int simple = -1;
        for (size_t i = 0; i < c.size(); ++i) {
          height += c[i];
          if (c[i] == 1) simple = static_cast<int>(i);
        }
        if (height == 1) {
          auto it = affine_eta_.e_values.find(simple);
          if (it != affine_eta_.e_values.end()) return it->second;
        }
        return Rat(0);
      }
      if (d.deg == 1 && !rs.is_positive_id(d.idx)) {
        const auto& comps = par_->s_components();
        for (size_t ci = 0; ci < comps.size(); ++ci) {
          if (rs.negate_id(par_->component_theta_id(comps[ci])) == d.idx)
            return ci < affine_eta_.f_theta_values.size() ? affine_eta_.f_theta_values[ci]
                                                          : Rat(0);
        }
      }
      return Rat(0);
    }
    case KHl:
      if (d.deg == 0 && variant_ == Variant::VermaL0) return chi_[d.idx];
      return Rat(0);
    case KHperp:
      if (d.deg == 0) return lambda_.empty() ? Rat(0) : lambda_[d.idx];
      return heis_eta_.value(d.idx, d.deg);
  }
  return Rat(0);
}

bool CharInducedModule::dir_less(const Dir& a, const Dir& b) const {
  const int ca = classify_dir(a) == DirClass::Free ? 0 : 1;
  const int cb = classify_dir(b) == DirClass::Free ? 0 : 1;
  if (ca != cb) return ca < cb;
  return a < b;
}

std::vector<std::pair<CharInducedModule::Dir, Rat>> CharInducedModule::bracket_dirs(
    const Dir& a, const Dir& b) const {
  {
    std::shared_lock lock(memo_mutex_);
    auto it = bracket_memo_.find({a, b});
    if (it != bracket_memo_.end()) return it->second;
  }
  std::vector<std::pair<Dir, Rat>> out;
  auto push = [&](const Dir& d, const Rat& c) {
    if (!is_zero(c)) out.emplace_back(d, c);
  };
  if (a.kind == KC || b.kind == KC) {
    // central
  } else if (a.kind == KD || b.kind == KD) {
    if (a.kind == KD && b.kind != KD) push(b, Rat(b.deg));
    if (b.kind == KD && a.kind != KD) push(a, Rat(-a.deg));
  } else if ((a.kind == KHl || a.kind == KHperp) && (b.kind == KHl || b.kind == KHperp)) {
    if (a.deg + b.deg == 0 && a.kind == b.kind) {
      const auto& gram = a.kind == KHl ? par_->gram_hl() : par_->gram_hperp();
      push(Dir{KC, 0, 0}, Rat(a.deg) * gram[a.idx][b.idx]);
    }
    // cross hl/hperp pairs are orthogonal under the form
  } else if (a.kind == KRoot && b.kind == KRoot) {
    const LieElement br = par_->algebra().bracket_basis(
        BasisElem::root(a.idx, a.deg), BasisElem::root(b.idx, b.deg));
    for (const auto& [e, c] : br.terms()) {
      switch (e.kind) {
        case ElemKind::RootVector:
          push(Dir{KRoot, e.idx, e.deg}, c);
          break;
        case ElemKind::CartanLoop: {
          const std::vector<Rat>& coords = par_->coroot_in_adapted(e.idx);
          const size_t nhl = par_->hl_basis().size();
          for (size_t j = 0; j < coords.size(); ++j) {
            if (is_zero(coords[j])) continue;
            // brackets of Levi roots stay in the h_l span
            if (j >= nhl)
              throw std::logic_error("root bracket escaped the h_l span");
            push(Dir{KHl, static_cast<int>(j), e.deg}, c * coords[j]);
          }
          break;
        }
        case ElemKind::Central:
          push(Dir{KC, 0, 0}, c);
          break;
        case ElemKind::Derivation:
          throw std::logic_error("derivation in a loop bracket");
      }
    }
  } else {
    // Cartan-family against a root vector: [u (x) t^m, x_phi (x) t^n] = phi(u) x_phi (x) t^{m+n}
    const bool a_is_cartan = a.kind == KHl || a.kind == KHperp;
    const Dir& cart = a_is_cartan ? a : b;
    const Dir& root = a_is_cartan ? b : a;
    const auto& basis = cart.kind == KHl ? par_->hl_basis() : par_->hperp_basis();
    Rat c = par_->root_eval(root.idx, basis[cart.idx]);
    if (!a_is_cartan) c = -c;
    push(Dir{KRoot, root.idx, root.deg + cart.deg}, c);
  }
  {
    std::unique_lock lock(memo_mutex_);
    bracket_memo_.emplace(std::make_pair(a, b), out);
  }
  return out;
}

std::vector<std::pair<CharInducedModule::Dir, Rat>> CharInducedModule::decompose(
    const Adapted& x) const {
  std::vector<std::pair<Dir, Rat>> out;
  switch (x.kind) {
    case Adapted::Kind::C:
      out.emplace_back(Dir{KC, 0, 0}, Rat(1));
      break;
    case Adapted::Kind::D: {
      const Dir d{KD, 0, 0};
      if (classify_dir(d) == DirClass::NotIn)
        throw NotInAlgebra("d is not in the acting algebra of " + describe());
      out.emplace_back(d, Rat(1));
      break;
    }
    case Adapted::Kind::Root: {
      const Dir d{KRoot, x.root_id, x.deg};
      if (classify_dir(d) == DirClass::NotIn)
        throw NotInAlgebra("root vector not in the acting algebra of " + describe());
      out.emplace_back(d, Rat(1));
      break;
    }
    case Adapted::Kind::Cartan: {
      const int r = par_->root_system().rank();
      if (static_cast<int>(x.cartan.size()) != r)
        throw std::invalid_argument("Cartan vector has wrong rank");
      const size_t nhl = par_->hl_basis().size();
      std::vector<Rat> coords(static_cast<size_t>(r), Rat(0));
      for (int i = 0; i < r; ++i) {
        if (is_zero(x.cartan[i])) continue;
        const std::vector<Rat>& ci = par_->coroot_in_adapted(i);
        for (int j = 0; j < r; ++j) coords[j] += x.cartan[i] * ci[j];
      }
      for (size_t j = 0; j < coords.size(); ++j) {
        if (is_zero(coords[j])) continue;
        const Dir d{j < nhl ? KHl : KHperp,
                    static_cast<int>(j < nhl ? j : j - nhl), x.deg};
        if (classify_dir(d) == DirClass::NotIn)
          throw NotInAlgebra("Cartan loop not in the acting algebra of " + describe());
        out.emplace_back(d, coords[j]);
      }
      break;
    }
  }
  return out;
}

namespace {
VIdx compress_dirs(const std::vector<CharInducedModule::Dir>& word) {
  VIdx code;
  for (size_t i = 0; i < word.size(); ++i) {
    if (code.size() >= 4 && code[code.size() - 4] == word[i].kind &&
        code[code.size() - 3] == word[i].idx && code[code.size() - 2] == word[i].deg) {
      ++code.back();
    } else {
      code.insert(code.end(), {word[i].kind, word[i].idx, word[i].deg, 1});
    }
  }
  return code;
}

std::vector<CharInducedModule::Dir> expand_code(const VIdx& code) {
  std::vector<CharInducedModule::Dir> word;
  for (size_t i = 0; i + 3 < code.size(); i += 4)
    for (int k = 0; k < code[i + 3]; ++k)
      word.push_back({code[i], code[i + 1], code[i + 2]});
  return word;
}
}  // namespace

void CharInducedModule::act_word(const Rat& coeff, std::vector<Dir> word,
                                 VSparse& out) const {
  auto less = [this](const Dir& a, const Dir& b) { return dir_less(a, b); };
  auto bracket = [this](const Dir& a, const Dir& b) { return bracket_dirs(a, b); };
  auto sink = [&](const Rat& c, const std::vector<Dir>& w) {
    Rat total = c;
    size_t cut = w.size();
    for (size_t i = w.size(); i-- > 0;) {
      if (classify_dir(w[i]) == DirClass::Free) break;
      cut = i;
    }
    for (size_t i = cut; i < w.size(); ++i) {
      total *= dir_value(w[i]);
      if (is_zero(total)) return;
    }
    vsparse_add(out, compress_dirs({w.begin(), w.begin() + cut}), total);
  };
  straighten_words<Dir>({{coeff, std::move(word)}}, less, bracket, sink);
}

VSparse CharInducedModule::act(const Adapted& x, const VIdx& w) const {
  VSparse out;
  for (const auto& [dir, c] : decompose(x)) {
    std::vector<Dir> word;
    word.push_back(dir);
    const std::vector<Dir> tail = expand_code(w);
    word.insert(word.end(), tail.begin(), tail.end());
    act_word(c, std::move(word), out);
  }
  return out;
}

WeightLabel CharInducedModule::weight(const VIdx& w) const {
  const RootSystem& rs = par_->root_system();
  WeightLabel lbl;
  lbl.hvals.assign(static_cast<size_t>(rs.rank()), Rat(0));
  for (size_t i = 0; i + 3 < w.size(); i += 4) {
    const int kind = w[i], idx = w[i + 1], deg = w[i + 2], exp = w[i + 3];
    if (kind == KRoot) {
      const std::vector<long> c = rs.root_coeffs(idx);
      for (int j = 0; j < rs.rank(); ++j) {
        long val = 0;
        for (int t = 0; t < rs.rank(); ++t) val += c[t] * rs.cartan(t, j);
        lbl.hvals[j] += Rat(val * exp);
      }
    }
    if (kind != KD) lbl.delta += static_cast<long>(deg) * exp;
  }
  return lbl;
}

int CharInducedModule::length(const VIdx& w) const {
  int n = 0;
  for (size_t i = 3; i < w.size(); i += 4) n += w[i];
  return n;
}

std::vector<CharInducedModule::Dir> CharInducedModule::free_dirs(int window) const {
  std::vector<Dir> dirs;
  const RootSystem& rs = par_->root_system();
  for (int id = 0; id < rs.num_roots(); ++id)
    for (int n = -window; n <= 0; ++n) {
      const Dir d{KRoot, id, n};
      if (classify_dir(d) == DirClass::Free) dirs.push_back(d);
    }
  for (size_t j = 0; j < par_->hl_basis().size(); ++j)
    for (int n = -window; n <= 0; ++n) {
      const Dir d{KHl, static_cast<int>(j), n};
      if (classify_dir(d) == DirClass::Free) dirs.push_back(d);
    }
  for (size_t j = 0; j < par_->hperp_basis().size(); ++j)
    for (int n = -window; n < 0; ++n) {
      const Dir d{KHperp, static_cast<int>(j), n};
      if (classify_dir(d) == DirClass::Free) dirs.push_back(d);
    }
  if (classify_dir(Dir{KD, 0, 0}) == DirClass::Free) dirs.push_back(Dir{KD, 0, 0});
  std::sort(dirs.begin(), dirs.end(),
            [this](const Dir& a, const Dir& b) { return dir_less(a, b); });
  return dirs;
}

std::vector<VIdx> CharInducedModule::enumerate(int max_len, int window) const {
  const std::vector<Dir> dirs = free_dirs(window);
  std::vector<VIdx> out;
  std::vector<Dir> current;
  // multisets in nondecreasing dir order
  auto rec = [&](auto&& self, size_t start, int remaining) -> void {
    out.push_back(compress_dirs(current));
    if (remaining == 0) return;
    for (size_t i = start; i < dirs.size(); ++i) {
      current.push_back(dirs[i]);
      self(self, i, remaining - 1);
      current.pop_back();
    }
  };
  rec(rec, 0, max_len);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string CharInducedModule::render(const VIdx& w) const {
  if (w.empty()) return "1";
  const AffineAlgebra& alg = par_->algebra();
  std::string out;
  for (size_t i = 0; i + 3 < w.size(); i += 4) {
    if (!out.empty()) out += "*";
    const int kind = w[i], idx = w[i + 1], deg = w[i + 2], exp = w[i + 3];
    switch (kind) {
      case KRoot:
        out += alg.render(BasisElem::root(idx, deg));
        break;
      case KHl:
        out += "hl" + std::to_string(idx + 1) + "@" + std::to_string(deg);
        break;
      case KHperp:
        out += "hp" + std::to_string(idx + 1) + "@" + std::to_string(deg);
        break;
      case KD:
        out += "d";
        break;
      default:
        out += "?";
    }
    if (exp != 1) out += "^" + std::to_string(exp);
  }
  return out;
}

void CharInducedModule::validate(const VIdx& w) const {
  if (w.size() % 4 != 0) throw std::invalid_argument("bad basis code length");
  std::vector<Dir> word = expand_code(w);
  for (size_t i = 0; i + 3 < w.size(); i += 4) {
    if (w[i + 3] <= 0) throw std::invalid_argument("bad exponent in basis code");
    const Dir d{w[i], w[i + 1], w[i + 2]};
    if (classify_dir(d) != DirClass::Free)
      throw std::invalid_argument("basis code contains a non-free direction");
  }
  for (size_t i = 0; i + 1 < word.size(); ++i)
    if (dir_less(word[i + 1], word[i]))
      throw std::invalid_argument("basis code not normal-ordered");
}

std::string CharInducedModule::describe() const {
  std::string base;
  switch (variant_) {
    case Variant::HeisenbergWhittaker:
      base = "Whittaker module over the Heisenberg subalgebra";
      break;
    case Variant::ExtendedWhittaker:
      base = "Whittaker module over the Heisenberg subalgebra extended by d";
      break;
    case Variant::LeviWhittaker:
      base = "universal Whittaker module over the Levi factor";
      break;
    case Variant::LeviWhittakerNoD:
      base = "universal Whittaker module over the derivation-free Levi part";
      break;
    case Variant::VermaL0:
      base = "Verma module over the real affine part of the Levi";
      break;
    case Variant::ComplementWhittaker:
      base = with_d_ ? "Whittaker module over the Heisenberg complement with d"
                     : "Whittaker module over the Heisenberg complement";
      break;
  }
  base += ", charge " + rat_str(charge_);
  const bool affine = variant_ == Variant::LeviWhittaker ||
                      variant_ == Variant::LeviWhittakerNoD;
  if (affine) base += ", " + affine_eta_.describe();
  if (variant_ == Variant::HeisenbergWhittaker ||
      variant_ == Variant::ExtendedWhittaker ||
      variant_ == Variant::ComplementWhittaker)
    base += ", " + heis_eta_.describe();
  if (variant_ == Variant::VermaL0) {
    base += ", highest weight (";
    for (size_t i = 0; i < chi_.size(); ++i) base += (i ? "," : "") + rat_str(chi_[i]);
    base += ")";
  }
  if (!lambda_.empty()) {
    base += ", lambda (";
    for (size_t i = 0; i < lambda_.size(); ++i)
      base += (i ? "," : "") + rat_str(lambda_[i]);
    base += ")";
  }
  return base;
}

std::vector<std::pair<Adapted, Rat>> CharInducedModule::positive_generators(
    int window) const {
  std::vector<std::pair<Adapted, Rat>> out;
  const RootSystem& rs = par_->root_system();
  for (int id = 0; id < rs.num_roots(); ++id)
    for (int n = 0; n <= window; ++n) {
      const Dir d{KRoot, id, n};
      if (classify_dir(d) == DirClass::Value)
        out.emplace_back(Adapted::root(id, n), dir_value(d));
    }
  for (int n = 1; n <= window; ++n) {
    for (size_t j = 0; j < par_->hl_basis().size(); ++j) {
      const Dir d{KHl, static_cast<int>(j), n};
      if (classify_dir(d) == DirClass::Value)
        out.emplace_back(Adapted::cartan_vec(par_->hl_basis()[j], n), dir_value(d));
    }
    for (size_t j = 0; j < par_->hperp_basis().size(); ++j) {
      const Dir d{KHperp, static_cast<int>(j), n};
      if (classify_dir(d) == DirClass::Value)
        out.emplace_back(Adapted::cartan_vec(par_->hperp_basis()[j], n), dir_value(d));
    }
  }
  return out;
}

std::vector<Adapted> CharInducedModule::negative_imaginary(int window) const {
  std::vector<Adapted> out;
  for (int n = -1; n >= -window; --n) {
    if (has_hl_dirs())
      for (size_t j = 0; j < par_->hl_basis().size(); ++j)
        out.push_back(Adapted::cartan_vec(par_->hl_basis()[j], n));
    if (!has_hl_dirs() && has_hperp_dirs())
      for (size_t j = 0; j < par_->hperp_basis().size(); ++j)
        out.push_back(Adapted::cartan_vec(par_->hperp_basis()[j], n));
  }
  return out;
}

Rat CharInducedModule::character_value(const Adapted& x) const {
  Rat acc(0);
  for (const auto& [dir, c] : decompose(x)) {
    if (classify_dir(dir) != DirClass::Value)
      throw std::invalid_argument("element is not in the character part");
    acc += c * dir_value(dir);
  }
  return acc;
}

void CharInducedModule::check_value_consistency() const {
  // the value assignment must kill brackets of value directions, i.e. define
  // a one-dimensional representation of the annihilating part
  std::vector<Dir> value_dirs;
  const RootSystem& rs = par_->root_system();
  const int w = 3;
  for (int id = 0; id < rs.num_roots(); ++id)
    for (int n = -w; n <= w; ++n)
      if (classify_dir(Dir{KRoot, id, n}) == DirClass::Value)
        value_dirs.push_back(Dir{KRoot, id, n});
  for (int n = -w; n <= w; ++n) {
    for (size_t j = 0; j < par_->hl_basis().size(); ++j)
      if (classify_dir(Dir{KHl, static_cast<int>(j), n}) == DirClass::Value)
        value_dirs.push_back(Dir{KHl, static_cast<int>(j), n});
    for (size_t j = 0; j < par_->hperp_basis().size(); ++j)
      if (classify_dir(Dir{KHperp, static_cast<int>(j), n}) == DirClass::Value)
        value_dirs.push_back(Dir{KHperp, static_cast<int>(j), n});
  }
  if (classify_dir(Dir{KD, 0, 0}) == DirClass::Value) value_dirs.push_back(Dir{KD, 0, 0});
  for (const Dir& a : value_dirs)
    for (const Dir& b : value_dirs) {
      Rat acc(0);
      for (const auto& [d, c] : bracket_dirs(a, b)) {
        if (classify_dir(d) == DirClass::Free)
          throw std::invalid_argument(
              "character part is not a subalgebra: bracket escapes to a free direction");
        acc += c * dir_value(d);
      }
      if (!is_zero(acc))
        throw std::invalid_argument(
            "character does not vanish on brackets of positive generators");
    }
}

// ---------------------------------------------------------------------------
// EvaluationModule

EvaluationModule::EvaluationModule(const Parabolic& par, std::vector<long> mu,
                                   std::vector<Rat> points)
    : InducingModule(par), mu_(std::move(mu)), points_(std::move(points)) {
  if (par.subset().size() != 1)
    throw std::invalid_argument(
        "evaluation modules are supported for a rank-one Levi part only");
  s_index_ = par.subset()[0];
  if (mu_.empty() || mu_.size() != points_.size())
    throw std::invalid_argument("evaluation module: need matching mu and point lists");
  bool nonzero = false;
  for (long k : mu_) {
    if (k < 0) throw std::invalid_argument("evaluation weights must be dominant integral");
    if (k > 0) nonzero = true;
  }
  if (!nonzero) throw std::invalid_argument("evaluation weight vector must be nonzero");
  for (size_t i = 0; i < points_.size(); ++i) {
    if (is_zero(points_[i]))
      throw std::invalid_argument("evaluation points must be nonzero");
    for (size_t j = i + 1; j < points_.size(); ++j)
      if (points_[i] == points_[j])
        throw std::invalid_argument("evaluation points must be pairwise distinct");
  }
}

namespace {
Rat rat_pow(const Rat& a, int n) {
  Rat out(1);
  Rat base = n >= 0 ? a : Rat(1) / a;
  for (int k = std::abs(n); k > 0; --k) out *= base;
  return out;
}
}  // namespace

VSparse EvaluationModule::act(const Adapted& x, const VIdx& w) const {
  VSparse out;
  if (x.kind == Adapted::Kind::C) return out;  // charge 0
  if (x.kind == Adapted::Kind::D)
    throw NotInAlgebra("d does not act on an evaluation module");
  const RootSystem& rs = par_->root_system();
  if (x.kind == Adapted::Kind::Root) {
    const std::vector<long> c = rs.root_coeffs(x.root_id);
    int sign = 0;
    for (size_t i = 0; i < c.size(); ++i) {
      if (c[i] == 0) continue;
      if (static_cast<int>(i) != s_index_ || std::abs(c[i]) != 1)
        throw NotInAlgebra("root vector outside the rank-one Levi part");
      sign = c[i] > 0 ? 1 : -1;
    }
    for (size_t slot = 0; slot < mu_.size(); ++slot) {
      const long k = mu_[slot], j = w[slot];
      VIdx nw = w;
      Rat coeff;
      if (sign > 0) {  // e: v_j -> j(k-j+1) v_{j-1}
        if (j == 0) continue;
        nw[slot] = static_cast<int>(j - 1);
        coeff = Rat(j) * Rat(k - j + 1);
      } else {  // f: v_j -> v_{j+1}
        if (j >= k) continue;
        nw[slot] = static_cast<int>(j + 1);
        coeff = 1;
      }
      vsparse_add(out, nw, coeff * rat_pow(points_[slot], x.deg));
    }
    return out;
  }
  // Cartan vector: must be a multiple of the Levi coroot
  for (int i = 0; i < rs.rank(); ++i)
    if (i != s_index_ && !is_zero(x.cartan[i]))
      throw NotInAlgebra("Cartan loop outside the rank-one Levi part");
  const Rat rho = x.cartan[s_index_];
  Rat total(0);
  for (size_t slot = 0; slot < mu_.size(); ++slot)
    total += rho * Rat(mu_[slot] - 2 * w[slot]) * rat_pow(points_[slot], x.deg);
  vsparse_add(out, w, total);
  return out;
}

WeightLabel EvaluationModule::weight(const VIdx& w) const {
  Rat on_hs(0);
  for (size_t slot = 0; slot < mu_.size(); ++slot) on_hs += Rat(mu_[slot] - 2 * w[slot]);
  // extend by zero on the orthogonal complement
  std::vector<Rat> on_hl(par_->hl_basis().size(), Rat(0));
  std::vector<Rat> on_hperp(par_->hperp_basis().size(), Rat(0));
  for (size_t j = 0; j < par_->hl_basis().size(); ++j) {
    Rat v(0);
    for (int i = 0; i < par_->root_system().rank(); ++i)
      if (i == s_index_) v += par_->hl_basis()[j][i] * on_hs;
    on_hl[j] = v;
  }
  WeightLabel lbl;
  lbl.hvals = par_->functional_from_adapted(on_hl, on_hperp);
  lbl.delta = 0;
  return lbl;
}

std::vector<VIdx> EvaluationModule::enumerate(int, int) const {
  std::vector<VIdx> out;
  VIdx cur(mu_.size(), 0);
  auto rec = [&](auto&& self, size_t slot) -> void {
    if (slot == mu_.size()) {
      out.push_back(cur);
      return;
    }
    for (long j = 0; j <= mu_[slot]; ++j) {
      cur[slot] = static_cast<int>(j);
      self(self, slot + 1);
    }
  };
  rec(rec, 0);
  return out;
}

std::string EvaluationModule::render(const VIdx& w) const {
  std::string out = "E(";
  for (size_t i = 0; i < w.size(); ++i) out += (i ? "," : "") + std::to_string(w[i]);
  return out + ")";
}

void EvaluationModule::validate(const VIdx& w) const {
  if (w.size() != mu_.size()) throw std::invalid_argument("bad evaluation code");
  for (size_t i = 0; i < w.size(); ++i)
    if (w[i] < 0 || w[i] > mu_[i]) throw std::invalid_argument("bad evaluation index");
}

std::string EvaluationModule::describe() const {
  std::string out = "evaluation module, mu (";
  for (size_t i = 0; i < mu_.size(); ++i) out += (i ? "," : "") + std::to_string(mu_[i]);
  out += "), points (";
  for (size_t i = 0; i < points_.size(); ++i) out += (i ? "," : "") + rat_str(points_[i]);
  return out + ")";
}

// ---------------------------------------------------------------------------
// LeibnizTensorModule

LeibnizTensorModule::LeibnizTensorModule(std::shared_ptr<const InducingModule> left,
                                         std::shared_ptr<const InducingModule> right)
    : InducingModule(left->parabolic()), left_(std::move(left)), right_(std::move(right)) {
  if (&left_->parabolic() != &right_->parabolic())
    throw std::invalid_argument("tensor factors over different parabolics");
}

std::pair<VIdx, VIdx> LeibnizTensorModule::split(const VIdx& w) const {
  if (w.empty() || w[0] < 0 || static_cast<size_t>(w[0]) >= w.size())
    throw std::invalid_argument("bad tensor code");
  const size_t n = static_cast<size_t>(w[0]);
  return {VIdx(w.begin() + 1, w.begin() + 1 + n), VIdx(w.begin() + 1 + n, w.end())};
}

static VIdx join_pair(const VIdx& l, const VIdx& r) {
  VIdx out;
  out.reserve(1 + l.size() + r.size());
  out.push_back(static_cast<int>(l.size()));
  out.insert(out.end(), l.begin(), l.end());
  out.insert(out.end(), r.begin(), r.end());
  return out;
}

VIdx LeibnizTensorModule::unit() const { return join_pair(left_->unit(), right_->unit()); }

VSparse LeibnizTensorModule::act(const Adapted& x, const VIdx& w) const {
  const auto [l, r] = split(w);
  VSparse out;
  for (const auto& [lw, c] : left_->act(x, l)) vsparse_add(out, join_pair(lw, r), c);
  for (const auto& [rw, c] : right_->act(x, r)) vsparse_add(out, join_pair(l, rw), c);
  return out;
}

WeightLabel LeibnizTensorModule::weight(const VIdx& w) const {
  const auto [l, r] = split(w);
  WeightLabel a = left_->weight(l), b = right_->weight(r);
  for (size_t i = 0; i < a.hvals.size(); ++i) a.hvals[i] += b.hvals[i];
  a.delta += b.delta;
  return a;
}

int LeibnizTensorModule::length(const VIdx& w) const {
  const auto [l, r] = split(w);
  return left_->length(l) + right_->length(r);
}

std::vector<VIdx> LeibnizTensorModule::enumerate(int max_len, int window) const {
  std::vector<VIdx> out;
  for (const VIdx& l : left_->enumerate(max_len, window)) {
    const int rest = max_len - left_->length(l);
    if (rest < 0) continue;
    for (const VIdx& r : right_->enumerate(rest, window)) out.push_back(join_pair(l, r));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string LeibnizTensorModule::render(const VIdx& w) const {
  const auto [l, r] = split(w);
  return "(" + left_->render(l) + " (x) " + right_->render(r) + ")";
}

void LeibnizTensorModule::validate(const VIdx& w) const {
  const auto [l, r] = split(w);
  left_->validate(l);
  right_->validate(r);
}

std::string LeibnizTensorModule::describe() const {
  return "tensor product [" + left_->describe() + "] (x) [" + right_->describe() + "]";
}

// ---------------------------------------------------------------------------
// MixedTensorModule

MixedTensorModule::MixedTensorModule(const Parabolic& par,
                                     std::shared_ptr<const InducingModule> left,
                                     std::shared_ptr<const InducingModule> right,
                                     std::vector<Rat> lambda, bool left_has_d)
    : InducingModule(par),
      left_(std::move(left)),
      right_(std::move(right)),
      lambda_(std::move(lambda)),
      left_has_d_(left_has_d) {
  if (left_->charge() != right_->charge())
    throw std::invalid_argument("mixed tensor: central charges of the factors disagree");
  if (lambda_.size() != par.hperp_basis().size())
    throw std::invalid_argument("mixed tensor: lambda has wrong dimension");
}

std::pair<VIdx, VIdx> MixedTensorModule::split(const VIdx& w) const {
  if (w.empty() || w[0] < 0 || static_cast<size_t>(w[0]) >= w.size())
    throw std::invalid_argument("bad tensor code");
  const size_t n = static_cast<size_t>(w[0]);
  return {VIdx(w.begin() + 1, w.begin() + 1 + n), VIdx(w.begin() + 1 + n, w.end())};
}

VIdx MixedTensorModule::unit() const { return join_pair(left_->unit(), right_->unit()); }

VSparse MixedTensorModule::act(const Adapted& x, const VIdx& w) const {
  const auto [l, r] = split(w);
  VSparse out;
  auto act_left = [&](const Adapted& y) {
    for (const auto& [lw, c] : left_->act(y, l)) vsparse_add(out, join_pair(lw, r), c);
  };
  auto act_right = [&](const Adapted& y) {
    for (const auto& [rw, c] : right_->act(y, r)) vsparse_add(out, join_pair(l, rw), c);
  };
  switch (x.kind) {
    case Adapted::Kind::C:
      vsparse_add(out, w, charge());
      break;
    case Adapted::Kind::D:
      if (!left_has_d_)
        throw NotInAlgebra("d does not act on this mixed tensor (wrap in the free d)");
      act_left(x);
      act_right(x);
      break;
    case Adapted::Kind::Root:
      act_left(x);
      break;
    case Adapted::Kind::Cartan: {
      const int rank = par_->root_system().rank();
      const size_t nhl = par_->hl_basis().size();
      std::vector<Rat> coords(static_cast<size_t>(rank), Rat(0));
      for (int i = 0; i < rank; ++i) {
        if (is_zero(x.cartan[i])) continue;
        const std::vector<Rat>& ci = par_->coroot_in_adapted(i);
        for (int j = 0; j < rank; ++j) coords[j] += x.cartan[i] * ci[j];
      }
      std::vector<Rat> u_l(static_cast<size_t>(rank), Rat(0));
      std::vector<Rat> u_p(static_cast<size_t>(rank), Rat(0));
      bool has_l = false, has_p = false;
      for (size_t j = 0; j < coords.size(); ++j) {
        if (is_zero(coords[j])) continue;
        const std::vector<Rat>& vec =
            j < nhl ? par_->hl_basis()[j] : par_->hperp_basis()[j - nhl];
        for (int i = 0; i < rank; ++i)
          (j < nhl ? u_l[i] : u_p[i]) += coords[j] * vec[i];
        (j < nhl ? has_l : has_p) = true;
      }
      if (has_l) act_left(Adapted::cartan_vec(u_l, x.deg));
      if (has_p) {
        if (x.deg == 0) {
          // h_l_perp acts by lambda
          Rat lam(0);
          for (size_t j = 0; j < lambda_.size(); ++j) lam += coords[nhl + j] * lambda_[j];
          vsparse_add(out, w, lam);
        } else {
          act_right(Adapted::cartan_vec(u_p, x.deg));
        }
      }
      break;
    }
  }
  return out;
}

WeightLabel MixedTensorModule::weight(const VIdx& w) const {
  const auto [l, r] = split(w);
  WeightLabel a = left_->weight(l), b = right_->weight(r);
  for (size_t i = 0; i < a.hvals.size(); ++i) a.hvals[i] += b.hvals[i];
  a.delta += b.delta;
  return a;
}

int MixedTensorModule::length(const VIdx& w) const {
  const auto [l, r] = split(w);
  return left_->length(l) + right_->length(r);
}

std::vector<VIdx> MixedTensorModule::enumerate(int max_len, int window) const {
  std::vector<VIdx> out;
  for (const VIdx& l : left_->enumerate(max_len, window)) {
    const int rest = max_len - left_->length(l);
    if (rest < 0) continue;
    for (const VIdx& r : right_->enumerate(rest, window)) out.push_back(join_pair(l, r));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string MixedTensorModule::render(const VIdx& w) const {
  const auto [l, r] = split(w);
  return "(" + left_->render(l) + " (x) " + right_->render(r) + ")";
}

void MixedTensorModule::validate(const VIdx& w) const {
  const auto [l, r] = split(w);
  left_->validate(l);
  right_->validate(r);
}

std::string MixedTensorModule::describe() const {
  std::string out =
      "mixed tensor [" + left_->describe() + "] (x) [" + right_->describe() + "], lambda (";
  for (size_t i = 0; i < lambda_.size(); ++i) out += (i ? "," : "") + rat_str(lambda_[i]);
  return out + ")";
}

// ---------------------------------------------------------------------------
// FreeDerivationModule

FreeDerivationModule::FreeDerivationModule(std::shared_ptr<const InducingModule> inner)
    : InducingModule(inner->parabolic()), inner_(std::move(inner)) {}

VIdx FreeDerivationModule::unit() const {
  VIdx w = inner_->unit();
  w.insert(w.begin(), 0);
  return w;
}

VSparse FreeDerivationModule::act(const Adapted& x, const VIdx& w) const {
  if (w.empty() || w[0] < 0) throw std::invalid_argument("bad free-d code");
  const int k = w[0];
  const VIdx inner(w.begin() + 1, w.end());
  VSparse out;
  if (x.kind == Adapted::Kind::D) {
    VIdx up = w;
    up[0] = k + 1;
    vsparse_add(out, up, Rat(1));
    return out;
  }
  const int n = x.delta_degree();
  // x d^k = sum_j binom(k,j) (-n)^j d^{k-j} x
  Rat binom(1);
  Rat npow(1);
  for (int j = 0; j <= k; ++j) {
    if (j > 0) {
      binom *= Rat(k - j + 1);
      binom /= Rat(j);
      npow *= Rat(-n);
    }
    if (!is_zero(npow) || j == 0) {
      const Rat scale = binom * (j == 0 ? Rat(1) : npow);
      if (!is_zero(scale)) {
        for (const auto& [iw, c] : inner_->act(x, inner)) {
          VIdx code = iw;
          code.insert(code.begin(), k - j);
          vsparse_add(out, code, scale * c);
        }
      }
    }
    if (n == 0) break;  // only j = 0 contributes
  }
  return out;
}

WeightLabel FreeDerivationModule::weight(const VIdx& w) const {
  return inner_->weight(VIdx(w.begin() + 1, w.end()));
}

int FreeDerivationModule::length(const VIdx& w) const {
  return w[0] + inner_->length(VIdx(w.begin() + 1, w.end()));
}

std::vector<VIdx> FreeDerivationModule::enumerate(int max_len, int window) const {
  std::vector<VIdx> out;
  for (int k = 0; k <= max_len; ++k)
    for (const VIdx& iw : inner_->enumerate(max_len - k, window)) {
      VIdx code = iw;
      code.insert(code.begin(), k);
      out.push_back(std::move(code));
    }
  std::sort(out.begin(), out.end());
  return out;
}

std::string FreeDerivationModule::render(const VIdx& w) const {
  const std::string inner = inner_->render(VIdx(w.begin() + 1, w.end()));
  if (w[0] == 0) return inner;
  return "d^" + std::to_string(w[0]) + "*" + inner;
}

void FreeDerivationModule::validate(const VIdx& w) const {
  if (w.empty() || w[0] < 0) throw std::invalid_argument("bad free-d code");
  inner_->validate(VIdx(w.begin() + 1, w.end()));
}

std::string FreeDerivationModule::describe() const {
  return "free d adjoined to [" + inner_->describe() + "]";
}

// ---------------------------------------------------------------------------
// builders

std::shared_ptr<InducingModule> make_imaginary_whittaker(const Parabolic& par,
                                                         HeisenbergCharacter eta, Rat a) {
  if (!par.subset().empty())
    throw std::invalid_argument("imaginary Whittaker modules use the S = {} parabolic");
  validate_heis_table(eta, par.hperp_basis().size());
  return std::make_shared<CharInducedModule>(par, CharInducedModule::Variant::HeisenbergWhittaker,
                                             std::move(eta), AffineCharacter{}, std::move(a),
                                             std::vector<Rat>{}, std::vector<Rat>{}, false);
}

std::shared_ptr<InducingModule> make_extended_whittaker(const Parabolic& par,
                                                        HeisenbergCharacter eta, Rat a,
                                                        std::vector<Rat> lambda) {
  if (!par.subset().empty())
    throw std::invalid_argument("extended Whittaker modules use the S = {} parabolic");
  validate_heis_table(eta, par.hperp_basis().size());
  if (lambda.size() != par.hperp_basis().size())
    throw std::invalid_argument("lambda has wrong dimension");
  return std::make_shared<CharInducedModule>(par, CharInducedModule::Variant::ExtendedWhittaker,
                                             std::move(eta), AffineCharacter{}, std::move(a),
                                             std::move(lambda), std::vector<Rat>{}, true);
}

namespace {
void validate_affine_eta(const AffineCharacter& eta, const Parabolic& par) {
  for (const auto& [i, v] : eta.e_values) {
    bool in_s = false;
    for (int s : par.subset()) in_s = in_s || s == i;
    if (!in_s)
      throw std::invalid_argument("affine character carries a value outside S");
  }
  if (eta.f_theta_values.size() > par.s_components().size())
    throw std::invalid_argument("more f_theta values than components of S");
}
}  // namespace

std::shared_ptr<InducingModule> make_universal_whittaker_levi(const Parabolic& par,
                                                              AffineCharacter eta, Rat a,
                                                              std::vector<Rat> lambda) {
  if (par.subset().empty())
    throw std::invalid_argument("Levi Whittaker modules need real roots in the Levi");
  if (lambda.size() != par.hperp_basis().size())
    throw std::invalid_argument("lambda has wrong dimension");
  validate_affine_eta(eta, par);
  return std::make_shared<CharInducedModule>(par, CharInducedModule::Variant::LeviWhittaker,
                                             HeisenbergCharacter{}, std::move(eta), std::move(a),
                                             std::move(lambda), std::vector<Rat>{}, true);
}

std::shared_ptr<InducingModule> make_whittaker_no_d(const Parabolic& par,
                                                    AffineCharacter eta, Rat a) {
  if (par.subset().empty())
    throw std::invalid_argument("Levi Whittaker modules need real roots in the Levi");
  validate_affine_eta(eta, par);
  return std::make_shared<CharInducedModule>(par, CharInducedModule::Variant::LeviWhittakerNoD,
                                             HeisenbergCharacter{}, std::move(eta), std::move(a),
                                             std::vector<Rat>{}, std::vector<Rat>{}, false);
}

std::shared_ptr<InducingModule> make_verma(const Parabolic& par, std::vector<Rat> chi, Rat a) {
  if (par.subset().empty())
    throw std::invalid_argument("Verma modules need real roots in the Levi");
  if (chi.size() != par.hl_basis().size())
    throw std::invalid_argument("Verma highest weight has wrong dimension");
  return std::make_shared<CharInducedModule>(par, CharInducedModule::Variant::VermaL0,
                                             HeisenbergCharacter{}, AffineCharacter{},
                                             std::move(a), std::vector<Rat>{}, std::move(chi),
                                             false);
}

std::shared_ptr<InducingModule> make_complement_whittaker(const Parabolic& par,
                                                          HeisenbergCharacter eta, Rat a,
                                                          bool with_d) {
  if (par.hperp_basis().empty())
    throw std::invalid_argument("the Heisenberg complement is trivial for this parabolic");
  validate_heis_table(eta, par.hperp_basis().size());
  return std::make_shared<CharInducedModule>(par, CharInducedModule::Variant::ComplementWhittaker,
                                             std::move(eta), AffineCharacter{}, std::move(a),
                                             std::vector<Rat>{}, std::vector<Rat>{}, with_d);
}

std::shared_ptr<InducingModule> make_evaluation(const Parabolic& par, std::vector<long> mu,
                                                std::vector<Rat> points) {
  return std::make_shared<EvaluationModule>(par, std::move(mu), std::move(points));
}

std::shared_ptr<InducingModule> make_leibniz_tensor(std::shared_ptr<const InducingModule> left,
                                                    std::shared_ptr<const InducingModule> right) {
  return std::make_shared<LeibnizTensorModule>(std::move(left), std::move(right));
}

std::shared_ptr<InducingModule> make_mixed_tensor(const Parabolic& par,
                                                  std::shared_ptr<const InducingModule> left,
                                                  std::shared_ptr<const InducingModule> right,
                                                  std::vector<Rat> lambda, bool left_has_d) {
  return std::make_shared<MixedTensorModule>(par, std::move(left), std::move(right),
                                             std::move(lambda), left_has_d);
}

std::shared_ptr<InducingModule> make_free_derivation(std::shared_ptr<const InducingModule> inner) {
  return std::make_shared<FreeDerivationModule>(std::move(inner));
}

}  // namespace affind
