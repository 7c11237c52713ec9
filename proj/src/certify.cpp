#include "affind/certify.hpp"

#include <algorithm>
#include <chrono>

namespace affind {

namespace {
using Clock = std::chrono::steady_clock;
double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

using Combo = std::vector<std::pair<Rat, Adapted>>;

VSparse act_combo(const InducingModule& m, const Combo& y, const VSparse& v) {
  VSparse out;
  for (const auto& [c, x] : y) {
    VSparse part = m.act_linear(x, v);
    vsparse_axpy(out, c, part);
  }
  return out;
}

Json combo_to_json(const AffineAlgebra& alg, const Combo& y) {
  Json j = Json::array();
  for (const auto& [c, x] : y) j.push_back({rat_str(c), render_adapted(alg, x)});
  return j;
}

Combo combo_from_json(const AffineAlgebra& alg, const Json& j) {
  Combo y;
  for (const auto& item : j)
    y.emplace_back(rat_parse(item.at(0).get<std::string>()),
                   parse_adapted(alg, item.at(1).get<std::string>()));
  return y;
}
}  // namespace

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Verified: return "verified";
    case Verdict::WitnessFound: return "witness_found";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

std::string pivot_strategy_name(PivotStrategy s) {
  return s == PivotStrategy::LargestK ? "largest_k" : "least_tau_then_least_k";
}

Json Budgets::to_json() const {
  Json j = Json::object();
  j["D"] = max_degree;
  j["N_max"] = n_max;
  j["B"] = attempts;
  j["R"] = random_combos;
  j["seed"] = seed;
  j["window"] = window;
  j["samples"] = samples;
  return j;
}

Budgets Budgets::from_json(const Json& j) { return from_json(j, Budgets{}); }

Budgets Budgets::from_json(const Json& j, const Budgets& base) {
  Budgets b = base;
  if (j.contains("D")) b.max_degree = j.at("D").get<int>();
  if (j.contains("N_max")) b.n_max = j.at("N_max").get<int>();
  if (j.contains("B")) b.attempts = j.at("B").get<int>();
  if (j.contains("R")) b.random_combos = j.at("R").get<int>();
  if (j.contains("seed")) b.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("window")) b.window = j.at("window").get<int>();
  if (j.contains("samples")) b.samples = j.at("samples").get<int>();
  if (b.max_degree <= 0 || b.n_max <= 0 || b.attempts <= 0 || b.random_combos < 0 ||
      b.window <= 0 || b.samples <= 0)
    throw std::invalid_argument("budgets must be positive");
  return b;
}

Json Report::to_json() const {
  Json j = Json::object();
  j["name"] = check;
  j["verdict"] = verdict_name(verdict);
  j["witness"] = witness;
  j["budgets"] = budgets;
  j["note"] = note;
  return j;
}

Json vec_to_json(const InducedModule& m, const InducedModule::Vector& v) {
  Json j = Json::array();
  for (const auto& [k, c] : v)
    j.push_back({rat_str(c), render_monomial(m.algebra(), k.first), Json(k.second)});
  return j;
}

InducedModule::Vector vec_from_json(const InducedModule& m, const Json& j) {
  InducedModule::Vector v;
  for (const auto& item : j) {
    const Rat c = rat_parse(item.at(0).get<std::string>());
    const PbwMonomial mono = parse_monomial(m.algebra(), item.at(1).get<std::string>());
    const VIdx w = item.at(2).get<VIdx>();
    m.inducing().validate(w);
    InducedModule::add(v, {mono, w}, c);
  }
  return v;
}

Json vsparse_to_json(const VSparse& v) {
  Json j = Json::array();
  for (const auto& [k, c] : v) j.push_back({rat_str(c), Json(k)});
  return j;
}

VSparse vsparse_from_json(const InducingModule& m, const Json& j) {
  VSparse v;
  for (const auto& item : j) {
    const VIdx w = item.at(1).get<VIdx>();
    m.validate(w);
    vsparse_add(v, w, rat_parse(item.at(0).get<std::string>()));
  }
  return v;
}

// ---------------------------------------------------------------------------
// Whittaker relation

Report check_whittaker(const CharInducedModule& m, int window) {
  const auto t0 = Clock::now();
  Report rep;
  rep.check = "whittaker";
  rep.budgets["window"] = window;
  const AffineAlgebra& alg = m.algebra();
  const VIdx v = m.unit();
  Json gens = Json::array();
  Json products = Json::array();
  const auto positives = m.positive_generators(window);
  bool ok = true;
  Json offender;
  auto expect_scalar = [&](const VSparse& r, const Rat& value) {
    if (is_zero(value)) return r.empty();
    return r.size() == 1 && r.begin()->first == v && r.begin()->second == value;
  };
  for (const auto& [x, value] : positives) {
    const VSparse r = m.act(x, v);
    if (!expect_scalar(r, value)) {
      ok = false;
      offender = Json{{"x", render_adapted(alg, x)}, {"eta", rat_str(value)}};
      break;
    }
    gens.push_back({render_adapted(alg, x), rat_str(value)});
  }
  if (ok) {
    for (const auto& [x1, v1] : positives) {
      for (const auto& [x2, v2] : positives) {
        VSparse r = m.act(x2, v);
        VSparse r2;
        for (const auto& [k, c] : r) vsparse_axpy(r2, c, m.act(x1, k));
        if (!expect_scalar(r2, v1 * v2)) {
          ok = false;
          offender = Json{{"x1", render_adapted(alg, x1)}, {"x2", render_adapted(alg, x2)},
                          {"eta", rat_str(v1 * v2)}};
          break;
        }
      }
      if (!ok) break;
    }
    products.push_back({"all_pairs", static_cast<int>(positives.size() * positives.size())});
  }
  rep.verdict = ok ? Verdict::Verified : Verdict::WitnessFound;
  rep.witness["generators"] = gens;
  rep.witness["degree2_products"] = products;
  if (!ok) rep.witness["offender"] = offender;
  rep.note = ok ? "x v = eta(x) v holds on all positive generators and degree-2 products"
               : "Whittaker relation failed (falsifies the implementation)";
  rep.millis = ms_since(t0);
  return rep;
}

// ---------------------------------------------------------------------------
// torsion freeness + central extraction

Report check_torsion(const CharInducedModule& m, const Budgets& b) {
  const auto t0 = Clock::now();
  if (is_zero(m.charge()))
    throw std::invalid_argument("torsion check requires nonzero central charge");
  Report rep;
  rep.check = "torsion";
  rep.budgets = b.to_json();
  const AffineAlgebra& alg = m.algebra();
  const Parabolic& par = m.parabolic();

  const std::vector<Adapted> neg = m.negative_imaginary(b.window);
  const std::vector<VIdx> monomials = m.enumerate(b.max_degree, b.window);
  SplitMix64 rng(b.seed);
  Json samples = Json::array();
  bool ok = true;
  for (int i = 0; i < b.samples && ok; ++i) {
    const VIdx& u = monomials[rng.next() % monomials.size()];
    Combo y;
    const int terms = 1 + static_cast<int>(rng.next() % 2);
    std::vector<size_t> picked;
    for (int t = 0; t < terms; ++t) {
      size_t idx = rng.next() % neg.size();
      // distinct directions keep y nonzero for every seed
      while (std::find(picked.begin(), picked.end(), idx) != picked.end())
        idx = (idx + 1) % neg.size();
      picked.push_back(idx);
      y.emplace_back(rng.small_rat(), neg[idx]);
    }
    VSparse uv;
    uv.emplace(u, Rat(1));
    const VSparse r = act_combo(m, y, uv);
    Json entry = Json::object();
    entry["y"] = combo_to_json(alg, y);
    entry["u"] = Json(u);
    entry["result"] = vsparse_to_json(r);
    samples.push_back(entry);
    if (r.empty()) ok = false;
  }
  rep.witness["samples"] = samples;

  // extraction identity: pair a positive imaginary element across the
  // charge with x_{-N}; (y_N - eta(y_N)) x_{-N} v = a v
  Json extraction = Json::array();
  const bool use_hperp = m.has_hperp_dirs();
  const auto& pair_basis = use_hperp ? par.hperp_basis() : par.hl_basis();
  const auto& pair_gram = use_hperp ? par.gram_hperp() : par.gram_hl();
  for (int n = 1; n <= 4 && ok && !pair_basis.empty(); ++n) {
    Combo x_minus;
    if (m.has_hl_dirs())
      x_minus.emplace_back(Rat(1), Adapted::cartan_vec(par.hl_basis()[0], -n));
    if (m.has_hperp_dirs())
      x_minus.emplace_back(Rat(1), Adapted::cartan_vec(par.hperp_basis()[0], -n));
    VSparse unitv;
    unitv.emplace(m.unit(), Rat(1));
    const VSparse w = act_combo(m, x_minus, unitv);
    std::vector<Rat> scaled = pair_basis[0];
    const Rat scale = Rat(1) / (Rat(n) * pair_gram[0][0]);
    for (Rat& q : scaled) q *= scale;
    const Adapted y_plus = Adapted::cartan_vec(scaled, n);
    const Rat eta_y = m.character_value(y_plus);
    VSparse r = m.act_linear(y_plus, w);
    vsparse_axpy(r, -eta_y, w);
    // expect a * v
    VSparse want;
    vsparse_add(want, m.unit(), m.charge());
    for (const auto& [k, c] : want) vsparse_add(r, k, -c);
    if (!r.empty()) ok = false;
    Json entry = Json::object();
    entry["N"] = n;
    entry["x_minus"] = combo_to_json(alg, x_minus);
    entry["y_plus"] = render_adapted(alg, y_plus);
    entry["eta_y"] = rat_str(eta_y);
    entry["yields"] = rat_str(m.charge());
    extraction.push_back(entry);
  }
  rep.witness["extraction"] = extraction;

  // pairing identity: y_N applied to y_{-N} v returns N (h|h) a v
  Json pairing = Json::array();
  for (int n = 1; n <= 4 && ok && !pair_basis.empty(); ++n) {
    const Adapted y_m = Adapted::cartan_vec(pair_basis[0], -n);
    const Adapted y_p = Adapted::cartan_vec(pair_basis[0], n);
    VSparse unitv;
    unitv.emplace(m.unit(), Rat(1));
    const VSparse w = m.act_linear(y_m, unitv);
    VSparse r = m.act_linear(y_p, w);
    vsparse_axpy(r, -m.character_value(y_p), w);
    const Rat want = Rat(n) * pair_gram[0][0] * m.charge();
    VSparse expect;
    vsparse_add(expect, m.unit(), want);
    for (const auto& [k, c] : expect) vsparse_add(r, k, -c);
    if (!r.empty()) ok = false;
    pairing.push_back(Json{{"N", n}, {"value", rat_str(want)}});
  }
  rep.witness["pairing"] = pairing;

  rep.verdict = ok ? Verdict::Verified : Verdict::WitnessFound;
  rep.note = ok ? "all sampled y.(u.v) nonzero; extraction identity returns a*v for N=1..4"
              : "a zero product or failed extraction identity (falsifies the implementation)";
  rep.millis = ms_since(t0);
  return rep;
}

// ---------------------------------------------------------------------------
// charge-zero reducibility witness

std::optional<Json> find_span_escape(const CharInducedModule& m, int max_degree, int window) {
  const AffineAlgebra& alg = m.algebra();
  std::vector<std::pair<Adapted, Rat>> gens;
  for (const auto& [x, value] : m.positive_generators(window)) gens.emplace_back(x, value);
  for (const Adapted& x : m.negative_imaginary(window)) gens.emplace_back(x, Rat(0));
  gens.emplace_back(Adapted::central(), Rat(0));
  for (const VIdx& u : m.enumerate(max_degree, window)) {
    if (m.length(u) == 0) continue;  // the span excludes the cyclic vector
    for (const auto& [x, value] : gens) {
      const VSparse r = m.act(x, u);
      auto it = r.find(m.unit());
      if (it != r.end()) {
        Json esc = Json::object();
        esc["x"] = render_adapted(alg, x);
        esc["u"] = Json(u);
        esc["unit_component"] = rat_str(it->second);
        return esc;
      }
    }
  }
  return std::nullopt;
}

Report check_charge_zero_witness(const CharInducedModule& m, const Budgets& b) {
  const auto t0 = Clock::now();
  if (!is_zero(m.charge()))
    throw std::invalid_argument("charge-zero witness requires central charge 0");
  Report rep;
  rep.check = "charge_zero_witness";
  rep.budgets = b.to_json();
  const auto escape = find_span_escape(m, b.max_degree, b.window);
  if (escape) {
    rep.verdict = Verdict::Inconclusive;
    rep.witness["escape"] = *escape;
    rep.note = "span invariance failed (falsifies the implementation)";
  } else {
    rep.verdict = Verdict::WitnessFound;
    Json checked = Json::array();
    for (const VIdx& u : m.enumerate(b.max_degree, b.window)) {
      if (m.length(u) == 0) continue;
      checked.push_back(Json(u));
    }
    rep.witness["span_basis"] = checked;
    rep.witness["window"] = b.window;
    rep.note =
        "the span of positive-degree basis monomials is invariant under all "
        "generators in the window: a proper nonzero submodule at truncation";
  }
  rep.millis = ms_since(t0);
  return rep;
}

// ---------------------------------------------------------------------------
// descent

namespace {

std::vector<BasisElem> radical_plus_candidates(const Parabolic& par, int n_max) {
  const RootSystem& rs = par.root_system();
  std::vector<int> plus_ids;
  for (int id = 0; id < rs.num_roots(); ++id)
    if (par.classify(BasisElem::root(id, 0)) == Block::RadicalPlus) plus_ids.push_back(id);
  std::sort(plus_ids.begin(), plus_ids.end(), [&](int a, int b) {
    long ha = 0, hb = 0;
    for (long c : rs.root_coeffs(a)) ha += std::abs(c);
    for (long c : rs.root_coeffs(b)) hb += std::abs(c);
    if (ha != hb) return ha < hb;
    return a < b;
  });
  std::vector<BasisElem> out;
  for (int a = 0; a <= n_max; ++a)
    for (int sgn = 0; sgn < (a == 0 ? 1 : 2); ++sgn) {
      const int deg = sgn == 0 ? a : -a;
      for (int id : plus_ids) out.push_back(BasisElem::root(id, deg));
    }
  return out;
}

std::vector<long> outside_coeffs(const Parabolic& par, int root_id) {
  const RootSystem& rs = par.root_system();
  std::vector<long> c = rs.root_coeffs(root_id);
  for (int s : par.subset()) c[s] = 0;
  return c;
}

}  // namespace

Report descend(const InducedModule& m, const InducedModule::Vector& v, const Budgets& b,
               PivotStrategy strategy) {
  const auto t0 = Clock::now();
  if (InducedModule::is_zero_vec(v)) throw std::invalid_argument("descend: zero vector");
  if (is_zero(m.charge())) throw std::invalid_argument("descend: central charge must be nonzero");
  Report rep;
  rep.check = "descent";
  rep.budgets = b.to_json();
  rep.budgets["pivot_strategy"] = pivot_strategy_name(strategy);
  const AffineAlgebra& alg = m.algebra();
  const Parabolic& par = m.parabolic();

  const auto components = m.weight_components(v);
  InducedModule::Vector cur = components.front().second;

  Json op = Json::array();  // leftmost entry is applied last
  Json trajectory = Json::array();
  int attempts = 0;
  std::string fail_note;

  const std::vector<BasisElem> candidates = radical_plus_candidates(par, b.n_max);

  while (true) {
    const long tau = m.tau(cur);
    trajectory.push_back(tau);
    if (tau == 0) break;
    const std::vector<long> profile = m.outside_profile(cur);
    if (tau == 1) {
      // pivot scan: every term is a single radical_minus factor times an
      // inducing vector; pick the pivot by the strategy and pair it
      std::map<BasisElem, bool> factors;
      for (const auto& [key, c] : cur) {
        if (key.first.factors.size() != 1 || key.first.factors[0].second != 1)
          throw std::logic_error("tau = 1 vector with a non-single monomial");
        factors[key.first.factors[0].first] = true;
      }
      const BasisElem* pivot = nullptr;
      long best_tau_i = 0;
      long best_k = 0;
      for (const auto& [f, unused] : factors) {
        const int pos_id = par.root_system().negate_id(f.idx);
        const std::vector<long> phi = par.root_system().root_coeffs(pos_id);
        long tau_i = 0;
        for (int s : par.subset()) tau_i += std::abs(phi[s]);
        const long k = f.deg;
        bool better = false;
        if (!pivot) {
          better = true;
        } else if (strategy == PivotStrategy::LargestK) {
          better = k > best_k;
        } else {
          better = tau_i < best_tau_i || (tau_i == best_tau_i && k < best_k);
        }
        if (better) {
          pivot = &f;
          best_tau_i = tau_i;
          best_k = k;
        }
      }
      const int pos_id = par.root_system().negate_id(pivot->idx);
      bool found = false;
      for (int n = 1; n <= b.n_max && !found; ++n) {
        if (++attempts > b.attempts) {
          fail_note = "attempt budget B exhausted during the pivot scan";
          break;
        }
        const BasisElem u_n = BasisElem::root(pos_id, -(n + static_cast<int>(best_k)));
        InducedModule::Vector r = m.act_elem(u_n, cur);
        if (InducedModule::is_zero_vec(r)) continue;
        if (!m.in_inducing_space(r))
          throw std::logic_error("pivot step left the inducing space");
        op.insert(op.begin(), alg.render(u_n));
        cur = std::move(r);
        found = true;
      }
      if (!found) {
        if (fail_note.empty())
          fail_note = "N-scan budget N_max exhausted at tau = 1";
        break;
      }
      continue;
    }
    // tau > 1: find a radical_plus root vector that strictly lowers tau
    bool reduced = false;
    for (const BasisElem& u : candidates) {
      const std::vector<long> gamma = outside_coeffs(par, u.idx);
      bool compatible = true;
      for (size_t i = 0; i < gamma.size(); ++i)
        if (profile[i] + gamma[i] > 0) compatible = false;
      if (!compatible) continue;
      if (++attempts > b.attempts) {
        fail_note = "attempt budget B exhausted during tau reduction";
        break;
      }
      InducedModule::Vector r = m.act_elem(u, cur);
      if (InducedModule::is_zero_vec(r)) continue;
      if (m.tau(r) >= tau) continue;
      op.insert(op.begin(), alg.render(u));
      cur = std::move(r);
      reduced = true;
      break;
    }
    if (!reduced) {
      if (fail_note.empty())
        fail_note = "no tau-reducing radical_plus vector found within the N_max window";
      break;
    }
  }

  rep.witness["input"] = vec_to_json(m, v);
  rep.witness["component"] = vec_to_json(m, components.front().second);
  rep.witness["operator"] = op;
  rep.witness["trajectory"] = trajectory;
  if (!fail_note.empty()) {
    rep.verdict = Verdict::Inconclusive;
    rep.note = fail_note;
  } else {
    rep.witness["result"] = vec_to_json(m, cur);
    rep.verdict = Verdict::Verified;
    rep.note = "explicit operator carries the vector to a nonzero element of the inducing space";
  }
  rep.witness["attempts"] = attempts;
  rep.millis = ms_since(t0);
  return rep;
}

// ---------------------------------------------------------------------------
// irreducibility probe

Report probe_irreducibility(const InducedModule& m, const Budgets& b, PivotStrategy strategy,
                            const RunOptions& opt) {
  const auto t0 = Clock::now();
  if (is_zero(m.charge())) throw std::invalid_argument("probe: central charge must be nonzero");
  Report rep;
  rep.check = "probe";
  rep.budgets = b.to_json();
  rep.budgets["pivot_strategy"] = pivot_strategy_name(strategy);

  // probe vectors: every basis vector of degree <= D, then R seeded random
  // combinations per weight space with at least two basis vectors
  std::vector<InducedModule::Vector> probes;
  const std::vector<InducedModule::Key> basis = m.enumerate_basis(b.max_degree, b.max_degree);
  for (const auto& k : basis) {
    InducedModule::Vector v;
    InducedModule::add(v, k, Rat(1));
    probes.push_back(std::move(v));
  }
  std::map<WeightLabel, std::vector<InducedModule::Key>> groups;
  for (const auto& k : basis) groups[m.weight_of(k)].push_back(k);
  for (const auto& [label, keys] : groups) {
    if (keys.size() < 2) continue;
    std::string label_str = std::to_string(label.delta);
    for (const Rat& q : label.hvals) label_str += "|" + rat_str(q);
    SplitMix64 rng(mix64(b.seed, fnv1a64(label_str)));
    for (int t = 0; t < b.random_combos; ++t) {
      InducedModule::Vector v;
      for (const auto& k : keys) InducedModule::add(v, k, rng.small_rat());
      probes.push_back(std::move(v));
    }
  }

  std::vector<Json> results(probes.size());
  std::vector<int> verdicts(probes.size(), 0);
  parallel_for(probes.size(), opt, [&](size_t i) {
    try {
      Report r = descend(m, probes[i], b, strategy);
      results[i] = r.witness;
      verdicts[i] = r.verdict == Verdict::Verified ? 1 : 0;
    } catch (const std::exception& e) {
      results[i] = Json{{"error", e.what()}, {"input", vec_to_json(m, probes[i])}};
      verdicts[i] = 0;
    }
  });

  int inconclusive = 0;
  Json vectors = Json::array();
  for (size_t i = 0; i < probes.size(); ++i) {
    if (!verdicts[i]) ++inconclusive;
    vectors.push_back(results[i]);
  }
  rep.witness["vectors"] = vectors;
  rep.witness["probed"] = static_cast<int>(probes.size());
  rep.witness["inconclusive"] = inconclusive;
  rep.verdict = inconclusive == 0 ? Verdict::Verified : Verdict::Inconclusive;
  rep.note = inconclusive == 0
                 ? "every probed vector generates a nonzero vector of the inducing space; "
                   "irreducibility of the induced module is conditional on irreducibility "
                   "of the inducing module [" + m.inducing().describe() + "]"
                 : std::to_string(inconclusive) + " probe vectors exhausted their budgets";
  rep.millis = ms_since(t0);
  return rep;
}

// ---------------------------------------------------------------------------
// algebra self-test

Report algebra_selftest(const std::string& label, const RunOptions& opt,
                        const BracketHook& hook) {
  const auto t0 = Clock::now();
  Report rep;
  rep.check = "algebra_selftest";
  rep.budgets["label"] = label;
  AffineAlgebra alg(RootSystem::build(label));
  const RootSystem& rs = alg.root_system();

  auto eff = [&](const BasisElem& a, const BasisElem& b) {
    LieElement raw = alg.bracket_basis(a, b);
    return hook ? hook(a, b, raw) : raw;
  };
  auto eff_elem = [&](const LieElement& x, const BasisElem& b) {
    LieElement out(rs.label());
    for (const auto& [e, c] : x.terms()) {
      LieElement part = eff(e, b);
      part *= c;
      out += part;
    }
    return out;
  };

  auto window_basis = [&](int w) {
    std::vector<BasisElem> out;
    for (int n = -w; n <= w; ++n) {
      for (int id = 0; id < rs.num_roots(); ++id) out.push_back(BasisElem::root(id, n));
      for (int i = 0; i < rs.rank(); ++i) out.push_back(BasisElem::cartan(i, n));
    }
    out.push_back(BasisElem::central());
    out.push_back(BasisElem::derivation());
    return out;
  };

  long pair_checks = 0, triple_checks = 0, form_checks = 0, closure_checks = 0;
  std::vector<std::string> failures;

  // antisymmetry + grade additivity, |n| <= 3
  const auto basis3 = window_basis(3);
  for (const BasisElem& x : basis3)
    for (const BasisElem& y : basis3) {
      ++pair_checks;
      LieElement xy = eff(x, y);
      LieElement yx = eff(y, x);
      yx += xy;
      if (!yx.is_zero()) {
        failures.push_back("antisymmetry: [" + alg.render(x) + "," + alg.render(y) + "]");
        break;
      }
      const AffineWeight want = alg.grade(x) + alg.grade(y);
      for (const auto& [e, c] : xy.terms()) {
        if (e.kind == ElemKind::Central) continue;
        if (!(alg.grade(e) == want)) {
          failures.push_back("grading: [" + alg.render(x) + "," + alg.render(y) + "]");
          break;
        }
      }
      if (!failures.empty()) break;
    }

  // Jacobi, |n| <= 2 (the heavy sweep; parallelized over the first index)
  if (failures.empty()) {
    const auto basis2 = window_basis(2);
    const size_t n = basis2.size();
    std::vector<std::string> local_fail(n);
    parallel_for(n, opt, [&](size_t ix) {
      const BasisElem& x = basis2[ix];
      for (const BasisElem& y : basis2)
        for (const BasisElem& z : basis2) {
          LieElement acc = eff_elem(eff(y, z), x);
          acc *= Rat(-1);  // [x,[y,z]] = -[[y,z],x]
          LieElement t2 = eff_elem(eff(z, x), y);
          t2 *= Rat(-1);
          acc += t2;
          LieElement t3 = eff_elem(eff(x, y), z);
          t3 *= Rat(-1);
          acc += t3;
          if (!acc.is_zero()) {
            if (local_fail[ix].empty())
              local_fail[ix] = "jacobi: (" + alg.render(x) + "," + alg.render(y) + "," +
                               alg.render(z) + ")";
          }
        }
    });
    triple_checks = static_cast<long>(n) * n * n;
    for (const std::string& f : local_fail)
      if (!f.empty()) {
        failures.push_back(f);
        break;
      }
  }

  // invariance of the trace form on the finite part
  if (failures.empty()) {
    std::vector<BasisElem> finite;
    for (int id = 0; id < rs.num_roots(); ++id) finite.push_back(BasisElem::root(id, 0));
    for (int i = 0; i < rs.rank(); ++i) finite.push_back(BasisElem::cartan(i, 0));
    auto form_against = [&](const LieElement& x, const BasisElem& z) {
      Rat acc(0);
      for (const auto& [e, c] : x.terms()) {
        if (e.kind == ElemKind::Central || e.kind == ElemKind::Derivation) continue;
        acc += c * alg.finite_form(e, z);
      }
      return acc;
    };
    for (const BasisElem& x : finite)
      for (const BasisElem& y : finite)
        for (const BasisElem& z : finite) {
          ++form_checks;
          Rat lhs = form_against(eff(x, y), z);
          LieElement xz = eff(x, z);
          Rat rhs(0);
          for (const auto& [e, c] : xz.terms()) {
            if (e.kind == ElemKind::Central || e.kind == ElemKind::Derivation) continue;
            rhs += c * alg.finite_form(y, e);
          }
          if (lhs + rhs != Rat(0)) {
            failures.push_back("form invariance: (" + alg.render(x) + "," + alg.render(y) +
                               "," + alg.render(z) + ")");
            break;
          }
        }
  }

  // parabolic closure for every subset of simple roots, |n| <= 3
  if (failures.empty()) {
    std::vector<std::vector<int>> subsets{{}};
    for (int i = 0; i < rs.rank(); ++i) {
      const size_t n = subsets.size();
      for (size_t k = 0; k < n; ++k) {
        std::vector<int> s = subsets[k];
        s.push_back(i);
        subsets.push_back(std::move(s));
      }
    }
    for (const auto& s : subsets) {
      Parabolic par(alg, s);
      for (const BasisElem& x : basis3)
        for (const BasisElem& y : basis3) {
          const Block bx = par.classify(x), by = par.classify(y);
          if (bx != by && bx != Block::Levi && by != Block::Levi) continue;
          const Block want = bx == Block::Levi ? by : bx;
          ++closure_checks;
          const LieElement br = eff(x, y);
          for (const auto& [e, c] : br.terms()) {
            const Block be = par.classify(e);
            if (want == Block::Levi ? be != Block::Levi
                                    : (e.kind == ElemKind::RootVector && be != want)) {
              failures.push_back("parabolic closure: S=" + par.tag());
              break;
            }
          }
        }
    }
  }

  rep.witness["pair_checks"] = pair_checks;
  rep.witness["jacobi_triples"] = triple_checks;
  rep.witness["form_triples"] = form_checks;
  rep.witness["closure_checks"] = closure_checks;
  if (failures.empty()) {
    rep.verdict = Verdict::Verified;
    rep.note = "antisymmetry, grading, Jacobi, form invariance and parabolic closure hold";
  } else {
    rep.verdict = Verdict::WitnessFound;
    rep.witness["offender"] = failures.front();
    rep.note = "algebra self-test failed";
  }
  rep.millis = ms_since(t0);
  return rep;
}

// ---------------------------------------------------------------------------
// independent re-check pass

namespace {

std::optional<std::string> recheck_descent_witness(const Json& w, const InducedModule& m) {
  const InducedModule::Vector input = vec_from_json(m, w.at("input"));
  const InducedModule::Vector component = vec_from_json(m, w.at("component"));
  if (InducedModule::is_zero_vec(input)) return "witness input is zero";
  // the component must be one of the weight components of the input
  bool matched = false;
  for (const auto& [lbl, comp] : m.weight_components(input)) {
    InducedModule::Vector diff = comp;
    InducedModule::axpy(diff, Rat(-1), component);
    if (InducedModule::is_zero_vec(diff)) matched = true;
  }
  if (!matched) return "component is not a weight component of the input";
  InducedModule::Vector cur = component;
  const Json& op = w.at("operator");
  for (size_t i = op.size(); i-- > 0;) {
    const Adapted x = parse_adapted(m.algebra(), op.at(i).get<std::string>());
    cur = m.act_adapted(x, cur);
  }
  const InducedModule::Vector claimed = vec_from_json(m, w.at("result"));
  InducedModule::Vector diff = cur;
  InducedModule::axpy(diff, Rat(-1), claimed);
  if (!InducedModule::is_zero_vec(diff)) return "recomputed result differs from the witness";
  if (InducedModule::is_zero_vec(cur)) return "witness result is zero";
  if (!m.in_inducing_space(cur)) return "witness result is not in the inducing space";
  return std::nullopt;
}

}  // namespace

std::optional<std::string> recheck_report(const Json& report_json, const RecheckContext& ctx) {
  const std::string name = report_json.at("name").get<std::string>();
  const std::string verdict = report_json.at("verdict").get<std::string>();
  const Json& w = report_json.at("witness");

  if (name == "algebra_selftest") return std::nullopt;  // exhaustive run is its own witness

  if (name == "whittaker") {
    if (!ctx.char_module) return "no module context";
    const CharInducedModule& m = *ctx.char_module;
    for (const auto& item : w.at("generators")) {
      const Adapted x = parse_adapted(m.algebra(), item.at(0).get<std::string>());
      const Rat eta = rat_parse(item.at(1).get<std::string>());
      VSparse r = m.act(x, m.unit());
      VSparse expect;
      vsparse_add(expect, m.unit(), eta);
      for (const auto& [k, c] : expect) vsparse_add(r, k, -c);
      if (!r.empty()) return "Whittaker relation failed on recheck for " +
                             item.at(0).get<std::string>();
    }
    return std::nullopt;
  }

  if (name == "torsion") {
    if (!ctx.char_module) return "no module context";
    const CharInducedModule& m = *ctx.char_module;
    for (const auto& item : w.at("samples")) {
      const Combo y = combo_from_json(m.algebra(), item.at("y"));
      const VIdx u = item.at("u").get<VIdx>();
      m.validate(u);
      VSparse uv;
      uv.emplace(u, Rat(1));
      VSparse r = act_combo(m, y, uv);
      VSparse claimed = vsparse_from_json(m, item.at("result"));
      for (const auto& [k, c] : claimed) vsparse_add(r, k, -c);
      if (!r.empty()) return "torsion sample recomputation differs";
      if (claimed.empty()) return "torsion sample is zero";
    }
    for (const auto& item : w.at("extraction")) {
      const Combo x_minus = combo_from_json(m.algebra(), item.at("x_minus"));
      const Adapted y_plus = parse_adapted(m.algebra(), item.at("y_plus").get<std::string>());
      const Rat eta_y = rat_parse(item.at("eta_y").get<std::string>());
      const Rat yields = rat_parse(item.at("yields").get<std::string>());
      VSparse unitv;
      unitv.emplace(m.unit(), Rat(1));
      const VSparse mid = act_combo(m, x_minus, unitv);
      VSparse r = m.act_linear(y_plus, mid);
      vsparse_axpy(r, -eta_y, mid);
      VSparse expect;
      vsparse_add(expect, m.unit(), yields);
      for (const auto& [k, c] : expect) vsparse_add(r, k, -c);
      if (!r.empty()) return "extraction identity failed on recheck";
    }
    return std::nullopt;
  }

  if (name == "charge_zero_witness") {
    if (!ctx.char_module) return "no module context";
    const CharInducedModule& m = *ctx.char_module;
    if (verdict != "witness_found") return "unexpected verdict for charge-zero witness";
    const int window = w.at("window").get<int>();
    std::vector<std::pair<Adapted, Rat>> gens;
    for (const auto& [x, value] : m.positive_generators(window)) gens.emplace_back(x, value);
    for (const Adapted& x : m.negative_imaginary(window)) gens.emplace_back(x, Rat(0));
    gens.emplace_back(Adapted::central(), Rat(0));
    bool any = false;
    for (const auto& uj : w.at("span_basis")) {
      const VIdx u = uj.get<VIdx>();
      m.validate(u);
      if (m.length(u) == 0) return "span basis contains the cyclic vector";
      any = true;
      for (const auto& [x, value] : gens) {
        const VSparse r = m.act(x, u);
        if (r.count(m.unit())) return "span escapes to the cyclic vector on recheck";
      }
    }
    if (!any) return "empty span witness";
    return std::nullopt;
  }

  if (name == "descent") {
    if (!ctx.induced) return "no module context";
    if (verdict != "verified") return std::nullopt;  // nothing to recheck
    return recheck_descent_witness(w, *ctx.induced);
  }

  if (name == "probe") {
    if (!ctx.induced) return "no module context";
    if (verdict != "verified") return std::nullopt;
    for (const auto& vj : w.at("vectors")) {
      auto err = recheck_descent_witness(vj, *ctx.induced);
      if (err) return err;
    }
    return std::nullopt;
  }

  return "unknown check '" + name + "'";
}

}  // namespace affind
