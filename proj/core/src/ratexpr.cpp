#include "universefan/ratexpr.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <map>
#include <random>
#include <set>

namespace uf {

std::string Var::text() const {
  switch (kind) {
    case VarKind::S: return "s:" + elem;
    case VarKind::Ep: return "Ep:" + elem;
    case VarKind::Em: return "Em:" + elem;
    case VarKind::A: return "a:" + elem;
    case VarKind::E: return "E:" + elem;
  }
  return elem;
}

std::optional<Var> Var::parse(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos || colon + 1 >= text.size()) return std::nullopt;
  std::string kind = text.substr(0, colon), elem = text.substr(colon + 1);
  if (kind == "s") return Var{VarKind::S, elem};
  if (kind == "Ep") return Var{VarKind::Ep, elem};
  if (kind == "Em") return Var{VarKind::Em, elem};
  if (kind == "a") return Var{VarKind::A, elem};
  if (kind == "E") return Var{VarKind::E, elem};
  return std::nullopt;
}

LinForm LinForm::from_terms(std::vector<std::pair<Var, Rat>> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  LinForm f;
  for (auto& [v, c] : terms) {
    if (!f.coeffs_.empty() && f.coeffs_.back().first == v)
      f.coeffs_.back().second += c;
    else
      f.coeffs_.emplace_back(v, c);
  }
  std::erase_if(f.coeffs_, [](const auto& p) { return p.second == 0; });
  return f;
}

Rat LinForm::coeff(const Var& v) const {
  for (const auto& [var, c] : coeffs_)
    if (var == v) return c;
  return Rat(0);
}

LinForm& LinForm::operator+=(const LinForm& o) {
  std::vector<std::pair<Var, Rat>> merged = coeffs_;
  merged.insert(merged.end(), o.coeffs_.begin(), o.coeffs_.end());
  *this = from_terms(std::move(merged));
  return *this;
}

LinForm& LinForm::operator-=(const LinForm& o) {
  std::vector<std::pair<Var, Rat>> merged = coeffs_;
  for (const auto& [v, c] : o.coeffs_) merged.emplace_back(v, -c);
  *this = from_terms(std::move(merged));
  return *this;
}

LinForm& LinForm::operator*=(const Rat& c) {
  if (c == 0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& [v, cc] : coeffs_) cc *= c;
  return *this;
}

std::pair<LinForm, Rat> LinForm::normalized() const {
  if (coeffs_.empty()) return {LinForm(), Rat(1)};
  Rat lead = coeffs_.front().second;
  LinForm norm = *this;
  for (auto& [v, c] : norm.coeffs_) c /= lead;
  return {norm, lead};
}

Rat LinForm::evaluate(const std::map<Var, Rat>& point) const {
  Rat s = 0;
  for (const auto& [v, c] : coeffs_) {
    auto it = point.find(v);
    if (it == point.end()) throw RatExprError("unbound variable " + v.text());
    s += c * it->second;
  }
  return s;
}

std::string LinForm::text() const {
  if (coeffs_.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (i) out += " + ";
    out += to_string(coeffs_[i].second) + "·" + coeffs_[i].first.text();
  }
  return out;
}

RatExpr RatExpr::constant(Rat c) {
  RatExpr e;
  if (c != 0) e.terms_.push_back({std::move(c), {}});
  return e;
}

RatExpr RatExpr::term(Rat c, std::vector<LinForm> denoms) {
  RatExpr e;
  e.terms_.push_back({std::move(c), std::move(denoms)});
  e.canonicalize();
  return e;
}

RatExpr RatExpr::from_terms(std::vector<std::pair<Rat, std::vector<LinForm>>> terms) {
  RatExpr e;
  for (auto& [c, d] : terms) e.terms_.push_back({std::move(c), std::move(d)});
  e.canonicalize();
  return e;
}

std::size_t RatExpr::total_denominator_factors() const {
  std::size_t n = 0;
  for (const Term& t : terms_) n += t.denom.size();
  return n;
}

void RatExpr::canonicalize() {
  for (Term& t : terms_) {
    for (LinForm& f : t.denom) {
      if (f.zero()) throw ZeroDenominator(text());
      auto [norm, scale] = f.normalized();
      f = std::move(norm);
      t.coef /= scale;
    }
    std::sort(t.denom.begin(), t.denom.end());
    for (std::size_t i = 0; i + 1 < t.denom.size(); ++i)
      if (t.denom[i] == t.denom[i + 1]) throw DoublePole(t.denom[i].text());
  }
  std::sort(terms_.begin(), terms_.end(),
            [](const Term& a, const Term& b) { return a.denom < b.denom; });
  std::vector<Term> merged;
  for (Term& t : terms_) {
    if (!merged.empty() && merged.back().denom == t.denom)
      merged.back().coef += t.coef;
    else
      merged.push_back(std::move(t));
  }
  std::erase_if(merged, [](const Term& t) { return t.coef == 0; });
  terms_ = std::move(merged);
}

RatExpr& RatExpr::operator+=(const RatExpr& o) {
  terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
  canonicalize();
  return *this;
}

RatExpr operator*(const RatExpr& a, const RatExpr& b) {
  RatExpr out;
  std::vector<std::pair<Rat, std::vector<LinForm>>> terms;
  for (const RatExpr::Term& ta : a.terms())
    for (const RatExpr::Term& tb : b.terms()) {
      std::vector<LinForm> denom = ta.denom;
      denom.insert(denom.end(), tb.denom.begin(), tb.denom.end());
      terms.emplace_back(ta.coef * tb.coef, std::move(denom));
    }
  return RatExpr::from_terms(std::move(terms));
}

RatExpr RatExpr::scaled(const Rat& c) const {
  if (c == 0) return {};
  RatExpr out = *this;
  for (Term& t : out.terms_) t.coef *= c;
  return out;
}

std::vector<Var> RatExpr::variables() const {
  std::set<Var> vs;
  for (const Term& t : terms_)
    for (const LinForm& f : t.denom)
      for (const auto& [v, c] : f.coeffs()) vs.insert(v);
  return {vs.begin(), vs.end()};
}

Rat RatExpr::evaluate(const std::map<Var, Rat>& point) const {
  Rat s = 0;
  for (const Term& t : terms_) {
    Rat d = 1;
    for (const LinForm& f : t.denom) {
      Rat val = f.evaluate(point);
      if (val == 0) throw RatExprError("evaluation at a pole");
      d *= val;
    }
    s += t.coef / d;
  }
  return s;
}

std::string RatExpr::text() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (i) out += " + ";
    const Term& t = terms_[i];
    out += to_string(t.coef);
    if (!t.denom.empty()) {
      out += "/(";
      for (std::size_t j = 0; j < t.denom.size(); ++j) {
        if (j) out += "*";
        out += t.denom[j].text();
      }
      out += ")";
    }
  }
  return out;
}

RatExpr laplace_simplicial(const ConeZ& cone, const std::vector<Var>& dual_vars) {
  if (rank_int(cone.gens) != cone.num_gens()) throw NotSimplicial();
  Int index = lattice_index(cone.gens);
  if (index != 1) throw NotUnimodular(index);
  return laplace_simplicial_scaled(cone, dual_vars);
}

RatExpr laplace_simplicial_scaled(const ConeZ& cone, const std::vector<Var>& dual_vars) {
  if (rank_int(cone.gens) != cone.num_gens()) throw NotSimplicial();
  Int index = lattice_index(cone.gens);
  std::vector<LinForm> denoms;
  for (const VecI& g : cone.gens) {
    std::vector<std::pair<Var, Rat>> entries;
    for (int j = 0; j < cone.dim_space; ++j)
      if (g[j] != 0) entries.emplace_back(dual_vars[j], Rat(g[j]));
    denoms.push_back(LinForm::from_terms(std::move(entries)));
  }
  return RatExpr::term(Rat(index), std::move(denoms));
}

RatExpr laplace_fan(const std::vector<ConeZ>& cones, const std::vector<Var>& dual_vars) {
  RatExpr out;
  for (const ConeZ& c : cones) out += laplace_simplicial(c, dual_vars);
  return out;
}

RatExpr residue_at(const RatExpr& expr, const LinForm& pole) {
  auto [norm, scale] = pole.normalized();
  std::vector<std::pair<Rat, std::vector<LinForm>>> terms;
  for (const RatExpr::Term& t : expr.terms()) {
    auto it = std::find(t.denom.begin(), t.denom.end(), norm);
    if (it == t.denom.end()) continue;
    std::vector<LinForm> rest(t.denom.begin(), it);
    rest.insert(rest.end(), std::next(it), t.denom.end());
    terms.emplace_back(t.coef, std::move(rest));
  }
  return RatExpr::from_terms(std::move(terms));
}

RatExpr substitute(const RatExpr& expr, const std::map<Var, LinForm>& map) {
  std::vector<std::pair<Rat, std::vector<LinForm>>> terms;
  for (const RatExpr::Term& t : expr.terms()) {
    std::vector<LinForm> denom;
    for (const LinForm& f : t.denom) {
      LinForm nf;
      for (const auto& [v, c] : f.coeffs()) {
        auto it = map.find(v);
        if (it == map.end())
          nf += c * LinForm(v);
        else
          nf += c * it->second;
      }
      if (nf.zero()) throw ZeroDenominator(f.text());
      denom.push_back(std::move(nf));
    }
    terms.emplace_back(t.coef, std::move(denom));
  }
  return RatExpr::from_terms(std::move(terms));
}

namespace {

std::atomic<std::uint64_t> g_seed{0};

std::uint64_t default_seed() {
  if (const char* env = std::getenv("UNIVERSEFAN_SEED")) {
    char* end = nullptr;
    std::uint64_t v = std::strtoull(env, &end, 10);
    if (end && *end == '\0') return v;
  }
  return 0x5eedfa11u;
}

// Triangularized elimination map: each hyperplane solved for its lead
// variable, fully back-substituted.
std::map<Var, LinForm> elimination_map(const std::vector<LinForm>& hyperplanes) {
  std::map<Var, LinForm> sub;
  for (LinForm h : hyperplanes) {
    // apply what we already have
    LinForm r;
    for (const auto& [v, c] : h.coeffs()) {
      auto it = sub.find(v);
      if (it == sub.end())
        r += c * LinForm(v);
      else
        r += c * it->second;
    }
    if (r.zero()) continue;  // dependent constraint
    auto [norm, scale] = r.normalized();
    Var pivot = norm.coeffs().front().first;
    LinForm rhs;  // pivot = -(rest)
    for (std::size_t i = 1; i < norm.coeffs().size(); ++i)
      rhs += (-norm.coeffs()[i].second) * LinForm(norm.coeffs()[i].first);
    // back-substitute into existing entries
    for (auto& [v, f] : sub) {
      Rat c = f.coeff(pivot);
      if (c == 0) continue;
      LinForm g;
      for (const auto& [vv, cc] : f.coeffs())
        if (!(vv == pivot)) g += cc * LinForm(vv);
      g += c * rhs;
      f = std::move(g);
    }
    sub.emplace(pivot, std::move(rhs));
  }
  return sub;
}

LinForm reduce_form(const LinForm& f, const std::map<Var, LinForm>& sub) {
  LinForm r;
  for (const auto& [v, c] : f.coeffs()) {
    auto it = sub.find(v);
    if (it == sub.end())
      r += c * LinForm(v);
    else
      r += c * it->second;
  }
  return r;
}

// ---- small multivariate polynomial over Rat, for the exact comparison ----

using Monomial = std::vector<int>;  // exponent per interned variable

struct Poly {
  std::map<Monomial, Rat> coef;

  static Poly constant(const Rat& c, std::size_t nvars) {
    Poly p;
    if (c != 0) p.coef[Monomial(nvars, 0)] = c;
    return p;
  }
  void add_scaled(const Poly& o, const Rat& c) {
    for (const auto& [m, v] : o.coef) {
      Rat& slot = coef[m];
      slot += v * c;
      if (slot == 0) coef.erase(m);
    }
  }
  Poly times_lin(const std::vector<std::pair<int, Rat>>& lin) const {
    Poly out;
    for (const auto& [m, v] : coef)
      for (const auto& [var, c] : lin) {
        Monomial mm = m;
        mm[var] += 1;
        Rat& slot = out.coef[mm];
        slot += v * c;
        if (slot == 0) out.coef.erase(mm);
      }
    return out;
  }
  bool operator==(const Poly&) const = default;
};

}  // namespace

std::uint64_t global_seed() {
  std::uint64_t s = g_seed.load();
  if (s == 0) {
    s = default_seed();
    g_seed.store(s);
  }
  return s;
}

void set_global_seed(std::uint64_t seed) { g_seed.store(seed); }

bool equal_sampled(const RatExpr& lhs, const RatExpr& rhs,
                   const std::vector<LinForm>& on_hyperplanes, int trials,
                   std::uint64_t seed) {
  std::map<Var, LinForm> sub = elimination_map(on_hyperplanes);
  std::set<Var> vars;
  for (const RatExpr* e : {&lhs, &rhs})
    for (const Var& v : e->variables()) vars.insert(v);
  for (const auto& [pv, f] : sub)
    for (const auto& [v, c] : f.coeffs()) vars.insert(v);
  std::vector<Var> free_vars;
  for (const Var& v : vars)
    if (!sub.count(v)) free_vars.push_back(v);

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(-10000, 10000);
  std::uniform_int_distribution<int> den(1, 10000);

  int done = 0, consecutive_rejects = 0;
  while (done < trials) {
    if (consecutive_rejects >= 100) throw DegeneratePoint();
    std::map<Var, Rat> point;
    for (const Var& v : free_vars) point[v] = Rat(num(rng), den(rng));
    bool ok = true;
    for (const auto& [pv, f] : sub) point[pv] = f.zero() ? Rat(0) : f.evaluate(point);
    for (const RatExpr* e : {&lhs, &rhs}) {
      for (const RatExpr::Term& t : e->terms())
        for (const LinForm& f : t.denom)
          if (f.evaluate(point) == 0) { ok = false; break; }
      if (!ok) break;
    }
    if (!ok) {
      ++consecutive_rejects;
      continue;
    }
    consecutive_rejects = 0;
    if (lhs.evaluate(point) != rhs.evaluate(point)) return false;
    ++done;
  }
  return true;
}

std::optional<bool> equal_exact(const RatExpr& lhs, const RatExpr& rhs,
                                const std::vector<LinForm>& on_hyperplanes,
                                std::size_t cap) {
  if (lhs.total_denominator_factors() + rhs.total_denominator_factors() > cap)
    return std::nullopt;
  std::map<Var, LinForm> sub = elimination_map(on_hyperplanes);

  struct RTerm {
    Rat coef;
    std::vector<LinForm> denom;  // reduced + normalized
  };
  auto reduce_expr = [&](const RatExpr& e, std::vector<RTerm>& out) -> bool {
    for (const RatExpr::Term& t : e.terms()) {
      RTerm rt;
      rt.coef = t.coef;
      for (const LinForm& f : t.denom) {
        LinForm r = reduce_form(f, sub);
        if (r.zero()) return false;  // pole sits inside the hyperplane
        auto [norm, scale] = r.normalized();
        rt.coef /= scale;
        rt.denom.push_back(std::move(norm));
      }
      std::sort(rt.denom.begin(), rt.denom.end());
      out.push_back(std::move(rt));
    }
    return true;
  };
  std::vector<RTerm> lt, rt;
  if (!reduce_expr(lhs, lt) || !reduce_expr(rhs, rt)) return std::nullopt;

  // distinct reduced forms with their max multiplicity
  std::map<LinForm, int> mult;
  auto count_in = [](const std::vector<LinForm>& denom, const LinForm& f) {
    return static_cast<int>(std::count(denom.begin(), denom.end(), f));
  };
  for (const auto* side : {&lt, &rt})
    for (const RTerm& t : *side)
      for (const LinForm& f : t.denom) {
        int c = count_in(t.denom, f);
        int& slot = mult[f];
        slot = std::max(slot, c);
      }

  // intern variables
  std::map<Var, int> var_id;
  for (const auto& [f, m] : mult)
    for (const auto& [v, c] : f.coeffs())
      if (!var_id.count(v)) {
        int next = static_cast<int>(var_id.size());
        var_id[v] = next;
      }
  std::size_t nvars = var_id.size();
  auto lin_of = [&](const LinForm& f) {
    std::vector<std::pair<int, Rat>> lin;
    for (const auto& [v, c] : f.coeffs()) lin.emplace_back(var_id[v], c);
    return lin;
  };

  auto numerator = [&](const std::vector<RTerm>& side) {
    Poly total;
    for (const RTerm& t : side) {
      Poly p = Poly::constant(t.coef, nvars);
      for (const auto& [f, m] : mult) {
        int deficit = m - count_in(t.denom, f);
        auto lin = lin_of(f);
        for (int i = 0; i < deficit; ++i) p = p.times_lin(lin);
      }
      total.add_scaled(p, Rat(1));
    }
    return total;
  };
  return numerator(lt) == numerator(rt);
}

bool equal(const RatExpr& lhs, const RatExpr& rhs,
           const std::vector<LinForm>& on_hyperplanes, const EqualOptions& opts) {
  std::uint64_t seed = opts.seed ? opts.seed : global_seed();
  auto exact = equal_exact(lhs, rhs, on_hyperplanes, opts.exact_cap);
  if (exact.has_value()) return *exact;
  return equal_sampled(lhs, rhs, on_hyperplanes, opts.trials, seed);
}

}  // namespace uf
