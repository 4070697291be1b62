#include "universefan/amplitude.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace uf {

FreeNestedFan build_free_fan(const NestableSet& g) {
  std::string w;
  if (!is_nestoid(g, &w)) throw NotNestoid(w);
  FreeNestedFan fan;
  fan.nestable = g;
  fan.max_cones = enumerate_nested_sets(g, true);
  // a nestable set makes the top compatible with everything, so every
  // maximal nested set contains it
  for (const auto& n : fan.max_cones) {
    if (std::find(n.begin(), n.end(), g.top_pos()) == n.end())
      throw NotNestoid("maximal nested set misses the top");
  }
  return fan;
}

RatExpr amplitude(const NestableSet& g) {
  FreeNestedFan fan = build_free_fan(g);
  std::vector<std::pair<Rat, std::vector<LinForm>>> terms;
  for (const auto& n : fan.max_cones) {
    std::vector<LinForm> denom;
    for (int p : n) {
      if (p == g.top_pos()) continue;  // quotient by the top ray
      denom.emplace_back(LinForm(svar(g.names[p])));
    }
    terms.emplace_back(Rat(1), std::move(denom));
  }
  return RatExpr::from_terms(std::move(terms));
}

RatExpr amplitude_doubled(const NestableSet& g) {
  FreeNestedFan fan = build_free_fan(g);
  std::vector<std::pair<Rat, std::vector<LinForm>>> terms;
  for (const auto& n : fan.max_cones) {
    std::vector<LinForm> denom;
    for (int p : n) {
      if (p == g.top_pos()) continue;
      denom.emplace_back(LinForm(epvar(g.names[p])));
      denom.emplace_back(LinForm(emvar(g.names[p])));
    }
    terms.emplace_back(Rat(1), std::move(denom));
  }
  return RatExpr::from_terms(std::move(terms));
}

VecQ atom_projection(const NestableSet& g, const VecQ& x) {
  if (!g.lat->atomic()) throw NotAtomic();
  std::size_t na = g.lat->atoms().size();
  VecQ out(na, Rat(0));
  for (int p = 0; p < g.size(); ++p) {
    if (x[p] == 0) continue;
    std::uint32_t bits = g.lat->atom_bits(g.members[p]);
    for (std::size_t a = 0; a < na; ++a)
      if (bits >> a & 1u) out[a] += x[p];
  }
  return out;
}

VecQ atom_projection_retract(const NestableSet& g, VecQ y) {
  if (!g.lat->atomic()) throw NotAtomic();
  std::size_t na = g.lat->atoms().size();
  VecQ out(g.size(), Rat(0));
  while (true) {
    std::uint32_t support = 0;
    for (std::size_t a = 0; a < na; ++a) {
      if (y[a] < 0) throw LatticeError("point not in the image of the fan");
      if (y[a] > 0) support |= 1u << a;
    }
    if (support == 0) return out;
    // maximal members whose atom set lies in the support
    std::vector<int> inside;
    for (int p = 0; p < g.size(); ++p)
      if ((g.lat->atom_bits(g.members[p]) & ~support) == 0) inside.push_back(p);
    std::vector<int> maximal;
    for (int p : inside) {
      bool is_max = true;
      for (int q : inside)
        if (p != q && g.member_lt(p, q)) { is_max = false; break; }
      if (is_max) maximal.push_back(p);
    }
    if (maximal.empty()) throw LatticeError("point not in the image of the fan");
    Rat lambda;
    bool first = true;
    for (std::size_t a = 0; a < na; ++a)
      if (support >> a & 1u) {
        if (first || y[a] < lambda) lambda = y[a];
        first = false;
      }
    std::uint32_t covered = 0;
    for (int p : maximal) {
      out[p] += lambda;
      covered |= g.lat->atom_bits(g.members[p]);
    }
    if (covered != support) throw LatticeError("point not in the image of the fan");
    for (int p : maximal) {
      std::uint32_t bits = g.lat->atom_bits(g.members[p]);
      for (std::size_t a = 0; a < na; ++a)
        if (bits >> a & 1u) y[a] -= lambda;
    }
  }
}

bool check_factorization(const NestableSet& g, int f_pos) {
  std::string w;
  if (!is_stable(g, &w)) throw NotStable(w);
  RatExpr a = amplitude(g);
  if (f_pos == g.top_pos()) {
    // s_top was removed by the quotient; the identity degenerates to A = A*1
    return true;
  }
  LinForm pole{svar(g.names[f_pos])};
  RatExpr lhs = residue_at(a, pole);
  auto [down, up] = down_up_sets(g, f_pos);
  RatExpr a_down = amplitude(g.subset(down, g.members[f_pos]));
  RatExpr a_up = amplitude(g.subset(up, g.hi));
  RatExpr rhs = a_down * a_up;
  return equal(lhs, rhs, {pole});
}

RatExpr substitute_to_minimal(const NestableSet& g, const NestableSet& minimal) {
  RatExpr a = amplitude(g);
  std::map<Var, LinForm> sub;
  for (int p = 0; p < g.size(); ++p) {
    if (minimal.contains_elem(g.members[p])) continue;
    // factors of the member in the minimal building set: maximal members below
    std::vector<int> below;
    for (int q = 0; q < minimal.size(); ++q)
      if (g.lat->leq(minimal.members[q], g.members[p])) below.push_back(q);
    std::vector<std::pair<Var, Rat>> entries;
    for (int q : below) {
      bool is_max = true;
      for (int r : below)
        if (q != r && minimal.member_lt(q, r)) { is_max = false; break; }
      if (is_max) entries.emplace_back(svar(minimal.names[q]), Rat(1));
    }
    sub[svar(g.names[p])] = LinForm::from_terms(std::move(entries));
  }
  return substitute(a, sub);
}

}  // namespace uf
