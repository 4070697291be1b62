#include "universefan/universe.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>

namespace uf {

std::vector<Var> DoubledSpace::dual_vars_full() const {
  std::vector<Var> out;
  for (int i = 0; i < g->size(); ++i) {
    out.push_back(epvar(g->names[i]));
    out.push_back(emvar(g->names[i]));
  }
  return out;
}

std::vector<Var> DoubledSpace::dual_vars() const {
  std::vector<Var> full = dual_vars_full();
  full.erase(full.begin() + m_coord(g->top_pos()));
  return full;
}

VecI DoubledSpace::drop_mtop(const VecI& v) const {
  VecI out = v;
  out.erase(out.begin() + m_coord(g->top_pos()));
  return out;
}

VecI DoubledSpace::with_mtop(const VecI& v) const {
  VecI out = v;
  out.insert(out.begin() + m_coord(g->top_pos()), Int(0));
  return out;
}

VecI causal_form_vec(const NestableSet& g, int g_pos,
                     const std::optional<std::vector<int>>& within) {
  DoubledSpace d{&g};
  VecI f(d.dim_full(), Int(0));
  int top = g.top_pos();
  f[d.p_coord(top)] += 1;
  auto in_scope = [&](int q) {
    if (!within) return true;
    return std::find(within->begin(), within->end(), q) != within->end();
  };
  for (int q = 0; q < g.size(); ++q) {
    if (q == top || q == g_pos) continue;
    if (!in_scope(q)) continue;
    if (g.member_lt(g_pos, q) && g.member_lt(q, top)) {
      f[d.p_coord(q)] += 1;
      f[d.m_coord(q)] -= 1;
    }
  }
  f[d.m_coord(g_pos)] -= 1;
  return f;
}

LinForm causal_form(const NestableSet& g, int g_pos,
                    const std::optional<std::vector<int>>& within) {
  DoubledSpace d{&g};
  VecI v = causal_form_vec(g, g_pos, within);
  std::vector<Var> vars = d.dual_vars_full();
  std::vector<std::pair<Var, Rat>> entries;
  for (int i = 0; i < d.dim_full(); ++i)
    if (v[i] != 0) entries.emplace_back(vars[i], Rat(v[i]));
  return LinForm::from_terms(std::move(entries));
}

std::vector<LinForm> causal_forms(const NestableSet& g,
                                  const std::optional<std::vector<int>>& within) {
  std::vector<LinForm> out;
  if (within) {
    for (int q : *within) out.push_back(causal_form(g, q, within));
  } else {
    for (int q = 0; q < g.size(); ++q) out.push_back(causal_form(g, q, within));
  }
  return out;
}

VecI region_vector(const NestableSet& g, const CausalRegion& r) {
  DoubledSpace d{&g};
  VecI v(d.dim_full(), Int(0));
  v[d.p_coord(r.star)] = 1;
  for (int f : r.feet) v[d.m_coord(f)] = 1;
  return v;
}

ConeZ universe_max_cone(const NestableSet& g, const std::vector<int>& nested) {
  if (!is_nested_maximal(g, nested)) throw NotMaximal();
  DoubledSpace d{&g};
  auto regions = enumerate_causal_regions(g, nested);
  MatI gens;
  std::vector<std::string> labels;
  for (const CausalRegion& r : regions) {
    gens.push_back(d.drop_mtop(region_vector(g, r)));
    std::string label = g.names[r.star] + ";";
    for (std::size_t i = 0; i < r.feet.size(); ++i)
      label += (i ? "," : "") + g.names[r.feet[i]];
    labels.push_back(std::move(label));
  }
  return make_cone(d.dim(), std::move(gens), std::move(labels));
}

namespace {

// Inequality forms of U_N on the coordinate subspace of N, compressed to
// the subspace coordinates (p_f, m_f for f in N, m_top dropped).
struct CompressedCone {
  std::vector<int> coords;  // full-coordinate index per compressed slot
  MatI ineqs;               // p, m, F forms
  MatI rays;
};

CompressedCone compress_universe_cone(const NestableSet& g, const std::vector<int>& nested,
                                      const ConeZ& cone) {
  DoubledSpace d{&g};
  CompressedCone out;
  for (int q : nested) {
    out.coords.push_back(d.p_coord(q));
    if (q != g.top_pos()) out.coords.push_back(d.m_coord(q));
  }
  std::sort(out.coords.begin(), out.coords.end());
  auto compress = [&](const VecI& full) {
    VecI v;
    for (int c : out.coords) v.push_back(full[c]);
    return v;
  };
  for (int q : nested) {
    VecI p(d.dim_full(), Int(0)), m(d.dim_full(), Int(0));
    p[d.p_coord(q)] = 1;
    out.ineqs.push_back(compress(p));
    if (q != g.top_pos()) {
      m[d.m_coord(q)] = 1;
      out.ineqs.push_back(compress(m));
      out.ineqs.push_back(compress(causal_form_vec(g, q, nested)));
    }
  }
  for (const VecI& r : cone.gens) out.rays.push_back(compress(d.with_mtop(r)));
  return out;
}

}  // namespace

void verify_universe_cone(const NestableSet& g, const std::vector<int>& nested,
                          const ConeZ& cone) {
  CompressedCone cc = compress_universe_cone(g, nested, cone);
  for (const VecI& r : cc.rays)
    for (const VecI& q : cc.ineqs)
      if (dot(q, r) < 0) throw GeometryError("universe cone ray violates an inequality");
  if (cc.coords.size() > 14 || cc.ineqs.size() > 64) return;  // oracle cap
  int dim = static_cast<int>(cc.coords.size());
  // H -> V: generators of the inequality cone must be exactly the rays
  DualDescription dd = dual_rays(cc.ineqs, dim);
  if (!dd.lineality.empty()) throw GeometryError("universe cone is not pointed");
  MatI want = cc.rays;
  for (VecI& r : want) r = primitive(std::move(r));
  sort_rays(want);
  if (dd.rays != want) throw GeometryError("universe cone H/V descriptions disagree");
  // V -> H: every facet normal is one of the p, m, F forms
  MatI facets = facet_normals(make_cone(dim, cc.rays));
  for (const VecI& f : facets) {
    bool found = false;
    for (const VecI& q : cc.ineqs)
      if (primitive(q) == f) { found = true; break; }
    if (!found) throw GeometryError("universe cone facet is not a p/m/F form");
  }
}

bool MarkedNestedSet::operator<(const MarkedNestedSet& o) const {
  if (n != o.n) return n < o.n;
  if (beta_plus != o.beta_plus) return beta_plus < o.beta_plus;
  if (beta_minus != o.beta_minus) return beta_minus < o.beta_minus;
  return beta_dot < o.beta_dot;
}

std::string MarkedNestedSet::encode(const NestableSet& g) const {
  // elements printed from the top down: descending position order
  std::string out = "{";
  for (int i = static_cast<int>(n.size()) - 1; i >= 0; --i) {
    out += g.names[n[i]];
    if (beta_plus >> i & 1u) out += "+";
    if (beta_minus >> i & 1u) out += "-";
    if (beta_dot >> i & 1u) out += "*";
    if (i) out += ",";
  }
  return out + "}";
}

int marking_violation(const NestableSet& g, const MarkedNestedSet& m) {
  int k = static_cast<int>(m.n.size());
  std::uint32_t all = k == 32 ? ~0u : (1u << k) - 1;
  if ((m.beta_plus | m.beta_minus | m.beta_dot) & ~all)
    throw LatticeError("marking bits out of range");
  // covers inside n
  auto covers = [&](int i, int j) {  // n[j] covers n[i] within the poset on n
    if (!g.member_lt(m.n[i], m.n[j])) return false;
    for (int l = 0; l < k; ++l)
      if (l != i && l != j && g.member_lt(m.n[i], m.n[l]) && g.member_lt(m.n[l], m.n[j]))
        return false;
    return true;
  };
  // (i) every element carries + or -
  if ((m.beta_plus | m.beta_minus) != all) return 1;
  // (ii) maximal elements are plainly +
  for (int i = 0; i < k; ++i) {
    bool maximal = true;
    for (int j = 0; j < k; ++j)
      if (j != i && g.member_lt(m.n[i], m.n[j])) maximal = false;
    if (!maximal) continue;
    if (!(m.beta_plus >> i & 1u) || (m.beta_minus >> i & 1u) || (m.beta_dot >> i & 1u))
      return 2;
  }
  // (iii) f in beta+ covering g forces g in beta- or beta.
  for (int f = 0; f < k; ++f) {
    if (!(m.beta_plus >> f & 1u)) continue;
    for (int h = 0; h < k; ++h)
      if (covers(h, f) && !((m.beta_minus >> h & 1u) || (m.beta_dot >> h & 1u))) return 3;
  }
  // (iv) g in beta- covered by f forces f in beta+ or beta.
  for (int h = 0; h < k; ++h) {
    if (!(m.beta_minus >> h & 1u)) continue;
    for (int f = 0; f < k; ++f)
      if (covers(h, f) && !((m.beta_plus >> f & 1u) || (m.beta_dot >> f & 1u))) return 4;
  }
  // (v) g in beta. forces covering f in beta+/beta. and covered h in beta-/beta.
  for (int d = 0; d < k; ++d) {
    if (!(m.beta_dot >> d & 1u)) continue;
    for (int f = 0; f < k; ++f)
      if (covers(d, f) && !((m.beta_plus >> f & 1u) || (m.beta_dot >> f & 1u))) return 5;
    for (int h = 0; h < k; ++h)
      if (covers(h, d) && !((m.beta_minus >> h & 1u) || (m.beta_dot >> h & 1u))) return 5;
  }
  return 0;
}

std::vector<CausalRegion> adapted_regions(const NestableSet& g, const MarkedNestedSet& m) {
  int k = static_cast<int>(m.n.size());
  std::vector<CausalRegion> out;
  for (int s = 0; s < k; ++s) {
    if (!(m.beta_plus >> s & 1u)) continue;
    std::vector<int> cands;
    for (int b = 0; b < k; ++b)
      if ((m.beta_minus >> b & 1u) && g.member_lt(m.n[b], m.n[s])) cands.push_back(b);
    std::vector<int> feet;
    auto consider = [&]() {
      // every g in N with g < star not below a foot must be dotted
      for (int q = 0; q < k; ++q) {
        if (!g.member_lt(m.n[q], m.n[s])) continue;
        bool under_foot = false;
        for (int b : feet)
          if (g.member_leq(m.n[q], m.n[b])) { under_foot = true; break; }
        if (!under_foot && !(m.beta_dot >> q & 1u)) return;
      }
      CausalRegion r;
      r.star = m.n[s];
      for (int b : feet) r.feet.push_back(m.n[b]);
      std::sort(r.feet.begin(), r.feet.end());
      out.push_back(std::move(r));
    };
    auto rec = [&](auto&& self, std::size_t next) -> void {
      consider();
      for (std::size_t i = next; i < cands.size(); ++i) {
        bool anti = true;
        for (int b : feet)
          if (!g.incomparable(m.n[b], cands[i] >= 0 ? m.n[cands[i]] : 0)) { anti = false; break; }
        if (!anti) continue;
        feet.push_back(cands[i]);
        self(self, i + 1);
        feet.pop_back();
      }
    };
    rec(rec, 0);
  }
  std::sort(out.begin(), out.end(), [](const CausalRegion& a, const CausalRegion& b) {
    if (a.star != b.star) return a.star < b.star;
    return a.feet < b.feet;
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ConeZ cone_of_marking(const NestableSet& g, const MarkedNestedSet& m) {
  if (int c = marking_violation(g, m)) throw InvalidMarking(c);
  DoubledSpace d{&g};
  MatI gens;
  std::vector<std::string> labels;
  for (const CausalRegion& r : adapted_regions(g, m)) {
    gens.push_back(d.drop_mtop(region_vector(g, r)));
    std::string label = g.names[r.star] + ";";
    for (std::size_t i = 0; i < r.feet.size(); ++i)
      label += (i ? "," : "") + g.names[r.feet[i]];
    labels.push_back(std::move(label));
  }
  return make_cone(d.dim(), std::move(gens), std::move(labels));
}

MarkedNestedSet marking_of_cone(const NestableSet& g, const ConeZ& cone) {
  DoubledSpace d{&g};
  std::set<int> plus_elems, minus_elems;
  MatI full;
  for (const VecI& r : cone.gens) full.push_back(d.with_mtop(r));
  for (const VecI& r : full)
    for (int q = 0; q < g.size(); ++q) {
      if (r[d.p_coord(q)] != 0) plus_elems.insert(q);
      if (r[d.m_coord(q)] != 0) minus_elems.insert(q);
    }
  MarkedNestedSet m;
  std::set<int> nset = plus_elems;
  nset.insert(minus_elems.begin(), minus_elems.end());
  m.n.assign(nset.begin(), nset.end());
  if (!is_nested(g, m.n)) throw NotAFace("support is not a nested set");
  int k = static_cast<int>(m.n.size());
  for (int i = 0; i < k; ++i) {
    if (plus_elems.count(m.n[i])) m.beta_plus |= 1u << i;
    if (minus_elems.count(m.n[i])) m.beta_minus |= 1u << i;
  }
  for (int i = 0; i < k; ++i) {
    VecI f = causal_form_vec(g, m.n[i], m.n);
    for (const VecI& r : full)
      if (dot(f, r) != 0) {
        m.beta_dot |= 1u << i;
        break;
      }
  }
  if (int c = marking_violation(g, m))
    throw NotAFace("support sets violate marking condition " + std::to_string(c));
  // round trip: the cone of the computed marking must reproduce the input
  ConeZ back = cone_of_marking(g, m);
  MatI a = back.gens, b = cone.gens;
  for (VecI& v : b) v = primitive(std::move(v));
  sort_rays(a);
  sort_rays(b);
  if (a != b) throw NotAFace("ray set is not the full set of adapted regions");
  return m;
}

FaceLattice face_lattice(const NestableSet& g) {
  if (g.size() > 12) throw TooLarge("face lattice enumeration capped at 12 members");
  FaceLattice fl;
  fl.regions = enumerate_causal_regions(g);
  auto region_index = [&](const CausalRegion& r) {
    auto it = std::lower_bound(
        fl.regions.begin(), fl.regions.end(), r,
        [](const CausalRegion& a, const CausalRegion& b) {
          if (a.star != b.star) return a.star < b.star;
          return a.feet < b.feet;
        });
    return static_cast<int>(it - fl.regions.begin());
  };
  DoubledSpace d{&g};
  for (const auto& n : enumerate_nested_sets(g, false)) {
    int k = static_cast<int>(n.size());
    // memberships per element: any of +, -, +-, +., -., +-.
    std::vector<std::array_like_placeholder> unused;  // (removed)
    std::vector<int> choice(k, 0);
    static constexpr std::uint32_t kOptions[6][3] = {
        // plus, minus, dot bits
        {1, 0, 0}, {0, 1, 0}, {1, 1, 0}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1}};
    auto rec = [&](auto&& self, int i) -> void {
      if (i == k) {
        MarkedNestedSet m;
        m.n = n;
        for (int j = 0; j < k; ++j) {
          m.beta_plus |= kOptions[choice[j]][0] << j;
          m.beta_minus |= kOptions[choice[j]][1] << j;
          m.beta_dot |= kOptions[choice[j]][2] << j;
        }
        if (marking_violation(g, m) == 0) {
          std::vector<int> adapted;
          for (const CausalRegion& r : adapted_regions(g, m))
            adapted.push_back(region_index(r));
          std::sort(adapted.begin(), adapted.end());
          MatI gens;
          for (int ri : adapted) gens.push_back(d.drop_mtop(region_vector(g, fl.regions[ri])));
          fl.faces.push_back(std::move(m));
          fl.adapted.push_back(std::move(adapted));
          fl.dims.push_back(rank_int(gens));
        }
        return;
      }
      for (int c = 0; c < 6; ++c) {
        choice[i] = c;
        self(self, i + 1);
      }
    };
    rec(rec, 0);
  }
  // order faces canonically: by dimension then adapted set
  std::vector<std::size_t> order(fl.faces.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (fl.dims[a] != fl.dims[b]) return fl.dims[a] < fl.dims[b];
    return fl.adapted[a] < fl.adapted[b];
  });
  FaceLattice sorted;
  sorted.regions = fl.regions;
  for (std::size_t i : order) {
    sorted.faces.push_back(fl.faces[i]);
    sorted.adapted.push_back(fl.adapted[i]);
    sorted.dims.push_back(fl.dims[i]);
  }
  // Hasse diagram of containment of adapted sets
  auto leq = [&](std::size_t a, std::size_t b) {
    return std::includes(sorted.adapted[b].begin(), sorted.adapted[b].end(),
                         sorted.adapted[a].begin(), sorted.adapted[a].end());
  };
  for (std::size_t a = 0; a < sorted.faces.size(); ++a)
    for (std::size_t b = 0; b < sorted.faces.size(); ++b) {
      if (a == b || !leq(a, b) || sorted.adapted[a] == sorted.adapted[b]) continue;
      bool cover = true;
      for (std::size_t c = 0; c < sorted.faces.size() && cover; ++c) {
        if (c == a || c == b) continue;
        if (leq(a, c) && leq(c, b) && sorted.adapted[c] != sorted.adapted[a] &&
            sorted.adapted[c] != sorted.adapted[b])
          cover = false;
      }
      if (cover) sorted.hasse.emplace_back(static_cast<int>(a), static_cast<int>(b));
    }
  return sorted;
}

CosmologicalMap cosmological_polytope_map(const NestableSet& g, const std::vector<int>& nested) {
  if (!is_nested_maximal(g, nested)) throw NotMaximal();
  std::vector<int> n = nested;
  std::sort(n.begin(), n.end());
  int k = static_cast<int>(n.size());
  int top_slot = -1;
  auto slot_of = [&](int pos) {
    return static_cast<int>(std::lower_bound(n.begin(), n.end(), pos) - n.begin());
  };
  for (int i = 0; i < k; ++i)
    if (n[i] == g.members.at(g.top_pos()) || g.members[n[i]] == g.members[g.top_pos()])
      ;  // handled via position comparison below
  top_slot = slot_of(g.top_pos());
  // parent inside the nested set (unique: chains above each element)
  auto parent_slot = [&](int i) {
    int best = -1;
    for (int j = 0; j < k; ++j) {
      if (i == j || !g.member_lt(n[i], n[j])) continue;
      if (best < 0 || g.member_lt(n[j], n[best])) best = j;
    }
    return best;
  };
  // coordinates: x_0..x_{k-1} for vertices, then y for each non-top element
  std::vector<int> y_slot(k, -1);
  int ny = 0;
  for (int i = 0; i < k; ++i)
    if (i != top_slot) y_slot[i] = k + ny++;
  int dim = k + ny;

  CosmologicalMap out;
  auto vec = [&](std::initializer_list<std::pair<int, int>> entries) {
    VecI v(dim, Int(0));
    for (auto [c, val] : entries) v[c] += val;
    return v;
  };
  // p_top -> 2 x_top
  out.sources.push_back("p:" + g.names[n[top_slot]]);
  out.images.push_back(vec({{top_slot, 2}}));
  MatI square{out.images.back()};
  for (int i = 0; i < k; ++i) {
    if (i == top_slot) continue;
    int f = parent_slot(i);
    out.sources.push_back("p:" + g.names[n[i]]);
    out.images.push_back(vec({{i, 1}, {y_slot[i], 1}, {f, -1}}));
    square.push_back(out.images.back());
    out.sources.push_back("m:" + g.names[n[i]]);
    out.images.push_back(vec({{f, 1}, {y_slot[i], 1}, {i, -1}}));
    square.push_back(out.images.back());
  }
  out.det_abs = abs(det(square));
  // F_g images (derived, not part of the coordinate square)
  for (int i = 0; i < k; ++i) {
    if (i == top_slot) continue;
    int f = parent_slot(i);
    out.sources.push_back("F:" + g.names[n[i]]);
    out.images.push_back(vec({{f, 1}, {y_slot[i], -1}, {i, 1}}));
  }
  return out;
}

RatExpr wavefunction(const NestableSet& g, std::size_t max_terms) {
  std::string w;
  if (!is_nestoid(g, &w)) throw NotNestoid(w);
  DoubledSpace d{&g};
  std::vector<Var> duals = d.dual_vars();
  RatExpr psi;
  std::size_t terms = 0;
  for (const auto& n : enumerate_nested_sets(g, true)) {
    HasseForest forest = hasse_forest(g, n);
    auto tubings = maximal_tubings(forest, false);
    terms += tubings.size();
    if (terms > max_terms) throw TooLarge("wavefunction term count exceeds the cap");
    std::vector<std::pair<Rat, std::vector<LinForm>>> batch;
    for (const auto& tubing : tubings) {
      MatI gens;
      for (Tube s : tubing) {
        TubeCut cut = tube_cut(forest, s);
        CausalRegion r;
        r.star = forest.elems[cut.plus.at(0)];
        for (int e : cut.minus) r.feet.push_back(forest.elems[e]);
        std::sort(r.feet.begin(), r.feet.end());
        gens.push_back(d.drop_mtop(region_vector(g, r)));
      }
      ConeZ simplex = make_cone(d.dim(), std::move(gens));
      psi += laplace_simplicial(simplex, duals);  // unimodularity enforced here
    }
  }
  return psi;
}

namespace {

// Lexicographic pulling triangulation of a cone into simplicial subcones
// spanned by its rays.
void pulling_triangulation(const ConeZ& cone, std::vector<MatI>& out) {
  int d = rank_int(cone.gens);
  if (cone.num_gens() == d) {
    out.push_back(cone.gens);
    return;
  }
  // pull the first ray; triangulate the facets not containing it
  const VecI& v = cone.gens[0];
  for (const VecI& f : facet_normals(cone)) {
    if (dot(f, v) == 0) continue;
    MatI face_gens;
    for (const VecI& r : cone.gens)
      if (dot(f, r) == 0) face_gens.push_back(r);
    std::vector<MatI> sub;
    pulling_triangulation(make_cone(cone.dim_space, face_gens), sub);
    for (MatI& s : sub) {
      s.push_back(v);
      out.push_back(std::move(s));
    }
  }
}

}  // namespace

RatExpr wavefunction_by_placing(const NestableSet& g) {
  std::string w;
  if (!is_nestoid(g, &w)) throw NotNestoid(w);
  DoubledSpace d{&g};
  std::vector<Var> duals = d.dual_vars();
  RatExpr psi;
  for (const auto& n : enumerate_nested_sets(g, true)) {
    ConeZ un = universe_max_cone(g, n);
    std::vector<MatI> simplices;
    pulling_triangulation(un, simplices);
    for (MatI& s : simplices)
      psi += laplace_simplicial_scaled(make_cone(d.dim(), std::move(s)), duals);
  }
  return psi;
}

bool check_total_energy_residue(const NestableSet& g) {
  RatExpr psi = wavefunction(g);
  LinForm etot{epvar(g.names[g.top_pos()])};
  RatExpr res = residue_at(psi, etot);
  RatExpr ae = amplitude_doubled(g);
  return equal(res, ae, {etot});
}

RatExpr shifted_amplitude(const NestableSet& g, const CausalRegion& r, const RegionSplit& split) {
  RatExpr a = amplitude_doubled(split.down);
  std::map<Var, LinForm> sub;
  for (int p = 0; p < split.down.size(); ++p) {
    std::vector<std::pair<Var, Rat>> plus_entries, minus_entries;
    plus_entries.emplace_back(epvar(split.down.names[p]), Rat(1));
    minus_entries.emplace_back(emvar(split.down.names[p]), Rat(1));
    bool shifted = false;
    for (int foot : r.feet) {
      if (!g.lat->leq(g.members[foot], split.down.members[p])) continue;
      plus_entries.emplace_back(emvar(g.names[foot]), Rat(1));
      minus_entries.emplace_back(emvar(g.names[foot]), Rat(-1));
      shifted = true;
    }
    if (!shifted) continue;
    sub[epvar(split.down.names[p])] = LinForm::from_terms(std::move(plus_entries));
    sub[emvar(split.down.names[p])] = LinForm::from_terms(std::move(minus_entries));
  }
  return substitute(a, sub);
}

bool check_region_factorization(const NestableSet& g, const CausalRegion& r) {
  RegionSplit split = region_split(g, r);  // throws NotStable when unstable
  RatExpr psi = wavefunction(g);
  std::vector<std::pair<Var, Rat>> er_entries;
  er_entries.emplace_back(epvar(g.names[r.star]), Rat(1));
  for (int foot : r.feet) er_entries.emplace_back(emvar(g.names[foot]), Rat(1));
  LinForm er = LinForm::from_terms(std::move(er_entries));

  RatExpr lhs = residue_at(psi, er);
  RatExpr psi_h = wavefunction(split.h);
  // every maximal cone of the h-fan contains w_R; cancel the factor
  RatExpr psi_h_reduced = residue_at(psi_h, er);
  if (psi_h_reduced.num_terms() != psi_h.num_terms())
    throw LatticeError("expected the region pole in every term of the h-wavefunction");
  RatExpr rhs = shifted_amplitude(g, r, split) * psi_h_reduced;
  return equal(lhs, rhs, {er});
}

}  // namespace uf
