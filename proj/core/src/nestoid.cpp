#include "universefan/nestoid.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace uf {

int NestableSet::top_pos() const { return pos_of(hi); }

int NestableSet::pos_of(std::int64_t lattice_elem) const {
  auto it = std::lower_bound(members.begin(), members.end(), lattice_elem);
  if (it == members.end() || *it != lattice_elem) return -1;
  return static_cast<int>(it - members.begin());
}

int NestableSet::pos_by_name(const std::string& name) const {
  for (int i = 0; i < size(); ++i)
    if (names[i] == name) return i;
  return -1;
}

NestableSet NestableSet::subset(const std::vector<int>& positions, std::int64_t new_hi) const {
  NestableSet out;
  out.lat = lat;
  out.hi = new_hi;
  std::vector<int> ps = positions;
  std::sort(ps.begin(), ps.end());
  for (int p : ps) {
    out.members.push_back(members[p]);
    out.names.push_back(names[p]);
  }
  return out;
}

NestableSet make_nestable_set(const Lattice& lat, std::vector<std::int64_t> members,
                              std::vector<std::string> names) {
  NestableSet g;
  g.lat = &lat;
  g.hi = lat.top();
  std::vector<std::size_t> order(members.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return members[a] < members[b]; });
  for (std::size_t i : order) {
    g.members.push_back(members[i]);
    g.names.push_back(names.empty() ? lat.id(members[i]) : names[i]);
  }
  for (int i = 0; i + 1 < g.size(); ++i)
    if (g.members[i] == g.members[i + 1]) throw LatticeError("duplicate member");
  return g;
}

NestableSet make_nestable_set_by_ids(const Lattice& lat, const std::vector<std::string>& ids) {
  std::vector<std::int64_t> mem;
  for (const std::string& id : ids) {
    std::int64_t e = lat.index(id);
    if (e < 0) throw LatticeError("unknown element id '" + id + "'");
    mem.push_back(e);
  }
  return make_nestable_set(lat, std::move(mem));
}

NestableSet maximal_building_set(const Lattice& lat) {
  std::vector<std::int64_t> mem;
  for (std::int64_t e : lat.all_elements())
    if (e != lat.bottom()) mem.push_back(e);
  return make_nestable_set(lat, std::move(mem));
}

NestableSet graphical_building_set(const Lattice& flats, const std::vector<Edge>& edges) {
  std::vector<Edge> sorted = edges;
  std::sort(sorted.begin(), sorted.end(),
            [](const Edge& a, const Edge& b) { return a.label < b.label; });
  std::vector<std::int64_t> members;
  for (std::int64_t e : flats.all_elements()) {
    if (e == flats.bottom()) continue;
    std::uint32_t bits = flats.atom_bits(e);
    std::map<int, std::vector<int>> adj;
    std::set<int> verts;
    for (std::size_t i = 0; i < sorted.size(); ++i)
      if (bits >> i & 1u) {
        adj[sorted[i].u].push_back(sorted[i].v);
        adj[sorted[i].v].push_back(sorted[i].u);
        verts.insert(sorted[i].u);
        verts.insert(sorted[i].v);
      }
    std::set<int> seen;
    std::vector<int> work{*verts.begin()};
    while (!work.empty()) {
      int v = work.back();
      work.pop_back();
      if (!seen.insert(v).second) continue;
      for (int w : adj[v]) work.push_back(w);
    }
    if (seen.size() == verts.size()) members.push_back(e);
  }
  return make_nestable_set(flats, std::move(members));
}

bool is_nestable(const NestableSet& g, PairWitness* w) {
  if (g.pos_of(g.hi) < 0) {
    if (w) { w->f = g.hi; w->g = g.hi; w->detail = "missing the maximal element"; }
    return false;
  }
  for (int i = 0; i < g.size(); ++i)
    if (!g.lat->leq(g.members[i], g.hi)) {
      if (w) { w->f = g.members[i]; w->g = g.hi; w->detail = "member above the ambient top"; }
      return false;
    }
  for (int i = 0; i < g.size(); ++i)
    for (int j = i + 1; j < g.size(); ++j) {
      if (!g.incomparable(i, j)) continue;
      std::int64_t join = g.member_join(i, j);
      if (join >= 0 && g.contains_elem(join)) continue;
      std::int64_t meet = g.lat->meet(g.members[i], g.members[j]);
      if (meet != g.lat->bottom()) {
        if (w) {
          w->f = g.members[i];
          w->g = g.members[j];
          w->detail = "join outside the set but meet above bottom";
        }
        return false;
      }
    }
  return true;
}

bool is_building_set(const NestableSet& g, PairWitness* w) {
  if (!is_nestable(g, w)) return false;
  for (std::int64_t f : g.lat->interval(g.lat->bottom(), g.hi)) {
    if (f == g.lat->bottom() || g.contains_elem(f)) continue;
    if (g.lat->is_irreducible(f)) {
      if (w) { w->f = f; w->g = f; w->detail = "irreducible element not in the set"; }
      return false;
    }
  }
  return true;
}

bool is_building_set_by_products(const NestableSet& g, PairWitness* w) {
  const Lattice& lat = *g.lat;
  if (g.pos_of(g.hi) < 0) {
    if (w) w->detail = "missing the maximal element";
    return false;
  }
  for (std::int64_t f : lat.interval(lat.bottom(), g.hi)) {
    if (f == lat.bottom() || g.contains_elem(f)) continue;
    // factors: maximal members below f
    std::vector<std::int64_t> below;
    for (std::int64_t m : g.members)
      if (lat.leq(m, f)) below.push_back(m);
    std::vector<std::int64_t> factors;
    for (std::int64_t a : below) {
      bool maximal = true;
      for (std::int64_t b : below)
        if (a != b && lat.lt(a, b)) { maximal = false; break; }
      if (maximal) factors.push_back(a);
    }
    // the product of the factor intervals must be [0, f] via joins
    std::vector<std::vector<std::int64_t>> ivs;
    std::size_t prod = 1;
    for (std::int64_t a : factors) {
      ivs.push_back(lat.interval(lat.bottom(), a));
      prod *= ivs.back().size();
    }
    std::vector<std::int64_t> target = lat.interval(lat.bottom(), f);
    if (prod != target.size()) {
      if (w) { w->f = f; w->detail = "interval is not the product of its factors"; }
      return false;
    }
    // enumerate tuples, record joins, check bijection + order isomorphism
    std::vector<std::vector<std::int64_t>> tuples(1);
    for (const auto& iv : ivs) {
      std::vector<std::vector<std::int64_t>> next;
      for (const auto& t : tuples)
        for (std::int64_t x : iv) {
          next.push_back(t);
          next.back().push_back(x);
        }
      tuples = std::move(next);
    }
    std::vector<std::int64_t> image;
    for (const auto& t : tuples) {
      std::int64_t j = lat.join_set(t, f);
      if (j < 0) { image.clear(); break; }
      image.push_back(j);
    }
    std::vector<std::int64_t> sorted = image;
    std::sort(sorted.begin(), sorted.end());
    bool ok = sorted.size() == target.size() &&
              std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
    for (std::size_t a = 0; a < tuples.size() && ok; ++a)
      for (std::size_t b = 0; b < tuples.size() && ok; ++b) {
        bool prod_leq = true;
        for (std::size_t k = 0; k < tuples[a].size(); ++k)
          if (!lat.leq(tuples[a][k], tuples[b][k])) { prod_leq = false; break; }
        if (prod_leq != lat.leq(image[a], image[b])) ok = false;
      }
    if (!ok) {
      if (w) { w->f = f; w->detail = "interval is not the product of its factors"; }
      return false;
    }
  }
  return true;
}

namespace {

// True iff adding q keeps n (already nested, positions sorted) nested:
// every antichain through q must have its join outside the set.
bool extension_ok(const NestableSet& g, const std::vector<int>& n, int q) {
  std::vector<int> incomp;
  for (int p : n) {
    if (!g.incomparable(p, q)) continue;
    incomp.push_back(p);
  }
  // DFS over antichains within incomp, joined with q. The running fold can
  // be undefined in a partial poset while the set join exists, so fall back
  // to joining the whole antichain when that happens.
  struct Frame { std::size_t next; std::int64_t join; std::vector<int> chosen; };
  std::vector<Frame> stack;
  stack.push_back({0, g.members[q], {}});
  while (!stack.empty()) {
    Frame fr = stack.back();
    stack.pop_back();
    for (std::size_t i = fr.next; i < incomp.size(); ++i) {
      int cand = incomp[i];
      bool anti = true;
      for (int c : fr.chosen)
        if (!g.incomparable(c, cand)) { anti = false; break; }
      if (!anti) continue;
      std::int64_t j;
      if (fr.join >= 0) {
        j = g.lat->join_within(fr.join, g.members[cand], g.hi);
      } else {
        std::vector<std::int64_t> elems{g.members[q], g.members[cand]};
        for (int c : fr.chosen) elems.push_back(g.members[c]);
        j = g.lat->join_set(elems, g.hi);
      }
      if (j >= 0 && g.contains_elem(j)) return false;
      Frame nxt{i + 1, j, fr.chosen};
      nxt.chosen.push_back(cand);
      stack.push_back(std::move(nxt));
    }
  }
  return true;
}

}  // namespace

bool is_nested(const NestableSet& g, const std::vector<int>& n) {
  std::vector<int> acc;
  for (int q : n) {
    if (!extension_ok(g, acc, q)) return false;
    acc.push_back(q);
  }
  return true;
}

bool is_nested_maximal(const NestableSet& g, const std::vector<int>& n) {
  if (!is_nested(g, n)) return false;
  std::set<int> in(n.begin(), n.end());
  for (int q = 0; q < g.size(); ++q) {
    if (in.count(q)) continue;
    if (extension_ok(g, n, q)) return false;
  }
  return true;
}

std::vector<std::vector<int>> enumerate_nested_sets(const NestableSet& g, bool only_maximal) {
  if (g.size() > 24) throw TooLarge("nested set enumeration capped at 24 members");
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto is_max = [&](const std::vector<int>& n) {
    std::set<int> in(n.begin(), n.end());
    for (int q = 0; q < g.size(); ++q) {
      if (in.count(q)) continue;
      if (extension_ok(g, n, q)) return false;
    }
    return true;
  };
  // DFS in lexicographic order
  auto rec = [&](auto&& self, int start) -> void {
    if (!only_maximal || is_max(cur)) out.push_back(cur);
    for (int q = start; q < g.size(); ++q) {
      if (!extension_ok(g, cur, q)) continue;
      cur.push_back(q);
      self(self, q + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  if (only_maximal) {
    // drop the empty set unless it is the only nested set
    if (out.size() > 1 && out.front().empty())
      out.erase(out.begin());
  }
  return out;
}

bool is_nestoid(const NestableSet& g, std::string* witness) {
  PairWitness w;
  if (!is_nestable(g, &w)) {
    if (witness) *witness = "not nestable: " + w.detail;
    return false;
  }
  for (int fp = 0; fp < g.size(); ++fp) {
    std::int64_t f = g.members[fp];
    std::vector<int> below;
    for (int i = 0; i < g.size(); ++i)
      if (g.lat->leq(g.members[i], f)) below.push_back(i);
    NestableSet sub = g.subset(below, f);
    auto max_sets = enumerate_nested_sets(sub, true);
    for (const auto& n : max_sets)
      if (n.size() != max_sets.front().size()) {
        if (witness)
          *witness = "nested set complex below '" + g.lat->id(f) + "' is not pure";
        return false;
      }
  }
  return true;
}

bool is_stable(const NestableSet& g, std::string* witness) {
  for (int fp = 0; fp < g.size(); ++fp) {
    // candidates: g with f v g outside the set
    std::vector<int> s_f;
    for (int i = 0; i < g.size(); ++i) {
      if (i == fp || !g.incomparable(i, fp)) continue;
      std::int64_t j = g.member_join(i, fp);
      if (j < 0 || !g.contains_elem(j)) s_f.push_back(i);
    }
    // only maximal candidates need to be combined (upstream lower set lemma)
    std::vector<int> maxs;
    for (int a : s_f) {
      bool maximal = true;
      for (int b : s_f)
        if (a != b && g.member_lt(a, b)) { maximal = false; break; }
      if (maximal) maxs.push_back(a);
    }
    std::set<std::pair<std::int64_t, std::size_t>> seen;
    std::vector<int> chosen;
    auto rec = [&](auto&& self, std::int64_t join, std::size_t next) -> bool {
      for (std::size_t i = next; i < maxs.size(); ++i) {
        std::int64_t j;
        if (join >= 0) {
          j = g.lat->join_within(join, g.members[maxs[i]], g.hi);
        } else {
          std::vector<std::int64_t> elems{g.members[fp], g.members[maxs[i]]};
          for (int c : chosen) elems.push_back(g.members[c]);
          j = g.lat->join_set(elems, g.hi);
        }
        if (j >= 0 && g.contains_elem(j)) {
          if (witness)
            *witness = "join of '" + g.names[fp] + "' with candidates re-enters the set at '" +
                       g.lat->id(j) + "'";
          return false;
        }
        if (j >= 0 && !seen.insert({j, i + 1}).second) continue;
        chosen.push_back(maxs[i]);
        bool ok = self(self, j, i + 1);
        chosen.pop_back();
        if (!ok) return false;
      }
      return true;
    };
    if (!rec(rec, g.members[fp], 0)) return false;
  }
  return true;
}

std::pair<std::vector<int>, std::vector<int>> down_up_sets(const NestableSet& g, int f_pos) {
  std::vector<int> down, up;
  for (int i = 0; i < g.size(); ++i) {
    if (g.member_leq(i, f_pos)) down.push_back(i);
    if (g.member_lt(f_pos, i)) {
      up.push_back(i);
    } else if (i != f_pos && g.incomparable(i, f_pos)) {
      std::int64_t j = g.member_join(i, f_pos);
      if (j < 0 || !g.contains_elem(j)) up.push_back(i);
    }
  }
  return {down, up};
}

std::vector<CausalRegion> enumerate_causal_regions(
    const NestableSet& g, const std::optional<std::vector<int>>& within) {
  std::vector<int> universe;
  if (within) {
    universe = *within;
    std::sort(universe.begin(), universe.end());
  } else {
    for (int i = 0; i < g.size(); ++i) universe.push_back(i);
  }
  std::vector<CausalRegion> out;
  for (int star : universe) {
    std::vector<int> cands;
    for (int f : universe)
      if (f != star && g.member_lt(f, star)) cands.push_back(f);
    // DFS over pairwise-incomparable feet; unless the region comes from an
    // existing nested set, antichain joins must stay outside the set
    std::vector<int> feet;
    auto rec = [&](auto&& self, std::size_t next) -> void {
      CausalRegion r;
      r.star = star;
      r.feet = feet;
      std::vector<int> as_set = feet;
      as_set.push_back(star);
      std::sort(as_set.begin(), as_set.end());
      if (within || is_nested(g, as_set)) out.push_back(r);
      for (std::size_t i = next; i < cands.size(); ++i) {
        bool anti = true;
        for (int f : feet)
          if (!g.incomparable(f, cands[i])) { anti = false; break; }
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
  return out;
}

RegionSplit region_split(const NestableSet& g, const CausalRegion& r) {
  std::string w;
  if (!is_stable(g, &w)) throw NotStable(w);
  std::int64_t f = g.members[r.star];

  auto [down_f, up_f] = down_up_sets(g, r.star);
  NestableSet down = g.subset(down_f, f);
  for (int foot : r.feet) {
    int p = down.pos_of(g.members[foot]);
    auto [d2, u2] = down_up_sets(down, p);
    down = down.subset(u2, f);
  }

  std::set<int> up_set(up_f.begin(), up_f.end());
  for (int foot : r.feet) {
    auto [df, uf_] = down_up_sets(g, foot);
    up_set.insert(df.begin(), df.end());
  }
  NestableSet up = g.subset(std::vector<int>(up_set.begin(), up_set.end()), g.hi);

  up_set.insert(r.star);
  NestableSet h = g.subset(std::vector<int>(up_set.begin(), up_set.end()), g.hi);

  return {std::move(down), std::move(up), std::move(h)};
}

bool upstream_lower_set_holds(const NestableSet& g) {
  const Lattice& lat = *g.lat;
  for (std::int64_t x : lat.interval(lat.bottom(), g.hi)) {
    for (int yp = 0; yp < g.size(); ++yp) {
      std::int64_t y = g.members[yp];
      std::int64_t xy = lat.join_within(x, y, g.hi);
      if (xy >= 0 && g.contains_elem(xy)) continue;
      for (std::int64_t z : lat.interval(lat.bottom(), y)) {
        std::int64_t xz = lat.join_within(x, z, g.hi);
        if (xz >= 0 && g.contains_elem(xz)) return false;
      }
    }
  }
  return true;
}

}  // namespace uf
