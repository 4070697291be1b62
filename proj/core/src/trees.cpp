#include "universefan/trees.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>

namespace uf {

HasseForest hasse_forest(const NestableSet& g, const std::vector<int>& nested) {
  HasseForest t;
  t.elems = nested;
  std::sort(t.elems.begin(), t.elems.end());
  t.m = static_cast<int>(t.elems.size());
  if (t.m > 30) throw TooLarge("hasse forest capped at 30 vertices");
  t.parent.assign(t.m, t.m);
  t.children.assign(t.m + 1, {});
  for (int i = 0; i < t.m; ++i) {
    // parent: minimal element of the nested set strictly above
    int best = -1;
    for (int j = 0; j < t.m; ++j) {
      if (i == j || !g.member_lt(t.elems[i], t.elems[j])) continue;
      if (best < 0 || g.member_lt(t.elems[j], t.elems[best])) best = j;
    }
    t.parent[i] = best < 0 ? t.m : best;
  }
  for (int i = 0; i < t.m; ++i) t.children[t.parent[i]].push_back(i);
  return t;
}

bool tube_connected(const HasseForest& t, Tube s) {
  if (s == 0) return false;
  int start = std::countr_zero(s);
  Tube seen = Tube{1} << start;
  std::vector<int> work{start};
  auto adjacent = [&](int v, int w) {
    if (v < t.m && t.parent[v] == w) return true;
    if (w < t.m && t.parent[w] == v) return true;
    return false;
  };
  while (!work.empty()) {
    int v = work.back();
    work.pop_back();
    for (int w = 0; w <= t.m; ++w) {
      if (!(s >> w & 1u) || (seen >> w & 1u) || !adjacent(v, w)) continue;
      seen |= Tube{1} << w;
      work.push_back(w);
    }
  }
  return seen == s;
}

std::vector<Tube> all_tubes(const HasseForest& t, bool allow_root) {
  int nv = t.m + (allow_root ? 1 : 0);
  std::vector<Tube> out;
  for (Tube s = 1; s < (Tube{1} << nv); ++s)
    if (tube_connected(t, s)) out.push_back(s);
  return out;
}

namespace {

// Recursive binary splitting: every maximal tubing refines each tube into
// two subtubes by cutting one internal edge.
void max_tubings_rec(const HasseForest& t, Tube tube,
                     std::vector<std::vector<Tube>>& out_for_tube,
                     std::map<Tube, std::vector<std::vector<Tube>>>& memo) {
  auto it = memo.find(tube);
  if (it != memo.end()) {
    out_for_tube = it->second;
    return;
  }
  std::vector<std::vector<Tube>> result;
  if (std::popcount(tube) == 1) {
    result.push_back({tube});
  } else {
    for (int i = 0; i < t.m; ++i) {
      if (!(tube >> i & 1u) || !(tube >> t.parent[i] & 1u)) continue;
      // cut edge i: the lower component is the subtree below vertex i
      Tube below = 0;
      std::vector<int> work{i};
      while (!work.empty()) {
        int v = work.back();
        work.pop_back();
        if (!(tube >> v & 1u)) continue;
        below |= Tube{1} << v;
        for (int c : t.children[v]) work.push_back(c);
      }
      Tube above = tube & ~below;
      std::vector<std::vector<Tube>> l, r;
      max_tubings_rec(t, below, l, memo);
      max_tubings_rec(t, above, r, memo);
      for (const auto& a : l)
        for (const auto& b : r) {
          std::vector<Tube> combined{tube};
          combined.insert(combined.end(), a.begin(), a.end());
          combined.insert(combined.end(), b.begin(), b.end());
          result.push_back(std::move(combined));
        }
    }
  }
  memo[tube] = result;
  out_for_tube = std::move(result);
}

}  // namespace

std::vector<std::vector<Tube>> maximal_tubings(const HasseForest& t, bool allow_root) {
  Tube full = (Tube{1} << t.m) - 1;
  if (allow_root) full |= Tube{1} << t.m;
  if (!tube_connected(t, full))
    throw LatticeError("maximal tubings need a connected ground tree");
  std::map<Tube, std::vector<std::vector<Tube>>> memo;
  std::vector<std::vector<Tube>> out;
  max_tubings_rec(t, full, out, memo);
  for (auto& tubing : out) std::sort(tubing.begin(), tubing.end());
  std::sort(out.begin(), out.end());
  return out;
}

TubeCut tube_cut(const HasseForest& t, Tube s) {
  TubeCut cut;
  for (int i = 0; i < t.m; ++i) {
    bool lower_in = s >> i & 1u;
    bool upper_in = s >> t.parent[i] & 1u;
    if (lower_in && !upper_in) cut.plus.push_back(i);
    if (!lower_in && upper_in) cut.minus.push_back(i);
  }
  return cut;
}

bool BooleanBuildingSet::contains(std::uint32_t s) const {
  return std::binary_search(sets.begin(), sets.end(), s);
}

BooleanBuildingSet make_boolean_building_set(int n, std::vector<std::uint32_t> sets) {
  if (n > 24) throw TooLarge("boolean building sets capped at 24 elements");
  BooleanBuildingSet b;
  b.n = n;
  for (int i = 0; i < n; ++i) sets.push_back(1u << i);
  std::sort(sets.begin(), sets.end());
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  for (std::uint32_t s : sets)
    if (s == 0 || (s >> n) != 0)
      throw LatticeError("boolean building set member out of range");
  for (std::uint32_t s : sets)
    for (std::uint32_t s2 : sets)
      if ((s & s2) != 0 && !std::binary_search(sets.begin(), sets.end(), s | s2))
        throw LatticeError("boolean building set not closed under intersecting unions");
  b.sets = std::move(sets);
  return b;
}

BooleanBuildingSet minimal_boolean_building_set(int n) {
  std::vector<std::uint32_t> sets{(1u << n) - 1};
  return make_boolean_building_set(n, std::move(sets));
}

BooleanBuildingSet full_boolean_building_set(int n) {
  std::vector<std::uint32_t> sets;
  for (std::uint32_t s = 1; s < (1u << n); ++s) sets.push_back(s);
  return make_boolean_building_set(n, std::move(sets));
}

BooleanBuildingSet graphical_boolean_building_set(const HasseForest& t) {
  // edge sets of connected subgraphs of the tree; edges are labelled by
  // their lower vertices 0..m-1
  std::vector<std::uint32_t> sets;
  for (std::uint32_t s = 1; s < (1u << t.m); ++s) {
    // the subgraph with edge set s is connected iff the union of the edges'
    // endpoint pairs is a connected vertex set
    Tube verts = 0;
    for (int i = 0; i < t.m; ++i)
      if (s >> i & 1u) verts |= (Tube{1} << i) | (Tube{1} << t.parent[i]);
    // check connectivity of verts through the edges of s only
    int first = std::countr_zero(verts);
    Tube seen = Tube{1} << first;
    bool grew = true;
    while (grew) {
      grew = false;
      for (int i = 0; i < t.m; ++i) {
        if (!(s >> i & 1u)) continue;
        bool a = seen >> i & 1u, b = seen >> t.parent[i] & 1u;
        if (a == b) continue;
        seen |= (Tube{1} << i) | (Tube{1} << t.parent[i]);
        grew = true;
      }
    }
    if (seen == verts) sets.push_back(s);
  }
  return make_boolean_building_set(t.m, std::move(sets));
}

std::uint32_t RootedTreeN::descendants(int i) const {
  std::uint32_t out = 0;
  std::vector<int> work{i};
  while (!work.empty()) {
    int v = work.back();
    work.pop_back();
    out |= 1u << v;
    for (int j = 0; j < static_cast<int>(parent.size()); ++j)
      if (parent[j] == v) work.push_back(j);
  }
  return out;
}

namespace {

void btrees_forest(const BooleanBuildingSet& b, std::uint32_t ground,
                   std::vector<std::vector<std::pair<int, int>>>& out);

// all B-trees on a connected member `s`, as (child, parent) edge lists with
// the root reported as (root, -1)
void btrees_connected(const BooleanBuildingSet& b, std::uint32_t s,
                      std::vector<std::vector<std::pair<int, int>>>& out) {
  for (int r = 0; r < b.n; ++r) {
    if (!(s >> r & 1u)) continue;
    std::uint32_t rest = s & ~(1u << r);
    std::vector<std::vector<std::pair<int, int>>> sub;
    btrees_forest(b, rest, sub);
    for (auto edges : sub) {
      // attach every component root to r
      for (auto& [child, par] : edges)
        if (par == -1) par = r;
      edges.emplace_back(r, -1);
      out.push_back(std::move(edges));
    }
  }
}

void btrees_forest(const BooleanBuildingSet& b, std::uint32_t ground,
                   std::vector<std::vector<std::pair<int, int>>>& out) {
  if (ground == 0) {
    out.push_back({});
    return;
  }
  // maximal members inside `ground` partition it (building set property)
  std::vector<std::uint32_t> inside;
  for (std::uint32_t s : b.sets)
    if ((s & ~ground) == 0) inside.push_back(s);
  std::vector<std::uint32_t> maximal;
  for (std::uint32_t s : inside) {
    bool is_max = true;
    for (std::uint32_t s2 : inside)
      if (s != s2 && (s & ~s2) == 0) { is_max = false; break; }
    if (is_max) maximal.push_back(s);
  }
  std::uint32_t covered = 0;
  for (std::uint32_t s : maximal) covered |= s;
  if (covered != ground) {
    return;  // not partitionable; no trees
  }
  std::vector<std::vector<std::vector<std::pair<int, int>>>> per_comp;
  for (std::uint32_t s : maximal) {
    per_comp.emplace_back();
    btrees_connected(b, s, per_comp.back());
  }
  std::vector<std::vector<std::pair<int, int>>> acc{{}};
  for (const auto& comp : per_comp) {
    std::vector<std::vector<std::pair<int, int>>> next;
    for (const auto& base : acc)
      for (const auto& choice : comp) {
        auto merged = base;
        merged.insert(merged.end(), choice.begin(), choice.end());
        next.push_back(std::move(merged));
      }
    acc = std::move(next);
  }
  for (auto& edges : acc) out.push_back(std::move(edges));
}

bool btree_valid(const BooleanBuildingSet& b, const RootedTreeN& t) {
  // descendant sets must be members
  for (int i = 0; i < b.n; ++i)
    if (!b.contains(t.descendants(i))) return false;
  // no antichain of vertices whose descendant union is a member
  std::vector<std::uint32_t> desc(b.n);
  for (int i = 0; i < b.n; ++i) desc[i] = t.descendants(i);
  auto incomparable = [&](int i, int j) {
    return !(desc[i] & (1u << j)) && !(desc[j] & (1u << i));
  };
  std::vector<int> anti;
  auto rec = [&](auto&& self, int start, std::uint32_t uni) -> bool {
    if (anti.size() >= 2 && b.contains(uni)) return false;
    for (int i = start; i < b.n; ++i) {
      bool ok = true;
      for (int j : anti)
        if (!incomparable(i, j)) { ok = false; break; }
      if (!ok) continue;
      anti.push_back(i);
      bool good = self(self, i + 1, uni | desc[i]);
      anti.pop_back();
      if (!good) return false;
    }
    return true;
  };
  return rec(rec, 0, 0);
}

}  // namespace

std::vector<RootedTreeN> btrees(const BooleanBuildingSet& b) {
  if (b.n > 12) throw TooLarge("btrees capped at 12 vertices");
  std::uint32_t ground = (1u << b.n) - 1;
  std::vector<std::vector<std::pair<int, int>>> raw;
  btrees_forest(b, ground, raw);
  std::vector<RootedTreeN> out;
  for (const auto& edges : raw) {
    RootedTreeN t;
    t.parent.assign(b.n, -1);
    int roots = 0;
    for (const auto& [child, par] : edges) {
      t.parent[child] = par;
      if (par == -1) {
        t.root = child;
        ++roots;
      }
    }
    if (roots != 1) continue;  // forests only arise for disconnected b
    if (btree_valid(b, t)) out.push_back(std::move(t));
  }
  std::sort(out.begin(), out.end(),
            [](const RootedTreeN& a, const RootedTreeN& b2) { return a.parent < b2.parent; });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Fan minmax_subdivision(const BooleanBuildingSet& b, MinMax mode) {
  if (b.n > 12) throw TooLarge("minmax subdivision capped at 12 vertices");
  std::vector<RootedTreeN> trees = btrees(b);
  Fan fan;
  fan.dim = b.n;
  for (const RootedTreeN& t : trees) {
    std::vector<int> cone;
    if (mode == MinMax::Min) {
      // generators: descendant sets
      for (int i = 0; i < b.n; ++i) {
        VecI g(b.n, Int(0));
        std::uint32_t d = t.descendants(i);
        for (int j = 0; j < b.n; ++j)
          if (d >> j & 1u) g[j] = 1;
        cone.push_back(fan.add_ray(std::move(g)));
      }
    } else {
      // generators: rooted subtrees containing the root
      std::vector<std::uint32_t> subtrees;
      for (std::uint32_t s = 1; s < (1u << b.n); ++s) {
        if (!(s >> t.root & 1u)) continue;
        bool ok = true;
        for (int i = 0; i < b.n && ok; ++i)
          if ((s >> i & 1u) && i != t.root && !(s >> t.parent[i] & 1u)) ok = false;
        if (ok) subtrees.push_back(s);
      }
      MatI gens;
      for (std::uint32_t s : subtrees) {
        VecI g(b.n, Int(0));
        for (int j = 0; j < b.n; ++j)
          if (s >> j & 1u) g[j] = 1;
        gens.push_back(std::move(g));
      }
      for (VecI& g : extreme_rays(gens)) cone.push_back(fan.add_ray(std::move(g)));
    }
    std::sort(cone.begin(), cone.end());
    std::string label;
    for (int i = 0; i < b.n; ++i)
      label += (i ? "," : "") + std::to_string(t.parent[i]);
    fan.max_cones.push_back(std::move(cone));
    fan.cone_labels.push_back(std::move(label));
  }
  return fan;
}

}  // namespace uf
