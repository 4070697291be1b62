#include "universefan/lattice.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <map>
#include <numeric>
#include <queue>
#include <random>
#include <set>

namespace uf {

namespace {

constexpr std::int64_t kBitsetCap = 4096;   // up-set bitsets kept below this
constexpr std::int64_t kEagerTableCap = 1024;

inline bool bit(const std::vector<std::uint64_t>& row, std::int64_t i) {
  return (row[static_cast<std::size_t>(i >> 6)] >> (i & 63)) & 1u;
}
inline void set_bit(std::vector<std::uint64_t>& row, std::int64_t i) {
  row[static_cast<std::size_t>(i >> 6)] |= std::uint64_t{1} << (i & 63);
}

std::string mask_id(std::uint32_t mask, const std::vector<std::string>& atom_ids) {
  if (mask == 0) return "0";
  std::string s;
  for (std::size_t i = 0; i < atom_ids.size(); ++i)
    if (mask >> i & 1u) s += atom_ids[i];
  return s;
}

}  // namespace

std::int64_t Lattice::size() const {
  if (boolean_) return std::int64_t{1} << nbool_;
  return static_cast<std::int64_t>(ids_.size());
}

bool Lattice::leq(std::int64_t a, std::int64_t b) const {
  if (boolean_) return (a & ~b) == 0;
  if (!up_.empty()) return bit(up_[a], b);
  return (atom_bits_[a] & ~atom_bits_[b]) == 0;
}

const std::string& Lattice::id(std::int64_t e) const {
  if (boolean_) {
    auto key = mask_id(static_cast<std::uint32_t>(e), bool_atom_ids_);
    auto it = bool_id_cache_.find(key);
    if (it == bool_id_cache_.end())
      it = bool_id_cache_.emplace(key, e).first;
    return it->first;
  }
  return ids_[e];
}

std::int64_t Lattice::index(const std::string& id) const {
  if (boolean_) {
    if (id == "0") return 0;
    // Greedy parse as a concatenation of atom ids.
    std::uint32_t mask = 0;
    std::size_t pos = 0;
    while (pos < id.size()) {
      bool found = false;
      // longest match first so multi-character atom ids work
      for (std::size_t len = id.size() - pos; len >= 1 && !found; --len)
        for (std::size_t i = 0; i < bool_atom_ids_.size(); ++i)
          if (bool_atom_ids_[i].size() == len &&
              id.compare(pos, len, bool_atom_ids_[i]) == 0) {
            mask |= 1u << i;
            pos += len;
            found = true;
            break;
          }
      if (!found) return -1;
    }
    return mask;
  }
  auto it = index_.find(id);
  return it == index_.end() ? -1 : it->second;
}

std::uint32_t Lattice::atom_bits(std::int64_t e) const {
  if (boolean_) return static_cast<std::uint32_t>(e);
  return atom_bits_[e];
}

std::int64_t Lattice::unique_min_ub(std::int64_t a, std::int64_t b, std::int64_t hi,
                                    bool* none_exists) const {
  if (none_exists) *none_exists = false;
  std::int64_t n = size();
  std::int64_t c = -1;
  for (std::int64_t x = 0; x < n; ++x) {
    if (!leq(a, x) || !leq(b, x) || !leq(x, hi)) continue;
    c = x;  // first in a linear extension, hence minimal
    break;
  }
  if (c < 0) {
    if (none_exists) *none_exists = true;
    return -1;
  }
  for (std::int64_t x = c + 1; x < n; ++x)
    if (leq(a, x) && leq(b, x) && leq(x, hi) && !leq(c, x)) return -1;
  return c;
}

std::int64_t Lattice::unique_max_lb(std::int64_t a, std::int64_t b, bool* none_exists) const {
  if (none_exists) *none_exists = false;
  std::int64_t n = size();
  std::int64_t c = -1;
  for (std::int64_t x = n - 1; x >= 0; --x) {
    if (!leq(x, a) || !leq(x, b)) continue;
    c = x;
    break;
  }
  if (c < 0) {
    if (none_exists) *none_exists = true;
    return -1;
  }
  for (std::int64_t x = c - 1; x >= 0; --x)
    if (leq(x, a) && leq(x, b) && !leq(x, c)) return -1;
  return c;
}

std::int64_t Lattice::join(std::int64_t a, std::int64_t b) const {
  if (boolean_) return a | b;
  if (a == b) return a;
  if (!join_tab_.empty()) return join_tab_[a * size() + b];
  std::uint64_t key = (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint64_t>(b);
  if (a > b) key = (static_cast<std::uint64_t>(b) << 32) | static_cast<std::uint64_t>(a);
  auto it = join_memo_.find(key);
  if (it != join_memo_.end()) return it->second;
  std::int64_t j = unique_min_ub(a, b, top_, nullptr);
  join_memo_.emplace(key, j);
  return j;
}

std::int64_t Lattice::meet(std::int64_t a, std::int64_t b) const {
  if (boolean_) return a & b;
  if (a == b) return a;
  if (!meet_tab_.empty()) return meet_tab_[a * size() + b];
  std::uint64_t key = (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint64_t>(b);
  if (a > b) key = (static_cast<std::uint64_t>(b) << 32) | static_cast<std::uint64_t>(a);
  auto it = meet_memo_.find(key);
  if (it != meet_memo_.end()) return it->second;
  std::int64_t m = unique_max_lb(a, b, nullptr);
  meet_memo_.emplace(key, m);
  return m;
}

std::int64_t Lattice::join_within(std::int64_t a, std::int64_t b, std::int64_t hi) const {
  if (boolean_) return (a | b);
  if (hi == top_) return join(a, b);
  std::int64_t j = join(a, b);
  if (j >= 0 && leq(j, hi)) return j;  // global join works inside the interval
  return unique_min_ub(a, b, hi, nullptr);
}

std::int64_t Lattice::join_set(const std::vector<std::int64_t>& xs, std::int64_t hi) const {
  if (xs.empty()) return bottom();
  std::int64_t acc = xs[0];
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (acc < 0) break;
    acc = join_within(acc, xs[i], hi);
  }
  if (acc >= 0) return acc;
  // A pairwise fold can be undefined even when the set join exists; fall
  // back to a direct scan for the unique minimal common upper bound.
  std::int64_t n = size();
  std::int64_t c = -1;
  auto above_all = [&](std::int64_t x) {
    if (!leq(x, hi)) return false;
    for (std::int64_t v : xs)
      if (!leq(v, x)) return false;
    return true;
  };
  for (std::int64_t x = 0; x < n; ++x)
    if (above_all(x)) { c = x; break; }
  if (c < 0) return -1;
  for (std::int64_t x = c + 1; x < n; ++x)
    if (above_all(x) && !leq(c, x)) return -1;
  return c;
}

bool Lattice::is_lattice() const {
  if (boolean_) return true;
  return !partial_;
}

std::vector<std::int64_t> Lattice::interval(std::int64_t lo, std::int64_t hi) const {
  std::vector<std::int64_t> out;
  if (boolean_) {
    std::int64_t free = hi & ~lo;
    // submask enumeration
    std::int64_t s = free;
    while (true) {
      out.push_back(lo | s);
      if (s == 0) break;
      s = (s - 1) & free;
    }
    std::sort(out.begin(), out.end());
    return out;
  }
  for (std::int64_t x = 0; x < size(); ++x)
    if (leq(lo, x) && leq(x, hi)) out.push_back(x);
  return out;
}

std::vector<std::int64_t> Lattice::all_elements() const {
  if (boolean_ && nbool_ > 20) throw TooLarge("materializing a boolean lattice this big");
  std::vector<std::int64_t> out(size());
  std::iota(out.begin(), out.end(), 0);
  return out;
}

const std::vector<std::vector<std::int64_t>>& Lattice::upper_covers() const {
  if (boolean_ || covers_up_.empty()) {
    if (boolean_) throw TooLarge("cover lists of an implicit boolean lattice");
    throw LatticeError("cover lists unavailable for this lattice");
  }
  return covers_up_;
}

std::vector<std::int64_t> Lattice::upper_covers_of(std::int64_t e) const {
  if (boolean_) {
    std::vector<std::int64_t> out;
    for (int i = 0; i < nbool_; ++i)
      if (!(e >> i & 1)) out.push_back(e | (std::int64_t{1} << i));
    return out;
  }
  if (!covers_up_.empty()) return covers_up_[e];
  // derive from order: y covers e iff e < y and nothing in between
  std::vector<std::int64_t> ups;
  for (std::int64_t y = 0; y < size(); ++y)
    if (lt(e, y)) ups.push_back(y);
  std::vector<std::int64_t> out;
  for (std::int64_t y : ups) {
    bool cover = true;
    for (std::int64_t z : ups)
      if (z != y && lt(z, y)) { cover = false; break; }
    if (cover) out.push_back(y);
  }
  return out;
}

bool Lattice::is_irreducible(std::int64_t f) const {
  return !product_witness(f).has_value();
}

std::optional<std::pair<std::int64_t, std::int64_t>> Lattice::product_witness(
    std::int64_t f) const {
  if (boolean_) {
    int pc = std::popcount(static_cast<std::uint64_t>(f));
    if (pc <= 1) return std::nullopt;
    std::int64_t lowbit = f & -f;
    return std::make_pair(lowbit, f & ~lowbit);
  }
  std::vector<std::int64_t> below = interval(bottom(), f);
  // complement pairs only: a ^ b = 0 and a v b = f
  for (std::size_t ia = 0; ia < below.size(); ++ia) {
    std::int64_t a = below[ia];
    if (a == bottom() || a == f) continue;
    for (std::size_t ib = ia + 1; ib < below.size(); ++ib) {
      std::int64_t b = below[ib];
      if (b == bottom() || b == f) continue;
      if (meet(a, b) != bottom()) continue;
      if (join_within(a, b, f) != f) continue;
      // check that (x, y) -> x v y is a poset isomorphism
      std::vector<std::int64_t> ia_mem = interval(bottom(), a);
      std::vector<std::int64_t> ib_mem = interval(bottom(), b);
      if (ia_mem.size() * ib_mem.size() != below.size()) continue;
      std::vector<std::int64_t> image;
      bool ok = true;
      std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
      for (std::int64_t x : ia_mem)
        for (std::int64_t y : ib_mem) {
          std::int64_t z = join_within(x, y, f);
          if (z < 0) { ok = false; break; }
          image.push_back(z);
          pairs.emplace_back(x, y);
        }
      if (!ok) continue;
      std::vector<std::int64_t> sorted = image;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) continue;
      for (std::size_t i = 0; i < pairs.size() && ok; ++i)
        for (std::size_t j = 0; j < pairs.size() && ok; ++j) {
          bool prod_leq = leq(pairs[i].first, pairs[j].first) &&
                          leq(pairs[i].second, pairs[j].second);
          if (prod_leq != leq(image[i], image[j])) ok = false;
        }
      if (ok) return std::make_pair(a, b);
    }
  }
  return std::nullopt;
}

std::vector<std::int64_t> Lattice::minimal_building_set() const {
  std::vector<std::int64_t> out;
  if (boolean_) {
    for (int i = 0; i < nbool_; ++i) out.push_back(std::int64_t{1} << i);
    if (nbool_ != 1) out.push_back(top_);
    return out;
  }
  for (std::int64_t f = 0; f < size(); ++f) {
    if (f == bottom()) continue;
    if (f == top_ || is_irreducible(f)) out.push_back(f);
  }
  return out;
}

bool Lattice::verify_axioms(std::string* complaint) const {
  auto fail = [&](const std::string& why) {
    if (complaint) *complaint = why;
    return false;
  };
  if (boolean_) return true;
  std::int64_t n = size();
  auto check_triple = [&](std::int64_t a, std::int64_t b, std::int64_t c) -> bool {
    std::int64_t ab = join(a, b), bc = join(b, c);
    if (ab >= 0 && bc >= 0) {
      std::int64_t l = join(ab, c), r = join(a, bc);
      if (l >= 0 && r >= 0 && l != r) return false;
    }
    std::int64_t mab = meet(a, b);
    if (mab >= 0 && join(a, mab) != a) return false;  // absorption
    std::int64_t jab = join(a, b);
    if (jab >= 0 && meet(a, jab) != a) return false;
    return true;
  };
  if (n <= 64) {
    for (std::int64_t a = 0; a < n; ++a)
      for (std::int64_t b = 0; b < n; ++b)
        for (std::int64_t c = 0; c < n; ++c)
          if (!check_triple(a, b, c))
            return fail("axiom failure at triple (" + ids_[a] + "," + ids_[b] + "," + ids_[c] + ")");
    return true;
  }
  std::mt19937_64 rng(12345);
  std::uniform_int_distribution<std::int64_t> d(0, n - 1);
  for (int t = 0; t < 2000; ++t)
    if (!check_triple(d(rng), d(rng), d(rng))) return fail("axiom failure (randomized)");
  return true;
}

void Lattice::finalize_explicit() {
  std::int64_t n = size();
  index_.clear();
  for (std::int64_t i = 0; i < n; ++i) index_[ids_[i]] = i;
  if (index_.size() != static_cast<std::size_t>(n))
    throw LatticeError("duplicate element ids");

  if (up_.empty()) {
    // large atomic mode: order data is in atom_bits_ already
    std::uint32_t full = 0;
    atoms_.clear();
    for (std::int64_t x = 0; x < n; ++x) full |= atom_bits_[x];
    top_ = -1;
    for (std::int64_t x = 0; x < n; ++x) {
      if (atom_bits_[x] == full) top_ = x;
      if (std::popcount(atom_bits_[x]) == 1) atoms_.push_back(x);
    }
    if (atom_bits_[0] != 0) throw NoBottom();
    if (top_ < 0) throw NoTop();
    std::sort(atoms_.begin(), atoms_.end(), [&](std::int64_t a, std::int64_t b) {
      return atom_bits_[a] < atom_bits_[b];
    });
    atomic_ = true;
    partial_ = false;
    return;
  }

  // bottom must be index 0 (callers sort by a linear extension)
  for (std::int64_t x = 1; x < n; ++x)
    if (!leq(0, x)) throw NoBottom();
  // find top: unique maximal
  top_ = -1;
  for (std::int64_t x = 0; x < n; ++x) {
    bool maximal = true;
    for (std::int64_t y = 0; y < n && maximal; ++y)
      if (y != x && leq(x, y)) maximal = false;
    if (maximal) {
      if (top_ >= 0) throw NoTop();
      top_ = x;
    }
  }
  if (top_ < 0) throw NoTop();

  // atoms: upper covers of bottom
  atoms_.clear();
  for (std::int64_t x = 1; x < n; ++x) {
    bool is_atom = true;
    for (std::int64_t y = 1; y < n && is_atom; ++y)
      if (y != x && lt(y, x)) is_atom = false;
    if (is_atom) atoms_.push_back(x);
  }
  std::sort(atoms_.begin(), atoms_.end(),
            [&](std::int64_t a, std::int64_t b) { return ids_[a] < ids_[b]; });
  if (atoms_.size() > 24) {
    atomic_ = false;
    atom_bits_.clear();
  } else {
    atom_bits_.assign(n, 0);
    for (std::int64_t x = 0; x < n; ++x)
      for (std::size_t i = 0; i < atoms_.size(); ++i)
        if (leq(atoms_[i], x)) atom_bits_[x] |= 1u << i;
    atomic_ = true;
    for (std::int64_t x = 0; x < n && atomic_; ++x) {
      std::vector<std::int64_t> ats;
      for (std::size_t i = 0; i < atoms_.size(); ++i)
        if (atom_bits_[x] >> i & 1u) ats.push_back(atoms_[i]);
      if (join_set(ats, top_) != x) atomic_ = false;
    }
    if (!atomic_) atom_bits_.clear();
  }

  // eager tables for small lattices; detect missing bounds and partiality
  partial_ = false;
  if (n <= kEagerTableCap) {
    join_tab_.assign(n * n, -2);
    meet_tab_.assign(n * n, -2);
    for (std::int64_t a = 0; a < n; ++a)
      for (std::int64_t b = a; b < n; ++b) {
        bool none = false;
        std::int64_t j = unique_min_ub(a, b, top_, &none);
        if (none) throw NotALattice(ids_[a], ids_[b]);
        std::int64_t m = unique_max_lb(a, b, &none);
        if (none) throw NotALattice(ids_[a], ids_[b]);
        if (j < 0 || m < 0) partial_ = true;
        join_tab_[a * n + b] = join_tab_[b * n + a] = static_cast<std::int32_t>(j);
        meet_tab_[a * n + b] = meet_tab_[b * n + a] = static_cast<std::int32_t>(m);
      }
  }
}

Lattice Lattice::from_covers(std::vector<std::string> elems,
                             const std::vector<std::pair<std::string, std::string>>& covers) {
  std::int64_t n = static_cast<std::int64_t>(elems.size());
  if (n == 0) throw LatticeError("empty element list");
  if (n > kBitsetCap) throw TooLarge("from_covers supports at most 4096 elements");
  std::unordered_map<std::string, std::int64_t> pos;
  for (std::int64_t i = 0; i < n; ++i) {
    if (!pos.emplace(elems[i], i).second)
      throw LatticeError("duplicate element id '" + elems[i] + "'");
  }
  std::vector<std::vector<std::int64_t>> up_adj(n);
  std::vector<int> indeg(n, 0);
  for (const auto& [lo, hi] : covers) {
    auto il = pos.find(lo), ih = pos.find(hi);
    if (il == pos.end() || ih == pos.end())
      throw LatticeError("cover references unknown element");
    up_adj[il->second].push_back(ih->second);
    indeg[ih->second]++;
  }
  // topological order (Kahn); ties by input position for determinism
  std::vector<std::int64_t> order;
  std::priority_queue<std::int64_t, std::vector<std::int64_t>, std::greater<>> q;
  std::vector<int> deg = indeg;
  for (std::int64_t i = 0; i < n; ++i)
    if (deg[i] == 0) q.push(i);
  while (!q.empty()) {
    std::int64_t x = q.top();
    q.pop();
    order.push_back(x);
    for (std::int64_t y : up_adj[x])
      if (--deg[y] == 0) q.push(y);
  }
  if (static_cast<std::int64_t>(order.size()) != n)
    throw LatticeError("cover relation contains a cycle");

  std::vector<std::int64_t> new_pos(n);
  for (std::int64_t i = 0; i < n; ++i) new_pos[order[i]] = i;

  Lattice lat;
  lat.ids_.resize(n);
  lat.covers_up_.assign(n, {});
  lat.up_.assign(n, std::vector<std::uint64_t>((n + 63) / 64, 0));
  for (std::int64_t i = 0; i < n; ++i) {
    lat.ids_[new_pos[i]] = elems[i];
    for (std::int64_t y : up_adj[i])
      lat.covers_up_[new_pos[i]].push_back(new_pos[y]);
  }
  for (auto& c : lat.covers_up_) std::sort(c.begin(), c.end());
  // transitive closure, processing from the top down
  for (std::int64_t i = n - 1; i >= 0; --i) {
    set_bit(lat.up_[i], i);
    for (std::int64_t y : lat.covers_up_[i])
      for (std::size_t w = 0; w < lat.up_[i].size(); ++w)
        lat.up_[i][w] |= lat.up_[y][w];
  }
  // bottom must be unique minimal; re-check before finalize for clear errors
  std::vector<std::int64_t> minimal;
  for (std::int64_t x = 0; x < n; ++x) {
    bool has_lower = false;
    for (std::int64_t y = 0; y < n && !has_lower; ++y)
      if (y != x && lat.leq(y, x)) has_lower = true;
    if (!has_lower) minimal.push_back(x);
  }
  if (minimal.size() >= 2) {
    // two minimal elements have no common lower bound
    throw NotALattice(lat.ids_[minimal[0]], lat.ids_[minimal[1]]);
  }
  std::vector<std::int64_t> maximal;
  for (std::int64_t x = 0; x < n; ++x) {
    bool has_upper = false;
    for (std::int64_t y = 0; y < n && !has_upper; ++y)
      if (y != x && lat.leq(x, y)) has_upper = true;
    if (!has_upper) maximal.push_back(x);
  }
  if (maximal.size() >= 2)
    throw NotALattice(lat.ids_[maximal[0]], lat.ids_[maximal[1]]);
  lat.finalize_explicit();
  return lat;
}

Lattice Lattice::boolean_lattice(int n) {
  std::vector<std::string> ids;
  for (int i = 1; i <= n; ++i) ids.push_back(std::to_string(i));
  return boolean_lattice(ids);
}

Lattice Lattice::boolean_lattice(const std::vector<std::string>& atom_ids) {
  int n = static_cast<int>(atom_ids.size());
  if (n < 1 || n > 24) throw TooLarge("boolean lattice supports 1..24 atoms");
  Lattice lat;
  lat.boolean_ = true;
  lat.nbool_ = n;
  lat.bool_atom_ids_ = atom_ids;
  std::sort(lat.bool_atom_ids_.begin(), lat.bool_atom_ids_.end());
  lat.top_ = (std::int64_t{1} << n) - 1;
  for (int i = 0; i < n; ++i) lat.atoms_.push_back(std::int64_t{1} << i);
  lat.atomic_ = true;
  return lat;
}

Lattice Lattice::flats_of_graph(const std::vector<Edge>& edges, std::size_t flat_cap) {
  int m = static_cast<int>(edges.size());
  if (m > 24) throw TooLarge("flats_of_graph supports at most 24 edges");
  {
    std::set<std::string> labels;
    std::set<std::pair<int, int>> seen;
    for (const Edge& e : edges) {
      if (!labels.insert(e.label).second)
        throw LatticeError("duplicate edge label '" + e.label + "'");
      auto key = std::minmax(e.u, e.v);
      if (e.u == e.v || !seen.insert({key.first, key.second}).second)
        throw LatticeError("graph must be simple");
    }
  }
  std::vector<int> verts;
  for (const Edge& e : edges) {
    verts.push_back(e.u);
    verts.push_back(e.v);
  }
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  auto vid = [&](int v) {
    return static_cast<int>(std::lower_bound(verts.begin(), verts.end(), v) - verts.begin());
  };
  int nv = static_cast<int>(verts.size());

  // closure: within each connected component, add every edge joining two
  // vertices of that component
  auto closure = [&](std::uint32_t mask) {
    while (true) {
      std::vector<int> comp(nv, -1);
      int nc = 0;
      // union-find-lite via BFS over the mask subgraph
      std::vector<std::vector<int>> adj(nv);
      for (int e = 0; e < m; ++e)
        if (mask >> e & 1u) {
          adj[vid(edges[e].u)].push_back(vid(edges[e].v));
          adj[vid(edges[e].v)].push_back(vid(edges[e].u));
        }
      for (int v = 0; v < nv; ++v) {
        if (comp[v] >= 0 || adj[v].empty()) continue;
        comp[v] = nc;
        std::queue<int> bfs;
        bfs.push(v);
        while (!bfs.empty()) {
          int x = bfs.front();
          bfs.pop();
          for (int y : adj[x])
            if (comp[y] < 0) { comp[y] = nc; bfs.push(y); }
        }
        ++nc;
      }
      std::uint32_t grown = mask;
      for (int e = 0; e < m; ++e) {
        if (grown >> e & 1u) continue;
        int cu = comp[vid(edges[e].u)], cv = comp[vid(edges[e].v)];
        if (cu >= 0 && cu == cv) grown |= 1u << e;
      }
      if (grown == mask) return mask;
      mask = grown;
    }
  };

  std::vector<std::uint32_t> flats;
  std::set<std::uint32_t> seen;
  std::queue<std::uint32_t> work;
  seen.insert(0);
  work.push(0);
  while (!work.empty()) {
    std::uint32_t f = work.front();
    work.pop();
    flats.push_back(f);
    for (int e = 0; e < m; ++e) {
      if (f >> e & 1u) continue;
      std::uint32_t g = closure(f | (1u << e));
      if (seen.insert(g).second) {
        if (seen.size() > flat_cap) throw TooLarge("flat count exceeds cap");
        work.push(g);
      }
    }
  }

  // sort edge labels to get the canonical atom order and names
  std::vector<int> label_order(m);
  std::iota(label_order.begin(), label_order.end(), 0);
  std::sort(label_order.begin(), label_order.end(),
            [&](int a, int b) { return edges[a].label < edges[b].label; });

  auto flat_id = [&](std::uint32_t f) {
    if (f == 0) return std::string("0");
    std::string s;
    for (int i : label_order)
      if (f >> i & 1u) s += edges[i].label;
    return s;
  };

  std::sort(flats.begin(), flats.end(), [&](std::uint32_t a, std::uint32_t b) {
    int pa = std::popcount(a), pb = std::popcount(b);
    if (pa != pb) return pa < pb;
    return flat_id(a) < flat_id(b);
  });

  std::int64_t n = static_cast<std::int64_t>(flats.size());
  Lattice lat;
  lat.ids_.resize(n);
  for (std::int64_t i = 0; i < n; ++i) lat.ids_[i] = flat_id(flats[i]);
  if (n <= kBitsetCap) {
    lat.up_.assign(n, std::vector<std::uint64_t>((n + 63) / 64, 0));
    for (std::int64_t i = 0; i < n; ++i)
      for (std::int64_t j = 0; j < n; ++j)
        if ((flats[i] & ~flats[j]) == 0) set_bit(lat.up_[i], j);
    lat.covers_up_.assign(n, {});
    for (std::int64_t i = 0; i < n; ++i) {
      std::vector<std::int64_t> ups;
      for (std::int64_t j = 0; j < n; ++j)
        if (i != j && bit(lat.up_[i], j)) ups.push_back(j);
      for (std::int64_t y : ups) {
        bool cover = true;
        for (std::int64_t z : ups)
          if (z != y && bit(lat.up_[z], y)) { cover = false; break; }
        if (cover) lat.covers_up_[i].push_back(y);
      }
    }
  } else {
    // large atomic mode: comparisons via atom bitsets
    lat.atom_bits_.resize(n);
    for (std::int64_t i = 0; i < n; ++i) {
      std::uint32_t bits = 0;
      for (int k = 0; k < m; ++k)
        if (flats[i] >> label_order[k] & 1u) bits |= 1u << k;
      lat.atom_bits_[i] = bits;
    }
  }
  lat.finalize_explicit();
  return lat;
}

SubLattice make_interval_lattice(const Lattice& parent, std::int64_t lo, std::int64_t hi) {
  SubLattice sub;
  sub.to_parent = parent.interval(lo, hi);
  std::int64_t n = static_cast<std::int64_t>(sub.to_parent.size());
  if (n > kBitsetCap) throw TooLarge("interval too large to materialize");
  for (std::int64_t i = 0; i < n; ++i) sub.from_parent[sub.to_parent[i]] = i;
  Lattice lat;
  lat.ids_.resize(n);
  lat.up_.assign(n, std::vector<std::uint64_t>((n + 63) / 64, 0));
  for (std::int64_t i = 0; i < n; ++i) {
    lat.ids_[i] = parent.id(sub.to_parent[i]);
    for (std::int64_t j = 0; j < n; ++j)
      if (parent.leq(sub.to_parent[i], sub.to_parent[j])) set_bit(lat.up_[i], j);
  }
  lat.covers_up_.assign(n, {});
  for (std::int64_t i = 0; i < n; ++i) {
    std::vector<std::int64_t> ups;
    for (std::int64_t j = 0; j < n; ++j)
      if (i != j && bit(lat.up_[i], j)) ups.push_back(j);
    for (std::int64_t y : ups) {
      bool cover = true;
      for (std::int64_t z : ups)
        if (z != y && bit(lat.up_[z], y)) { cover = false; break; }
      if (cover) lat.covers_up_[i].push_back(y);
    }
  }
  lat.finalize_explicit();
  sub.lat = std::move(lat);
  return sub;
}

}  // namespace uf
