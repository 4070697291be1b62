#include "universefan/geometry.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace uf {

int ConeZ::dim() const { return rank_int(gens); }

ConeZ make_cone(int dim_space, MatI gens, std::vector<std::string> labels) {
  ConeZ c;
  c.dim_space = dim_space;
  c.gens = std::move(gens);  // kept verbatim; primitivity is the caller's invariant
  c.labels = std::move(labels);
  return c;
}

bool vec_less(const VecI& a, const VecI& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

void sort_rays(MatI& rays) { std::sort(rays.begin(), rays.end(), vec_less); }

namespace {

struct DDRay {
  VecI v;
  std::vector<std::uint64_t> tight;  // bitset over processed inequalities
};

inline void set_tight(std::vector<std::uint64_t>& t, int i) {
  t[static_cast<std::size_t>(i >> 6)] |= std::uint64_t{1} << (i & 63);
}
inline bool subset_of(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
  for (std::size_t w = 0; w < a.size(); ++w)
    if (a[w] & ~b[w]) return false;
  return true;
}

}  // namespace

DualDescription dual_rays(const MatI& ineqs, int dim) {
  std::size_t m = ineqs.size();
  std::size_t words = (m + 63) / 64 + 1;
  // start from the whole space as lineality
  MatI lin;
  for (int i = 0; i < dim; ++i) {
    VecI e(dim, 0);
    e[i] = 1;
    lin.push_back(std::move(e));
  }
  std::vector<DDRay> rays;

  for (std::size_t k = 0; k < m; ++k) {
    const VecI& a = ineqs[k];
    // reduce the lineality space against a
    int pivot = -1;
    for (std::size_t i = 0; i < lin.size(); ++i)
      if (dot(a, lin[i]) != 0) { pivot = static_cast<int>(i); break; }
    if (pivot >= 0) {
      VecI l0 = lin[pivot];
      Int d0 = dot(a, l0);
      lin.erase(lin.begin() + pivot);
      for (VecI& l : lin) {
        Int d = dot(a, l);
        if (d == 0) continue;
        // l <- d0*l - d*l0 vanishes on a
        for (int j = 0; j < dim; ++j) l[j] = d0 * l[j] - d * l0[j];
        l = primitive(std::move(l));
      }
      for (DDRay& r : rays) {
        Int d = dot(a, r.v);
        if (d == 0) continue;
        // project along l0 keeping the ray's orientation: scale by |d0|
        Int s0 = d0 < 0 ? -d0 : d0;
        Int sd = d0 < 0 ? -d : d;
        for (int j = 0; j < dim; ++j) r.v[j] = s0 * r.v[j] - sd * l0[j];
        r.v = primitive(std::move(r.v));
      }
      if (d0 < 0)
        for (int j = 0; j < dim; ++j) l0[j] = -l0[j];
      DDRay nr;
      nr.v = primitive(std::move(l0));
      nr.tight.assign(words, 0);
      for (std::size_t p = 0; p < k; ++p)
        if (dot(ineqs[p], nr.v) == 0) set_tight(nr.tight, static_cast<int>(p));
      rays.push_back(std::move(nr));
      // all old rays are now tight at a
      for (std::size_t i = 0; i + 1 < rays.size(); ++i) set_tight(rays[i].tight, static_cast<int>(k));
      continue;
    }
    // classic double description step
    std::vector<std::size_t> pos, zero, neg;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      int s = dot(a, rays[i].v).sign();
      if (s > 0) pos.push_back(i);
      else if (s == 0) zero.push_back(i);
      else neg.push_back(i);
    }
    std::vector<DDRay> next;
    for (std::size_t i : pos) next.push_back(rays[i]);
    for (std::size_t i : zero) {
      set_tight(rays[i].tight, static_cast<int>(k));
      next.push_back(rays[i]);
    }
    for (std::size_t ip : pos) {
      for (std::size_t in : neg) {
        const DDRay& rp = rays[ip];
        const DDRay& rn = rays[in];
        // adjacency: no third extreme ray tight everywhere both are tight
        std::vector<std::uint64_t> common(words);
        for (std::size_t w = 0; w < words; ++w) common[w] = rp.tight[w] & rn.tight[w];
        bool adjacent = true;
        for (std::size_t io = 0; io < rays.size() && adjacent; ++io)
          if (io != ip && io != in && subset_of(common, rays[io].tight)) adjacent = false;
        if (!adjacent) continue;
        Int dp = dot(a, rp.v), dn = dot(a, rn.v);
        VecI comb(dim);
        for (int j = 0; j < dim; ++j) comb[j] = dp * rn.v[j] - dn * rp.v[j];
        DDRay nr;
        nr.v = primitive(std::move(comb));
        nr.tight = common;
        set_tight(nr.tight, static_cast<int>(k));
        next.push_back(std::move(nr));
      }
    }
    rays = std::move(next);
  }

  DualDescription out;
  std::set<VecI> seen;
  for (DDRay& r : rays) {
    bool zerov = std::all_of(r.v.begin(), r.v.end(), [](const Int& x) { return x == 0; });
    if (!zerov && seen.insert(r.v).second) out.rays.push_back(std::move(r.v));
  }
  sort_rays(out.rays);
  out.lineality = std::move(lin);
  sort_rays(out.lineality);
  return out;
}

MatI facet_normals(const ConeZ& cone) {
  DualDescription dd = dual_rays(cone.gens, cone.dim_space);
  return dd.rays;
}

bool cone_contains(const ConeZ& cone, const VecI& point) {
  if (!solve_in_rows(cone.gens, point).has_value()) return false;  // outside span
  return in_nonneg_row_span(cone.gens, point);
}

bool generators_irredundant(const ConeZ& cone) {
  for (int i = 0; i < cone.num_gens(); ++i) {
    MatI others;
    for (int j = 0; j < cone.num_gens(); ++j)
      if (j != i) others.push_back(cone.gens[j]);
    if (in_nonneg_row_span(others, cone.gens[i])) return false;
  }
  return true;
}

MatI extreme_rays(const MatI& gens) {
  MatI out;
  std::set<VecI> seen;
  MatI prim;
  for (const VecI& g : gens) {
    VecI p = primitive(g);
    if (std::all_of(p.begin(), p.end(), [](const Int& x) { return x == 0; })) continue;
    if (seen.insert(p).second) prim.push_back(std::move(p));
  }
  for (std::size_t i = 0; i < prim.size(); ++i) {
    MatI others;
    for (std::size_t j = 0; j < prim.size(); ++j)
      if (j != i) others.push_back(prim[j]);
    if (!in_nonneg_row_span(others, prim[i])) out.push_back(prim[i]);
  }
  sort_rays(out);
  return out;
}

int Fan::add_ray(VecI r) {
  r = primitive(std::move(r));
  for (std::size_t i = 0; i < rays.size(); ++i)
    if (rays[i] == r) return static_cast<int>(i);
  rays.push_back(std::move(r));
  return static_cast<int>(rays.size()) - 1;
}

ConeZ Fan::cone(int i) const {
  MatI gens;
  for (int r : max_cones[i]) gens.push_back(rays[r]);
  return make_cone(dim, std::move(gens));
}

std::vector<std::vector<int>> enumerate_faces(const ConeZ& cone) {
  MatI facets = facet_normals(cone);
  int ng = cone.num_gens();
  auto tight_set = [&](const std::vector<int>& rayset, const VecI& normal) {
    std::vector<int> out;
    for (int r : rayset)
      if (dot(normal, cone.gens[r]) == 0) out.push_back(r);
    return out;
  };
  std::vector<int> whole(ng);
  for (int i = 0; i < ng; ++i) whole[i] = i;
  std::set<std::vector<int>> seen;
  std::vector<std::vector<int>> queue{whole};
  seen.insert(whole);
  std::size_t head = 0;
  while (head < queue.size()) {
    std::vector<int> face = queue[head++];
    for (const VecI& f : facets) {
      std::vector<int> sub = tight_set(face, f);
      if (sub != face && seen.insert(sub).second) queue.push_back(sub);
    }
  }
  std::vector<std::vector<int>> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a < b;
  });
  return out;
}

}  // namespace uf
